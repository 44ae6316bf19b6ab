import json
from pathlib import Path

import numpy as np
import pytest

from cptlab.acts import StateSpace
from cptlab.capacity import conjugate, random_capacity
from cptlab.cli import main
from cptlab.io import capacity_to_json, load_capacity

DATA = Path(__file__).resolve().parents[1] / "data"
CAP = str(DATA / "example1_capacity.json")
ACTS = str(DATA / "example1_acts.csv")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_sipos_table(self, capsys):
        code, out, _ = run(capsys, "eval", "--functional", "sipos", "--capacity", CAP, "--acts", ACTS)
        assert code == 0
        rows = {line.split()[0]: line.split()[1] for line in out.splitlines()[1:]}
        assert rows == {"f": "3.666667", "g": "3.666667", "h": "-2.333333", "f+h": "2.333333", "g+h": "1.333333"}

    def test_choquet_json_exact(self, capsys):
        code, out, _ = run(capsys, "eval", "--functional", "choquet", "--capacity", CAP, "--acts", ACTS, "--json")
        assert code == 0
        doc = json.loads(out)
        exact = {a["label"]: a["value_exact"] for a in doc["acts"]}
        assert exact == {"f": "11/3", "g": "11/3", "h": "-4/3", "f+h": "7/3", "g+h": "7/3"}

    def test_cpt_ce(self, capsys):
        code, out, _ = run(capsys, "eval", "--functional", "cpt", "--symmetric", "--lambda", "2",
                           "--capacity", CAP, "--acts", ACTS, "--format", "json")
        doc = json.loads(out)
        gh = next(a for a in doc["acts"] if a["label"] == "g+h")
        assert gh["value_exact"] == "-1" and gh["certainty_equivalent_exact"] == "-1/2"
        assert gh["negative_part"] == [3.0, 0.0, 1.0]

    def test_cpt_needs_lambda(self, capsys):
        code, _, err = run(capsys, "eval", "--functional", "cpt", "--symmetric", "--capacity", CAP, "--acts", ACTS)
        assert code == 2 and "lambda" in err

    def test_empty_acts(self, capsys, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        code, out, _ = run(capsys, "eval", "--functional", "sipos", "--capacity", CAP, "--acts", str(p))
        assert code == 0 and len(out.splitlines()) == 1

    def test_bad_capacity(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"states": ["a", "b"], "values": {"": 0.2, "a": 0.5, "b": 0.5, "a,b": 1}}))
        acts = tmp_path / "a.csv"
        acts.write_text("act,a,b\nf,1,2\n")
        code, _, err = run(capsys, "eval", "--functional", "sipos", "--capacity", str(p), "--acts", str(acts))
        assert code == 3 and "NotNormalized" in err

    def test_not_monotone_witness(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        values = {"": 0, "a": 0.5, "b": 0.1, "c": 0.1, "a,b": 0.4, "a,c": 0.6, "b,c": 0.3, "a,b,c": 1}
        p.write_text(json.dumps({"states": ["a", "b", "c"], "values": values}))
        code, _, err = run(capsys, "eval", "--functional", "sipos", "--capacity", str(p), "--acts", ACTS)
        assert code == 3 and "NotMonotone" in err and "v({a}) = 1/2 > v({a,b}) = 2/5" in err

    def test_parse_error(self, capsys, tmp_path):
        acts = tmp_path / "a.csv"
        acts.write_text("act,s1,s2,s3\nf,1,nan,2\n")
        code, _, err = run(capsys, "eval", "--functional", "sipos", "--capacity", CAP, "--acts", str(acts))
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "eval", "--functional", "sipos", "--capacity", "/nonexistent.json", "--acts", ACTS)
        assert code == 2


class TestVerify:
    def test_cpt_ok(self, capsys, tmp_path):
        rng = np.random.default_rng(4)
        sp = StateSpace.of_size(3)
        vp, vm = random_capacity(sp, rng), random_capacity(sp, rng)
        a, b = tmp_path / "p.json", tmp_path / "m.json"
        a.write_text(json.dumps(capacity_to_json(vp)))
        b.write_text(json.dumps(capacity_to_json(vm)))
        code, out, _ = run(capsys, "verify", "--functional", "cpt", "--capacity", str(a),
                           "--capacity-minus", str(b), "--lambda", "2.5")
        assert code == 0
        doc = json.loads(out)
        assert doc["ok"] and doc["extraction"]["lambda"] == pytest.approx(2.5, abs=1e-9)
        got = doc["extraction"]["v_minus"]
        assert all(abs(got[sp.label(m)] - float(x)) <= 1e-9 for m, x in enumerate(vm.table))

    def test_flipped_lambda(self, capsys):
        code, out, err = run(capsys, "verify", "--functional", "cpt", "--symmetric", "--lambda", "-2", "--capacity", CAP)
        assert code == 4
        doc = json.loads(out)
        assert not doc["ok"]
        assert doc["monotonicity"]["violations"] > 0
        assert doc["extraction"]["error"] == "DegenerateLambda"

    def test_choquet_conjugate(self, capsys):
        code, out, _ = run(capsys, "verify", "--functional", "choquet", "--capacity", CAP)
        assert code == 0
        doc = json.loads(out)
        assert doc["extraction"]["v_minus_equals_conjugate"]
        conj = conjugate(load_capacity(CAP))
        assert doc["extraction"]["v_minus"]["s1"] == pytest.approx(float(conj.value_of("s1")))

    def test_deterministic(self, capsys):
        first = run(capsys, "verify", "--functional", "sipos", "--capacity", CAP, "--seed", "5")
        second = run(capsys, "verify", "--functional", "sipos", "--capacity", CAP, "--seed", "5")
        assert first == second


class TestDemo:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "demo")
        assert code == 0
        assert "Š(f+h) = 7/3" in out and "Š(g+h) = 4/3" in out
        assert "C(f+h) = 7/3" in out and "C(g+h) = 7/3" in out
        assert "Šipoš:   f ~ g,  f+h ≻ g+h" in out
        assert "Choquet: f ~ g,  f+h ~ g+h" in out

    def test_byte_identical(self, capsys):
        assert run(capsys, "demo") == run(capsys, "demo")

    def test_json(self, capsys):
        code, out, _ = run(capsys, "demo", "--json")
        doc = json.loads(out)
        assert doc["sipos"]["g+h"] == "4/3" and doc["choquet"]["h"] == "-4/3"
        assert doc["preferences"]["sipos"]["f+h vs g+h"] == "f_strict"
        assert doc["preferences"]["choquet"]["f+h vs g+h"] == "indifferent"


class TestElicit:
    def test_rows(self, capsys, tmp_path):
        src = tmp_path / "t.csv"
        src.write_text("alpha,beta,gamma\n4,-1,2\n2,-1,1\n0,0,0\n2,-1,-1\n1,-1,3\n")
        dst = tmp_path / "out.csv"
        code, _, err = run(capsys, "elicit", str(src), "-o", str(dst))
        assert code == 0
        assert dst.read_text().splitlines() == [
            "kind,lambda", "determined,2", "neutral,1", "indeterminate,", "indeterminate,", "inconsistent,",
        ]
        assert "spread" in err

    def test_malformed(self, capsys, tmp_path):
        src = tmp_path / "t.csv"
        src.write_text("4,-1,2\n4,x,2\n")
        code, _, err = run(capsys, "elicit", str(src))
        assert code == 2 and "row 2" in err
