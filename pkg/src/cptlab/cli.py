"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 invalid capacity, 4 representation
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from pathlib import Path

from . import example1
from .acts import Act, negative_part, positive_part
from .capacity import EPS, Capacity, CapacityError, conjugate
from .elicitation import (
    DegenerateDenominator,
    InconsistentTriple,
    Kind,
    LossAversionResult,
    Preference,
    elicit_lambda,
    lambda_spread,
    prefers,
)
from .integration import CptParams, choquet, cpt, sipos
from .io import InputError, load_acts, load_capacity, read_triples, write_results
from .representation import (
    FunctionalOracle,
    RepresentationError,
    check_monotonicity,
    check_restricted_comonotonic_additivity,
    extract_cpt,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_REPRESENTATION = 4

FUNCTIONALS = ("choquet", "sipos", "cpt")


@dataclass
class RunConfig:
    functional: str
    capacity: Path
    capacity_minus: Path | None = None
    symmetric: bool = False
    lam: Fraction | None = None
    acts: Path | None = None
    tolerance: float = EPS
    seed: int = 0
    samples: int = 10_000
    output: str = "table"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            functional=args.functional,
            capacity=Path(args.capacity),
            capacity_minus=Path(args.capacity_minus) if args.capacity_minus else None,
            symmetric=args.symmetric,
            lam=args.lam,
            acts=Path(args.acts) if getattr(args, "acts", None) else None,
            tolerance=args.tolerance,
            seed=args.seed,
            samples=getattr(args, "samples", 10_000),
            output="json" if args.json else args.format,
        )

    def check(self) -> None:
        if self.functional == "cpt":
            if self.lam is None:
                raise InputError("--functional cpt needs --lambda")
            if self.capacity_minus is None and not self.symmetric:
                raise InputError("--functional cpt needs --capacity-minus or --symmetric")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _num(x: Real) -> float:
    return float(x)


def _exact(x: Real) -> str | None:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return None


def _fmt6(x: Real) -> str:
    s = f"{float(x):.6f}"
    return "0.000000" if s == "-0.000000" else s


def _vec6(a: Act) -> str:
    return "(" + ", ".join(_fmt6(x) for x in a.payoffs) + ")"


def _load_capacities(cfg: RunConfig) -> tuple[Capacity, Capacity | None]:
    v = load_capacity(cfg.capacity)
    w = load_capacity(cfg.capacity_minus) if cfg.capacity_minus else None
    if w is not None and w.space != v.space:
        raise InputError("gain and loss capacities have different states")
    return v, w


def _params(cfg: RunConfig, v: Capacity, w: Capacity | None) -> CptParams:
    if cfg.functional == "choquet":
        return CptParams.choquet(v)
    if cfg.functional == "sipos":
        return CptParams.sipos(v)
    try:
        return CptParams(v, w if w is not None else v, cfg.lam)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _value(cfg: RunConfig, f: Act, v: Capacity, p: CptParams) -> Real:
    if cfg.functional == "choquet":
        return choquet(f, v)
    if cfg.functional == "sipos":
        return sipos(f, v)
    return cpt(f, p)


def cmd_eval(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.check()
    v, w = _load_capacities(cfg)
    p = _params(cfg, v, w)
    _, acts = load_acts(cfg.acts, v.space)
    rows = []
    for label, f in acts.items():
        value = _value(cfg, f, v, p)
        ce = value if value >= 0 else value / p.lam
        rows.append((label, f, value, ce))

    if cfg.output == "json":
        doc = {
            "functional": cfg.functional,
            "states": list(v.space.names),
            "lambda": _num(p.lam),
            "acts": [
                {
                    "label": label,
                    "payoffs": [_num(x) for x in f.payoffs],
                    "value": _num(value),
                    "value_exact": _exact(value),
                    "certainty_equivalent": _num(ce),
                    "certainty_equivalent_exact": _exact(ce),
                    "positive_part": [_num(x) for x in positive_part(f).payoffs],
                    "negative_part": [_num(x) for x in negative_part(f).payoffs],
                }
                for label, f, value, ce in rows
            ],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return EXIT_OK

    sym = {"choquet": "C", "sipos": "Š", "cpt": "CPT"}[cfg.functional]
    out.write(f"{'act':<10} {sym + '(f)':>12} {'CE':>12}  positive part / negative part\n")
    for label, f, value, ce in rows:
        out.write(
            f"{label:<10} {_fmt6(value):>12} {_fmt6(ce):>12}  "
            f"{_vec6(positive_part(f))} / {_vec6(negative_part(f))}\n"
        )
    return EXIT_OK


def _raw_oracle(cfg: RunConfig, v: Capacity, w: Capacity | None) -> FunctionalOracle:
    """Oracle straight from the formula; λ is not validated here on purpose."""
    if cfg.functional == "choquet":
        fn = lambda f: choquet(f, v)  # noqa: E731
    elif cfg.functional == "sipos":
        fn = lambda f: sipos(f, v)  # noqa: E731
    else:
        lam, loss = cfg.lam, (w if w is not None else v)
        fn = lambda f: choquet(positive_part(f), v) - lam * choquet(negative_part(f), loss)  # noqa: E731
    return FunctionalOracle(v.space, fn, name=cfg.functional, reentrant=True, eps=cfg.tolerance)


def cmd_verify(cfg: RunConfig, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    cfg.check()
    v, w = _load_capacities(cfg)
    report: dict = {"functional": cfg.functional, "states": list(v.space.names), "seed": cfg.seed}
    code = EXIT_OK
    try:
        oracle = _raw_oracle(cfg, v, w)
    except RepresentationError as exc:
        report["error"] = str(exc)
        json.dump(report, out, indent=2)
        out.write("\n")
        err.write(f"error: {exc}\n")
        return EXIT_REPRESENTATION

    mono = check_monotonicity(oracle, seed=cfg.seed, samples=cfg.samples, eps=cfg.tolerance)
    add = check_restricted_comonotonic_additivity(oracle, seed=cfg.seed, eps=cfg.tolerance)
    report["monotonicity"] = mono.to_dict(max_witnesses=5)
    report["additivity"] = add.to_dict(max_witnesses=5)
    report["summary"] = [mono.summary(), *add.summary()]
    if not mono.clean or not add.restricted_clean:
        code = EXIT_REPRESENTATION

    try:
        result = extract_cpt(oracle, seed=cfg.seed, samples=cfg.samples, eps=cfg.tolerance)
        report["extraction"] = result.to_dict()
        if cfg.functional == "choquet":
            report["extraction"]["v_minus_equals_conjugate"] = result.params.v_minus.allclose(
                conjugate(v), cfg.tolerance
            )
    except RepresentationError as exc:
        report["extraction"] = {"error": type(exc).__name__, "message": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            report["extraction"]["witness"] = [_num(x) for x in witness.payoffs]
        err.write(f"extraction failed: {exc}\n")
        code = EXIT_REPRESENTATION

    report["ok"] = code == EXIT_OK
    json.dump(report, out, indent=2)
    out.write("\n")
    return code


def cmd_demo_example1(as_json: bool = False, out=None) -> int:
    out = out or sys.stdout
    v = example1.capacity()
    acts = example1.acts()
    sp = CptParams.sipos(v)
    names = ["f", "g", "h", "f+h", "g+h"]
    c_vals = {k: choquet(acts[k], v) for k in names}
    s_vals = {k: sipos(acts[k], v) for k in names}
    pref_s = {
        "f vs g": prefers(acts["f"], acts["g"], sp),
        "f+h vs g+h": prefers(acts["f+h"], acts["g+h"], sp),
    }
    cp = CptParams.choquet(v)
    pref_c = {
        "f vs g": prefers(acts["f"], acts["g"], cp),
        "f+h vs g+h": prefers(acts["f+h"], acts["g+h"], cp),
    }

    if as_json:
        doc = {
            "states": list(example1.SPACE.names),
            "capacity": {example1.SPACE.label(m): str(x) for m, x in enumerate(v.table)},
            "acts": {k: [str(x) for x in a.payoffs] for k, a in acts.items()},
            "choquet": {k: str(x) for k, x in c_vals.items()},
            "sipos": {k: str(x) for k, x in s_vals.items()},
            "preferences": {
                "sipos": {k: p.value for k, p in pref_s.items()},
                "choquet": {k: p.value for k, p in pref_c.items()},
            },
        }
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
        return EXIT_OK

    out.write("Capacity v\n")
    for m, x in enumerate(v.table):
        out.write(f"  v({{{example1.SPACE.label(m)}}}) = {x}\n")
    out.write("\nActs\n")
    out.write("  " + f"{'':<5}" + "".join(f"{s:>5}" for s in example1.SPACE.names) + "\n")
    for k, a in acts.items():
        out.write(f"  {k:<5}" + "".join(f"{str(x):>5}" for x in a.payoffs) + "\n")
    out.write("\nIntegrals\n")
    for k in names:
        out.write(f"  C({k}) = {c_vals[k]}   Š({k}) = {s_vals[k]}\n")
    word = {Preference.INDIFFERENT: "~", Preference.F_STRICT: "≻", Preference.G_STRICT: "≺"}
    out.write("\nConclusion\n")
    out.write(f"  Šipoš:   f {word[pref_s['f vs g']]} g,  f+h {word[pref_s['f+h vs g+h']]} g+h\n")
    out.write(f"  Choquet: f {word[pref_c['f vs g']]} g,  f+h {word[pref_c['f+h vs g+h']]} g+h\n")
    out.write("  f+h ≥ 0 since gains balance losses; only Šipoš rewards it.\n")
    return EXIT_OK


def cmd_elicit(inp: Path, outp: Path | None, out=None, err=None, eps: float = EPS) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    with open(inp, newline="") as fh:
        triples = read_triples(fh)
    results: list[LossAversionResult | str] = []
    for t in triples:
        try:
            results.append(elicit_lambda(t, eps))
        except DegenerateDenominator as exc:
            results.append(LossAversionResult(Kind.INDETERMINATE, None, str(exc)))
        except InconsistentTriple:
            results.append("inconsistent")
    if outp is None:
        write_results(out, results)
    else:
        with open(outp, "w", newline="") as fh:
            write_results(fh, results)
    identified = [r for r in results if not isinstance(r, str)]
    err.write(f"lambda spread over identified rows: {lambda_spread(identified):.6f}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cptlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def functional_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--functional", choices=FUNCTIONALS, required=True)
        p.add_argument("--capacity", required=True, help="capacity JSON (gains for cpt)")
        p.add_argument("--capacity-minus", help="loss capacity JSON (cpt)")
        p.add_argument("--symmetric", action="store_true", help="cpt: reuse --capacity for losses")
        p.add_argument("--lambda", dest="lam", type=_fraction, help="loss-aversion coefficient (cpt)")
        p.add_argument("--tolerance", type=float, default=EPS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--json", action="store_true", help="same as --format json")

    p_eval = sub.add_parser("eval", help="evaluate acts under a functional")
    functional_args(p_eval)
    p_eval.add_argument("--acts", required=True, help="acts CSV")

    p_verify = sub.add_parser("verify", help="check a functional against the CPT characterization")
    functional_args(p_verify)
    p_verify.add_argument("--samples", type=int, default=10_000, help="random acts/pairs when n > 3")

    p_demo = sub.add_parser("demo", help="reproduce the three-state gain-loss hedging example")
    p_demo.add_argument("--json", action="store_true")

    p_elicit = sub.add_parser("elicit", help="loss aversion from alpha,beta,gamma rows")
    p_elicit.add_argument("input", help="CSV of alpha,beta,gamma")
    p_elicit.add_argument("-o", "--output", help="output CSV (default stdout)")
    p_elicit.add_argument("--tolerance", type=float, default=EPS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "demo":
            return cmd_demo_example1(args.json)
        if args.command == "elicit":
            return cmd_elicit(Path(args.input), Path(args.output) if args.output else None, eps=args.tolerance)
        cfg = RunConfig.from_args(args)
        if args.command == "eval":
            return cmd_eval(cfg)
        return cmd_verify(cfg)
    except CapacityError as exc:
        print(f"invalid capacity: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RepresentationError as exc:
        print(f"representation failure: {exc}", file=sys.stderr)
        return EXIT_REPRESENTATION


if __name__ == "__main__":
    sys.exit(main())
