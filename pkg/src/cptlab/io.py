"""Capacity JSON, acts CSV and elicitation CSV readers/writers."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable

from .acts import Act, StateSpace, parse_number
from .capacity import Capacity, validate
from .elicitation import ElicitationTriple, LossAversionResult


class InputError(ValueError):
    """Malformed input file."""


def _subset_mask(space: StateSpace, key: str) -> int:
    key = key.strip()
    if not key:
        return 0
    names = [s.strip() for s in key.split(",")]
    if len(set(names)) != len(names):
        raise InputError(f"repeated state in subset key {key!r}")
    try:
        return space.mask_of(names)
    except KeyError as exc:
        raise InputError(f"subset key {key!r}: {exc.args[0]}") from None


def _parse_value(raw, fractions: bool) -> Fraction:
    if isinstance(raw, bool):
        raise InputError(f"capacity value {raw!r} is not a number")
    if isinstance(raw, (int, Fraction)):
        return Fraction(raw)
    if isinstance(raw, str):
        if "/" in raw and not fractions:
            raise InputError(f"fraction string {raw!r} needs \"fractions\": true")
        try:
            return parse_number(raw)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"capacity value {raw!r} is not a number")


def capacity_from_json(data: dict | str) -> Capacity:
    """Build a capacity from the JSON document (already parsed or raw text).

    Numbers are taken as exact decimals. Raises :class:`InputError` for
    malformed documents and :class:`~cptlab.capacity.CapacityError` when the
    table is not a capacity.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data, parse_float=Fraction, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "states" not in data or "values" not in data:
        raise InputError('capacity JSON needs "states" and "values"')
    try:
        space = StateSpace(data["states"])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fractions = bool(data.get("fractions", False))
    values = data["values"]
    if not isinstance(values, dict):
        raise InputError('"values" must be an object')
    table: dict[int, Fraction] = {}
    for key, raw in values.items():
        mask = _subset_mask(space, key)
        if mask in table:
            raise InputError(f"subset {{{space.label(mask)}}} given twice")
        table[mask] = _parse_value(raw, fractions)
    return validate(space, table)


def _reject_constant(name: str):
    raise InputError(f"non-finite value {name} not allowed")


def load_capacity(path: str | Path) -> Capacity:
    return capacity_from_json(Path(path).read_text())


def capacity_to_json(v: Capacity, fractions: bool = False) -> dict:
    """Inverse of :func:`capacity_from_json`; keys in state order."""
    values = {}
    for m, x in enumerate(v.table):
        if fractions:
            exact = Fraction(x).limit_denominator() if isinstance(x, float) else Fraction(x)
            values[v.space.label(m)] = str(exact)
        else:
            values[v.space.label(m)] = float(x)
    out = {"states": list(v.space.names), "values": values}
    if fractions:
        out["fractions"] = True
    return out


def read_acts(stream: IO[str], space: StateSpace | None = None) -> tuple[StateSpace, dict[str, Act]]:
    """Acts CSV: header = label column + state labels; one act per row.

    Payoffs are exact decimals (``Fraction``). An empty file yields no acts
    (and needs ``space`` to know the states).
    """
    rows = [r for r in csv.reader(stream) if any(cell.strip() for cell in r)]
    if not rows:
        if space is None:
            raise InputError("empty acts file and no state space given")
        return space, {}
    header = [c.strip() for c in rows[0]]
    try:
        file_space = StateSpace(header[1:])
    except ValueError as exc:
        raise InputError(f"header: {exc}") from None
    if space is not None and file_space != space:
        raise InputError(f"acts file states {file_space.names} do not match {space.names}")
    acts: dict[str, Act] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
        label = row[0].strip()
        if label in acts:
            raise InputError(f"line {lineno}: duplicate act label {label!r}")
        try:
            acts[label] = Act(file_space, tuple(parse_number(c) for c in row[1:]))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return file_space, acts


def load_acts(path: str | Path, space: StateSpace | None = None) -> tuple[StateSpace, dict[str, Act]]:
    with open(path, newline="") as fh:
        return read_acts(fh, space)


def write_acts(stream: IO[str], acts: dict[str, Act], label_header: str = "act") -> None:
    writer = csv.writer(stream, lineterminator="\n")
    space = next(iter(acts.values())).space
    writer.writerow([label_header, *space.names])
    for label, act in acts.items():
        writer.writerow([label, *(str(x) for x in act.payoffs)])


def read_triples(stream: IO[str]) -> list[ElicitationTriple]:
    """``alpha,beta,gamma`` rows; an optional header row is skipped."""
    triples = []
    for lineno, row in enumerate(csv.reader(stream), start=1):
        cells = [c.strip() for c in row]
        if not any(cells):
            continue
        if lineno == 1 and [c.lower() for c in cells] == ["alpha", "beta", "gamma"]:
            continue
        if len(cells) != 3:
            raise InputError(f"row {lineno}: expected 3 values, got {len(cells)}")
        try:
            triples.append(ElicitationTriple(*(parse_number(c) for c in cells)))
        except ValueError as exc:
            raise InputError(f"row {lineno}: {exc}") from None
    return triples


def write_results(stream: IO[str], results: Iterable[LossAversionResult | str]) -> None:
    """``kind,lambda`` rows; λ left blank when not identified."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["kind", "lambda"])
    for r in results:
        if isinstance(r, str):
            writer.writerow([r, ""])
        else:
            writer.writerow([r.kind.value, "" if r.lam is None else _fmt(r.lam)])


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    if isinstance(x, int):
        return str(x)
    xf = float(x)
    return str(int(xf)) if xf.is_integer() else repr(xf)

