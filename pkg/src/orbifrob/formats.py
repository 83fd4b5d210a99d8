"""Canonical text formats: potential files, trace files, key queries.

The potential file is line oriented and fully deterministic (records
sorted by order, length, exponents; rationals in lowest terms; zero
coefficients omitted), so equal coefficient maps serialize to identical
bytes and golden files diff cleanly:

    frobenius-potential v1
    multiplet: 2,2,3
    mode: standard
    max-order: 3
    coefficients: 17
    (1,1)^1 (2,1)^1 (3,1)^1 | m=1 | 1
    ...
"""

from __future__ import annotations

import re
from pathlib import Path

from .geometry import Geometry, build_geometry
from .rationals import format_rational, parse_rational
from .reconstruct import ReconstructionTrace, SeedMode, STANDARD
from .series import (
    Potential,
    SeriesKey,
    alpha_from_pairs,
    format_exponents,
    key_sort_key,
    zero_alpha,
)

MAGIC = "frobenius-potential v1"

_EXPONENT = re.compile(r"^\((\d+),(\d+)\)(?:\^(\d+))?$")


def parse_exponents(geom: Geometry, text: str) -> tuple[int, ...]:
    """Parse "(i,j)^k ..." (or "1" for the empty monomial)."""
    text = text.strip()
    if text == "1":
        return zero_alpha(geom)
    pairs = []
    for token in text.split():
        match = _EXPONENT.match(token)
        if not match:
            raise ValueError(f"malformed exponent token {token!r}")
        i, j, k = int(match.group(1)), int(match.group(2)), match.group(3)
        pairs.append(((i, j), 1 if k is None else int(k)))
    try:
        return alpha_from_pairs(geom, pairs)
    except KeyError as exc:
        raise ValueError(f"exponent out of range in {text!r}") from exc


def parse_key_query(geom: Geometry, text: str) -> SeriesKey:
    """Parse a coefficient query such as "(1,1)^4 m=0"."""
    tokens = text.strip().split()
    if not tokens or not tokens[-1].startswith("m="):
        raise ValueError(f"query {text!r} must end with m=<order>")
    try:
        m = int(tokens[-1][2:])
    except ValueError as exc:
        raise ValueError(f"bad order in query {text!r}") from exc
    if m < 0:
        raise ValueError("order must be non-negative")
    alpha = parse_exponents(geom, " ".join(tokens[:-1]) or "1")
    return SeriesKey(alpha, m)


def serialize_potential(pot: Potential) -> str:
    if not pot.sealed:
        raise ValueError("only sealed potentials are serialized")
    geom = pot.geometry
    mode = pot.seed_mode if pot.seed_mode is not None else STANDARD
    records = [
        (key, value) for key, value in pot.items_sorted() if value
    ]
    lines = [
        MAGIC,
        f"multiplet: {geom.multiplet}",
        f"mode: {mode.token()}",
        f"max-order: {pot.max_order}",
        f"coefficients: {len(records)}",
    ]
    for key, value in records:
        lines.append(
            f"{format_exponents(geom, key.alpha)} | m={key.m} | {format_rational(value)}"
        )
    return "\n".join(lines) + "\n"


def parse_potential(text: str) -> Potential:
    lines = [line.rstrip("\n") for line in text.splitlines()]
    lines = [line for line in lines if line.strip()]
    if not lines or lines[0].strip() != MAGIC:
        raise ValueError(f"not a potential file (expected {MAGIC!r} header)")

    def header(idx: int, name: str) -> str:
        if idx >= len(lines) or not lines[idx].startswith(name + ":"):
            raise ValueError(f"missing {name!r} header line")
        return lines[idx].partition(":")[2].strip()

    geom = build_geometry(header(1, "multiplet"))
    mode = SeedMode.from_token(header(2, "mode"))
    max_order = int(header(3, "max-order"))
    count = int(header(4, "coefficients"))
    records = lines[5:]
    if len(records) != count:
        raise ValueError(
            f"coefficient count mismatch: header says {count}, found {len(records)}"
        )
    pot = Potential(geom, mode)
    seen: set[SeriesKey] = set()
    for line in records:
        parts = [part.strip() for part in line.split("|")]
        if len(parts) != 3 or not parts[1].startswith("m="):
            raise ValueError(f"malformed record {line!r}")
        alpha = parse_exponents(geom, parts[0])
        m = int(parts[1][2:])
        value = parse_rational(parts[2])
        key = SeriesKey(alpha, m)
        if key in seen:
            raise ValueError(f"duplicate record for {parts[0]} | m={m}")
        seen.add(key)
        if value:
            pot.set_coefficient(key, value)
    pot.seal(max_order)
    return pot


def write_potential(pot: Potential, path) -> None:
    Path(path).write_text(serialize_potential(pot), encoding="utf-8")


def read_potential(path) -> Potential:
    return parse_potential(Path(path).read_text(encoding="utf-8"))


def write_trace(trace: ReconstructionTrace, path) -> None:
    Path(path).write_text(trace.to_text(), encoding="utf-8")


def diff_potentials(pot1: Potential, pot2: Potential):
    """First difference between two coefficient maps, or None.

    Returns (description, key) with keys compared in canonical order;
    absent coefficients count as 0.  Multiplets must match to compare.
    """
    g1, g2 = pot1.geometry, pot2.geometry
    if g1.multiplet != g2.multiplet:
        return (f"multiplets differ: {g1.multiplet} vs {g2.multiplet}", None)
    keys = {k for k, v in pot1.coeffs.items() if v}
    keys |= {k for k, v in pot2.coeffs.items() if v}
    for key in sorted(keys, key=key_sort_key):
        v1 = pot1.get_coefficient(key)
        v2 = pot2.get_coefficient(key)
        if v1 != v2:
            return (
                f"{format_exponents(g1, key.alpha)} | m={key.m}: "
                f"{format_rational(v1)} vs {format_rational(v2)}",
                key,
            )
    return None
