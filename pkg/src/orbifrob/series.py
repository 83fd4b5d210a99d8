"""Sparse exact-rational coefficient store for the Frobenius potential.

The potential splits as F = F_triv + series, where

    F_triv = 1/2 t1^2 tmu + 1/2 t1 sum_i sum_j (1/a_i) t_{i,j} t_{i,a_i-j}

is the full t1-dependent part (its cubic coefficients are forced by the
pairing, so it is kept analytic and never stored) and the series part is

    sum c(alpha, m) t^alpha exp(m tmu)

over exponent vectors alpha on the twisted coordinates and exponential
orders m >= 0.  Every stored key satisfies the Euler constraint

    wdeg(alpha, m) := sum alpha_{i,j} (a_i - j)/a_i + m chi == 2

exactly; insertion asserts it.

Exponent vectors are dense integer tuples in the canonical twisted-label
order of the geometry (sparse pairs only appear in serialisation).  Keys
are SeriesKey(alpha, m) named tuples, cheap to hash and compare.
"""

from __future__ import annotations

from typing import NamedTuple

from .geometry import POINT, UNIT, Geometry, Twisted
from .rationals import QQ


class SeriesKey(NamedTuple):
    """Index (alpha, m) of one series coefficient."""

    alpha: tuple[int, ...]
    m: int


# -- exponent vector helpers ------------------------------------------


def zero_alpha(geom: Geometry) -> tuple[int, ...]:
    return (0,) * geom.n_twisted


def basis_alpha(geom: Geometry, sector: int, j: int) -> tuple[int, ...]:
    """Indicator exponent vector of the twisted coordinate (sector, j)."""
    slot = geom.slot[Twisted(sector, j)]
    return tuple(1 if s == slot else 0 for s in range(geom.n_twisted))


def alpha_from_pairs(geom: Geometry, pairs) -> tuple[int, ...]:
    """Build an exponent vector from ((sector, j), exponent) items."""
    vec = [0] * geom.n_twisted
    items = pairs.items() if hasattr(pairs, "items") else pairs
    for (sector, j), k in items:
        if k < 0:
            raise ValueError("exponents must be non-negative")
        vec[geom.slot[Twisted(sector, j)]] += int(k)
    return tuple(vec)


def alpha_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def alpha_sub(a: tuple[int, ...], b: tuple[int, ...]):
    """Componentwise difference, or None if it would go negative."""
    out = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def alpha_length(alpha: tuple[int, ...]) -> int:
    return sum(alpha)


def sparse_items(geom: Geometry, alpha: tuple[int, ...]):
    """Nonzero entries as (Twisted label, exponent) in canonical order."""
    return [(geom.twisted[s], k) for s, k in enumerate(alpha) if k]


def support_sectors(geom: Geometry, alpha: tuple[int, ...]) -> set[int]:
    return {geom.twisted[s].sector for s, k in enumerate(alpha) if k}


def alpha_sort_key(alpha: tuple[int, ...]):
    """Canonical exponent order: by length, then leading sectors first."""
    return (sum(alpha), tuple(-k for k in alpha))


def key_sort_key(key: "SeriesKey"):
    """Canonical key order: (m, length, canonical exponent order)."""
    return (key.m, sum(key.alpha), tuple(-k for k in key.alpha))


def format_exponents(geom: Geometry, alpha: tuple[int, ...]) -> str:
    """Monomial part of a record: "(i,j)^k ..." or "1" when empty."""
    items = sparse_items(geom, alpha)
    if not items:
        return "1"
    return " ".join(f"({lab.sector},{lab.j})^{k}" for lab, k in items)


def format_key(geom: Geometry, key: SeriesKey) -> str:
    return f"{format_exponents(geom, key.alpha)} | m={key.m}"


# -- grading -----------------------------------------------------------


def weighted_degree(geom: Geometry, key: SeriesKey):
    """wdeg(alpha, m) = sum alpha_{i,j} (a_i-j)/a_i + m chi, exact."""
    return QQ(wdeg_scaled(geom, key.alpha, key.m), geom.scale)


def wdeg_scaled(geom: Geometry, alpha: tuple[int, ...], m: int) -> int:
    total = m * geom.chi_scaled
    for k, d in zip(alpha, geom.deg_scaled):
        if k:
            total += k * d
    return total


def is_admissible(geom: Geometry, key: SeriesKey) -> bool:
    """Whether the key satisfies the Euler constraint wdeg == 2."""
    return wdeg_scaled(geom, key.alpha, key.m) == 2 * geom.scale


def exponents_with_scaled_degree(
    geom: Geometry, target: int, bound: tuple[int, ...] | None = None
) -> tuple[tuple[int, ...], ...]:
    """All alpha >= 0 with sum alpha_s * deg_scaled[s] == target.

    With a bound, additionally alpha <= bound componentwise.  The
    unbounded sets are cached per geometry (they recur constantly in the
    solver) and returned sorted by (length, tuple), the canonical order.
    """
    if target < 0:
        return ()
    if bound is None and target in geom._exponent_cache:
        return geom._exponent_cache[target]

    degs = geom.deg_scaled
    n = geom.n_twisted
    out: list[tuple[int, ...]] = []
    vec = [0] * n

    def walk(slot: int, remaining: int):
        if slot == n - 1:
            d = degs[slot]
            q, r = divmod(remaining, d)
            if r == 0 and (bound is None or q <= bound[slot]):
                vec[slot] = q
                out.append(tuple(vec))
                vec[slot] = 0
            return
        d = degs[slot]
        top = remaining // d
        if bound is not None:
            top = min(top, bound[slot])
        for k in range(top + 1):
            vec[slot] = k
            walk(slot + 1, remaining - k * d)
        vec[slot] = 0

    if n:
        walk(0, target)
    elif target == 0:
        out.append(())
    result = tuple(sorted(out, key=alpha_sort_key))
    if bound is None:
        geom._exponent_cache[target] = result
    return result


def admissible_keys(geom: Geometry, m: int) -> list[tuple[int, ...]]:
    """All exponent vectors alpha with wdeg(alpha, m) == 2, canonical order.

    Finite for every m since all twisted degrees are positive.  Empty when
    2 - m*chi is negative or has no representation.
    """
    if m < 0:
        raise ValueError("exponential order m must be >= 0")
    target = 2 * geom.scale - m * geom.chi_scaled
    return list(exponents_with_scaled_degree(geom, target))


# -- derivative multiplicities ------------------------------------------


def s_factor(a: int, b: int, c: int) -> int:
    """Multiplicity factor of a triple of indices: 1, 6 or 2.

    1 when pairwise distinct, 6 when all equal, 2 otherwise.  Only used to
    mirror triple-derivative multiplicities in tests and seed formulas;
    the generic code paths compute falling factorials directly.
    """
    if a == b == c:
        return 6
    if a != b and b != c and a != c:
        return 1
    return 2


def falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def derivative_profile(geom: Geometry, labels):
    """Split derivative labels into (unit count, point count, twisted multiset).

    The twisted multiset is returned as the indicator exponent vector and
    a list of (slot, multiplicity) pairs.  Cached per geometry (the same
    few hundred triples recur in every probe).
    """
    cache_key = tuple(sorted(geom.label_index[lab] for lab in labels))
    cache = geom._profile_cache
    got = cache.get(cache_key)
    if got is not None:
        return got
    units = 0
    points = 0
    mults: dict[int, int] = {}
    for lab in labels:
        if lab is UNIT:
            units += 1
        elif lab is POINT:
            points += 1
        else:
            slot = geom.slot[lab]
            mults[slot] = mults.get(slot, 0) + 1
    vec = [0] * geom.n_twisted
    for slot, k in mults.items():
        vec[slot] = k
    result = (units, points, tuple(vec), tuple(sorted(mults.items())))
    cache[cache_key] = result
    return result


# -- the potential ------------------------------------------------------


class Potential:
    """Geometry plus the exact coefficient map of the series part.

    Built single-threaded by the reconstruction; once sealed it is
    immutable (absent key == coefficient 0) and safe for concurrent reads.
    """

    def __init__(self, geometry: Geometry, seed_mode=None):
        self.geometry = geometry
        self.seed_mode = seed_mode
        self.coeffs: dict[SeriesKey, object] = {}
        self.sealed = False
        self.max_order: int | None = None
        self._derivative_cache: dict[tuple, dict] = {}

    # -- store ----------------------------------------------------------

    def set_coefficient(self, key: SeriesKey, value) -> None:
        if self.sealed:
            raise ValueError("potential is sealed")
        if not is_admissible(self.geometry, key):
            raise ValueError(
                f"key {format_key(self.geometry, key)} violates the Euler "
                f"constraint: wdeg = {weighted_degree(self.geometry, key)} != 2"
            )
        self.coeffs[key] = QQ(value)

    def get_coefficient(self, key: SeriesKey):
        """Stored value or 0.  The t1-part lives in F_triv, never here."""
        return self.coeffs.get(key, QQ(0))

    def known(self, key: SeriesKey) -> bool:
        return key in self.coeffs

    def seal(self, max_order: int) -> None:
        self.sealed = True
        self.max_order = max_order

    def items_sorted(self):
        """Stored (key, value) pairs in canonical (m, length, alpha) order."""
        return sorted(self.coeffs.items(), key=lambda kv: key_sort_key(kv[0]))

    def orders_stored(self) -> set[int]:
        return {key.m for key in self.coeffs}

    # -- third derivatives ------------------------------------------------

    def third_derivative_coefficient(self, d1, d2, d3, target: SeriesKey):
        """Coefficient of t^alpha exp(m tmu) in the third derivative of F.

        Symmetric in the three labels.  F_triv contributes only through
        derivatives containing UNIT, and those are the constants eta of
        the remaining pair; the series contributes through keys shifted by
        the twisted indicators, with falling-factorial multiplicities and
        a factor m per POINT derivative.
        """
        geom = self.geometry
        labels = (d1, d2, d3)
        for lab in labels:
            geom.check_label(lab)
        units, points, vec, mults = derivative_profile(geom, labels)
        if units:
            rest = [lab for lab in labels if lab is not UNIT]
            while len(rest) < 2:
                rest.append(UNIT)
            if target.m == 0 and not any(target.alpha):
                return geom.pairing(rest[0], rest[1])
            return QQ(0)
        key = SeriesKey(alpha_add(target.alpha, vec), target.m)
        c = self.coeffs.get(key)
        if c is None:
            return QQ(0)
        mult = target.m ** points
        for slot, k in mults:
            mult *= falling(key.alpha[slot], k)
        return c * mult

    def third_derivative_map(self, d1, d2, d3) -> dict[SeriesKey, object]:
        """Full coefficient map of one third derivative (0 entries absent).

        Cached on sealed potentials; computed fresh otherwise.
        """
        geom = self.geometry
        labels = (d1, d2, d3)
        cache_key = tuple(sorted(geom.label_index[lab] for lab in labels))
        if self.sealed and cache_key in self._derivative_cache:
            return self._derivative_cache[cache_key]

        units, points, vec, mults = derivative_profile(geom, labels)
        out: dict[SeriesKey, object] = {}
        if units:
            rest = [lab for lab in labels if lab is not UNIT]
            while len(rest) < 2:
                rest.append(UNIT)
            value = geom.pairing(rest[0], rest[1])
            if value:
                out[SeriesKey(zero_alpha(geom), 0)] = value
        else:
            for key, c in self.coeffs.items():
                if not c:
                    continue
                if points and key.m == 0:
                    continue
                beta = alpha_sub(key.alpha, vec)
                if beta is None:
                    continue
                mult = key.m ** points
                for slot, k in mults:
                    mult *= falling(key.alpha[slot], k)
                out[SeriesKey(beta, key.m)] = c * mult
        if self.sealed:
            self._derivative_cache[cache_key] = out
        return out

    def __repr__(self):
        state = "sealed" if self.sealed else "building"
        return (
            f"Potential({self.geometry.multiplet}, {len(self.coeffs)} coefficients, "
            f"{state})"
        )
