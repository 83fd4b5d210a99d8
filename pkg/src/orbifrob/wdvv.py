"""WDVV coefficient extraction and the exact residual scan.

For a coordinate quadruple (a, b, c, d) the associativity equation is

    sum_{s,t} F_abs eta^{st} F_tcd  -  sum_{s,t} F_acs eta^{st} F_tbd = 0

with third derivatives F_xyz of the potential.  This module extracts the
coefficient of a single monomial t^beta exp(m tmu) from the left hand side
(wdvv_coefficient), enumerates all degree-admissible target monomials of
an equation (admissible_targets), and sweeps every equation of a sealed
potential (residual_scan).

The scan clears denominators once (a single lcm over the store and the
pairing entries) and convolves integer maps whose keys are exponent
vectors packed into single machine integers, so residuals are exact and
the sweep stays fast.  For a target of order m only stored orders
m1 + m2 = m contribute, all <= m_max, hence reported residuals are exact
values of the equations, not truncations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .geometry import Geometry, UNIT, format_label
from .rationals import QQ
from .series import (
    Potential,
    SeriesKey,
    alpha_sub,
    exponents_with_scaled_degree,
    format_key,
    key_sort_key,
)


class WdvvQuad(NamedTuple):
    """The four coordinate labels of one associativity equation."""

    a: object
    b: object
    c: object
    d: object


def format_quad(quad: WdvvQuad) -> str:
    return "(" + ",".join(format_label(lab) for lab in quad) + ")"


def wdvv_coefficient(pot: Potential, quad: WdvvQuad, target: SeriesKey):
    """Exact coefficient of t^target in the equation WDVV(a, b, c, d).

    Pure; evaluates the two eta-contracted products by sparse convolution
    over the stored keys, split as m1 + m2 = target.m.
    """
    geom = pot.geometry
    a, b, c, d = quad
    total = QQ(0)
    for sigma, tau, w in geom.eta_inverse_pairs:
        total += w * _convolve_at(pot, (a, b, sigma), (c, d, tau), target)
        total -= w * _convolve_at(pot, (a, c, sigma), (b, d, tau), target)
    return total


def _convolve_at(pot: Potential, triple1, triple2, target: SeriesKey):
    d1 = pot.third_derivative_map(*triple1)
    d2 = pot.third_derivative_map(*triple2)
    if not d1 or not d2:
        return QQ(0)
    if len(d1) > len(d2):
        d1, d2 = d2, d1
    total = QQ(0)
    for k1, v1 in d1.items():
        m2 = target.m - k1.m
        if m2 < 0:
            continue
        beta = alpha_sub(target.alpha, k1.alpha)
        if beta is None:
            continue
        v2 = d2.get(SeriesKey(beta, m2))
        if v2 is not None:
            total += v1 * v2
    return total


def admissible_targets(geom: Geometry, quad: WdvvQuad, m: int) -> list[tuple[int, ...]]:
    """All beta >= 0 that can carry a nonzero coefficient of WDVV(quad).

    Quasi-homogeneity pins wdeg(beta) + m chi to 3 minus the degree sum of
    the quadruple, so the set is finite; it is returned in canonical
    (length, tuple) order.
    """
    if m < 0:
        raise ValueError("exponential order m must be >= 0")
    rhs = 3 * geom.scale - sum(geom.degree_scaled(lab) for lab in quad)
    return list(exponents_with_scaled_degree(geom, rhs - m * geom.chi_scaled))


@dataclass
class ResidualReport:
    """Outcome of a residual scan: exact nonzero residuals, if any."""

    geometry: Geometry
    m_max: int
    quads_checked: int = 0
    targets_checked: dict[int, int] = field(default_factory=dict)
    nonzero: list[tuple[WdvvQuad, SeriesKey, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonzero

    def to_text(self) -> str:
        lines = [
            f"residual-scan: multiplet={self.geometry.multiplet} m-max={self.m_max}",
            f"quads-checked: {self.quads_checked}",
            "targets-checked: "
            + ", ".join(f"m={m}: {n}" for m, n in sorted(self.targets_checked.items())),
        ]
        for quad, key, value in self.nonzero:
            lines.append(
                f"residual | {format_quad(quad)} | {format_key(self.geometry, key)} | {value}"
            )
        lines.append(f"nonzero-residuals: {len(self.nonzero)}")
        return "\n".join(lines) + "\n"


def residual_scan(pot: Potential, m_max: int) -> ResidualReport:
    """Evaluate every WDVV equation of a sealed potential up to order m_max.

    Quads are canonicalised up to the symmetries a<->b, c<->d and
    (a,b)<->(c,d); quads containing the unit label are skipped (their
    equations vanish identically).  Distinct quads may be scanned
    concurrently in principle; this implementation is sequential but
    shares the pair products between the quads that reuse them.
    """
    if not pot.sealed:
        raise ValueError("residual_scan requires a sealed potential")
    if pot.max_order is not None and pot.max_order < m_max:
        raise ValueError(
            f"potential is complete up to order {pot.max_order}, cannot scan to {m_max}"
        )
    geom = pot.geometry
    report = ResidualReport(geom, m_max)

    # One denominator for the whole store: entries of the scaled maps are
    # plain integers and products/sums stay exact.
    scale = math.lcm(*geom.orders, *(int(c.denominator) for c in pot.coeffs.values()), 1)

    # Packing: one slot of `shift` bits per twisted coordinate plus low
    # bits for m; headroom for sums of two admissible keys.
    max_entry = 1
    for m in range(m_max + 1):
        budget = 2 * geom.scale - m * geom.chi_scaled
        if budget < 0:
            continue
        for d in geom.deg_scaled:
            max_entry = max(max_entry, budget // d)
    shift = (2 * max_entry + 1).bit_length()
    mbits = max((2 * m_max + 1).bit_length(), 1)
    mask = (1 << shift) - 1
    mmask = (1 << mbits) - 1

    def pack(key: SeriesKey) -> int:
        packed = key.m
        for s, k in enumerate(key.alpha):
            if k:
                packed |= k << (mbits + s * shift)
        return packed

    def unpack(packed: int) -> SeriesKey:
        m = packed & mmask
        packed >>= mbits
        alpha = []
        for _ in range(geom.n_twisted):
            alpha.append(packed & mask)
            packed >>= shift
        return SeriesKey(tuple(alpha), m)

    labels = [lab for lab in geom.labels if lab is not UNIT]
    eta_pairs = geom.eta_inverse_pairs

    dmaps: dict[tuple, dict[int, dict[int, int]]] = {}

    def dmap(pair: tuple[int, int], sigma) -> dict[int, dict[int, int]]:
        cache_key = (pair, geom.label_index[sigma])
        got = dmaps.get(cache_key)
        if got is not None:
            return got
        raw = pot.third_derivative_map(labels[pair[0]], labels[pair[1]], sigma)
        out: dict[int, dict[int, int]] = {}
        for key, value in raw.items():
            if key.m > m_max:
                continue
            scaled = value * scale
            num = int(scaled)
            if num != scaled:  # pragma: no cover - scale is an lcm, always exact
                raise AssertionError("denominator not cleared")
            if num:
                out.setdefault(key.m, {})[pack(key)] = num
        dmaps[cache_key] = out
        return out

    products: dict[tuple, dict[int, int]] = {}

    def product(p1: tuple[int, int], p2: tuple[int, int]) -> dict[int, int]:
        if p2 < p1:
            p1, p2 = p2, p1
        cache_key = (p1, p2)
        got = products.get(cache_key)
        if got is not None:
            return got
        out: dict[int, int] = {}
        get = out.get
        for sigma, tau, w in eta_pairs:
            d1 = dmap(p1, sigma)
            if not d1:
                continue
            d2 = dmap(p2, tau)
            if not d2:
                continue
            for m1, map1 in d1.items():
                for m2, map2 in d2.items():
                    if m1 + m2 > m_max:
                        continue
                    for k1, v1 in map1.items():
                        wv1 = w * v1
                        for k2, v2 in map2.items():
                            k = k1 + k2
                            prev = get(k)
                            out[k] = wv1 * v2 if prev is None else prev + wv1 * v2
        products[cache_key] = out
        return out

    pairs = [
        (i, j) for i in range(len(labels)) for j in range(i, len(labels))
    ]

    denom = scale * scale
    target_counts: dict[int, int] = {m: 0 for m in range(m_max + 1)}
    for i1, p1 in enumerate(pairs):
        for p2 in pairs[i1:]:
            quad = WdvvQuad(labels[p1[0]], labels[p1[1]], labels[p2[0]], labels[p2[1]])
            report.quads_checked += 1
            for m in range(m_max + 1):
                target_counts[m] += len(admissible_targets(geom, quad, m))
            lhs = product(p1, p2)
            rhs = product(
                tuple(sorted((p1[0], p2[0]))), tuple(sorted((p1[1], p2[1])))
            )
            bad = []
            for k in lhs.keys() | rhs.keys():
                diff = lhs.get(k, 0) - rhs.get(k, 0)
                if diff:
                    key = unpack(k)
                    bad.append((key, QQ(diff, denom)))
            for key, value in sorted(bad, key=lambda t: key_sort_key(t[0])):
                report.nonzero.append((quad, key, value))
    report.targets_checked = target_counts
    return report
