"""Seeding and WDVV-driven reconstruction of the potential.

The initial data (seeds) consists of

* the limit cubics: c(e_{i,j1} + e_{i,j2} + e_{i,j3}, 0) = 1/(a_i s) when
  j1 + j2 + j3 = a_i, where s is the multiplicity factor of the triple
  (these encode the limit product together with the pairing),
* sector purity: every order-0 key touching two different sectors is 0,
* the degree-one stratum of length <= r: zero except the product key
  e_{1,1} + ... + e_{r,1} at order 1, whose value the seed mode fixes,
* in vanishing mode, the quartic coefficients c(2e_{i,1}+2e_{i,a_i-1}, 0)
  (= c(4 e_{i,1}, 0) for a_i = 2).

Every other admissible coefficient is solved one at a time: the
coefficient of a chosen extraction monomial in a chosen WDVV equation is
an affine function of the single unknown, so probing the equation yields
intercept and slope and the unknown is -intercept/slope.  Targets are
scheduled in the induction order of the underlying uniqueness argument
(joint order-0/order-1 induction on the length, then order by order), with
a worklist that defers targets whose prerequisite coefficients are not
known yet, and an exhaustive candidate search as fallback for every
target.  The trace records every seed and every solved equation, making
the realized order auditable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .geometry import Geometry, POINT, Twisted, UNIT, build_geometry
from .rationals import QQ, format_rational, parse_rational
from .series import (
    Potential,
    SeriesKey,
    admissible_keys,
    alpha_add,
    alpha_from_pairs,
    alpha_length,
    alpha_sub,
    basis_alpha,
    derivative_profile,
    exponents_with_scaled_degree,
    falling,
    format_key,
    is_admissible,
    key_sort_key,
    s_factor,
    support_sectors,
    wdeg_scaled,
)
from .wdvv import WdvvQuad, format_quad


class ReconstructionError(Exception):
    """Base class for solver failures."""


class SolverStuck(ReconstructionError):
    """Every candidate equation (including the exhaustive fallback) for
    some target has slope zero: the seeds do not determine it."""

    def __init__(self, geom: Geometry, targets):
        self.targets = list(targets)
        names = ", ".join(format_key(geom, t) for t in self.targets[:6])
        more = "" if len(self.targets) <= 6 else f" (+{len(self.targets) - 6} more)"
        super().__init__(f"no candidate determines: {names}{more}")


class InconsistentSeed(ReconstructionError):
    """A fully-known equation evaluates to a nonzero constant: the seeded
    constraint system is contradictory."""

    def __init__(self, geom: Geometry, quad: WdvvQuad, xkey: SeriesKey, value):
        self.quad = quad
        self.xkey = xkey
        self.value = value
        super().__init__(
            f"equation {format_quad(quad)} at {format_key(geom, xkey)} "
            f"evaluates to {format_rational(value)} != 0"
        )


class NoProgress(ReconstructionError):
    """A full worklist pass solved nothing while targets remain blocked."""

    def __init__(self, geom: Geometry, targets):
        self.targets = list(targets)
        names = ", ".join(format_key(geom, t) for t in self.targets[:6])
        more = "" if len(self.targets) <= 6 else f" (+{len(self.targets) - 6} more)"
        super().__init__(f"worklist deadlock on: {names}{more}")


# -- seed modes ---------------------------------------------------------


@dataclass(frozen=True)
class SeedMode:
    """Choice of initial data beyond the cubics and sector purity.

    kind is one of "standard" (degree-one product coefficient 1),
    "vanishing" (degree-one coefficient 0 plus the quartic seeds),
    "vanishing-no-quartic" (degree-one coefficient 0 only) or "rescaled"
    (degree-one coefficient an arbitrary nonzero rational).
    """

    kind: str
    value: object = None

    def degree_one_value(self):
        if self.kind == "standard":
            return QQ(1)
        if self.kind == "rescaled":
            return QQ(self.value)
        return QQ(0)

    @property
    def quartic_seeds(self) -> bool:
        return self.kind == "vanishing"

    def token(self) -> str:
        if self.kind == "rescaled":
            return f"rescaled:{format_rational(self.value)}"
        return self.kind

    @classmethod
    def from_token(cls, token: str) -> "SeedMode":
        token = token.strip()
        if token == "standard":
            return STANDARD
        if token == "vanishing":
            return VANISHING
        if token in ("vanishing-no-quartic", "vanishing-no-vii"):
            return VANISHING_NO_QUARTIC
        if token.startswith("rescaled:"):
            return rescaled_mode(parse_rational(token.partition(":")[2]))
        raise ValueError(f"unknown seed mode {token!r}")


STANDARD = SeedMode("standard")
VANISHING = SeedMode("vanishing")
VANISHING_NO_QUARTIC = SeedMode("vanishing-no-quartic")


def rescaled_mode(a) -> SeedMode:
    a = QQ(a)
    if a == 0:
        raise ValueError("rescaled seed value must be nonzero (use vanishing mode)")
    return SeedMode("rescaled", a)


# -- seeding ------------------------------------------------------------


def _seed_with_provenance(geom: Geometry, mode: SeedMode):
    pot = Potential(geom, mode)
    entries: list[tuple[SeriesKey, object, str]] = []

    def put(key, value, provenance):
        pot.set_coefficient(key, value)
        entries.append((key, QQ(value), provenance))

    # Limit cubics: single-sector length-3 keys.  Admissibility already
    # forces j1 + j2 + j3 = a_i, so all of them are nonzero here.
    for i, a in enumerate(geom.orders, start=1):
        for js in itertools.combinations_with_replacement(range(1, a), 3):
            if sum(js) != a:
                continue
            alpha = alpha_from_pairs(geom, [((i, j), 1) for j in js])
            put(SeriesKey(alpha, 0), QQ(1, a * s_factor(*js)), "limit-cubic")

    # Sector purity: all order-0 keys meeting two sectors vanish.  These
    # are recorded as hard constraints (stored zeros) so no later write
    # can violate them.
    for alpha in admissible_keys(geom, 0):
        if len(support_sectors(geom, alpha)) >= 2:
            put(SeriesKey(alpha, 0), QQ(0), "sector-purity")

    # Degree-one stratum of length <= r.
    product_alpha = alpha_from_pairs(geom, [((i, 1), 1) for i in range(1, geom.r + 1)])
    for alpha in admissible_keys(geom, 1):
        if alpha_length(alpha) > geom.r:
            continue
        if alpha == product_alpha:
            put(SeriesKey(alpha, 1), mode.degree_one_value(), "degree-one")
        else:
            put(SeriesKey(alpha, 1), QQ(0), "degree-one-support")

    if mode.quartic_seeds:
        for i, a in enumerate(geom.orders, start=1):
            alpha = alpha_from_pairs(geom, [((i, 1), 2), ((i, a - 1), 2)])
            value = QQ(-1, 96) if a == 2 else QQ(-1, 4 * a * a)
            put(SeriesKey(alpha, 0), value, "quartic")

    return pot, entries


def seed(geom: Geometry, mode: SeedMode = STANDARD) -> Potential:
    """Fresh unsealed potential holding exactly the seed coefficients."""
    pot, _ = _seed_with_provenance(geom, mode)
    return pot


def effective_max_order(geom: Geometry, m_max: int) -> int:
    """Positive chi caps the order: beyond 2/chi no key is admissible."""
    if geom.chi_scaled > 0:
        return min(m_max, (2 * geom.scale) // geom.chi_scaled)
    return m_max


# -- schedule -----------------------------------------------------------


@dataclass
class ScheduleEntry:
    """One target coefficient and its candidate equations, in preference
    order.  Each candidate is a (quad, extraction key) pair; the
    exhaustive fallback is generated lazily and is not listed here."""

    target: SeriesKey
    candidates: list[tuple[WdvvQuad, SeriesKey]] = field(default_factory=list)


def _product_alpha_except(geom: Geometry, skip_sector: int):
    return alpha_from_pairs(
        geom, [((k, 1), 1) for k in range(1, geom.r + 1) if k != skip_sector]
    )


def _candidates_order0(geom: Geometry, gamma, sector: int):
    """Guided candidates for a single-sector order-0 target."""
    a = geom.order(sector)
    ds = geom.deg_scaled
    slot = lambda j: geom.slot[Twisted(sector, j)]
    others = _product_alpha_except(geom, sector)
    cands = []

    # Top-index family: target contains e_{i,a_i-1} and pairs against the
    # degree-one product seed through sigma = (i, a_i-1); probe the
    # order-1 extraction of quads ((i,l),(i,l'),P,P).
    detopped = alpha_sub(gamma, basis_alpha(geom, sector, a - 1))
    if detopped is not None:
        for l in range(1, a):
            rest = alpha_sub(detopped, basis_alpha(geom, sector, l))
            if rest is None:
                continue
            for lp in range(l, a):
                rest2 = alpha_sub(rest, basis_alpha(geom, sector, lp))
                if rest2 is None:
                    continue
                if ds[slot(l)] + ds[slot(lp)] > geom.scale:
                    continue
                xkey = SeriesKey(alpha_add(rest2, others), 1)
                quad = WdvvQuad(Twisted(sector, l), Twisted(sector, lp), POINT, POINT)
                cands.append((quad, xkey))

    # Middle family: quads ((i,n),(i,n'),(i,l),P) at the order-1
    # extraction, for targets containing e_{i,1} and e_{i,l-1}.
    for l in range(2, a):
        base = alpha_sub(gamma, basis_alpha(geom, sector, 1))
        if base is None:
            break
        base = alpha_sub(base, basis_alpha(geom, sector, l - 1))
        if base is None:
            continue
        budget = l * geom.scale // a
        rest0 = alpha_sub(gamma, basis_alpha(geom, sector, l - 1))
        for n in range(1, a):
            rest1 = alpha_sub(rest0, basis_alpha(geom, sector, n))
            if rest1 is None:
                continue
            for np_ in range(n, a):
                rest2 = alpha_sub(rest1, basis_alpha(geom, sector, np_))
                if rest2 is None:
                    continue
                if ds[slot(n)] + ds[slot(np_)] > budget:
                    continue
                xkey = SeriesKey(alpha_add(rest2, others), 1)
                quad = WdvvQuad(
                    Twisted(sector, n), Twisted(sector, np_), Twisted(sector, l), POINT
                )
                cands.append((quad, xkey))

    # Quartic-slope family: pure order-0 extraction of quads
    # ((i,1),(i,l),(i,j),(i,j')), for targets containing e_{i,l+1}.
    for l in range(1, a - 1):
        rest0 = alpha_sub(gamma, basis_alpha(geom, sector, l + 1))
        if rest0 is None:
            continue
        for j in range(1, a):
            rest1 = alpha_sub(rest0, basis_alpha(geom, sector, j))
            if rest1 is None:
                continue
            for jp in range(j, a):
                rest2 = alpha_sub(rest1, basis_alpha(geom, sector, jp))
                if rest2 is None:
                    continue
                xkey = SeriesKey(rest2, 0)
                quad = WdvvQuad(
                    Twisted(sector, 1),
                    Twisted(sector, l),
                    Twisted(sector, j),
                    Twisted(sector, jp),
                )
                cands.append((quad, xkey))
    return cands


def _candidates_order1(geom: Geometry, gamma):
    cands = []
    for s, k in enumerate(gamma):
        lab = geom.twisted[s]
        if k >= 1 and lab.j >= 2:
            xkey = SeriesKey(alpha_sub(gamma, basis_alpha(geom, lab.sector, lab.j)), 1)
            quad = WdvvQuad(
                Twisted(lab.sector, 1), Twisted(lab.sector, lab.j - 1), POINT, POINT
            )
            cands.append((quad, xkey))
    if not cands:
        # Bottom-row support only; probe the sectors that are absent.
        present = support_sectors(geom, gamma)
        for i in range(1, geom.r + 1):
            if i not in present:
                a = geom.order(i)
                quad = WdvvQuad(Twisted(i, 1), Twisted(i, a - 1), POINT, POINT)
                cands.append((quad, SeriesKey(gamma, 1)))
    return cands


def _candidates_higher(geom: Geometry, gamma, m: int):
    cands = []
    if not any(gamma):
        for i in range(1, geom.r + 1):
            a = geom.order(i)
            quad = WdvvQuad(Twisted(i, 1), Twisted(i, a - 1), POINT, POINT)
            cands.append((quad, SeriesKey(gamma, m)))
        return cands
    for s, k in enumerate(gamma):
        lab = geom.twisted[s]
        if k >= 1 and lab.j >= 2:
            xkey = SeriesKey(alpha_sub(gamma, basis_alpha(geom, lab.sector, lab.j)), m)
            quad = WdvvQuad(
                Twisted(lab.sector, 1), Twisted(lab.sector, lab.j - 1), POINT, POINT
            )
            cands.append((quad, xkey))
    if not cands:
        # Bottom-row support: prefer sectors whose exponent differs from m
        # (nonzero slope) and absent sectors.
        order = sorted(
            range(1, geom.r + 1),
            key=lambda i: (gamma[geom.slot[Twisted(i, 1)]] == m, i),
        )
        for i in order:
            a = geom.order(i)
            quad = WdvvQuad(Twisted(i, 1), Twisted(i, a - 1), POINT, POINT)
            cands.append((quad, SeriesKey(gamma, m)))
    return cands


def build_schedule(
    geom: Geometry,
    m_max: int,
    mode: SeedMode = STANDARD,
    strategy: str = "guided",
) -> list[ScheduleEntry]:
    """Targets in the induction order, each with its candidate equations.

    The order-0 stratum is finite (wdeg == 2 bounds the length by
    2 max(a_i)) and is always scheduled completely, regardless of m_max;
    likewise order 1.  Orders 2..m_max follow, ordered by (m, length,
    exponents).  With strategy="exhaustive" the candidate lists are left
    empty so that only the fallback search is used.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if strategy not in ("guided", "exhaustive"):
        raise ValueError(f"unknown strategy {strategy!r}")
    seeded_pot, _ = _seed_with_provenance(geom, mode)
    seeded = set(seeded_pot.coeffs)
    guided = strategy == "guided"

    targets0 = [
        SeriesKey(alpha, 0)
        for alpha in admissible_keys(geom, 0)
        if SeriesKey(alpha, 0) not in seeded
        and len(support_sectors(geom, alpha)) == 1
    ]
    targets1 = [
        SeriesKey(alpha, 1)
        for alpha in admissible_keys(geom, 1)
        if SeriesKey(alpha, 1) not in seeded
    ]

    entries: list[ScheduleEntry] = []

    def emit(key: SeriesKey, cands):
        entries.append(ScheduleEntry(key, cands if guided else []))

    by_len0: dict[int, list[SeriesKey]] = {}
    for key in targets0:
        by_len0.setdefault(alpha_length(key.alpha), []).append(key)
    by_len1: dict[int, list[SeriesKey]] = {}
    for key in targets1:
        by_len1.setdefault(alpha_length(key.alpha), []).append(key)

    max_k = -1
    if by_len0:
        max_k = max(max_k, max(by_len0) - 4)
    if by_len1:
        max_k = max(max_k, max(by_len1) - geom.r - 1)
    for k in range(max_k + 1):
        level0 = sorted(by_len0.get(k + 4, ()), key=key_sort_key)
        level1 = sorted(by_len1.get(k + geom.r + 1, ()), key=key_sort_key)
        step1 = []
        rest = []
        for key in level0:
            sector = next(iter(support_sectors(geom, key.alpha)))
            top = geom.slot[Twisted(sector, geom.order(sector) - 1)]
            (step1 if key.alpha[top] >= 1 else rest).append(key)
        for key in step1:
            sector = next(iter(support_sectors(geom, key.alpha)))
            emit(key, _candidates_order0(geom, key.alpha, sector))
        for key in level1:
            emit(key, _candidates_order1(geom, key.alpha))
        for key in rest:
            sector = next(iter(support_sectors(geom, key.alpha)))
            emit(key, _candidates_order0(geom, key.alpha, sector))

    for m in range(2, effective_max_order(geom, m_max) + 1):
        for alpha in admissible_keys(geom, m):
            emit(SeriesKey(alpha, m), _candidates_higher(geom, alpha, m))
    return entries


# -- probing ------------------------------------------------------------

_ZERO = ("z",)
_TARGET = ("t",)


class _Blocked(Exception):
    def __init__(self, key):
        self.key = key


def _ref(pot: Potential, key: SeriesKey, target: SeriesKey):
    if key == target:
        return _TARGET
    if not is_admissible(pot.geometry, key):
        return _ZERO
    value = pot.coeffs.get(key)
    if value is None:
        raise _Blocked(key)
    if not value:
        return _ZERO
    return ("k", value)


@dataclass
class ProbeResult:
    """Affine data of one extraction: coefficient = -intercept/slope when
    the slope is nonzero and the equation is fully known."""

    status: str  # "solved" | "blocked" | "useless"
    value: object = None
    slope: object = None
    blocker: SeriesKey | None = None


def probe_candidate(
    pot: Potential, quad: WdvvQuad, xkey: SeriesKey, target: SeriesKey
) -> ProbeResult:
    """Intercept/slope of one WDVV extraction as a function of the target.

    The extraction coefficient is affine in any single unknown as long as
    the unknown never multiplies itself; self-pairings (possible only in
    pathological fallback candidates) are detected and reported useless.
    Touching an unknown coefficient other than the target that is not
    annihilated by a known zero makes the candidate blocked.
    """
    geom = pot.geometry
    rhs = 3 * geom.scale - sum(geom.degree_scaled(lab) for lab in quad)
    if wdeg_scaled(geom, xkey.alpha, xkey.m) != rhs:
        return ProbeResult("useless")

    intercept = QQ(0)
    slope = QQ(0)
    self_pair = QQ(0)
    two = 2 * geom.scale

    def side_const(triple):
        rest = [lab for lab in triple if lab is not UNIT]
        while len(rest) < 2:
            rest.append(UNIT)
        return geom.pairing(rest[0], rest[1])

    try:
        for sigma, tau, w in geom.eta_inverse_pairs:
            for x, y, z, t, sgn in (
                (quad.a, quad.b, quad.c, quad.d, 1),
                (quad.a, quad.c, quad.b, quad.d, -1),
            ):
                weight = w * sgn
                triple1 = (x, y, sigma)
                triple2 = (z, t, tau)
                an1 = UNIT in triple1
                an2 = UNIT in triple2
                if an1 and an2:
                    if xkey.m == 0 and not any(xkey.alpha):
                        intercept += weight * side_const(triple1) * side_const(triple2)
                    continue
                if an1 or an2:
                    series_triple = triple2 if an1 else triple1
                    const = side_const(triple1 if an1 else triple2)
                    if not const:
                        continue
                    units, points, vec, mults = derivative_profile(geom, series_triple)
                    if points and xkey.m == 0:
                        continue
                    key = SeriesKey(alpha_add(xkey.alpha, vec), xkey.m)
                    ref = _ref(pot, key, target)
                    if ref is _ZERO:
                        continue
                    mult = xkey.m ** points
                    for slot, kk in mults:
                        mult *= falling(key.alpha[slot], kk)
                    contribution = weight * const * mult
                    if ref is _TARGET:
                        slope += contribution
                    else:
                        intercept += contribution * ref[1]
                    continue

                u1, p1, vec1, mults1 = derivative_profile(geom, triple1)
                u2, p2, vec2, mults2 = derivative_profile(geom, triple2)
                e1deg = wdeg_scaled(geom, vec1, 0)
                for m1 in range(xkey.m + 1):
                    m2 = xkey.m - m1
                    if (p1 and m1 == 0) or (p2 and m2 == 0):
                        continue
                    want = two - e1deg - m1 * geom.chi_scaled
                    for beta1 in exponents_with_scaled_degree(geom, want, xkey.alpha):
                        k1 = SeriesKey(alpha_add(beta1, vec1), m1)
                        ref1 = _ref(pot, k1, target)
                        if ref1 is _ZERO:
                            continue
                        k2 = SeriesKey(
                            alpha_add(alpha_sub(xkey.alpha, beta1), vec2), m2
                        )
                        ref2 = _ref(pot, k2, target)
                        if ref2 is _ZERO:
                            continue
                        mult = m1 ** p1 * m2 ** p2
                        for slot, kk in mults1:
                            mult *= falling(k1.alpha[slot], kk)
                        for slot, kk in mults2:
                            mult *= falling(k2.alpha[slot], kk)
                        contribution = weight * mult
                        if ref1 is _TARGET and ref2 is _TARGET:
                            self_pair += contribution
                        elif ref1 is _TARGET:
                            slope += contribution * ref2[1]
                        elif ref2 is _TARGET:
                            slope += contribution * ref1[1]
                        else:
                            intercept += contribution * ref1[1] * ref2[1]
    except _Blocked as blocked:
        return ProbeResult("blocked", blocker=blocked.key)

    if self_pair:
        return ProbeResult("useless")
    if slope == 0:
        if intercept != 0:
            raise InconsistentSeed(geom, quad, xkey, intercept)
        return ProbeResult("useless")
    return ProbeResult("solved", value=-intercept / slope, slope=slope)


# -- exhaustive fallback -------------------------------------------------


def _canonical_quads(geom: Geometry):
    cached = getattr(geom, "_quad_cache", None)
    if cached is not None:
        return cached
    labels = [lab for lab in geom.labels if lab is not UNIT]
    pairs = [
        (labels[i], labels[j]) for i in range(len(labels)) for j in range(i, len(labels))
    ]
    quads = tuple(
        WdvvQuad(p1[0], p1[1], p2[0], p2[1])
        for i1, p1 in enumerate(pairs)
        for p2 in pairs[i1:]
    )
    geom._quad_cache = quads
    return quads


def _fallback_sockets(geom: Geometry):
    """Deduplicated (quad, vec1, p1, vec2, p2) slots: the target sits in a
    derivative with twisted indicators vec1 (p1 POINT factors), against a
    partner shifted by vec2 (p2 POINT factors).  Computed once per
    geometry, in deterministic quad order."""
    cached = getattr(geom, "_socket_cache", None)
    if cached is not None:
        return cached
    analytic: dict[tuple, None] = {}
    series: dict[tuple, None] = {}
    for quad in _canonical_quads(geom):
        a, b, c, d = quad
        for x, y, z, t in ((a, b, c, d), (c, d, a, b), (a, c, b, d), (b, d, a, c)):
            # Analytic partner: sigma = POINT pairs tau = UNIT, so the
            # partner side is the constant eta(z, t).
            if geom.pairing(z, t):
                _, p1, vec1, _ = derivative_profile(geom, (x, y, POINT))
                analytic[(quad, vec1)] = None
            for sigma, tau, _w in geom.eta_inverse_pairs:
                if sigma is UNIT or tau is UNIT:
                    continue
                _, p1, vec1, _ = derivative_profile(geom, (x, y, sigma))
                _, p2, vec2, _ = derivative_profile(geom, (z, t, tau))
                series[(quad, vec1, p1, vec2, p2)] = None
    cached = (tuple(analytic), tuple(series))
    geom._socket_cache = cached
    return cached


def exhaustive_candidates(pot: Potential, target: SeriesKey):
    """Generate every potentially useful (quad, extraction) candidate.

    A candidate is useful only if the target's derivative appears in one
    side of the equation against a structurally nonzero partner: either
    the analytic constant side or a stored nonzero coefficient.  The
    stream is deterministic: analytic partners first (by quad), then
    stored partners in canonical key order.
    """
    geom = pot.geometry
    analytic, series = _fallback_sockets(geom)
    seen: set[tuple] = set()

    if target.m >= 1:
        for quad, vec1 in analytic:
            beta = alpha_sub(target.alpha, vec1)
            if beta is None:
                continue
            mark = (quad, SeriesKey(beta, target.m))
            if mark not in seen:
                seen.add(mark)
                yield mark

    viable: dict[tuple, None] = {}
    for quad, vec1, p1, vec2, p2 in series:
        if p1 and target.m == 0:
            continue
        beta1 = alpha_sub(target.alpha, vec1)
        if beta1 is None:
            continue
        viable[(quad, beta1, vec2, p2)] = None

    partners = [
        key for key, value in pot.items_sorted() if value and key != target
    ]
    for k2 in partners:
        for quad, beta1, vec2, p2 in viable:
            if p2 and k2.m == 0:
                continue
            beta2 = alpha_sub(k2.alpha, vec2)
            if beta2 is None:
                continue
            mark = (quad, SeriesKey(alpha_add(beta1, beta2), target.m + k2.m))
            if mark not in seen:
                seen.add(mark)
                yield mark


# -- the solver ---------------------------------------------------------


@dataclass
class SolveStep:
    target: SeriesKey
    quad: WdvvQuad
    xkey: SeriesKey
    slope: object
    value: object


@dataclass
class ReconstructionTrace:
    """Audit record: which equation determined which coefficient."""

    geometry: Geometry
    mode: SeedMode
    seeds: list[tuple[SeriesKey, object, str]] = field(default_factory=list)
    steps: list[SolveStep] = field(default_factory=list)
    free: list[SeriesKey] = field(default_factory=list)

    def to_text(self) -> str:
        geom = self.geometry
        lines = [
            f"reconstruction-trace: multiplet={geom.multiplet} mode={self.mode.token()}"
        ]
        lines.append("seed | t1^2 tmu^1 | 1/2 | pairing")
        for i, a in enumerate(geom.orders, start=1):
            for j in range(1, a // 2 + 1):
                jc = a - j
                value = QQ(1, 2 * a) if j == jc else QQ(1, a)
                lines.append(
                    f"seed | t1^1 ({i},{j})^1 ({i},{jc})^1 | {format_rational(value)} | pairing"
                )
        order = {"limit-cubic": 0, "sector-purity": 1, "degree-one": 2,
                 "degree-one-support": 3, "quartic": 4}
        for key, value, provenance in sorted(
            self.seeds, key=lambda e: (order.get(e[2], 9),) + key_sort_key(e[0])
        ):
            lines.append(
                f"seed | {format_key(geom, key)} | {format_rational(value)} | {provenance}"
            )
        for step in self.steps:
            lines.append(
                f"solve | {format_key(geom, step.target)} | {format_rational(step.value)}"
                f" | quad={format_quad(step.quad)} | extract={format_key(geom, step.xkey)}"
                f" | slope={format_rational(step.slope)}"
            )
        for key in self.free:
            lines.append(f"free | {format_key(geom, key)}")
        return "\n".join(lines) + "\n"


def _attempt(pot: Potential, entry: ScheduleEntry, use_fallback: bool):
    """Try the entry's candidates (then the fallback); returns
    ("solved", step) or ("stalled", had_blocked)."""
    target = entry.target
    blocked = False
    streams = [iter(entry.candidates)]
    if use_fallback:
        streams.append(exhaustive_candidates(pot, target))
    for stream in streams:
        for quad, xkey in stream:
            result = probe_candidate(pot, quad, xkey, target)
            if result.status == "solved":
                step = SolveStep(target, quad, xkey, result.slope, result.value)
                return "solved", step
            if result.status == "blocked":
                blocked = True
    return "stalled", blocked


def solve_target(pot: Potential, entry: ScheduleEntry):
    """Solve one target from a potential holding all its prerequisites.

    Returns the solved value without storing it.  Raises SolverStuck when
    no candidate (including the exhaustive fallback) has nonzero slope,
    and InconsistentSeed if a fully-known candidate is violated.
    """
    status, payload = _attempt(pot, entry, use_fallback=True)
    if status == "solved":
        return payload.value
    raise SolverStuck(pot.geometry, [entry.target])


def reconstruct(
    multiplet,
    m_max: int,
    mode: SeedMode = STANDARD,
    *,
    strategy: str = "guided",
) -> tuple[Potential, ReconstructionTrace]:
    """Seed, then solve every admissible coefficient up to order m_max.

    Returns the sealed potential and the full trace.  The order-0 stratum
    is always completed (it is finite); positive chi lowers the effective
    maximal order to floor(2/chi).  Raises SolverStuck, NoProgress or
    InconsistentSeed as the worklist dictates; in vanishing-no-quartic
    mode, underdetermined order-0 coefficients are reported as free in the
    trace instead (the quartic values are genuinely extra initial data).
    """
    geom = build_geometry(multiplet)
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    pot, seed_entries = _seed_with_provenance(geom, mode)
    trace = ReconstructionTrace(geom, mode, seeds=seed_entries)
    pending = build_schedule(geom, m_max, mode, strategy)
    use_fallback = strategy == "exhaustive"

    while pending:
        progressed = False
        still: list[ScheduleEntry] = []
        any_blocked = False
        for entry in pending:
            status, payload = _attempt(pot, entry, use_fallback)
            if status == "solved":
                pot.set_coefficient(entry.target, payload.value)
                trace.steps.append(payload)
                progressed = True
            else:
                any_blocked = any_blocked or payload
                still.append(entry)
        pending = still
        if pending and not progressed:
            if not use_fallback:
                # Escalate once: rerun the stalled set with the fallback.
                use_fallback = True
                continue
            remaining = [entry.target for entry in pending]
            if mode.kind == "vanishing-no-quartic" and all(
                t.m == 0 for t in remaining
            ):
                trace.free = sorted(remaining, key=key_sort_key)
                pending = []
                break
            if any_blocked:
                raise NoProgress(geom, remaining)
            raise SolverStuck(geom, remaining)

    pot.seal(effective_max_order(geom, m_max))
    return pot, trace


def rescale_novikov(pot: Potential, a) -> Potential:
    """Multiply every order-m coefficient by a^m (a nonzero).

    This is the coordinate change shifting the exponential coordinate by
    log(a), so the result satisfies all WDVV equations again.
    """
    a = QQ(a)
    if a == 0:
        raise ValueError("rescaling factor must be nonzero")
    mode = pot.seed_mode
    if mode is not None and mode.kind in ("standard", "rescaled"):
        scale = a if mode.kind == "standard" else a * QQ(mode.value)
        mode = STANDARD if scale == 1 else rescaled_mode(scale)
    out = Potential(pot.geometry, mode)
    for key, value in pot.coeffs.items():
        out.set_coefficient(key, value * a ** key.m)
    if pot.sealed:
        out.seal(pot.max_order)
    return out
