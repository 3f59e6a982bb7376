"""Liftability criterion, nonpositive spectrum, and verdict assembly.

The computable core of the analysis.  For a weight system with total weight
kappa, the residue class of (g/s) dz0 /\ ... /\ dzn lifts whenever no
nonnegative integer combination of the weights equals 1 - kappa; this
module decides that by dynamic programming on the cleared-denominator
integers.  The same quantity indexes the nonpositive part of the
singularity spectrum, {kappa + sum k_i a_i - 1 <= 0}, which is enumerated
exactly.  The criterion holds precisely when 0 is absent from that list.

When the criterion fails, the weight-(1 - kappa) component of the
numerator decides between a certified obstruction and an inconclusive
verdict; the symbolic obstruction form itself is produced by the residue
module and attached here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple

from .algebra import Polynomial, divides, substitute_monomial_map
from .weights import (
    WeightSystem,
    is_quasihomogeneous,
    quasi_decompose,
    require_normalized,
)

LIFTS = "LIFTS"
OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"

ISOLATED = "ISOLATED"
UNKNOWN = "UNKNOWN"


class CriteriaError(Exception):
    """Base error for verdict assembly."""


class RemovablePoleError(CriteriaError):
    """The denominator divides the numerator, so the form has no pole."""


@dataclass(frozen=True)
class CriterionWitness:
    """A nonnegative integer exponent vector with kappa + sum k_i a_i = 1."""

    k: Tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class CriterionDecision:
    holds: bool
    witness: Optional[CriterionWitness]


@dataclass(frozen=True)
class SpectrumEntry:
    """A nonpositive spectrum value kappa + sum k_i a_i - 1 with its witness."""

    value: Fraction
    k: Tuple[int, ...]


@dataclass(frozen=True)
class PointDecision:
    """Everything decided for one singular point (s, g, w)."""

    s: Polynomial
    g: Polynomial
    weight_system: WeightSystem
    kind: str
    criterion: CriterionDecision
    obstruction_nonzero: Optional[bool]
    obstruction_component: Optional[Polynomial]
    second_residue: Optional[object]


@dataclass(frozen=True)
class LiftVerdict:
    kind: str
    points: Tuple[PointDecision, ...]


def lift_criterion(w: WeightSystem) -> CriterionDecision:
    """Decide whether any nonnegative integer combination of the weights is 1 - kappa.

    Holds (no combination exists) means the residue class lifts.  For
    kappa > 1 the target is negative and the criterion holds vacuously; for
    kappa = 1 the empty combination is a witness.  For kappa < 1 the weights
    are scaled by their common denominator D and reachability of the integer
    D*(1 - kappa) by coins D*a_i is decided by dynamic programming, with the
    witness reconstructed from the reachability table.
    """
    kappa = w.kappa
    if kappa > 1:
        return CriterionDecision(True, None)
    if kappa == 1:
        return CriterionDecision(
            False, CriterionWitness((0,) * len(w), kappa)
        )
    scale = math.lcm(*(a.denominator for a in w.weights))
    target = int(scale * (1 - kappa))
    coins = [int(scale * a) for a in w.weights]
    # parent[t] = index of a coin completing t, -2 at the origin, -1 unreachable
    parent = [-1] * (target + 1)
    parent[0] = -2
    for t in range(1, target + 1):
        for ci, coin in enumerate(coins):
            if coin <= t and parent[t - coin] != -1:
                parent[t] = ci
                break
    if parent[target] == -1:
        return CriterionDecision(True, None)
    k = [0] * len(w)
    t = target
    while t:
        ci = parent[t]
        k[ci] += 1
        t -= coins[ci]
    value = kappa + sum(
        (Fraction(c) * a for c, a in zip(k, w.weights)), Fraction(0)
    )
    return CriterionDecision(False, CriterionWitness(tuple(k), value))


def spectrum_nonpositive(w: WeightSystem) -> Tuple[SpectrumEntry, ...]:
    """All spectrum values kappa + sum k_i a_i - 1 that are <= 0, with witnesses.

    One entry per exponent vector (witnesses are not deduplicated by value);
    sorted ascending by value, then lexicographically by witness.  Empty
    when kappa > 1.
    """
    kappa = w.kappa
    if kappa > 1:
        return ()
    limit = 1 - kappa
    entries = []
    k = [0] * len(w)

    def enumerate_from(i: int, total: Fraction):
        if i == len(w):
            entries.append(SpectrumEntry(kappa + total - 1, tuple(k)))
            return
        a = w.weights[i]
        cap = int((limit - total) / a)
        for c in range(cap + 1):
            k[i] = c
            enumerate_from(i + 1, total + c * a)
        k[i] = 0

    enumerate_from(0, Fraction(0))
    entries.sort(key=lambda e: (e.value, e.k))
    return tuple(entries)


def cover_image(p: Polynomial, w: WeightSystem) -> Polynomial:
    """Image of p under the branched cover z_i -> z_i^(cover_order * a_i)."""
    gens = Polynomial.generators(p.variables)
    images = [z**e for z, e in zip(gens, w.cover_exponents)]
    return substitute_monomial_map(p, images)


def obstruction_component(
    s: Polynomial, g: Polynomial, w: WeightSystem
) -> Tuple[bool, Polynomial]:
    """The weight-(1 - kappa) component of g; its nonvanishing certifies obstruction."""
    require_normalized(s, w)
    if g.is_zero:
        return False, Polynomial.zero(g.variables)
    component = quasi_decompose(g, w).component(1 - w.kappa)
    if component is None:
        return False, Polynomial.zero(g.variables)
    return True, component


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of the one-sided isolatedness probe on the cover image."""

    status: str
    pullback: Polynomial
    missing: Tuple[str, ...]


def pullback_singularity_probe(s: Polynomial, w: WeightSystem) -> ProbeReport:
    """Probe whether the cover image of s has an isolated singularity at 0.

    Reports ISOLATED when, for every variable, the corresponding partial
    derivative of the cover image contains a monomial in that variable
    alone.  This is a heuristic positive signal only: UNKNOWN never asserts
    non-isolatedness, and ISOLATED is not a proof for degenerate inputs
    (the check looks at single monomials, not at the ideal the derivatives
    generate).
    """
    ok, _ = is_quasihomogeneous(s, w)
    if not ok:
        raise CriteriaError(f"{s} is not quasihomogeneous under {w}")
    image = cover_image(s, w)
    missing = []
    for i, name in enumerate(s.variables):
        derivative = image.partial_derivative(i)
        pure = any(
            all(e == 0 for j, e in enumerate(mono.exponents) if j != i)
            for mono in derivative.terms
        )
        if not pure:
            missing.append(name)
    status = ISOLATED if not missing else UNKNOWN
    return ProbeReport(status=status, pullback=image, missing=tuple(missing))


def _default_second_residue(s: Polynomial, g: Polynomial, w: WeightSystem):
    from .residue import second_residue

    return second_residue(g, s, w)


def lift_verdict(
    points: Iterable[Tuple[Polynomial, Polynomial, WeightSystem]],
    second_residue_provider: Optional[Callable] = None,
) -> LiftVerdict:
    """Assemble the overall verdict from per-point criterion decisions.

    Each point is (s, g, w) with s quasihomogeneous of valuation 1 and a
    genuine first order pole (s must not divide g).  A point where the
    criterion fails is obstructed when the weight-(1 - kappa) component of
    g is nonzero, in which case the symbolic second residue form is
    attached; with a zero component the point, and then the whole verdict,
    is inconclusive.  Any obstructed point makes the verdict OBSTRUCTED;
    otherwise any inconclusive point makes it INCONCLUSIVE; otherwise LIFTS.
    """
    provider = second_residue_provider or _default_second_residue
    decisions = []
    for s, g, w in points:
        require_normalized(s, w)
        if divides(s, g)[0]:
            raise RemovablePoleError(
                f"{s} divides {g}; the form has no pole along the hypersurface"
            )
        decision = lift_criterion(w)
        if decision.holds:
            decisions.append(
                PointDecision(
                    s=s,
                    g=g,
                    weight_system=w,
                    kind=LIFTS,
                    criterion=decision,
                    obstruction_nonzero=None,
                    obstruction_component=None,
                    second_residue=None,
                )
            )
            continue
        nonzero, component = obstruction_component(s, g, w)
        attached = provider(s, g, w) if nonzero else None
        decisions.append(
            PointDecision(
                s=s,
                g=g,
                weight_system=w,
                kind=OBSTRUCTED if nonzero else INCONCLUSIVE,
                criterion=decision,
                obstruction_nonzero=nonzero,
                obstruction_component=component,
                second_residue=attached,
            )
        )
    kinds = {d.kind for d in decisions}
    if OBSTRUCTED in kinds:
        overall = OBSTRUCTED
    elif INCONCLUSIVE in kinds:
        overall = INCONCLUSIVE
    else:
        overall = LIFTS
    return LiftVerdict(kind=overall, points=tuple(decisions))
