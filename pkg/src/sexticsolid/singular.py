"""Singularity census of the branch sextic and of the double solid above it.

For a general instance the branch sextic acquires exactly 31 ordinary double
points (nodes), its Gram matrix drops to rank 3 along the sextic and to rank
2 precisely at the nodes, and the double solid branched along it picks up
one threefold node above each surface node.  The census certifies all of
this for a concrete instance without ever extracting point coordinates: the
singular scheme is cut out by the Jacobian ideal, its degree is the
vector-space dimension of the quotient algebra in a generic affine chart,
and a squarefree characteristic polynomial of a random multiplication
operator certifies reducedness (degree 31 + reduced is equivalent to 31
nodes, since an isolated hypersurface singularity has local Tjurina
dimension 1 exactly when it is an ordinary double point).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bundle import CubicData, DiscriminantSurface, GramMatrix, gram_matrix
from .errors import CensusNotGeneric
from .exactalg import SplitMix64, random_invertible
from .groebner import (DEFAULT_BUDGET, Ideal, buchberger, in_radical,
                       is_irrelevant, krull_dim, make_ideal, normal_form,
                       quotient_dim, reducedness_certificate)
from .multipoly import MultiPoly, mp_det

EXPECTED_NODE_COUNT = 31

VERDICT_GENERIC = "generic_31_nodes"
VERDICT_DEGENERATE = "degenerate"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SingularCensusReport:
    zero_dimensional: bool
    degree: int           # -1 when the staircase is not finite
    reduced: str          # "certified" | "not_certified" | "failed"
    points_at_infinity: bool
    verdict: str
    chart_change_seed: int


@dataclass(frozen=True)
class StrataReport:
    rank2_equals_sigma: bool
    rank1_empty: bool
    delta_in_minor_ideal: bool   # exact membership, not merely radical
    details: tuple               # ((label, bool), ...)

    @property
    def passed(self) -> bool:
        return self.rank2_equals_sigma and self.rank1_empty and self.delta_in_minor_ideal


@dataclass(frozen=True)
class DoubleSolidChart:
    """w^2 - delta(1, y1, y2, y3) in the census chart, variables (w, y1, y2, y3)."""

    g: MultiPoly


def jacobian_ideal(surface: DiscriminantSurface) -> Ideal:
    """Homogeneous ideal of the four partials of delta.

    delta itself is redundant: six times it is the Euler combination of the
    partials, and 6 is a unit because p > 6.
    """
    parts = [surface.delta.partial(i) for i in range(4)]
    return make_ideal(parts)


def _chart_rng(p: int, seed: int):
    rng = SplitMix64(seed)
    T = random_invertible(4, p, rng)
    return T, rng


def _verdict(zero_dimensional, degree, reduced, points_at_infinity) -> str:
    if zero_dimensional and degree == EXPECTED_NODE_COUNT and not points_at_infinity:
        if reduced == "certified":
            return VERDICT_GENERIC
        return VERDICT_INCONCLUSIVE
    return VERDICT_DEGENERATE


def node_census(surface: DiscriminantSurface, seed: int,
                budget=DEFAULT_BUDGET, certificate_tries: int = 5) -> SingularCensusReport:
    """Census of the singular scheme of the branch sextic.

    Pipeline: seeded random linear coordinate change; check the Jacobian
    ideal has no projective zeros on the plane at infinity of the chart;
    dehomogenize in that chart; Groebner basis; Krull dimension must be 0;
    degree = dimension of the quotient algebra; reducedness by the
    multiplication-operator certificate.  Structural failures produce
    verdict "degenerate" (with the honestly computed degree), never a wrong
    count reported as generic.
    """
    delta = surface.delta
    p = delta.p
    T, rng = _chart_rng(p, seed)
    moved = delta.linear_change(T)
    parts = [moved.partial(i) for i in range(4)]
    nonzero = [f for f in parts if not f.is_zero()]

    y0 = MultiPoly.variable(0, 4, p, delta.order)
    points_at_infinity = not is_irrelevant(make_ideal(nonzero + [y0]), budget)

    affine = [f.specialize(0, 1) for f in parts]
    affine = [f for f in affine if not f.is_zero()]
    if not affine:
        return SingularCensusReport(False, -1, "failed", points_at_infinity,
                                    VERDICT_DEGENERATE, seed)
    gb = buchberger(affine, budget)
    if krull_dim(gb) > 0:
        return SingularCensusReport(False, -1, "failed", points_at_infinity,
                                    VERDICT_DEGENERATE, seed)
    degree = quotient_dim(gb)
    reduced = reducedness_certificate(gb, rng, certificate_tries)
    return SingularCensusReport(True, degree, reduced, points_at_infinity,
                                _verdict(True, degree, reduced, points_at_infinity), seed)


def double_solid_chart(surface: DiscriminantSurface, seed: int) -> DoubleSolidChart:
    """Affine chart of the double solid, in the same coordinates the node
    census used for the same seed."""
    p = surface.delta.p
    T, _ = _chart_rng(p, seed)
    moved = surface.delta.linear_change(T)
    chart = moved.specialize(0, 1)                 # delta(1, y1, y2, y3)
    emb = chart.embed(4, (1, 2, 3))                # variables (w, y1, y2, y3)
    w = MultiPoly.variable(0, 4, p, surface.delta.order)
    return DoubleSolidChart(w * w - emb)


def double_solid_census(surface: DiscriminantSurface, seed: int,
                        budget=DEFAULT_BUDGET, certificate_tries: int = 5,
                        census: SingularCensusReport | None = None) -> SingularCensusReport:
    """Census of the singular scheme of the double solid w^2 = delta.

    The ideal of the equation together with its four partials is the Tjurina
    ideal of the threefold; above each surface node it has one reduced point
    (the threefold singularity is w^2 minus a nondegenerate quadratic form in
    three variables), so the expected degree is again 31.  Requires a
    generic node census for the same chart seed.
    """
    if census is None:
        census = node_census(surface, seed, budget, certificate_tries)
    if census.verdict != VERDICT_GENERIC:
        raise CensusNotGeneric(
            f"double-solid census needs a generic node census, got {census.verdict!r}")
    p = surface.delta.p
    _, rng = _chart_rng(p, seed)
    g = double_solid_chart(surface, seed).g
    gens = [g] + [g.partial(i) for i in range(4)]
    gens = [f for f in gens if not f.is_zero()]
    gb = buchberger(gens, budget)
    if krull_dim(gb) > 0:
        return SingularCensusReport(False, -1, "failed", False, VERDICT_DEGENERATE, seed)
    degree = quotient_dim(gb)
    reduced = reducedness_certificate(gb, rng, certificate_tries)
    return SingularCensusReport(True, degree, reduced, False,
                                _verdict(True, degree, reduced, False), seed)


def rank_stratum_ideal(M: GramMatrix, r: int) -> Ideal:
    """Ideal of the locus where the Gram matrix has rank <= r, generated by
    all (r+1) x (r+1) minors.  By symmetry, minor(I, J) = minor(J, I), so
    only I <= J is enumerated; exact duplicates are dropped."""
    if not 1 <= r <= 3:
        raise ValueError("rank stratum only meaningful for 1 <= r <= 3")
    k = r + 1
    minors = []
    for rows in combinations(range(4), k):
        for cols in combinations(range(4), k):
            if cols < rows:
                continue
            sub = [[M.entries[i][j] for j in cols] for i in rows]
            m = mp_det(sub)
            if not m.is_zero() and m not in minors:
                minors.append(m)
    return make_ideal(minors)


def strata_check(d: CubicData, surface: DiscriminantSurface, seed: int,
                 budget=DEFAULT_BUDGET,
                 census: SingularCensusReport | None = None) -> StrataReport:
    """Certify the rank stratification of the Gram matrix.

    The locus where the rank drops to 2 must coincide with the singular set
    of the branch sextic: every 3x3 minor lies in the radical of the
    Jacobian ideal and every Jacobian partial lies in the radical of the
    3x3-minor ideal (both directions by the Rabinowitsch trick).  The rank
    <= 1 locus must be projectively empty.  As a sharper extra, delta itself
    reduces to zero modulo the 3x3 minors (Laplace expansion makes the
    determinant an exact member, not just a radical one).

    The minors-against-Jacobian direction runs in the census's affine chart:
    both families are homogeneous and the chart's plane at infinity is
    re-certified to miss the singular locus, so a minor vanishes on the
    whole cone of the Jacobian ideal iff its dehomogenization lies in the
    radical of the dehomogenized ideal.  This keeps every Groebner run at
    the cheap zero-dimensional scale.
    """
    if census is None:
        census = node_census(surface, seed, budget)
    if census.verdict != VERDICT_GENERIC:
        raise CensusNotGeneric(
            f"strata check needs a generic node census, got {census.verdict!r}")
    p = surface.delta.p
    order = surface.delta.order
    M = gram_matrix(d)

    minors3 = rank_stratum_ideal(M, 2)
    gb_minors = buchberger(minors3, budget)
    minors_as_gb = make_ideal(gb_minors.basis)

    # move to the census chart; composing with the (invertible) change of
    # coordinates preserves every ideal-membership statement below
    T, _ = _chart_rng(p, census.chart_change_seed)
    moved_delta = surface.delta.linear_change(T)
    jac_moved = [moved_delta.partial(i) for i in range(4)]
    moved_entries = tuple(tuple(M.entries[i][j].linear_change(T) for j in range(4))
                          for i in range(4))
    minors3_moved = rank_stratum_ideal(GramMatrix(moved_entries), 2)

    y0 = MultiPoly.variable(0, 4, p, order)
    chart_sees_all = is_irrelevant(
        make_ideal([f for f in jac_moved if not f.is_zero()] + [y0]), budget)
    if not chart_sees_all:
        # the random chart missed: singular points sit on its plane at
        # infinity, so the affine reduction below would be unsound
        raise CensusNotGeneric("census chart has singular points at infinity")
    jac_affine = [f.specialize(0, 1) for f in jac_moved]
    gb_jac_affine = buchberger([f for f in jac_affine if not f.is_zero()], budget)
    jac_affine_as_gb = make_ideal(gb_jac_affine.basis)

    details = []
    for k, m in enumerate(minors3_moved.generators):
        ok = in_radical(m.specialize(0, 1), jac_affine_as_gb, budget,
                        generators_are_groebner=True)
        details.append((f"minor3_{k}_in_radical_of_jacobian", ok))
    jac = jacobian_ideal(surface)
    for k, g in enumerate(jac.generators):
        ok = in_radical(g, minors_as_gb, budget, generators_are_groebner=True)
        details.append((f"jacobian_{k}_in_radical_of_minors3", ok))
    rank2_equals_sigma = all(ok for _, ok in details)

    rank1_empty = is_irrelevant(rank_stratum_ideal(M, 1), budget)
    delta_exact = normal_form(surface.delta, gb_minors).is_zero()
    details.append(("rank1_locus_empty", rank1_empty))
    details.append(("delta_exactly_in_minor_ideal", delta_exact))
    return StrataReport(rank2_equals_sigma=rank2_equals_sigma,
                        rank1_empty=rank1_empty,
                        delta_in_minor_ideal=delta_exact,
                        details=tuple(details))
