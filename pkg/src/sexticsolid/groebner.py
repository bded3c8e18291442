"""Buchberger-based Groebner engine and zero-dimensional ideal toolkit.

The completion uses the Gebauer-Moeller pair update (product + chain
criteria), normal selection, full tail reduction through a lazy heap, and a
final inter-reduction, so the returned basis is the unique reduced Groebner
basis of the ideal for its order.  A reduction-step budget turns pathological
inputs into clean ``ResourceBudgetExceeded`` errors instead of runaway
computations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from itertools import combinations

from .errors import (ArityMismatch, NotHomogeneous, NotZeroDimensional,
                     ResourceBudgetExceeded)
from .exactalg import SplitMix64, charpoly, fp_inv, upoly_is_squarefree
from .multipoly import MonomialOrder, MultiPoly

DEFAULT_BUDGET = 1_000_000

_STANDARD_MONOMIAL_CAP = 1_000_000


@dataclass(frozen=True)
class Ideal:
    """A presented ideal: nonzero generators in a common ring."""

    generators: tuple
    homogeneous: bool = field(default=False)

    @property
    def nvars(self):
        return self.generators[0].nvars

    @property
    def p(self):
        return self.generators[0].p

    @property
    def order(self):
        return self.generators[0].order


def make_ideal(generators) -> Ideal:
    gens = tuple(g for g in generators if not g.is_zero())
    if not gens:
        raise ValueError("an ideal presentation needs at least one nonzero generator")
    first = gens[0]
    for g in gens[1:]:
        first._check_ctx(g)
    homogeneous = all(g.homogeneous_degree() is not None for g in gens)
    return Ideal(gens, homogeneous)


class GBasis:
    """Reduced Groebner basis, elements monic and sorted by increasing lead
    monomial (canonical for the ideal and order)."""

    __slots__ = ("basis", "order", "nvars", "p")

    def __init__(self, basis, order: MonomialOrder):
        self.basis = tuple(basis)
        self.order = order
        self.nvars = self.basis[0].nvars
        self.p = self.basis[0].p

    def lead_exps(self):
        return tuple(g.lead_exp() for g in self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].lead_exp() == (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, GBasis) and self.order == other.order
                and self.basis == other.basis)

    def __repr__(self):
        return f"GBasis({len(self.basis)} elements, {self.order.kind})"


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit):
        self.left = limit

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise ResourceBudgetExceeded("reduction-step budget exhausted")


class _Reducer:
    """Full normal-form reduction against a (growing) list of monic reducers.

    Terms are processed largest-first through a heap with lazy deletion;
    every inserted monomial is strictly smaller than the one being reduced,
    so each monomial is visited once.
    """

    __slots__ = ("leads", "tails", "keyf", "p", "budget")

    def __init__(self, order: MonomialOrder, p: int, budget=None):
        self.leads = []
        self.tails = []
        self.keyf = order.key_func()
        self.p = p
        self.budget = budget

    def add(self, items):
        """Register a monic reducer given as canonical (exp, coeff) items."""
        self.leads.append(items[0][0])
        self.tails.append(items[1:])

    def reduce_terms(self, pairs) -> dict:
        p = self.p
        keyf = self.keyf
        leads = self.leads
        tails = self.tails
        budget = self.budget
        work: dict = {}
        for e, c in pairs:
            c = (work.get(e, 0) + c) % p
            if c:
                work[e] = c
            else:
                work.pop(e, None)
        heap = [(keyf(e), e) for e in work]
        heapify(heap)
        out: dict = {}
        while heap:
            _, e = heappop(heap)
            c = work.pop(e, 0)
            if not c:
                continue
            tail = None
            for i, le in enumerate(leads):
                fits = True
                for a, b in zip(le, e):
                    if a > b:
                        fits = False
                        break
                if fits:
                    q = tuple(b - a for a, b in zip(le, e))
                    tail = tails[i]
                    break
            if tail is None:
                out[e] = c
                continue
            if budget is not None:
                budget.spend()
            for m, cm in tail:
                em = tuple(x + y for x, y in zip(q, m))
                prev = work.get(em, 0)
                nv = (prev - c * cm) % p
                if nv:
                    if not prev:
                        heappush(heap, (keyf(em), em))
                    work[em] = nv
                elif prev:
                    del work[em]
        return out


def _sorted_items(terms: dict, keyf):
    return sorted(terms.items(), key=lambda t: keyf(t[0]))


def _monic_items(items, p):
    lc = items[0][1]
    if lc == 1:
        return items
    inv = fp_inv(lc, p)
    return [(e, c * inv % p) for e, c in items]


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _update_pairs(leads, pairs, m):
    """Gebauer-Moeller pair update after appending element m = len(leads)-1."""
    lmf = leads[m]
    kept = set()
    for (i, j) in pairs:
        lij = _lcm(leads[i], leads[j])
        if (not _divides(lmf, lij)
                or _lcm(leads[i], lmf) == lij
                or _lcm(leads[j], lmf) == lij):
            kept.add((i, j))
    groups: dict = {}
    for i in range(m):
        groups.setdefault(_lcm(leads[i], lmf), []).append(i)
    minimal = []
    for L in sorted(groups, key=lambda t: (sum(t), t)):
        if all(not _divides(Lk, L) for Lk in minimal):
            minimal.append(L)
    for L in minimal:
        # Buchberger's product criterion: drop the group if some member has
        # disjoint-support lead with the new element.
        if not any(_lcm(leads[i], lmf) == tuple(a + b for a, b in zip(leads[i], lmf))
                   for i in groups[L]):
            kept.add((min(groups[L]), m))
    return kept


def buchberger(gens_or_ideal, budget=DEFAULT_BUDGET, known_groebner_prefix: int = 0,
               selection_seed=None) -> GBasis:
    """Reduced Groebner basis of the given ideal.

    ``known_groebner_prefix=k`` asserts that the first k generators already
    form a Groebner basis of the ideal they generate, so pairs among them are
    skipped (used to adjoin a polynomial to a previously computed basis).
    ``selection_seed`` makes the pair-processing order random (a test hook:
    the reduced result is independent of it).
    """
    if isinstance(gens_or_ideal, Ideal):
        gens = list(gens_or_ideal.generators)
    else:
        gens = [g for g in gens_or_ideal if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    first = gens[0]
    for g in gens[1:]:
        first._check_ctx(g)
    nvars, p, order = first.nvars, first.p, first.order
    keyf = order.key_func()
    zero_exp = (0,) * nvars
    one = MultiPoly.constant(1, nvars, p, order)
    bud = _Budget(budget) if budget is not None else None
    rng = SplitMix64(selection_seed) if selection_seed is not None else None

    reducer = _Reducer(order, p, bud)
    leads: list = []
    basis_items: list = []
    pairs: set = set()

    def append(items):
        basis_items.append(items)
        leads.append(items[0][0])
        reducer.add(items)

    prefix = max(0, min(known_groebner_prefix, len(gens)))
    for g in gens[:prefix]:
        append(_monic_items(_sorted_items(g.terms, keyf), p))
    for g in gens[prefix:]:
        nf = reducer.reduce_terms(g.terms.items())
        if not nf:
            continue
        items = _monic_items(_sorted_items(nf, keyf), p)
        if items[0][0] == zero_exp:
            return GBasis((one,), order)
        append(items)
        pairs = _update_pairs(leads, pairs, len(leads) - 1)

    while pairs:
        if rng is not None:
            ordered = sorted(pairs)
            pair = ordered[rng.below(len(ordered))]
        else:
            pair = min(pairs, key=lambda ij: (keyf(_lcm(leads[ij[0]], leads[ij[1]])),
                                              ij[0], ij[1]))
        pairs.discard(pair)
        i, j = pair
        li, lj = leads[i], leads[j]
        lcm = _lcm(li, lj)
        qi = tuple(a - b for a, b in zip(lcm, li))
        qj = tuple(a - b for a, b in zip(lcm, lj))
        spairs = [(tuple(a + b for a, b in zip(e, qi)), c) for e, c in basis_items[i]]
        spairs += [(tuple(a + b for a, b in zip(e, qj)), p - c) for e, c in basis_items[j]]
        nf = reducer.reduce_terms(spairs)
        if not nf:
            continue
        items = _monic_items(_sorted_items(nf, keyf), p)
        if items[0][0] == zero_exp:
            return GBasis((one,), order)
        append(items)
        pairs = _update_pairs(leads, pairs, len(leads) - 1)

    # minimalize: keep only elements whose lead divides no other kept lead
    asc = sorted(range(len(leads)), key=lambda k: keyf(leads[k]), reverse=True)
    kept: list = []
    for k in asc:
        if not any(_divides(leads[kk], leads[k]) for kk in kept):
            kept.append(k)
    polys = [basis_items[k] for k in kept]
    # inter-reduce: fully reduce every element against the other survivors
    for t in range(len(polys)):
        other = _Reducer(order, p, bud)
        for s, items in enumerate(polys):
            if s != t:
                other.add(items)
        nf = other.reduce_terms(polys[t])
        polys[t] = _monic_items(_sorted_items(nf, keyf), p)
    polys.sort(key=lambda items: keyf(items[0][0]), reverse=True)
    return GBasis(tuple(MultiPoly._make(nvars, p, order, dict(items)) for items in polys),
                  order)


def normal_form(f: MultiPoly, gb: GBasis) -> MultiPoly:
    """The unique remainder of f modulo the basis (zero iff f is in the ideal)."""
    if (f.nvars, f.p, f.order) != (gb.nvars, gb.p, gb.order):
        raise ArityMismatch("polynomial and basis live in different rings")
    red = _Reducer(gb.order, gb.p)
    keyf = red.keyf
    for g in gb.basis:
        red.add(_sorted_items(g.terms, keyf))
    nf = red.reduce_terms(f.terms.items())
    return MultiPoly._make(f.nvars, f.p, f.order, dict(_sorted_items(nf, keyf)))


def krull_dim(gb: GBasis) -> int:
    """Krull dimension of the quotient ring, from the leading-term ideal:
    the largest set of variables supporting no lead monomial. -1 for (1)."""
    leads = gb.lead_exps()
    n = gb.nvars
    if any(sum(e) == 0 for e in leads):
        return -1
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            inside = set(S)
            if all(any(e[i] for i in range(n) if i not in inside) for e in leads):
                return size
    raise AssertionError("unreachable: the empty set is always independent")


def standard_monomials(gb: GBasis) -> list:
    """Monomials outside the leading-term ideal, in increasing order.

    Finite exactly when the quotient is zero-dimensional (or the unit ideal,
    which yields the empty list)."""
    leads = gb.lead_exps()
    n = gb.nvars
    if any(sum(e) == 0 for e in leads):
        return []
    keyf = gb.order.key_func()
    start = (0,) * n
    seen = {start}
    stack = [start]
    out = []
    while stack:
        m = stack.pop()
        if any(_divides(le, m) for le in leads):
            continue
        out.append(m)
        if len(out) > _STANDARD_MONOMIAL_CAP:
            raise NotZeroDimensional("staircase is not finite")
        for i in range(n):
            m2 = tuple(v + 1 if j == i else v for j, v in enumerate(m))
            if m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    return sorted(out, key=keyf, reverse=True)


def quotient_dim(gb: GBasis) -> int:
    """Vector-space dimension of the quotient algebra (number of standard
    monomials); the degree of a zero-dimensional scheme."""
    if krull_dim(gb) > 0:
        raise NotZeroDimensional("quotient algebra is infinite dimensional")
    return len(standard_monomials(gb))


def mult_matrix(gb: GBasis, ell: MultiPoly):
    """Matrix of multiplication by the linear form ell on the standard
    monomial basis of a zero-dimensional quotient."""
    if (ell.nvars, ell.p, ell.order) != (gb.nvars, gb.p, gb.order):
        raise ArityMismatch("linear form lives in a different ring")
    if ell.is_zero() or ell.total_degree() > 1:
        raise ValueError("multiplication operator wants a nonzero linear form")
    if krull_dim(gb) > 0:
        raise NotZeroDimensional("multiplication matrices need a finite staircase")
    B = standard_monomials(gb)
    index = {m: i for i, m in enumerate(B)}
    D = len(B)
    M = [[0] * D for _ in range(D)]
    red = _Reducer(gb.order, gb.p)
    keyf = red.keyf
    for g in gb.basis:
        red.add(_sorted_items(g.terms, keyf))
    ell_items = list(ell.terms.items())
    for j, b in enumerate(B):
        shifted = [(tuple(x + y for x, y in zip(e, b)), c) for e, c in ell_items]
        nf = red.reduce_terms(shifted)
        for e, c in nf.items():
            M[index[e]][j] = c
    return M


def reducedness_certificate(gb: GBasis, rng: SplitMix64, tries: int = 5) -> str:
    """One-sided reducedness test for a zero-dimensional quotient.

    If the characteristic polynomial of multiplication by some linear form is
    squarefree, the quotient is a product of fields, hence reduced.  Up to
    ``tries`` random forms are attempted; failure to certify is reported as
    "not_certified", never as "not reduced".
    """
    B = standard_monomials(gb)
    if not B:
        return "certified"
    n, p = gb.nvars, gb.p
    for _ in range(tries):
        coeffs = [rng.below(p) for _ in range(n)]
        if not any(coeffs):
            continue
        ell = MultiPoly.from_terms(
            n, p, gb.order,
            [(tuple(1 if j == i else 0 for j in range(n)), c)
             for i, c in enumerate(coeffs) if c])
        cp = charpoly(mult_matrix(gb, ell), p)
        if upoly_is_squarefree(cp, p):
            return "certified"
    return "not_certified"


def in_radical(g: MultiPoly, ideal: Ideal, budget=DEFAULT_BUDGET,
               generators_are_groebner: bool = False) -> bool:
    """Radical membership by the Rabinowitsch trick: g is in the radical of I
    iff 1 lies in I + (1 - t*g) after adjoining a fresh variable t."""
    first = ideal.generators[0]
    if (g.nvars, g.p, g.order) != (first.nvars, first.p, first.order):
        raise ArityMismatch("polynomial and ideal live in different rings")
    if g.is_zero():
        return True
    n, p, order = g.nvars, g.p, g.order
    positions = tuple(range(n))
    gens = [h.embed(n + 1, positions) for h in ideal.generators]
    t = MultiPoly.variable(n, n + 1, p, order)
    one = MultiPoly.constant(1, n + 1, p, order)
    gens.append(one - t * g.embed(n + 1, positions))
    gb = buchberger(gens, budget,
                    known_groebner_prefix=len(gens) - 1 if generators_are_groebner else 0)
    return gb.is_unit()


def is_irrelevant(ideal: Ideal, budget=DEFAULT_BUDGET) -> bool:
    """True iff the projective zero locus of a homogeneous ideal is empty,
    i.e. the reduced basis exposes a pure power of every variable."""
    if not ideal.homogeneous:
        raise NotHomogeneous("projective emptiness needs a homogeneous ideal")
    gb = buchberger(ideal, budget)
    if gb.is_unit():
        return True
    n = gb.nvars
    leads = gb.lead_exps()
    for i in range(n):
        if not any(e[i] and sum(e) == e[i] for e in leads):
            return False
    return True
