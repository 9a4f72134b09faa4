"""Weight vectors acting on ideals: initial forms, tropical membership,
Groebner cones and the Groebner fan.

Conventions are min-first throughout: the initial form in_w(f) keeps the
terms of minimal w-weight, and w lies in the tropical variety of a graded
ideal I iff in_w(f) is not a monomial for any f in I, which happens iff the
initial ideal in_w(I) contains no monomial.

The Groebner cone of I at w collects the weights sharing the same marked
reduced Groebner basis; the tropical variety is a union of relatively open
Groebner cones, so membership is constant on each of them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd

from .fans import (
    Cone,
    Fan,
    cone_dim,
    make_cone,
    relative_interior_contains,
)
from .groebner import MarkedGB, buchberger, contains_monomial, reduced_gb
from .halfspaces import find_point
from .linalg import QQ, ZERO, primitive, vec_dot
from .poly import Ideal, Polynomial, weight_order


class BudgetExceededError(RuntimeError):
    """Groebner fan traversal hit its cone budget."""


def fan_budget(default: int = 200) -> int:
    raw = os.environ.get("TROPGEN_BUDGET")
    return int(raw) if raw else default


def initial_form(p: Polynomial, w) -> Polynomial:
    """Terms of p of minimal w-weight."""
    if p.is_zero:
        return p
    w = tuple(QQ(x) for x in w)
    weights = [vec_dot(w, e) for e, _ in p.terms]
    lo = min(weights)
    return Polynomial(p.n, tuple(t for t, wt in zip(p.terms, weights) if wt == lo))


def weight_gb(ideal: Ideal, w) -> MarkedGB:
    """Reduced Groebner basis for the w-refined order; on graded ideals the
    marked head of each element is its minimal-weight term (lex-max tie)."""
    return reduced_gb(ideal, weight_order(primitive(w)))


@dataclass(frozen=True)
class InitialIdeal:
    """in_w(I), generated by the initial forms of a w-refined basis."""

    generators: tuple
    source_weight: tuple
    source_gb: MarkedGB


def initial_ideal(ideal: Ideal, w) -> InitialIdeal:
    gb = weight_gb(ideal, w)
    return InitialIdeal(tuple(initial_form(g, w) for g in gb.elements),
                        tuple(w), gb)


def initial_ideal_generators(ideal: Ideal, w) -> tuple:
    """Generators of in_w(I): initial forms of a w-refined Groebner basis."""
    gb = weight_gb(ideal, w)
    return tuple(initial_form(g, w) for g in gb.elements)


def in_tropical_variety(ideal: Ideal, w) -> bool:
    """w lies in T(I) iff in_w(I) contains no monomial."""
    gens = initial_ideal_generators(ideal, w)
    # a single-term initial form is itself a monomial of in_w(I)
    if any(len(g.terms) == 1 for g in gens):
        return False
    return not contains_monomial(gens, ideal.n)


def groebner_cone(ideal: Ideal, w) -> Cone:
    """Closure of the set of weights with the same marked basis as w.

    Rows are head_exponent - other_exponent per Groebner basis element and
    term: nonpositive on the cone (heads have minimal weight).  Rows tied
    at w itself (zero weight difference) are equalities of the cone, and w
    witnesses that every remaining row can be strictly negative, so the
    representation needs no further tightness analysis.
    """
    w = tuple(QQ(x) for x in w)
    gb = weight_gb(ideal, w)
    eqs, ineqs = set(), set()
    for g, h in zip(gb.elements, gb.heads):
        for e, _ in g.terms:
            if e == h:
                continue
            row = tuple(hi - ei for hi, ei in zip(h, e))
            if vec_dot(w, row) == 0:
                eqs.add(row)
            else:
                ineqs.add(row)
    return make_cone(ideal.n, sorted(eqs), sorted(ineqs))


def enumerate_groebner_fan(ideal: Ideal, budget=None) -> Fan:
    """All full-dimensional Groebner cones, by breadth-first facet flipping.

    Starting from a cone containing a fixed generic weight, each facet
    (inequality row tight, all others strict) yields an interior facet
    point p; stepping to p + eps * row for small rational eps > 0 lands in
    the relative interior of the neighbouring cone.  The traversal stops
    with BudgetExceededError when more than `budget` cones appear.
    """
    n = ideal.n
    if budget is None:
        budget = fan_budget()
    cones = {}
    queue = [_generic_start(ideal)]
    while queue:
        w = queue.pop()
        cone = groebner_cone(ideal, w)
        key = (cone.equalities, cone.inequalities)
        if key in cones:
            continue
        cones[key] = cone
        if len(cones) > budget:
            raise BudgetExceededError(
                f"more than {budget} full-dimensional Groebner cones")
        for row in cone.inequalities:
            others = [q for q in cone.inequalities if q != row]
            p = find_point(n, equalities=[row], strict=others)
            if p is None:
                continue  # not a facet: row is redundant
            neighbor = _flip(ideal, cone, row, p)
            if neighbor is not None:
                queue.append(neighbor)
    return Fan(n, tuple(cones.values()))


def _generic_start(ideal: Ideal):
    """Deterministic weight in the interior of a full-dimensional cone."""
    n = ideal.n
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    for shift in range(len(primes) - n + 1):
        w = tuple(QQ(p, q) for p, q in
                  zip(primes[shift:shift + n], range(1, n + 1)))
        cone = groebner_cone(ideal, w)
        if not cone.equalities and cone_dim(cone) == n:
            return w
    raise RuntimeError("could not find a generic start weight")


def _flip(ideal: Ideal, cone: Cone, row, p):
    """Weight in the relative interior of the cone across the given facet."""
    eps = QQ(1)
    for _ in range(64):
        w = tuple(pi + eps * ri for pi, ri in zip(p, row))
        other = groebner_cone(ideal, w)
        if (other.equalities == () and cone_dim(other) == ideal.n
                and (other.equalities, other.inequalities)
                != (cone.equalities, cone.inequalities)
                and _in_closure(other, p)):
            return w
        eps /= 2
    return None


def _in_closure(cone: Cone, p) -> bool:
    return (all(vec_dot(e, p) == 0 for e in cone.equalities)
            and all(vec_dot(q, p) <= 0 for q in cone.inequalities))


def check_tropical_basis(gens, ideal: Ideal, sample) -> bool:
    """Sample-based tropical-basis check: true iff on every sampled weight,
    membership of w in T(I) coincides with no generator having a monomial
    initial form.  A False is a genuine refutation; a True is only
    evidence limited to the sample."""
    for w in sample:
        gens_say = all(len(initial_form(g, w).terms) > 1 for g in gens)
        if gens_say != in_tropical_variety(ideal, w):
            return False
    return True


def is_tropical_basis(ideal: Ideal, budget=None):
    """Check whether the generators already cut out T(I).

    T(I) is contained in the intersection of the T(f) over the generators
    f; the generators form a tropical basis iff the two sets agree.  Both
    sides are constant on the open cells of the hyperplane arrangement
    spanned by the generators' term ties together with the facet normals
    of the full Groebner fan, so testing one interior point per cell is a
    complete check.  Returns (True, None) or (False, witness_weight).
    """
    for w in _candidate_weights(ideal, budget):
        gens_say = all(len(initial_form(g, w).terms) > 1
                       for g in ideal.generators)
        if gens_say and not in_tropical_variety(ideal, w):
            return (False, tuple(w))
    return (True, None)


def _candidate_weights(ideal: Ideal, budget=None):
    """One relative interior point per cell (of every dimension) of the
    arrangement of generator tie hyperplanes and Groebner fan facets."""
    n = ideal.n
    rows = set()
    for g in ideal.generators:
        exps = [e for e, _ in g.terms]
        for i in range(len(exps)):
            for j in range(i + 1, len(exps)):
                row = tuple(a - b for a, b in zip(exps[i], exps[j]))
                if any(row):
                    rows.add(primitive(row))
    fan = enumerate_groebner_fan(ideal, budget)
    for cone in fan.cones:
        rows.update(cone.inequalities)
    # identify a row with its negation
    uniq = set()
    for row in rows:
        neg = tuple(-x for x in row)
        if neg not in uniq:
            uniq.add(row)
    rows = sorted(uniq)
    seen = set()

    def walk(eqs, strict):
        k = len(eqs) + len(strict)
        if find_point(n, equalities=eqs, strict=strict) is None:
            return
        if k == len(rows):
            p = find_point(n, equalities=eqs, strict=strict)
            key = tuple(p)
            if key not in seen:
                seen.add(key)
                yield p
            return
        row = rows[k]
        yield from walk(eqs + [row], strict)
        yield from walk(eqs, strict + [row])
        yield from walk(eqs, strict + [tuple(-x for x in row)])

    yield from walk([], [])


# ---------------------------------------------------------------------------
# membership maps over integer grids

def normalize_grid_point(w):
    """Canonical representative of w modulo the lineality direction
    (1,..,1) and positive scaling: subtract the minimum, divide by the gcd.
    Tropical membership of a graded ideal is invariant under both."""
    lo = min(w)
    shifted = tuple(x - lo for x in w)
    g = gcd(*(int(x) for x in shifted)) if any(shifted) else 1
    if g == 0:
        g = 1
    return tuple(int(x) // g for x in shifted)


def grid_points(n: int, radius: int, half: bool = True):
    """Integer grid [-radius, radius]^n; with half=True only points whose
    first nonzero coordinate (after subtracting the minimum) pattern is
    kept once per normalized representative, which is sound because
    membership only depends on the normalized point."""
    from itertools import product
    for w in product(range(-radius, radius + 1), repeat=n):
        yield w


class MembershipMap:
    """Lazy tropical membership over normalized weights, cached per
    relatively open Groebner cone (membership is constant there)."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self._points: dict = {}
        self._cones: list = []  # (cone, verdict)

    def query(self, w) -> bool:
        key = normalize_grid_point(tuple(QQ(x) for x in w))
        if key in self._points:
            return self._points[key]
        wq = tuple(QQ(x) for x in key)
        for cone, verdict in self._cones:
            if relative_interior_contains(cone, wq):
                self._points[key] = verdict
                return verdict
        verdict = in_tropical_variety(self.ideal, wq)
        cone = groebner_cone(self.ideal, wq)
        self._cones.append((cone, verdict))
        self._points[key] = verdict
        return verdict
