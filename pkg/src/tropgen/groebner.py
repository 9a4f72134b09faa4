"""Buchberger's algorithm with marked heads, plus ideal-theoretic queries.

A reduced marked Groebner basis is unique for a given ideal and term order,
so downstream computations (dimensions, cones, initial ideals) are
deterministic.  Heads are the order-maximal terms under the preference key
of the order; for weight-refined orders on homogeneous input this marks the
terms of minimal weight.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import QQ, ZERO, ONE
from .poly import (
    GRLEX,
    Ideal,
    ImproperIdealError,
    Polynomial,
    TermOrder,
    monomial_degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


@dataclass(frozen=True)
class MarkedGB:
    """Reduced Groebner basis with the head monomial of each element."""

    n: int
    order: TermOrder
    elements: tuple  # Polynomial, monic on heads, deterministically ordered
    heads: tuple  # head exponent of each element

    def head_ideal_generators(self) -> tuple:
        return minimal_monomial_generators(self.heads)

    def supports(self) -> frozenset:
        return frozenset(g.support() for g in self.elements)


def normal_form(p: Polynomial, basis, heads, order: TermOrder) -> Polynomial:
    """Fully reduce p modulo the marked basis (tail reduction included)."""
    n = p.n
    remainder: dict = {}
    work = dict(p.terms)
    while work:
        exp = max(work, key=order.key)
        coeff = work.pop(exp)
        if coeff == 0:
            continue
        for g, h in zip(basis, heads):
            if monomial_divides(h, exp):
                shift = monomial_div(exp, h)
                gd = dict(g.terms)
                factor = coeff / gd[h]
                for e, c in g.terms:
                    if e == h:
                        continue
                    key = monomial_mul(e, shift)
                    work[key] = work.get(key, ZERO) + -factor * c
                    if work[key] == 0:
                        del work[key]
                break
        else:
            remainder[exp] = remainder.get(exp, ZERO) + coeff
    return Polynomial.from_dict(n, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, hf, hg) -> Polynomial:
    l = monomial_lcm(hf, hg)
    cf = dict(f.terms)[hf]
    cg = dict(g.terms)[hg]
    mf = Polynomial(f.n, ((monomial_div(l, hf), ONE / cf),))
    mg = Polynomial(g.n, ((monomial_div(l, hg), ONE / cg),))
    return mf * f - mg * g


def buchberger(generators, order: TermOrder) -> MarkedGB:
    """Reduced marked Groebner basis of the ideal the generators span."""
    n = generators[0].n
    basis = []
    heads = []
    for g in generators:
        if not g.is_zero:
            basis.append(g.monic(order))
            heads.append(g.head_monomial(order))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        # normal strategy: smallest lcm degree first, then oldest pair
        i, j = min(pairs, key=lambda p: (
            monomial_degree(monomial_lcm(heads[p[0]], heads[p[1]])), p))
        pairs.remove((i, j))
        hi, hj = heads[i], heads[j]
        l = monomial_lcm(hi, hj)
        # product criterion
        if l == monomial_mul(hi, hj):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(heads[k], l):
                ik = (max(i, k), min(i, k))
                jk = (max(j, k), min(j, k))
                if ik not in pairs and jk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = normal_form(s_polynomial(basis[i], basis[j], hi, hj), basis, heads, order)
        if not r.is_zero:
            r = r.monic(order)
            basis.append(r)
            heads.append(r.head_monomial(order))
            new = len(basis) - 1
            pairs.update((new, k) for k in range(new))

    # minimize: drop elements whose head is divisible by another head
    keep = []
    for i, h in enumerate(heads):
        if not any(j != i and monomial_divides(heads[j], h)
                   and (heads[j] != h or j < i) for j in range(len(heads))):
            keep.append(i)
    basis = [basis[i] for i in keep]
    heads = [heads[i] for i in keep]

    # inter-reduce tails
    reduced = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        oheads = heads[:i] + heads[i + 1:]
        reduced.append(normal_form(g, others, oheads, order).monic(order))
    heads = [g.head_monomial(order) for g in reduced]

    combined = sorted(zip(heads, reduced), key=lambda t: order.key(t[0]))
    heads = tuple(h for h, _ in combined)
    elements = tuple(g for _, g in combined)
    return MarkedGB(n, order, elements, heads)


def reduced_gb(ideal: Ideal, order: TermOrder = GRLEX) -> MarkedGB:
    return buchberger(list(ideal.generators), order)


def ideal_member(p: Polynomial, gb: MarkedGB) -> bool:
    return normal_form(p, gb.elements, gb.heads, gb.order).is_zero


def contains_one(generators, order: TermOrder = GRLEX) -> bool:
    """True iff the (possibly inhomogeneous) ideal is the whole ring."""
    gb = buchberger(list(generators), order)
    return any(h == (0,) * gb.n for h in gb.heads)


def contains_monomial(generators, n: int) -> bool:
    """True iff the ideal contains some monomial in x1..xn.

    A homogeneous ideal J contains a monomial iff the saturation of J by
    x1*...*xn is the whole ring, which holds iff J together with
    t*x1*...*xn - 1 (in one extra variable t) contains 1.
    """
    lifted = []
    for g in generators:
        lifted.append(Polynomial(n + 1, tuple((e + (0,), c) for e, c in g.terms)))
    prod_exp = tuple([1] * n) + (1,)
    aux = Polynomial.from_dict(n + 1, {prod_exp: ONE, (0,) * (n + 1): QQ(-1)})
    lifted.append(aux)
    return contains_one(lifted, GRLEX)


def minimal_monomial_generators(exponents) -> tuple:
    """Minimal generating set of the monomial ideal the exponents generate."""
    uniq = sorted(set(exponents), key=lambda e: (monomial_degree(e), e))
    out = []
    for e in uniq:
        if not any(monomial_divides(m, e) for m in out):
            out.append(e)
    return tuple(out)


def monomial_ideal_dimension(n: int, generators) -> int:
    """Krull dimension of R/(monomial ideal): the largest coordinate
    subspace {x_i : i in S} meeting the variety, i.e. the largest S such
    that every generator involves a variable outside S."""
    if n > 16:
        raise ValueError("brute-force dimension capped at 16 variables")
    gens = minimal_monomial_generators(generators)
    if any(e == (0,) * n for e in gens):
        raise ImproperIdealError("ideal is the whole ring")
    var_sets = [frozenset(i for i, k in enumerate(e) if k > 0) for e in gens]
    best = 0
    for mask in range(1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if len(s) <= best:
            continue
        if all(vs - s for vs in var_sets):
            best = len(s)
    return best


def krull_dimension(ideal: Ideal) -> int:
    """Krull dimension of R/I via the head ideal of a graded-lex basis."""
    gb = reduced_gb(ideal, GRLEX)
    if any(h == (0,) * gb.n for h in gb.heads):
        raise ImproperIdealError("ideal is the whole ring")
    return monomial_ideal_dimension(ideal.n, gb.heads)
