"""Feasibility of small homogeneous halfspace systems via Fourier-Motzkin.

All cones in this project are tiny (ambient dimension <= 8, a few dozen
constraint rows after deduplication), so exact Fourier-Motzkin elimination
with a back-substitution witness is both simple and fast enough.  No
floating point is ever involved.
"""

from __future__ import annotations

from .linalg import QQ, ZERO, ONE, nullspace, vec_dot

# A constraint is (coeffs, rhs) meaning coeffs . z <= rhs.


def _normalize(coeffs, rhs):
    """Scale by a positive rational so constraints deduplicate."""
    for c in coeffs:
        if c != 0:
            a = abs(c)
            return (tuple(x / a for x in coeffs), rhs / a)
    return (coeffs, rhs)


def _eliminate(system, var):
    """Project the constraint system onto coordinates < var."""
    pos, neg, zero = [], [], []
    for coeffs, rhs in system:
        c = coeffs[var]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            zero.append((coeffs, rhs))
    out = set(zero)
    for pc, pr in pos:
        for nc, nr in neg:
            a, b = pc[var], -nc[var]
            coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
            out.add(_normalize(coeffs, b * pr + a * nr))
    return list(out)


def find_point(n, equalities=(), nonstrict=(), strict=()):
    """Exact rational point of the homogeneous system, or None.

    Solves  e.x = 0 for e in equalities,  q.x <= 0 for q in nonstrict,
    q.x < 0 for q in strict.  Strict rows are encoded as q.x <= -1, which
    is equivalent by homogeneity (positive scaling).
    """
    if equalities:
        basis = nullspace(equalities, n)
        if not basis:
            # only the origin satisfies the equalities
            return None if strict else tuple([ZERO] * n)
    else:
        basis = None
    k = len(basis) if basis is not None else n

    def project(row):
        if basis is None:
            return tuple(QQ(x) for x in row)
        return tuple(vec_dot(row, b) for b in basis)

    system = []
    for row in nonstrict:
        system.append(_normalize(project(row), ZERO))
    for row in strict:
        system.append(_normalize(project(row), QQ(-1)))

    # Eliminate z_{k-1}, ..., z_0, remembering the system at each level.
    levels = []
    for var in range(k - 1, -1, -1):
        levels.append((var, system))
        system = _eliminate(system, var)
    for coeffs, rhs in system:
        if rhs < 0:
            return None

    z = [ZERO] * k
    for var, sys_at_level in reversed(levels):
        lo, hi = None, None
        for coeffs, rhs in sys_at_level:
            c = coeffs[var]
            if c == 0:
                continue
            rest = sum((coeffs[j] * z[j] for j in range(var)), ZERO)
            bound = (rhs - rest) / c
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None:
            z[var] = (lo + hi) / 2
        elif hi is not None:
            z[var] = hi - ONE
        elif lo is not None:
            z[var] = lo + ONE
        # else unconstrained: leave 0

    if basis is None:
        return tuple(z)
    point = [ZERO] * n
    for zi, b in zip(z, basis):
        for j in range(n):
            point[j] += zi * b[j]
    return tuple(point)


def feasible(n, equalities=(), nonstrict=(), strict=()):
    return find_point(n, equalities, nonstrict, strict) is not None
