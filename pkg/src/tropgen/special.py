"""Closed forms for principal and linear ideals, and their verification.

For a principal ideal (f) with deg f >= 1 and a generic coordinate change,
the generic tropical variety is the (n-1)-skeleton of the reference fan
W(n), and the generic Groebner fan is W(n) itself.

For an ideal generated by r independent linear forms (rows of a matrix A),
genericity means every r x r minor of A*g is nonzero; then the Groebner
cone of a weight w depends only on how the sorted coordinates of w cross
position r:

  * if the r-th smallest coordinate is strictly below the (r+1)-st, the
    cone is full-dimensional: the chosen r coordinates stay the smallest;
  * otherwise a plateau of equal coordinates crosses position r, and the
    cone fixes that plateau E as equalities, keeping the strictly smaller
    block B below it and the rest above.

The generic tropical variety is again a skeleton: W(n)^m with m = n - r.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .fans import Cone, build_W, cone_dim, make_cone, same_cone, skeleton_membership
from .generic import random_transform, transform_ideal, trial_seed
from .groebner import krull_dimension, reduced_gb
from .linalg import QQ, ZERO, ONE, det, mat_mul, rank, rref
from .poly import GRLEX, Ideal, ParseError, Polynomial
from .weights import MembershipMap, enumerate_groebner_fan, groebner_cone


class NonGenericMatrixError(ValueError):
    """The matrix fails a genericity condition needed by a closed form."""


def pure_power_coefficients(f: Polynomial, g) -> tuple:
    """Coefficient of x_k^d in g(f), for homogeneous f of degree d.

    Substituting x_i -> sum_j g[i][j] x_j and collecting the pure power
    x_k^d gives  P_k = sum_nu a_nu prod_i g[i][k]^{nu_i}  over the terms
    a_nu x^nu of f; no other source contributes to x_k^d.
    """
    d = f.homogeneous_degree()
    if d is None:
        raise ValueError("polynomial must be homogeneous")
    n = f.n
    out = []
    for k in range(n):
        total = ZERO
        for e, c in f.terms:
            prod = c
            for i, nu in enumerate(e):
                if nu:
                    prod *= QQ(g[i][k]) ** nu
            total += prod
        out.append(total)
    return tuple(out)


def full_support_transform(f: Polynomial, bound: int, seed: int,
                           attempts: int = 50):
    """A random transform g with g(f) supported on all degree-d monomials.

    For deg f >= 1 such transforms form a dense open set, so resampling
    succeeds quickly; returns (g, g_of_f)."""
    from .generic import apply_transform

    n, d = f.n, f.homogeneous_degree()
    full = comb(n + d - 1, d)
    for attempt in range(attempts):
        g = random_transform(n, bound, trial_seed(seed, attempt))
        gf = apply_transform(f, g)
        if len(gf.terms) == full:
            return g, gf
    raise RuntimeError("no full-support transform found")


@dataclass
class PrincipalReport:
    """Outcome of the principal-ideal theorem checks."""

    pure_powers_nonzero: bool = True
    grid_equal_skeleton: bool = True
    fan_equals_W: bool = True
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.pure_powers_nonzero and self.grid_equal_skeleton
                and self.fan_equals_W)

    def to_jsonable(self) -> dict:
        return {
            "pure_powers_nonzero": self.pure_powers_nonzero,
            "grid_equal_skeleton": self.grid_equal_skeleton,
            "fan_equals_W": self.fan_equals_W,
            "mismatches": [repr(m) for m in self.mismatches],
        }


def check_principal_theorem(f: Polynomial, trials: int = 3, seed: int = 1,
                            bound: int = 50, radius: int = 2,
                            check_fan: bool = True) -> PrincipalReport:
    """Per random full-support transform g: all pure-power coefficients of
    g(f) are nonzero, the grid membership of T(g(f)) equals the
    (n-1)-skeleton of W(n), and (once, n <= 4) the Groebner fan of g(f) is
    same_cone-bijective with the maximal cones of W(n)."""
    from itertools import product
    from .weights import normalize_grid_point

    n = f.n
    report = PrincipalReport()
    points = sorted({normalize_grid_point(w)
                     for w in product(range(-radius, radius + 1), repeat=n)})
    for trial in range(trials):
        g, gf = full_support_transform(f, bound, trial_seed(seed, trial) * 7 + 1)
        if any(p == 0 for p in pure_power_coefficients(f, g)):
            # full support includes the pure powers, so this cannot happen
            report.pure_powers_nonzero = False
            report.mismatches.append(("pure_power_zero", trial))
            continue
        mm = MembershipMap(Ideal.of(n, (gf,)))
        for w in points:
            got = mm.query(w)
            want = skeleton_membership(n, n - 1, w)
            if got != want:
                report.grid_equal_skeleton = False
                report.mismatches.append(("grid", trial, w, got, want))
        if check_fan and trial == 0 and n <= 4:
            ok, detail = _fan_equals_W(Ideal.of(n, (gf,)))
            if not ok:
                report.fan_equals_W = False
                report.mismatches.append(("fan", detail))
    return report


def _fan_equals_W(ideal: Ideal):
    n = ideal.n
    fan = enumerate_groebner_fan(ideal)
    expected = [c for c in build_W(n).cones if len(c.label) == 1]
    if len(fan.cones) != len(expected):
        return (False, f"{len(fan.cones)} cones, expected {len(expected)}")
    for c in fan.cones:
        if not any(same_cone(c, e) for e in expected):
            return (False, f"unexpected cone {c.inequalities}")
    return (True, None)


# ---------------------------------------------------------------------------
# linear ideals

@dataclass(frozen=True)
class LinearIdealMatrix:
    """Coefficient matrix of an ideal generated by linear forms."""

    n: int
    rows: tuple  # QQ row tuples

    @staticmethod
    def of(rows, n) -> "LinearIdealMatrix":
        return LinearIdealMatrix(n, tuple(tuple(QQ(x) for x in row)
                                          for row in rows))

    @property
    def rank(self) -> int:
        return rank(self.rows)

    def to_ideal(self) -> Ideal:
        gens = []
        for row in self.rows:
            coeffs = {tuple(1 if j == i else 0 for j in range(self.n)): QQ(c)
                      for i, c in enumerate(row) if c != 0}
            if coeffs:
                gens.append(Polynomial.from_dict(self.n, coeffs))
        return Ideal.of(self.n, tuple(gens))


def gauss_reduce(A: LinearIdealMatrix):
    """Reduced form [I_r | *] of the matrix, dropping zero rows.

    When the leading r x r minor vanishes the reduction needs a column
    permutation; gauss_reduce_report exposes it, here it raises since a
    permuted matrix describes a different ideal."""
    reduced, perm = gauss_reduce_report(A)
    if perm != tuple(range(A.n)):
        raise NonGenericMatrixError(
            f"leading minor vanishes; column permutation {perm} required")
    return reduced


def gauss_reduce_report(A: LinearIdealMatrix):
    """(reduced matrix in [I_r | *] form, column permutation applied)."""
    reduced, pivots = rref(A.rows)
    r = len(reduced)
    perm = tuple(pivots) + tuple(c for c in range(A.n) if c not in pivots)
    permuted = tuple(tuple(row[c] for c in perm) for row in reduced)
    return permuted, perm


def check_minors(A: LinearIdealMatrix, g) -> bool:
    """All C(n, r) maximal minors of A*g nonzero (exact determinants)."""
    prod = mat_mul(A.rows, g)
    r = len(A.rows)
    for cols in combinations(range(A.n), r):
        sub = [[row[c] for c in cols] for row in prod]
        if det(sub) == 0:
            return False
    return True


def right_block_nonzero(reduced, n) -> bool:
    """Every entry of the * block of a matrix in [I_r | *] form nonzero."""
    r = len(reduced)
    return all(reduced[i][j] != 0 for i in range(r) for j in range(r, n))


def parse_matrix_file(text: str) -> LinearIdealMatrix:
    """Matrix file: 'matrix: r n' header, then r whitespace-separated rows
    of rationals; '#' lines are comments."""
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = re.fullmatch(r"matrix:\s*(\d+)\s+(\d+)", line)
            if m is None:
                raise ParseError(f"line {lineno}: expected 'matrix: r n' header", 0)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        entries = line.split()
        if len(entries) != header[1]:
            raise ParseError(f"line {lineno}: expected {header[1]} entries", 0)
        row = []
        for ent in entries:
            try:
                if "/" in ent:
                    p, q = ent.split("/")
                    row.append(QQ(int(p), int(q)))
                else:
                    row.append(QQ(int(ent)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"line {lineno}: bad entry {ent!r}", 0) from exc
        rows.append(tuple(row))
    if header is None:
        raise ParseError("missing 'matrix: r n' header", 0)
    if len(rows) != header[0]:
        raise ParseError(f"expected {header[0]} rows, got {len(rows)}", 0)
    return LinearIdealMatrix.of(rows, header[1])


def linear_groebner_cone(A_red, n, w) -> Cone:
    """Closed-form Groebner cone at w of a generic rank-r linear ideal.

    Requires all maximal minors of the reduced matrix nonzero.  With
    r = rank, sort the coordinates of w; the cone is determined by the
    block structure around position r (see module docstring)."""
    r = len(A_red)
    if not 1 <= r <= n - 1:
        raise ValueError("rank must be between 1 and n-1")
    if not right_block_nonzero(A_red, n):
        raise NonGenericMatrixError("a right-block entry vanishes")
    if not check_minors(LinearIdealMatrix.of(A_red, n), tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))):
        raise NonGenericMatrixError("a maximal minor vanishes")
    w = tuple(QQ(x) for x in w)
    order = sorted(range(n), key=lambda i: (w[i], i))
    values = [w[i] for i in order]
    if values[r - 1] < values[r]:
        # full-dimensional: the r chosen coordinates stay smallest
        small = set(order[:r])
        ineqs = [_unit_diff(n, s, t)
                 for s in small for t in range(n) if t not in small]
        return make_cone(n, (), ineqs)
    pivot_value = values[r - 1]
    E = [i for i in range(n) if w[i] == pivot_value]
    B = [i for i in range(n) if w[i] < pivot_value]
    T = [i for i in range(n) if w[i] > pivot_value]
    e0 = E[0]
    eqs = [_unit_diff(n, e, e0) for e in E[1:]]
    ineqs = [_unit_diff(n, b, e0) for b in B] + [_unit_diff(n, e0, t) for t in T]
    return make_cone(n, eqs, ineqs)


def _unit_diff(n, i, j):
    """Row of the constraint w_i - w_j <= 0 (or = 0)."""
    return tuple((1 if k == i else 0) - (1 if k == j else 0) for k in range(n))


def plateau_cone(n, B, E) -> Cone:
    """The cone {w_B <= w_E, w_E all equal, w_E <= w_rest}."""
    E = sorted(E)
    B = sorted(B)
    T = [i for i in range(n) if i not in set(E) | set(B)]
    e0 = E[0]
    eqs = [_unit_diff(n, e, e0) for e in E[1:]]
    ineqs = [_unit_diff(n, b, e0) for b in B] + [_unit_diff(n, e0, t) for t in T]
    return make_cone(n, eqs, ineqs)


def linear_fan_census(n: int, r: int) -> dict:
    """Number of Groebner cones of each dimension for a generic rank-r
    linear ideal, from the closed form.

    Full-dimensional cones pick the r smallest coordinates: C(n, r) of
    dimension n.  Lower cones are plateau patterns (B, E): a plateau E of
    size >= 2 crossing position r (|B| <= r-1, |B| + |E| >= r+1), of
    dimension n - |E| + 1.
    """
    census = {n: comb(n, r)}
    for e_size in range(2, n + 1):
        d = n - e_size + 1
        count = 0
        for b_size in range(0, r):
            if b_size + e_size < r + 1 or b_size + e_size > n:
                continue
            count += comb(n, e_size) * comb(n - e_size, b_size)
        if count:
            census[d] = census.get(d, 0) + count
    return census


@dataclass
class LinearReport:
    """Outcome of the linear-ideal theorem checks."""

    rank_matches_dim: bool = True
    minors_nonzero: bool = True
    cones_agree: bool = True
    grid_equal_skeleton: bool = True
    skeleton_cones_found: bool = True
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.rank_matches_dim and self.minors_nonzero
                and self.cones_agree and self.grid_equal_skeleton
                and self.skeleton_cones_found)

    def to_jsonable(self) -> dict:
        return {
            "rank_matches_dim": self.rank_matches_dim,
            "minors_nonzero": self.minors_nonzero,
            "cones_agree": self.cones_agree,
            "grid_equal_skeleton": self.grid_equal_skeleton,
            "skeleton_cones_found": self.skeleton_cones_found,
            "mismatches": [repr(m) for m in self.mismatches],
        }


def check_linear_theorem(A: LinearIdealMatrix, trials: int = 3,
                         seed: int = 1, bound: int = 50,
                         radius: int = 2, n_weights: int = 20) -> LinearReport:
    """Run the linear-ideal checks for one coefficient matrix.

    (a) n - rank(A) equals the Krull dimension of the ideal; (b) for
    random transforms g, all maximal minors of A*g and all right-block
    entries of (A*g)_red are nonzero; (c) the closed-form cone agrees with
    the Groebner engine on random weights; (d) grid membership of the
    generic tropical variety equals the m-skeleton of W(n); (e) every
    maximal cone of W(n)^m is one of the closed-form plateau cones.
    """
    import random as _random
    from itertools import product, combinations as _comb
    from .generic import generic_membership_map, check_skeleton_equality

    n, r = A.n, A.rank
    m = n - r
    ideal = A.to_ideal()
    report = LinearReport()

    if krull_dimension(ideal) != m:
        report.rank_matches_dim = False
        report.mismatches.append(("dim", krull_dimension(ideal), m))

    rng = _random.Random(trial_seed(seed, 0) * 13 + 5)
    generic_rows = None
    for trial in range(trials):
        for attempt in range(50):
            g = random_transform(n, bound,
                                 trial_seed(seed, trial) * 31 + attempt)
            if check_minors(A, g):
                break
        else:
            report.minors_nonzero = False
            report.mismatches.append(("minors", trial))
            continue
        Ag = LinearIdealMatrix.of(mat_mul(A.rows, g), n)
        reduced, perm = gauss_reduce_report(Ag)
        if perm != tuple(range(n)) or not right_block_nonzero(reduced, n):
            report.minors_nonzero = False
            report.mismatches.append(("right_block", trial))
            continue
        if generic_rows is None:
            generic_rows = reduced

    if generic_rows is not None:
        lin_ideal = LinearIdealMatrix.of(generic_rows, n).to_ideal()
        for _ in range(n_weights):
            w = tuple(rng.randint(-3, 3) for _ in range(n))
            closed = linear_groebner_cone(generic_rows, n, w)
            engine = groebner_cone(lin_ideal, w)
            if not same_cone(closed, engine):
                report.cones_agree = False
                report.mismatches.append(("cone", w))

    gen_report = generic_membership_map(ideal, grid_radius=radius,
                                        trials=trials, bound=bound, seed=seed)
    ok, mism = check_skeleton_equality(gen_report, m)
    if not ok:
        report.grid_equal_skeleton = False
        report.mismatches.append(("grid", mism[:5]))

    # maximal cones of W(n)^m are the closed-form plateau cones with empty
    # below-block and plateau size r + 1; witness each by the indicator
    # weight vanishing on the plateau
    if generic_rows is not None:
        for E in _comb(range(n), r + 1):
            w = tuple(0 if i in E else 1 for i in range(n))
            w_cone = next(c for c in build_W(n).cones if c.label == tuple(E))
            if not same_cone(linear_groebner_cone(generic_rows, n, w), w_cone):
                report.skeleton_cones_found = False
                report.mismatches.append(("skeleton_cone", E))
    return report
