"""Random transforms and genericity campaigns."""

from itertools import permutations

import pytest

from tropgen.fans import permute_weight, skeleton_membership
from tropgen.generic import (
    apply_transform,
    check_lineality,
    check_skeleton_equality,
    check_symmetry,
    gb_support_stability,
    generic_membership_map,
    perm_inverse,
    permute_columns,
    random_transform,
    raw_membership_map,
    transform_ideal,
)
from tropgen.groebner import krull_dimension, reduced_gb
from tropgen.linalg import QQ, det, mat_inverse, mat_mul
from tropgen.poly import GRLEX, Ideal, parse_polynomial
from tropgen.weights import normalize_grid_point


def P(text, n):
    return parse_polynomial(text, n)


def I(n, *texts):
    return Ideal.of(n, tuple(P(t, n) for t in texts))


class TestRandomTransform:
    def test_deterministic(self):
        assert random_transform(3, 10, 42) == random_transform(3, 10, 42)
        assert random_transform(3, 10, 42) != random_transform(3, 10, 43)

    def test_invertible_and_bounded(self):
        for seed in range(5):
            g = random_transform(3, 7, seed)
            assert det(g) != 0
            assert all(abs(x) <= 7 for row in g for x in row)

    def test_n1(self):
        g = random_transform(1, 3, 0)
        assert g[0][0] != 0


class TestApplyTransform:
    def test_identity(self):
        from tropgen.linalg import identity

        f = P("x1^2 + x2*x3", 3)
        assert apply_transform(f, identity(3)) == f

    def test_swap(self):
        g = ((QQ(0), QQ(1)), (QQ(1), QQ(0)))
        assert apply_transform(P("x1", 2), g) == P("x2", 2)

    def test_round_trip_through_inverse(self):
        ideal = I(3, "x1*x3 - x2^2", "x1^2 - x2*x3")
        g = random_transform(3, 5, 11)
        back = transform_ideal(transform_ideal(ideal, g), mat_inverse(g))
        # same ideal: identical reduced bases
        assert reduced_gb(back, GRLEX).elements == reduced_gb(ideal, GRLEX).elements

    def test_dimension_invariance(self):
        for seed, ideal in enumerate([
                I(2, "x1*x2"),
                I(3, "x1 + x2 + x3"),
                I(3, "x1^2 + x2*x3"),
                I(4, "x1*x3", "x1*x4", "x2*x3", "x2*x4")]):
            g = random_transform(ideal.n, 5, seed * 3 + 1)
            assert krull_dimension(transform_ideal(ideal, g)) == \
                krull_dimension(ideal)

    def test_homogeneity_preserved(self):
        f = P("x1^2*x2 + x2^2*x3", 3)
        g = random_transform(3, 5, 2)
        assert apply_transform(f, g).homogeneous_degree() == 3


class TestPermuteColumns:
    def test_identity_permutation(self):
        g = random_transform(3, 5, 1)
        assert permute_columns(g, (0, 1, 2)) == g

    def test_transform_then_rename_factorization(self):
        # applying sigma(g) equals applying g, then renaming variables:
        # sigma(g(I)) = sigma(g)(I)
        ideal = I(3, "x1^2 + x2*x3")
        g = random_transform(3, 4, 9)
        for sigma in permutations(range(3)):
            sg = permute_columns(g, sigma)
            direct = transform_ideal(ideal, sg)
            renamed_gens = []
            for p in transform_ideal(ideal, g).generators:
                moved = {tuple(permute_weight(e, sigma)): c for e, c in p.terms}
                renamed_gens.append(
                    parse_polynomial("0", 3).from_dict(3, moved))
            renamed = Ideal.of(3, tuple(renamed_gens))
            assert reduced_gb(direct, GRLEX).elements == \
                reduced_gb(renamed, GRLEX).elements

    def test_composition(self):
        g = random_transform(4, 4, 5)
        for s in [(1, 0, 2, 3), (3, 2, 1, 0)]:
            for t in [(0, 2, 1, 3), (1, 2, 3, 0)]:
                st = tuple(t[s[i]] for i in range(4))
                assert permute_columns(permute_columns(g, s), t) == \
                    permute_columns(g, st)

    def test_perm_inverse(self):
        assert perm_inverse((1, 2, 0)) == (2, 0, 1)


class TestCampaigns:
    def test_monomial_map_is_diagonal(self):
        report = generic_membership_map(I(2, "x1*x2"), grid_radius=3,
                                        trials=2, bound=10, seed=1)
        assert report.agreed
        for w, verdict in report.membership.items():
            assert verdict == (w[0] == w[1])

    def test_skeleton_equality(self):
        report = generic_membership_map(I(3, "x1*x2", "x1*x3", "x2*x3"),
                                        grid_radius=2, trials=2, bound=10,
                                        seed=1)
        ok, mismatches = check_skeleton_equality(report, 1)
        assert ok, mismatches

    def test_zero_dimensional_empty(self):
        report = generic_membership_map(I(2, "x1", "x2"), grid_radius=2,
                                        trials=2, bound=10, seed=1)
        assert not any(report.membership.values())

    def test_symmetry_and_lineality(self):
        report = generic_membership_map(I(3, "x1^2 + x2*x3"), grid_radius=2,
                                        trials=2, bound=10, seed=1)
        assert check_symmetry(report)[0]
        assert check_lineality(report)[0]

    def test_asymmetric_non_generic_snapshot(self):
        # untransformed T((x2+x3)) = {w2 = w3} is not permutation closed
        mapping = raw_membership_map(I(3, "x2 + x3"), 2)
        swapped = {}
        for w, v in mapping.items():
            pw = normalize_grid_point(permute_weight(w, (1, 0, 2)))
            swapped[pw] = v
        assert any(mapping[w] != swapped.get(w, mapping[w]) for w in mapping)

    def test_report_json_is_stable(self):
        a = generic_membership_map(I(2, "x1*x2"), grid_radius=2, trials=2,
                                   bound=10, seed=3).to_jsonable()
        b = generic_membership_map(I(2, "x1*x2"), grid_radius=2, trials=2,
                                   bound=10, seed=3).to_jsonable()
        assert a == b

    def test_adding_a_trial_keeps_the_map(self):
        base = generic_membership_map(I(3, "x1 + x2 + x3"), grid_radius=2,
                                      trials=2, bound=10, seed=1)
        more = generic_membership_map(I(3, "x1 + x2 + x3"), grid_radius=2,
                                      trials=3, bound=10, seed=1)
        assert base.membership == more.membership


class TestSupportStability:
    def test_monomial_ideal(self):
        assert gb_support_stability(I(2, "x1*x2"), GRLEX, trials=3,
                                    bound=50, seed=1)

    def test_principal_full_support(self):
        from math import comb

        ideal = I(3, "x1^2 + x2*x3")
        assert gb_support_stability(ideal, GRLEX, trials=3, bound=50, seed=1)
        # the generic support is every degree-2 monomial
        g = random_transform(3, 50, 123)
        transformed = transform_ideal(ideal, g)
        gb = reduced_gb(transformed, GRLEX)
        assert len(gb.elements) == 1
        assert len(gb.elements[0].terms) == comb(3 + 2 - 1, 2)

    def test_single_trial_vacuous(self):
        assert gb_support_stability(I(2, "x1 + x2"), GRLEX, trials=1,
                                    bound=10, seed=1)
