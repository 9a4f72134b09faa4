"""Initial forms, tropical membership, Groebner cones, fan traversal."""

import pytest

from tropgen.fans import cone_dim, member, relative_interior_point, same_cone
from tropgen.poly import Ideal, parse_polynomial
from tropgen.weights import (
    BudgetExceededError,
    MembershipMap,
    check_tropical_basis,
    enumerate_groebner_fan,
    groebner_cone,
    in_tropical_variety,
    initial_form,
    initial_ideal,
    is_tropical_basis,
    normalize_grid_point,
)


def P(text, n):
    return parse_polynomial(text, n)


def I(n, *texts):
    return Ideal.of(n, tuple(P(t, n) for t in texts))


class TestInitialForm:
    def test_examples(self):
        f = P("x1 + x2 + x3", 3)
        assert initial_form(f, (0, 0, 1)) == P("x1 + x2", 3)
        assert initial_form(f, (0, 1, 1)) == P("x1", 3)
        assert initial_form(f, (2, 2, 2)) == f

    def test_quadratic(self):
        f = P("x1^2 + x1*x2 + x2^2", 2)
        assert initial_form(f, (0, 1)) == P("x1^2", 2)

    def test_idempotent(self):
        f = P("x1^2 + x1*x2 + 5*x2^2", 2)
        for w in [(0, 0), (0, 1), (3, -2)]:
            inw = initial_form(f, w)
            assert initial_form(inw, w) == inw


class TestInitialIdeal:
    def test_identity_weight(self):
        ini = initial_ideal(I(2, "x1 + x2"), (0, 0))
        assert ini.generators == (P("x1 + x2", 2),)

    def test_unbalanced_weight(self):
        ini = initial_ideal(I(2, "x1 + x2"), (0, 1))
        assert ini.generators == (P("x1", 2),)

    def test_monomial_ideal_is_its_own_initial(self):
        for w in [(0, 0), (1, 5), (-2, 3)]:
            ini = initial_ideal(I(2, "x1*x2"), w)
            assert ini.generators == (P("x1*x2", 2),)

    def test_nontrivial_initial_needs_gb(self):
        # at a tie between the generators' head candidates, a GB element's
        # initial form reveals a monomial that no single generator shows
        ideal = I(3, "x1 + x2 + x3", "x1 + 2*x2")
        assert not in_tropical_variety(ideal, (0, 0, 1))


class TestMembership:
    def test_linear_form(self):
        ideal = I(3, "x1 + x2 + x3")
        assert in_tropical_variety(ideal, (0, 0, 0))
        assert in_tropical_variety(ideal, (0, 0, 1))
        assert not in_tropical_variety(ideal, (-1, 0, 0))

    def test_monomial_ideal_empty_variety(self):
        ideal = I(2, "x1*x2")
        for w in [(0, 0), (0, 1), (-3, 2), (5, 5)]:
            assert not in_tropical_variety(ideal, w)

    def test_lineality_invariance(self):
        ideal = I(3, "x1^2 + x2*x3")
        for w in [(0, 1, 2), (1, 0, 0), (-1, -1, 2)]:
            base = in_tropical_variety(ideal, w)
            for c in range(-2, 3):
                shifted = tuple(x + c for x in w)
                assert in_tropical_variety(ideal, shifted) == base

    def test_scaling_invariance(self):
        ideal = I(3, "x1^2 + x2*x3")
        for w in [(0, 1, 2), (0, 0, 1)]:
            assert (in_tropical_variety(ideal, w)
                    == in_tropical_variety(ideal, tuple(3 * x for x in w)))


class TestGroebnerCone:
    def test_single_binomial_halfspace(self):
        cone = groebner_cone(I(2, "x1 + x2"), (0, 1))
        assert cone.equalities == ()
        assert cone.inequalities == ((1, -1),)

    def test_tie_gives_equality(self):
        cone = groebner_cone(I(2, "x1 + x2"), (0, 0))
        assert cone.equalities == ((1, -1),)
        assert cone.inequalities == ()

    def test_cone_contains_its_weight(self):
        for w in [(0, 1, 2), (0, 0, 0), (2, 1, 1), (-1, 3, 0)]:
            cone = groebner_cone(I(3, "x1*x3 - x2^2", "x1^2 - x2*x3"), w)
            assert member(cone, w)

    def test_contains_lineality_line(self):
        cone = groebner_cone(I(3, "x1^2 + x2*x3"), (0, 1, 2))
        assert member(cone, (1, 1, 1))
        assert member(cone, (-1, -1, -1))

    def test_interior_points_share_initial_ideal(self):
        ideal = I(3, "x1*x3 - x2^2", "x1^2 - x2*x3")
        w = (0, 1, 2)
        cone = groebner_cone(ideal, w)
        p = relative_interior_point(cone)
        assert initial_ideal(ideal, w).generators == \
            initial_ideal(ideal, p).generators


class TestFanEnumeration:
    def test_binomial_two_cones(self):
        fan = enumerate_groebner_fan(I(2, "x1 + x2"))
        assert len(fan.cones) == 2
        ineqs = sorted(c.inequalities for c in fan.cones)
        assert ineqs == [(((-1, 1)),), (((1, -1)),)]

    def test_monomial_single_cone(self):
        fan = enumerate_groebner_fan(I(2, "x1", "x2"))
        assert len(fan.cones) == 1
        assert cone_dim(fan.cones[0]) == 2

    def test_budget(self):
        ideal = I(3, "x1*x2 + x2*x3 + x1*x3")
        with pytest.raises(BudgetExceededError):
            enumerate_groebner_fan(ideal, budget=1)

    def test_interiors_are_disjoint(self):
        fan = enumerate_groebner_fan(I(3, "x1 + x2 + x3"))
        for w in [(0, 1, 2), (1, 0, 2), (2, 1, 0), (1, 1, 5)]:
            hits = [c for c in fan.cones if member(c, w)]
            assert hits, w
            interiors = [c for c in fan.cones
                         if all(sum(q * x for q, x in zip(row, w)) < 0
                                for row in c.inequalities)]
            assert len(interiors) <= 1

    def test_membership_constant_on_cones(self):
        ideal = I(3, "x1 + x2 + x3")
        fan = enumerate_groebner_fan(ideal)
        for c in fan.cones:
            p = relative_interior_point(c)
            q = tuple(2 * x for x in p)
            assert in_tropical_variety(ideal, p) == in_tropical_variety(ideal, q)


class TestTropicalBasis:
    def test_principal_is_basis(self):
        ok, witness = is_tropical_basis(I(2, "x1 + x2"))
        assert ok and witness is None

    def test_refutation(self):
        ideal = I(3, "x1 + x2 + x3", "x1 + 2*x2")
        ok, witness = is_tropical_basis(ideal)
        assert not ok
        # the witness is genuine: generators disagree with the variety there
        gens = ideal.generators
        assert all(len(initial_form(g, witness).terms) > 1 for g in gens)
        assert not in_tropical_variety(ideal, witness)

    def test_sample_based_check(self):
        ideal = I(3, "x1 + x2 + x3", "x1 + 2*x2")
        sample = [(0, 0, 0), (0, 0, 2), (1, 0, 0)]
        assert not check_tropical_basis(ideal.generators, ideal, sample)
        assert check_tropical_basis(ideal.generators, ideal, [(0, 0, 0)])

    def test_monomial_generators_are_basis_for_empty_variety(self):
        # both T(I) and the generator hypersurface intersection are empty
        ideal = I(3, "x1*x2", "x1*x3")
        ok, witness = is_tropical_basis(ideal)
        assert ok, witness


class TestNormalization:
    def test_normalize(self):
        assert normalize_grid_point((2, 3, 4)) == (0, 1, 2)
        assert normalize_grid_point((2, 4, 6)) == (0, 1, 2)
        assert normalize_grid_point((-1, -1, -1)) == (0, 0, 0)

    def test_membership_map_matches_direct(self):
        ideal = I(3, "x1 + x2 + x3")
        mm = MembershipMap(ideal)
        from itertools import product

        for w in product(range(-2, 3), repeat=3):
            assert mm.query(w) == in_tropical_variety(ideal, w)
