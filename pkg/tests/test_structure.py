"""Irreducibility decisions, coprimality, and generalized progressions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumsetlab import (
    DimensionMismatchError,
    LinearSystem,
    PointSet,
    RationalMatrix,
    Subspace,
    coprime_sufficient,
    cube,
    decide_irreducible,
    is_reducible_witness,
    random_system,
    rotation_system,
    shear_system,
)
from sumsetlab.structure import (
    GAP,
    BudgetExceededError,
    gap_contains,
    gap_is_proper,
)

DIAG_23 = LinearSystem([RationalMatrix.identity(2), RationalMatrix([[2, 0], [0, 3]])])


class TestReducibleWitness:
    def test_shear_vertical_axis(self):
        # The normalized map L_1^{-1} L_2 fixes the vertical axis.
        assert is_reducible_witness(shear_system(), Subspace.span([(0, 1)], 2))
        assert not is_reducible_witness(shear_system(), Subspace.span([(1, 0)], 2))

    def test_rotation_has_no_line_witness(self):
        rot = rotation_system(2)
        for v in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]:
            assert not is_reducible_witness(rot, Subspace.span([v], 2))

    def test_diagonal_eigenvector(self):
        assert is_reducible_witness(DIAG_23, Subspace.span([(1, 0)], 2))
        assert is_reducible_witness(DIAG_23, Subspace.span([(0, 1)], 2))
        assert not is_reducible_witness(DIAG_23, Subspace.span([(1, 1)], 2))

    def test_trivial_subspaces_rejected(self):
        with pytest.raises(ValueError):
            is_reducible_witness(shear_system(), Subspace.zero(2))
        with pytest.raises(ValueError):
            is_reducible_witness(shear_system(), Subspace.span([(1, 0), (0, 1)], 2))


class TestDecideIrreducible:
    def test_shear_reducible_with_witness(self):
        verdict = decide_irreducible(shear_system())
        assert verdict.status == "Reducible"
        assert is_reducible_witness(shear_system(), verdict.witness)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_rotation_irreducible(self, d):
        assert decide_irreducible(rotation_system(d)).status == "Irreducible"

    def test_single_identity_map_reducible(self):
        assert decide_irreducible(LinearSystem([RationalMatrix.identity(2)])).status == "Reducible"

    def test_one_dimensional_always_irreducible(self):
        system = LinearSystem([RationalMatrix([[1]]), RationalMatrix([[3]])])
        assert decide_irreducible(system).status == "Irreducible"

    def test_diagonal_pair_reducible(self):
        verdict = decide_irreducible(DIAG_23)
        assert verdict.status == "Reducible"
        assert verdict.witness.dim == 1

    def test_to_dict_includes_witness(self):
        doc = decide_irreducible(shear_system()).to_dict()
        assert doc["status"] == "Reducible" and "witness" in doc
        assert decide_irreducible(rotation_system(2)).to_dict() == {"status": "Irreducible"}

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_planar_systems_always_decided(self, seed):
        system = random_system(2, 2, 3, seed)
        verdict = decide_irreducible(system)
        assert verdict.status in ("Irreducible", "Reducible")
        if verdict.status == "Reducible":
            assert is_reducible_witness(system, verdict.witness)

    @given(st.integers(0, 2**32))
    @settings(max_examples=15, deadline=None)
    def test_three_dimensional_systems_always_decided(self, seed):
        system = random_system(3, 2, 2, seed)
        verdict = decide_irreducible(system)
        assert verdict.status in ("Irreducible", "Reducible")
        if verdict.status == "Reducible":
            assert is_reducible_witness(system, verdict.witness)

    @given(st.integers(0, 2**32))
    @settings(max_examples=20, deadline=None)
    def test_conjugation_invariance(self, seed):
        system = random_system(2, 2, 2, seed)
        S = random_system(2, 1, 3, seed ^ 0xC0FFEE).maps[0]
        conjugated = LinearSystem([S.inverse() @ M @ S for M in system.maps])
        assert decide_irreducible(system).status == decide_irreducible(conjugated).status

    @given(st.integers(0, 2**32))
    @settings(max_examples=20, deadline=None)
    def test_normalization_invariance(self, seed):
        system = random_system(2, 3, 2, seed)
        L1_inv = system.maps[0].inverse()
        normalized = LinearSystem([L1_inv @ M for M in system.maps])
        assert decide_irreducible(system).status == decide_irreducible(normalized).status


class TestCoprimeSufficient:
    def test_rotation_pair(self):
        assert coprime_sufficient(rotation_system(2)) == "Coprime"

    def test_common_factor_is_unknown(self):
        system = LinearSystem([RationalMatrix([[2]]), RationalMatrix([[2]])])
        assert coprime_sufficient(system) == "Unknown"

    def test_identity_in_system(self):
        system = LinearSystem([RationalMatrix([[2]]), RationalMatrix([[1]])])
        assert coprime_sufficient(system) == "Coprime"

    def test_non_integral_rejected(self):
        from fractions import Fraction

        system = LinearSystem([RationalMatrix([[Fraction(1, 2)]])])
        with pytest.raises(ValueError):
            coprime_sufficient(system)


class TestGAP:
    P = GAP(base=(0,), generators=((1,),), lengths=(5,))

    def test_expansion_is_coefficient_box(self):
        # Coefficients run 1..L_i, so the rank-1 progression is {1, ..., 5}.
        assert {p[0] for p in self.P.expand().points} == {1, 2, 3, 4, 5}

    def test_contains_subprogression(self):
        assert gap_contains(self.P, PointSet(1, [(1,), (3,), (5,)]))

    def test_translated_point_outside(self):
        assert not gap_contains(self.P, PointSet(1, [(9,)]))

    def test_proper(self):
        assert gap_is_proper(self.P)

    def test_repeated_generator_improper(self):
        P2 = GAP(base=(0,), generators=((1,), (1,)), lengths=(2, 2))
        assert len(P2.expand()) == 3  # {2, 3, 4} collapses below volume 4
        assert not gap_is_proper(P2)
        assert P2.volume() == 4 and P2.additive_dimension == 2

    def test_planar_box(self):
        P = GAP(base=(0, 0), generators=((1, 0), (0, 1)), lengths=(3, 4))
        assert P.volume() == 12 and len(P.expand()) == 12
        assert gap_is_proper(P)
        assert P.dim == 2 and P.additive_dimension == 2

    def test_budget_enforced(self):
        with pytest.raises(BudgetExceededError):
            gap_is_proper(self.P, budget=2)
        dependent = GAP(base=(0,), generators=((1,), (1,)), lengths=(9, 9))
        with pytest.raises(BudgetExceededError):
            gap_contains(dependent, PointSet(1, [(3,)]), budget=4)

    def test_round_trip(self):
        P2 = GAP(base=(0,), generators=((1,), (1,)), lengths=(2, 2))
        assert GAP.from_dict(P2.to_dict()) == P2

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            gap_contains(self.P, PointSet(2, [(0, 0)]))

    @given(
        st.integers(-3, 3),
        st.integers(1, 4),
        st.integers(1, 4),
        st.integers(-2, 2),
        st.integers(-2, 2),
    )
    @settings(max_examples=40)
    def test_independent_path_matches_expansion(self, base, L1, L2, g1, g2):
        # Membership through coefficient solving agrees with brute expansion.
        P = GAP(base=(base, 0), generators=((g1, 1), (g2, 0)), lengths=(L1, L2))
        expansion = P.expand()
        box = PointSet(2, [(x, y) for x in range(-9, 10) for y in range(-5, 6)])
        for q in box.points:
            single = PointSet(2, [q])
            assert gap_contains(P, single) == (q in {tuple(p) for p in expansion.points})
