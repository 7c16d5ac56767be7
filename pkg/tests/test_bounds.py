"""Cardinality inequalities, exact formulas, and growth probes.

Expected values in this module were frozen from brute-force enumeration
(naive sumsets over small instances) before the checkers were written.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import point_sets
from sumsetlab import (
    DimensionMismatchError,
    affine_dimension,
    LinearSystem,
    PointSet,
    RationalMatrix,
    Subspace,
    check_discrete_bm,
    check_elementary,
    check_fiber_bound,
    check_freiman_kfold,
    check_freiman_lemma,
    check_gs_kfold,
    check_iterated_pr,
    check_linear_pr,
    check_plunnecke_ruzsa,
    check_ruzsa_triangle,
    check_simplex_formula,
    cube,
    det_main_term_probe,
    fit_deficit_exponent,
    grid,
    interval_set,
    iterated_sumset,
    khovanskii_probe,
    long_simplex,
    main_term_probe,
    minkowski_sum,
    rotation_system,
    shear_system,
    simplex_cardinality,
)


class TestElementary:
    def test_interval_pair_is_tight(self):
        A = interval_set(0, 2)
        B = interval_set(0, 1)
        cert = check_elementary([A, B])
        assert (cert.lhs, cert.rhs, cert.slack) == (4, 4, 0)
        assert cert.holds()

    @given(st.lists(point_sets(2, max_size=6), min_size=1, max_size=3))
    def test_never_violated(self, sets):
        cert = check_elementary(sets)
        assert cert.holds()
        assert cert.lhs == sum(len(A) for A in sets) - (len(sets) - 1)
        assert cert.rhs == len(minkowski_sum(sets))


class TestPlanarKfold:
    def test_three_grids_equality(self):
        G = grid([(2, 2)])[0]
        cert = check_gs_kfold([G, G, G], (1, 0))
        assert (cert.lhs, cert.rhs, cert.slack) == (16, 16, 0)
        assert cert.params["covering_numbers"] == [2, 2, 2]

    def test_needs_two_summands(self):
        with pytest.raises(ValueError):
            check_gs_kfold([cube(2, 1)], (1, 0))

    def test_planar_only(self):
        with pytest.raises(DimensionMismatchError):
            check_gs_kfold([cube(3, 1), cube(3, 1)], (1, 0, 0))

    @given(
        st.lists(point_sets(2, max_size=5), min_size=2, max_size=3),
        st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]),
    )
    @settings(max_examples=60)
    def test_never_violated(self, sets, direction):
        assert check_gs_kfold(sets, direction).holds()


class TestFreimanKfold:
    def test_unit_square_doubling(self):
        A = PointSet(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        cert = check_freiman_kfold(A, 2)
        assert (cert.lhs, cert.rhs, cert.slack) == (9, 9, 0)

    def test_one_dimensional_equality(self):
        cert = check_freiman_kfold(interval_set(0, 4), 3)
        # k(N - 1) + 1 = 13 on an arithmetic progression, and the bound is tight.
        assert (cert.lhs, cert.rhs, cert.slack) == (13, 13, 0)

    def test_lemma_agrees_at_k2(self):
        A = long_simplex(2, 6)
        assert check_freiman_kfold(A, 2).rhs == check_freiman_lemma(A).rhs

    def test_degenerate_set_rejected(self):
        with pytest.raises(ValueError):
            check_freiman_kfold(PointSet(2, [(0, -1), (0, 0), (0, 1)]), 2)

    @given(point_sets(2, min_size=3), st.integers(2, 4))
    @settings(max_examples=50)
    def test_never_violated(self, A, k):
        if affine_dimension(A) < A.dim:
            with pytest.raises(ValueError):
                check_freiman_kfold(A, k)
            return
        cert = check_freiman_kfold(A, k)
        assert cert.holds()
        assert cert.rhs == len(iterated_sumset(A, k))


class TestFreimanLemma:
    def test_planar_simplex_is_tight(self):
        cert = check_freiman_lemma(long_simplex(2, 5))
        assert (cert.lhs, cert.rhs, cert.slack) == (12, 12, 0)

    def test_three_dimensional_simplex_is_tight(self):
        cert = check_freiman_lemma(long_simplex(3, 4))
        assert (cert.lhs, cert.rhs, cert.slack) == (10, 10, 0)

    def test_minimal_simplex_value(self):
        # The (d+1)-point simplex doubles to exactly (d+1)(d+2)/2 points.
        for d in (1, 2, 3):
            cert = check_freiman_lemma(long_simplex(d, d + 1))
            assert cert.lhs == cert.rhs == (d + 1) * (d + 2) // 2

    @given(point_sets(3, min_size=4, max_size=8))
    @settings(max_examples=50)
    def test_never_violated(self, A):
        if affine_dimension(A) < A.dim:
            with pytest.raises(ValueError):
                check_freiman_lemma(A)
            return
        assert check_freiman_lemma(A).holds()


class TestSimplexFormula:
    @pytest.mark.parametrize(
        "d,N,k,expected",
        [(1, 6, 4, 21), (2, 4, 2, 9), (3, 6, 3, 40), (4, 5, 6, 210)],
    )
    def test_frozen_values(self, d, N, k, expected):
        cert = check_simplex_formula(d, N, k)
        assert cert.lhs == cert.rhs == expected and cert.slack == 0
        assert simplex_cardinality(d, N, k) == expected

    def test_one_dimensional_closed_form(self):
        for N in range(2, 8):
            for k in range(1, 5):
                assert simplex_cardinality(1, N, k) == k * (N - 1) + 1

    def test_recurrence(self):
        # |k A_{d,N}| = 1 + sum_{i<=k} |i A_{d-1,N-1}|
        for d in (2, 3):
            for N in range(d + 1, d + 4):
                for k in range(1, 4):
                    lhs = simplex_cardinality(d, N, k)
                    rhs = 1 + sum(simplex_cardinality(d - 1, N - 1, i) for i in range(1, k + 1))
                    assert lhs == rhs

    def test_small_simplex_rejected(self):
        with pytest.raises(ValueError):
            check_simplex_formula(2, 2, 1)

    @given(st.integers(1, 3), st.integers(0, 6), st.integers(1, 4))
    @settings(max_examples=40)
    def test_matches_enumeration(self, d, extra, k):
        N = d + 1 + extra
        assert simplex_cardinality(d, N, k) == len(iterated_sumset(long_simplex(d, N), k))


class TestDiscreteBrunnMinkowski:
    def test_equal_squares_exact_equality(self):
        G = grid([(3, 3)])[0]
        cert = check_discrete_bm([G, G])
        assert (cert.lhs, cert.rhs, cert.slack) == (25, 25, 0)
        assert cert.precision_bits is None  # equal sizes: no radicals needed

    def test_mixed_grids_common_radical(self):
        # |A| = |B| = 6, d = 2: root sum 2*sqrt(6) squares to the integer 24,
        # so the certificate stays on the exact path.
        cert = check_discrete_bm([grid([(2, 3)])[0], grid([(3, 2)])[0]])
        assert (cert.lhs, cert.rhs) == (15, 16)
        assert cert.precision_bits is None and cert.holds()

    def test_incommensurable_sizes_use_intervals(self):
        # sqrt(2) + sqrt(3) has no common radical, so the root-power term
        # needs certified enclosures.
        A = PointSet(2, [(0, 0), (1, 0)])
        B = PointSet(2, [(0, 0), (0, 1), (1, 1)])
        cert = check_discrete_bm([A, B])
        assert cert.holds() and cert.precision_bits is not None

    @given(st.lists(point_sets(2, max_size=6), min_size=2, max_size=3))
    @settings(max_examples=40)
    def test_never_violated(self, sets):
        assert check_discrete_bm(sets).verdict in ("Holds", "Indeterminate")


class TestRuzsaTriangle:
    def test_interval_triple(self):
        I = interval_set(0, 1)
        cert = check_ruzsa_triangle(I, I, I)
        assert (cert.lhs, cert.rhs, cert.slack) == (6, 9, 3)

    @given(point_sets(1, max_size=6), point_sets(1, max_size=6), point_sets(1, max_size=6))
    @settings(max_examples=50)
    def test_never_violated(self, U, V, W):
        assert check_ruzsa_triangle(U, V, W).holds()


class TestPlunneckeRuzsa:
    def test_interval_example(self):
        A = interval_set(0, 9)
        cert = check_plunnecke_ruzsa(A, A, 2, 1)
        assert cert.lhs == 28
        assert cert.rhs == Fraction(6859, 100)
        assert cert.params["K"] == Fraction(19, 10)

    def test_m_n_zero_is_trivial(self):
        A = interval_set(0, 4)
        cert = check_plunnecke_ruzsa(A, A, 0, 0)
        assert cert.lhs == 1 and cert.holds()

    @given(point_sets(1, max_size=8), point_sets(1, max_size=8), st.integers(0, 2), st.integers(0, 2))
    @settings(max_examples=50)
    def test_never_violated(self, A, B, m, n):
        assert check_plunnecke_ruzsa(A, B, m, n).holds()


class TestIteratedPR:
    def test_interval_pair(self):
        A = interval_set(0, 9)
        cert = check_iterated_pr([A, A])
        assert cert.lhs == 37
        assert cert.rhs == Fraction(19**7, 10**6)
        assert cert.params == {"k": 2, "N": 10, "K": Fraction(19, 10)}

    def test_single_summand_rejected(self):
        with pytest.raises(ValueError):
            check_iterated_pr([interval_set(0, 3)])

    def test_unequal_sizes_rejected(self):
        with pytest.raises(ValueError):
            check_iterated_pr([interval_set(0, 3), interval_set(0, 4)])

    @given(st.integers(1, 6), st.integers(2, 4))
    @settings(max_examples=30)
    def test_progressions_never_violated(self, N, k):
        sets = [interval_set(0, N - 1)] * k
        assert check_iterated_pr(sets).holds()


class TestLinearPR:
    def test_single_identity_map_is_degenerate(self):
        system = LinearSystem([RationalMatrix.identity(1)])
        cert = check_linear_pr(system, interval_set(0, 5))
        assert cert.lhs == cert.rhs == 6 and cert.params["K"] == 1

    def test_rotation_pair_holds(self):
        cert = check_linear_pr(rotation_system(2), cube(2, 2))
        assert cert.holds()
        assert cert.lhs == 289  # |X + L_2 X| for X the 17x17 diamond hull
        assert cert.params["K"] == Fraction(81, 25)

    def test_non_identity_leading_map_rejected(self):
        with pytest.raises(ValueError):
            check_linear_pr(shear_system(), cube(2, 1))
        with pytest.raises(ValueError):
            check_linear_pr(
                LinearSystem([RationalMatrix([[2]]), RationalMatrix([[1]])]),
                interval_set(0, 3),
            )


class TestFiberBound:
    def test_zero_subspace(self):
        cert = check_fiber_bound(rotation_system(2), cube(2, 1), Subspace.zero(2))
        assert (cert.lhs, cert.rhs, cert.slack) == (1, 1, 0)

    def test_rotation_on_cube(self):
        # max fiber over lines: (2N+1)^2 <= the full sumset (4N+1)^2 at N=1 is
        # 9 <= 25 for the horizontal line.
        cert = check_fiber_bound(rotation_system(2), cube(2, 1), Subspace.span([(1, 0)], 2))
        assert (cert.lhs, cert.rhs) == (9, 25)
        assert cert.holds()

    def test_proper_subspace_required(self):
        with pytest.raises(ValueError):
            check_fiber_bound(
                rotation_system(2), cube(2, 1), Subspace.span([(1, 0), (0, 1)], 2)
            )

    def test_reducible_system_rejected(self):
        with pytest.raises(ValueError):
            check_fiber_bound(shear_system(), cube(2, 1), Subspace.zero(2))


class TestMainTermProbe:
    def test_identity_system_meets_main_term(self):
        system = LinearSystem([RationalMatrix([[1]])])
        cert = main_term_probe(system, interval_set(0, 4))
        assert cert.holds()
        assert cert.params["deficit"] == 0 and cert.params["exponent"] is None

    def test_rotation_unit_cube_deficit(self):
        cert = main_term_probe(rotation_system(2), cube(2, 1))
        assert cert.verdict == "Indeterminate"  # finite size below the main term
        assert (cert.lhs, cert.rhs) == (36, 25)
        assert cert.params["deficit"] == 11

    def test_reducible_system_rejected(self):
        with pytest.raises(ValueError):
            main_term_probe(LinearSystem([RationalMatrix.identity(2)]), cube(2, 1))

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_rotation_deficit_grows_linearly(self, N):
        cert = main_term_probe(rotation_system(2), cube(2, N))
        assert cert.params["deficit"] == 8 * N + 3


class TestDetMainTermProbe:
    def test_dilate_pair_is_tight(self):
        system = LinearSystem([RationalMatrix([[1]]), RationalMatrix([[2]])])
        A = PointSet(1, [(0,), (1,), (10,)])
        cert = det_main_term_probe(system, A)
        assert cert.holds()
        assert cert.lhs.is_point and cert.lhs.lo == 9
        assert cert.slack.is_point and cert.slack.lo == 0

    def test_rotation_below_main_term_is_indeterminate(self):
        cert = det_main_term_probe(rotation_system(2), cube(2, 1))
        assert cert.verdict == "Indeterminate"
        # The comparison fails at the first precision, so escalation stops there.
        assert cert.precision_bits == 128


class TestKhovanskiiProbe:
    def test_planar_simplex_growth(self):
        rep = khovanskii_probe(long_simplex(2, 4), 6)
        assert rep.values == (4, 9, 16, 25, 36, 49)
        assert rep.polynomial == (1, 2, 1)
        assert rep.threshold == 1 and rep.degree == 2
        assert rep.equals_reference and rep.dominates_reference

    def test_progression_growth(self):
        rep = khovanskii_probe(interval_set(0, 1), 4)
        assert rep.polynomial == (1, 1) and rep.values == (2, 3, 4, 5)

    def test_gapped_progression_beats_reference(self):
        # |k{0,1,3}| = 3k for every k >= 1 (3k - 1 is never a sum), so the
        # fitted polynomial dominates but does not equal the reference 2k + 1.
        rep = khovanskii_probe(PointSet(1, [(0,), (1,), (3,)]), 6)
        assert rep.values == (3, 6, 9, 12, 15, 18)
        assert rep.polynomial == (0, 3) and rep.threshold == 1
        assert rep.reference == (1, 2)
        assert rep.dominates_reference and not rep.equals_reference

    def test_k_max_too_small_rejected(self):
        with pytest.raises(ValueError):
            khovanskii_probe(interval_set(0, 2), 1)

    @given(point_sets(1, min_size=2, max_size=5, coords=st.integers(0, 6)))
    @settings(max_examples=30)
    def test_fitted_polynomial_reproduces_values(self, A):
        rep = khovanskii_probe(A, 5)
        for k in range(rep.threshold, 6):
            value = sum(c * k**i for i, c in enumerate(rep.polynomial))
            assert value == len(iterated_sumset(A, k))


class TestFitDeficitExponent:
    def test_exact_quadratic(self):
        assert fit_deficit_exponent([(2, 4), (3, 9), (5, 25), (8, 64)]) == pytest.approx(2.0)

    def test_single_size_rejected(self):
        with pytest.raises(ValueError):
            fit_deficit_exponent([(3, 5)])

    def test_zero_deficits_clamped(self):
        # Exact instances contribute log 1 = 0 rather than failing.
        assert fit_deficit_exponent([(2, 0), (4, 0)]) == pytest.approx(0.0)
