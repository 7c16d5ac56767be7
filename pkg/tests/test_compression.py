"""Compression operators, sum-monotonicity checks, and the reduction pipeline."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import point_sets
from sumsetlab import (
    CompressionSpec,
    PointSet,
    ReductionError,
    check_projection_monotone,
    check_sum_monotone,
    compress,
    is_down_set,
    iterated_sumset,
    long_simplex,
    minkowski_sum,
    normalize_down,
    project,
    random_set,
    reduce_to_simplex,
)


def axis_spec(i, d):
    return CompressionSpec.axis(i, d)


general_specs = (
    st.tuples(
        st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
        st.one_of(st.integers(-3, 3), st.fractions(max_denominator=3).filter(lambda f: abs(f) <= 3)),
        st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    )
    .filter(lambda t: any(t[0]) and sum(n * v for n, v in zip(t[0], t[2])) != 0)
    .map(lambda t: CompressionSpec(normal=t[0], offset=t[1], direction=t[2]))
)


class TestCompress:
    def test_stacks_fibers_from_hyperplane(self):
        A = PointSet(2, [(0, 0), (0, 3), (1, 7)])
        assert compress(A, axis_spec(2, 2)) == PointSet(2, [(0, 0), (0, 1), (1, 0)])

    def test_down_sets_are_fixed(self):
        A = long_simplex(2, 4)
        for i in (1, 2):
            assert compress(A, axis_spec(i, 2)) == A

    def test_moves_points_not_down(self):
        A = PointSet(2, [(1, 1)])
        assert compress(A, axis_spec(2, 2)) == PointSet(2, [(1, 0)])

    def test_offset_shift_translates_image(self):
        A = PointSet(2, [(0, 0), (0, 3), (1, 7)])
        spec = axis_spec(2, 2)
        shifted = spec.shifted(2)
        moved = compress(A, shifted)
        expected = compress(A, spec).translate((0, 2))
        assert moved == expected

    def test_transversality_required(self):
        with pytest.raises(ValueError):
            CompressionSpec(normal=(0, 1), offset=0, direction=(1, 0))

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            CompressionSpec(normal=(0, 0), offset=0, direction=(1, 0))

    def test_axis_index_round_trip(self):
        assert axis_spec(2, 3).axis_index() == 2
        assert CompressionSpec(normal=(1, 1), offset=0, direction=(1, 1)).axis_index() is None

    @given(point_sets(2), general_specs)
    def test_preserves_cardinality(self, A, spec):
        assert len(compress(A, spec)) == len(A)

    @given(point_sets(2), general_specs)
    def test_idempotent(self, A, spec):
        once = compress(A, spec)
        assert compress(once, spec) == once

    @given(point_sets(2, coords=st.fractions(max_denominator=2).filter(lambda f: abs(f) <= 3)))
    def test_rational_sets_supported(self, A):
        spec = CompressionSpec(normal=(1, 0), offset=Fraction(1, 2), direction=(1, 0))
        assert len(compress(A, spec)) == len(A)


class TestNormalizeDown:
    def test_square_corner(self):
        A = PointSet(2, [(1, 1), (0, 0)])
        down, trace = normalize_down(A)
        assert down == PointSet(2, [(0, 0), (0, 1)])
        assert trace.replay() == down

    def test_requires_integral_nonnegative(self):
        with pytest.raises(ValueError):
            normalize_down(PointSet(2, [(-1, 0)]))
        with pytest.raises(ValueError):
            normalize_down(PointSet(1, [(Fraction(1, 2),)]))

    @given(point_sets(3, coords=st.integers(0, 4)))
    def test_result_is_down_set(self, A):
        down, trace = normalize_down(A)
        assert is_down_set(down)
        assert len(down) == len(A)
        assert trace.replay() == down


class TestIsDownSet:
    def test_examples(self):
        assert is_down_set(long_simplex(2, 4))
        assert not is_down_set(PointSet(2, [(1, 1)]))
        assert is_down_set(PointSet(2, [(0, 0), (1, 0), (0, 1), (1, 1)]))

    def test_non_integral_is_not_down(self):
        assert not is_down_set(PointSet(1, [(Fraction(1, 2),)]))
        assert not is_down_set(PointSet(1, [(-1,)]))


class TestSumMonotone:
    def test_pair_example(self):
        A = PointSet(2, [(0, 0), (0, 3), (1, 7)])
        cert = check_sum_monotone([A, A], axis_spec(2, 2))
        assert cert.holds()
        assert cert.lhs == 6 and cert.rhs == 6 and cert.slack == 0

    def test_statement_id(self):
        A = PointSet(1, [(0,), (2,)])
        cert = check_sum_monotone([A], axis_spec(1, 1))
        assert cert.to_dict()["statement_id"] == "sum_monotone"

    @given(st.lists(point_sets(2, max_size=5), min_size=1, max_size=3), general_specs)
    @settings(max_examples=60)
    def test_never_violated(self, sets, spec):
        cert = check_sum_monotone(sets, spec)
        assert cert.holds()
        assert cert.lhs == len(minkowski_sum([compress(A, spec) for A in sets]))


class TestProjectionMonotone:
    def test_untouched_coordinates_have_zero_slack(self):
        A = PointSet(2, [(0, 0), (0, 3), (1, 7)])
        cert = check_projection_monotone([A, A], axis=2, basis=None, coords=[1])
        assert cert.holds() and cert.slack == 0

    def test_full_coordinate_list(self):
        A = PointSet(2, [(0, 0), (1, 2)])
        cert = check_projection_monotone([A], axis=1, basis=None, coords=[1, 2])
        assert cert.holds()

    @given(st.lists(point_sets(3, max_size=4), min_size=1, max_size=2), st.data())
    @settings(max_examples=40)
    def test_never_violated(self, sets, data):
        axis = data.draw(st.integers(1, 3))
        coords = sorted(data.draw(st.sets(st.integers(1, 3), min_size=1, max_size=2)))
        cert = check_projection_monotone(sets, axis=axis, basis=None, coords=coords)
        assert cert.holds()
        projected = [project(compress(A, axis_spec(axis, 3)), None, coords) for A in sets]
        assert cert.lhs == len(minkowski_sum(projected))


class TestReduceToSimplex:
    def test_long_simplex_is_already_reduced(self):
        A = long_simplex(2, 4)
        final, trace = reduce_to_simplex(A)
        assert final == A and trace.steps == ()

    def test_unit_square(self):
        A = PointSet(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        final, trace = reduce_to_simplex(A)
        assert final == long_simplex(2, 4)
        assert trace.replay() == final
        # The reduction never increases doubling.
        assert len(minkowski_sum([final, final])) <= len(minkowski_sum([A, A]))

    def test_seeded_random_set(self):
        A = random_set(2, 8, (-5, 5), seed=11)
        final, trace = reduce_to_simplex(A)
        assert final == long_simplex(2, 8)
        assert trace.replay() == final
        for k in range(1, 5):
            assert len(iterated_sumset(A, k)) >= len(iterated_sumset(final, k))

    def test_doubling_monotone_along_trace(self):
        A = random_set(2, 7, (-4, 4), seed=3)
        final, trace = reduce_to_simplex(A)
        doublings = [len(iterated_sumset(S, 2)) for S in trace.intermediates()]
        assert all(x >= y for x, y in zip(doublings, doublings[1:]))
        assert doublings[-1] == len(iterated_sumset(final, 2))

    def test_dimension_deficient_rejected(self):
        collinear = PointSet(2, [(0, 0), (1, 1), (2, 2)])
        with pytest.raises(ValueError):
            reduce_to_simplex(collinear)

    def test_step_budget_enforced(self):
        A = PointSet(2, [(0, 0), (2, 1), (1, 3), (3, 3)])
        with pytest.raises(ReductionError):
            reduce_to_simplex(A, max_steps=0)

    def test_tampered_trace_fails_replay(self):
        A = PointSet(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        final, trace = reduce_to_simplex(A)
        forged = type(trace)(
            initial=trace.initial,
            steps=trace.steps,
            final=final.translate((1, 0)),
            translation=trace.translation,
        )
        with pytest.raises(ReductionError):
            forged.replay()

    def test_trace_serialization_keys(self):
        A = PointSet(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        _, trace = reduce_to_simplex(A)
        doc = trace.to_dict()
        assert set(doc) == {"initial", "translation", "steps", "final"}

    @given(point_sets(2, min_size=3, max_size=7, coords=st.integers(-4, 4)))
    @settings(max_examples=40, deadline=None)
    def test_random_full_dim_sets_reach_long_simplex(self, A):
        from sumsetlab import affine_dimension

        if affine_dimension(A) < 2:
            with pytest.raises(ValueError):
                reduce_to_simplex(A)
            return
        final, trace = reduce_to_simplex(A)
        assert final == long_simplex(2, len(A))
        assert len(minkowski_sum([final, final])) <= len(minkowski_sum([A, A]))
