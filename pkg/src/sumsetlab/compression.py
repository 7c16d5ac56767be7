"""Hyperplane compressions, down sets, and reduction to the long simplex.

A compression is specified by a hyperplane H = {x : <n, x> = c} and a
direction v transversal to it (<n, v> != 0).  It slides each fiber of A along
a line parallel to v so the fiber becomes the first |fiber| lattice steps
u, u + v, ..., u + (m-1)v out of its base point u on H.  Compressions
preserve cardinality, never increase sumset sizes, and drive every
full-dimensional finite subset of Z^d toward the extremal long simplex.

Caution on dimensions: a single compression can *collapse* the affine hull
(e.g. {(0,0), (0,1), (1,2)} drops to a line under the x-axis compression
because all the y-values are distinct), but once a set has collapsed no
compression re-inflates it.  The reduction loop below therefore fires a move
only after checking the image is still full-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    HOLDS,
    VIOLATED,
    Certificate,
    digest,
    exact_certificate,
)
from .core import (
    Basis,
    PointSet,
    Vec,
    affine_dimension,
    as_vec,
    is_zero_vec,
    minkowski_sum,
    point_sort_key,
    project,
    vec_add,
    vec_dot,
    vec_scale,
    vec_sub,
    _canon,
)
from .generators import long_simplex
from .serialization import (
    decode_coord,
    decode_point,
    encode_coord,
    encode_point,
    pointset_to_dict,
)


class ReductionError(RuntimeError):
    """The reduction loop could not reach the long simplex."""


@dataclass(frozen=True)
class CompressionSpec:
    """Compression data: hyperplane {<normal, x> = offset} and direction.

    The direction must be transversal to the hyperplane.  The compression
    determined by (normal, offset, direction) only depends on the hyperplane
    up to translation along the direction: shifting the offset by
    mu * <normal, direction> shifts every output point by mu * direction.
    """

    normal: Vec
    offset: int | Fraction
    direction: Vec

    def __post_init__(self):
        d = len(self.normal)
        object.__setattr__(self, "normal", as_vec(self.normal, d))
        object.__setattr__(self, "offset", _canon(self.offset if isinstance(self.offset, (int, Fraction)) else Fraction(self.offset)))
        object.__setattr__(self, "direction", as_vec(self.direction, d))
        if is_zero_vec(self.normal):
            raise ValueError("normal must be nonzero")
        if vec_dot(self.normal, self.direction) == 0:
            raise ValueError("direction must be transversal to the hyperplane")

    @classmethod
    def axis(cls, i: int, d: int) -> "CompressionSpec":
        """The standard i-th axis compression (1-based): push fibers parallel
        to e_i down onto the coordinate hyperplane {x_i = 0}."""
        if not 1 <= i <= d:
            raise ValueError(f"axis must be in 1..{d}")
        e = tuple(1 if j == i - 1 else 0 for j in range(d))
        return cls(normal=e, offset=0, direction=e)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def axis_index(self) -> int | None:
        """1-based axis if this is exactly an axis compression, else None."""
        if self.offset != 0 or self.normal != self.direction:
            return None
        nonzero = [i for i, c in enumerate(self.normal) if c != 0]
        if len(nonzero) == 1 and self.normal[nonzero[0]] == 1:
            return nonzero[0] + 1
        return None

    def shifted(self, mu) -> "CompressionSpec":
        """Same normal/direction, hyperplane offset moved by mu * <n, v>."""
        return CompressionSpec(
            normal=self.normal,
            offset=_canon(self.offset + mu * vec_dot(self.normal, self.direction)),
            direction=self.direction,
        )

    def to_dict(self) -> dict:
        axis = self.axis_index()
        if axis is not None:
            return {"axis": axis}
        return {
            "hyperplane": {
                "normal": encode_point(self.normal),
                "offset": encode_coord(self.offset),
            },
            "direction": encode_point(self.direction),
        }

    @classmethod
    def from_dict(cls, data: dict, dim: int) -> "CompressionSpec":
        if "axis" in data:
            return cls.axis(data["axis"], dim)
        try:
            hyp = data["hyperplane"]
            return cls(
                normal=decode_point(hyp["normal"], dim),
                offset=decode_coord(hyp["offset"]),
                direction=decode_point(data["direction"], dim),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad compression spec {data!r}") from exc


def compress(A: PointSet, spec: CompressionSpec) -> PointSet:
    """Apply the compression to A.  Cardinality is always preserved."""
    if spec.dim != A.dim:
        raise ValueError("compression and set dimensions differ")
    n, v, c = spec.normal, spec.direction, spec.offset
    nv = vec_dot(n, v)
    fibers: dict[Vec, int] = {}
    for a in A.points:
        x = Fraction(c - vec_dot(n, a)) / nv
        base = vec_add(a, vec_scale(_canon(x), v))
        fibers[base] = fibers.get(base, 0) + 1
    out = set()
    for base, m in fibers.items():
        point = base
        for _ in range(m):
            out.add(point)
            point = vec_add(point, v)
    assert len(out) == len(A.points)
    return PointSet._raw(A.dim, frozenset(out))


def is_down_set(A: PointSet) -> bool:
    """True iff A is a finite order ideal of N^d (every axis fiber is an
    initial segment; equivalently A is fixed by all axis compressions)."""
    if not A.is_integral:
        return False
    if any(c < 0 for p in A.points for c in p):
        return False
    return all(
        compress(A, CompressionSpec.axis(i, A.dim)) == A for i in range(1, A.dim + 1)
    )


@dataclass(frozen=True)
class CompressionTrace:
    """Replayable record of a compression run: initial set, fired moves,
    final set.  ``translation`` is the shift applied to the caller's set
    before the first move (traces always start at a translated copy whose
    coordinatewise minima are zero)."""

    initial: PointSet
    steps: tuple[CompressionSpec, ...]
    final: PointSet
    translation: Vec

    def intermediates(self) -> list[PointSet]:
        """All states [initial, ..., final]; length = len(steps) + 1."""
        states = [self.initial]
        for spec in self.steps:
            states.append(compress(states[-1], spec))
        return states

    def replay(self) -> PointSet:
        """Re-run the recorded moves and verify the endpoint."""
        state = self.intermediates()[-1]
        if state != self.final:
            raise ReductionError("trace replay does not reproduce the final set")
        return state

    def to_dict(self) -> dict:
        return {
            "initial": pointset_to_dict(self.initial),
            "translation": encode_point(self.translation),
            "steps": [s.to_dict() for s in self.steps],
            "final": pointset_to_dict(self.final),
        }


def normalize_down(A: PointSet) -> tuple[PointSet, CompressionTrace]:
    """Round-robin axis compressions until A is a down set.

    Requires an integral set with non-negative coordinates.  Terminates
    because every firing move strictly decreases the total coordinate sum.
    Note the result can have smaller affine dimension than the input.
    """
    if not A.is_integral:
        raise ValueError("normalize_down needs an integral set")
    if any(c < 0 for p in A.points for c in p):
        raise ValueError("normalize_down needs non-negative coordinates")
    steps: list[CompressionSpec] = []
    current = A
    changed = True
    while changed:
        changed = False
        for i in range(1, A.dim + 1):
            spec = CompressionSpec.axis(i, A.dim)
            nxt = compress(current, spec)
            if nxt != current:
                steps.append(spec)
                current = nxt
                changed = True
    trace = CompressionTrace(
        initial=A,
        steps=tuple(steps),
        final=current,
        translation=tuple(0 for _ in range(A.dim)),
    )
    return current, trace


# ---------------------------------------------------------------------------
# compression laws as certificates
# ---------------------------------------------------------------------------


def check_sum_monotone(sets: list[PointSet], spec: CompressionSpec) -> Certificate:
    """sum C(A_i) is contained in the compressed sumset, so its size cannot
    exceed |sum A_i|.  (The compression of the k-fold sum lives over the
    hyperplane with offset k * c, by the offset-shift rule.)"""
    if len(sets) < 1:
        raise ValueError("need at least one set")
    k = len(sets)
    compressed_sum = minkowski_sum([compress(A, spec) for A in sets])
    full_sum = minkowski_sum(sets)
    target_spec = spec if spec.offset == 0 or k == 1 else CompressionSpec(
        normal=spec.normal, offset=_canon(k * spec.offset), direction=spec.direction
    )
    compressed_target = compress(full_sum, target_spec)
    missing = compressed_sum.points - compressed_target.points
    lhs = len(compressed_sum)
    rhs = len(full_sum)
    params = {
        "k": k,
        "sizes": [len(A) for A in sets],
        "spec": spec.to_dict(),
    }
    inputs = digest([pointset_to_dict(A) for A in sets] + [spec.to_dict()])
    if missing:
        witness = min(missing, key=point_sort_key)
        return Certificate(
            statement_id="sum_monotone",
            lhs=lhs,
            rhs=rhs,
            slack=rhs - lhs,
            verdict=VIOLATED,
            params=params,
            witnesses={"point_outside_compressed_sumset": encode_point(witness)},
            inputs_digest=inputs,
        )
    cert = exact_certificate(
        "sum_monotone", lhs, rhs, params=params, inputs_digest=inputs
    )
    # containment holds, and compression preserves cardinality, so slack >= 0
    assert cert.verdict == HOLDS
    return cert


def check_projection_monotone(
    sets: list[PointSet],
    axis: int,
    basis: Basis | None,
    coords: list[int],
) -> Certificate:
    """Coordinate projections of sums never grow under a shared axis
    compression: |pi_I(C_i(A_1) + ... + C_i(A_k))| <= |pi_I(A_1 + ... + A_k)|.

    Proof shape: pi_I(C_i(A)) sits inside C_i(pi_I(A)) fiberwise, sums of
    compressions sit inside the compression of the sum, and compression
    preserves cardinality.  When i is not in I both sides are equal.
    """
    if len(sets) < 1:
        raise ValueError("need at least one set")
    if basis is not None and not basis.is_standard():
        raise ValueError("projection monotonicity is certified in the standard basis only")
    dim = sets[0].dim
    spec = CompressionSpec.axis(axis, dim)
    lhs = len(project(minkowski_sum([compress(A, spec) for A in sets]), None, coords))
    rhs = len(project(minkowski_sum(sets), None, coords))
    params = {
        "axis": axis,
        "coords": sorted(coords),
        "k": len(sets),
        "sizes": [len(A) for A in sets],
    }
    inputs = digest([pointset_to_dict(A) for A in sets] + [params])
    return exact_certificate(
        "projection_monotone", lhs, rhs, params=params, inputs_digest=inputs
    )


# ---------------------------------------------------------------------------
# reduction to the long simplex
# ---------------------------------------------------------------------------


def _primitive_integer_direction(delta: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector."""
    denom_lcm = 1
    for c in delta:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    scaled = [int(c * denom_lcm) for c in delta]
    g = 0
    for c in scaled:
        g = math.gcd(g, abs(c))
    return tuple(c // g for c in scaled)


def _alignment_spec(delta: Vec, d: int) -> CompressionSpec:
    """Compression along the primitive direction of ``delta``, anchored on the
    last coordinate hyperplane the direction crosses, oriented positively."""
    v = _primitive_integer_direction(delta)
    j = max(i for i, c in enumerate(v) if c != 0)
    if v[j] < 0:
        v = tuple(-c for c in v)
    normal = tuple(1 if i == j else 0 for i in range(d))
    return CompressionSpec(normal=normal, offset=0, direction=v)


def _shear_spec(j: int, w: int, d: int) -> CompressionSpec:
    """Compression with normal e_j and direction e_j - w e_1 (1-based j >= 2):
    on a down set with maximal first coordinate w it steepens the set toward
    the simplex without leaving N^d."""
    normal = tuple(1 if i == j - 1 else 0 for i in range(d))
    direction = tuple(
        1 if i == j - 1 else (-w if i == 0 else 0) for i in range(d)
    )
    return CompressionSpec(normal=normal, offset=0, direction=direction)


def reduce_to_simplex(A: PointSet, max_steps: int | None = None) -> tuple[PointSet, CompressionTrace]:
    """Drive a full-dimensional finite subset of Z^d to the long simplex on
    |A| points by dimension-preserving compressions.

    Move schedule, re-scanned from the top after every fired move:

    1. the first axis compression that changes the set *and* keeps it
       full-dimensional;
    2. if the set is a down set: the first shear (normal e_j, direction
       e_j - w e_1 with w the maximal first coordinate) that changes it;
    3. otherwise: the first pair-alignment compression (direction = primitive
       integer vector of a pairwise difference) that changes the set and
       keeps it full-dimensional.  These may pass through rational
       intermediate states; the subsequent axis compressions restore
       integrality coordinate by coordinate.

    Every move preserves cardinality and never increases any sumset size, so
    the trace certifies |k * final| <= |k * A| step by step.  Raises
    :class:`ReductionError` if no move fires before reaching the target.
    """
    d = A.dim
    if not A.is_integral:
        raise ValueError("reduction needs an integral set")
    if affine_dimension(A) != d:
        raise ValueError("reduction needs a full-dimensional set")
    mins = tuple(min(p[i] for p in A.points) for i in range(d))
    translation = tuple(-m for m in mins)
    current = A.translate(translation)
    initial = current
    target = long_simplex(d, len(A))
    steps: list[CompressionSpec] = []
    if max_steps is None:
        max_steps = 200 * (len(A) + d) ** 2

    def fire(spec: CompressionSpec, state: PointSet) -> PointSet | None:
        nxt = compress(state, spec)
        if nxt == state:
            return None
        if affine_dimension(nxt) != d:
            return None
        return nxt

    while current != target:
        if len(steps) >= max_steps:
            raise ReductionError(
                f"no convergence after {len(steps)} moves (|A|={len(A)}, d={d})"
            )
        moved = False
        for i in range(1, d + 1):
            nxt = fire(CompressionSpec.axis(i, d), current)
            if nxt is not None:
                steps.append(CompressionSpec.axis(i, d))
                current = nxt
                moved = True
                break
        if moved:
            continue
        if is_down_set(current):
            w = max(p[0] for p in current.points)
            for j in range(2, d + 1):
                spec = _shear_spec(j, w, d)
                nxt = fire(spec, current)
                if nxt is not None:
                    steps.append(spec)
                    current = nxt
                    moved = True
                    break
        else:
            pts = current.sorted_points()
            for a_idx in range(len(pts)):
                for b_idx in range(a_idx + 1, len(pts)):
                    delta = vec_sub(pts[b_idx], pts[a_idx])
                    spec = _alignment_spec(delta, d)
                    nxt = fire(spec, current)
                    if nxt is not None:
                        steps.append(spec)
                        current = nxt
                        moved = True
                        break
                if moved:
                    break
        if not moved:
            raise ReductionError(
                f"stalled after {len(steps)} moves at a non-simplex state "
                f"(|A|={len(A)}, d={d})"
            )
    trace = CompressionTrace(
        initial=initial, steps=tuple(steps), final=current, translation=translation
    )
    return current, trace
