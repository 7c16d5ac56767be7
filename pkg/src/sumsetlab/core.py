"""Exact rational geometry of finite point sets.

Everything here is computed over Q with no floating point.  Coordinates are
stored as plain ``int`` whenever they are integral and as
``fractions.Fraction`` (always in lowest terms) otherwise; the two mix freely
because Python guarantees ``hash(Fraction(2, 1)) == hash(2)``.  Keeping the
integer fast path matters: k-fold sumsets of lattice sets dominate the
workloads and pure-``int`` tuple arithmetic is several times faster than
``Fraction``.

Conventions
-----------
* points are tuples, sets of points are :class:`PointSet`
* indices exposed to callers (projection coordinates, compression axes) are
  1-based, matching the usual ``[d] = {1, ..., d}`` convention; internals are
  0-based
* all set-valued results are plain sets; canonical *ordering* (used for
  serialization and witnesses) sorts coordinates by ``(numerator,
  denominator)`` pairs so output is deterministic
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Coord = int | Fraction
Vec = tuple[Coord, ...]


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


class EmptySetError(ValueError):
    """A non-empty point set was required."""


class SingularMatrixError(ValueError):
    """A matrix that must be invertible is not."""


# ---------------------------------------------------------------------------
# coordinates and raw vectors
# ---------------------------------------------------------------------------


def _canon(x: Coord) -> Coord:
    """Collapse integral Fractions to int; leave everything else alone."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def as_coord(value) -> Coord:
    """Validate and canonicalize a single coordinate (int or Fraction only)."""
    if type(value) is int or type(value) is Fraction:
        return _canon(value)
    if isinstance(value, int):  # bool is rejected below, numpy ints land here
        if isinstance(value, bool):
            raise TypeError("bool is not a coordinate")
        return int(value)
    if isinstance(value, Fraction):
        return _canon(value)
    raise TypeError(f"coordinate must be int or Fraction, got {type(value).__name__}")


def as_vec(point: Sequence, dim: int) -> Vec:
    p = tuple(as_coord(c) for c in point)
    if len(p) != dim:
        raise DimensionMismatchError(f"point of length {len(p)} in dimension {dim}")
    return p


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(_canon(x + y) for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(_canon(x - y) for x, y in zip(a, b))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(c: Coord, a: Vec) -> Vec:
    return tuple(_canon(c * x) for x in a)


def vec_dot(a: Vec, b: Vec) -> Coord:
    return _canon(sum(x * y for x, y in zip(a, b)))


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def coord_sort_key(x: Coord):
    return (x.numerator, x.denominator)


def point_sort_key(p: Vec):
    """Deterministic total order: lexicographic on (numerator, denominator)."""
    return tuple((c.numerator, c.denominator) for c in p)


# ---------------------------------------------------------------------------
# point sets
# ---------------------------------------------------------------------------


class PointSet:
    """A finite, non-empty, deduplicated set of points in Q^d."""

    __slots__ = ("dim", "points", "_integral")

    def __init__(self, dim: int, points: Iterable[Sequence]):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        pts = frozenset(as_vec(p, dim) for p in points)
        if not pts:
            raise EmptySetError("point set must be non-empty")
        self.dim = dim
        self.points = pts
        self._integral: bool | None = None

    @classmethod
    def _raw(cls, dim: int, points: frozenset, integral: bool | None = None) -> "PointSet":
        """Trusted constructor: ``points`` already canonical and non-empty."""
        self = object.__new__(cls)
        self.dim = dim
        self.points = points
        self._integral = integral
        return self

    @property
    def is_integral(self) -> bool:
        if self._integral is None:
            self._integral = all(
                type(c) is int for p in self.points for c in p
            )
        return self._integral

    def sorted_points(self) -> list[Vec]:
        return sorted(self.points, key=point_sort_key)

    def translate(self, v: Sequence) -> "PointSet":
        w = as_vec(v, self.dim)
        return PointSet._raw(self.dim, frozenset(vec_add(p, w) for p in self.points))

    def negate(self) -> "PointSet":
        return PointSet._raw(self.dim, frozenset(vec_neg(p) for p in self.points), self._integral)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        pts = self.sorted_points()
        shown = ", ".join(repr(p) for p in pts[:6])
        more = "" if len(pts) <= 6 else f", ... ({len(pts)} total)"
        return f"PointSet(dim={self.dim}, {{{shown}{more}}})"


def _require_same_dim(sets: Sequence[PointSet]) -> int:
    dims = {A.dim for A in sets}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def _pairwise_sums(ps: frozenset, qs: frozenset, dim: int, integral: bool) -> frozenset:
    """All p + q, deduplicated.  This is the hottest loop in the package:
    every k-fold sumset funnels through it.

    Integral fast path: pack each point into a single integer with
    per-coordinate mixed radix wide enough that coordinates of sums cannot
    collide; then p + q is one int addition and dedup is a set of ints.
    This is several times faster than tuple arithmetic and stays exact.
    """
    if not integral:
        return frozenset(vec_add(p, q) for p in ps for q in qs)
    mins_p = [min(p[i] for p in ps) for i in range(dim)]
    maxs_p = [max(p[i] for p in ps) for i in range(dim)]
    mins_q = [min(q[i] for q in qs) for i in range(dim)]
    maxs_q = [max(q[i] for q in qs) for i in range(dim)]
    bases = [
        maxs_p[i] + maxs_q[i] - mins_p[i] - mins_q[i] + 1 for i in range(dim)
    ]
    weights = [1] * dim
    for i in range(1, dim):
        weights[i] = weights[i - 1] * bases[i - 1]

    def pack(points, mins):
        if dim == 1:
            m0 = mins[0]
            return [p[0] - m0 for p in points]
        return [
            sum((p[i] - mins[i]) * weights[i] for i in range(dim)) for p in points
        ]

    packed_p = pack(ps, mins_p)
    packed_q = pack(qs, mins_q)
    sums = {a + b for a in packed_p for b in packed_q}
    offset = [mins_p[i] + mins_q[i] for i in range(dim)]
    out = []
    for v in sums:
        coords = []
        for i in range(dim):
            v, r = divmod(v, bases[i])
            coords.append(r + offset[i])
        out.append(tuple(coords))
    return frozenset(out)


def minkowski_sum(sets: Sequence[PointSet]) -> PointSet:
    """A_1 + ... + A_k = {a_1 + ... + a_k}, folded pairwise with dedup."""
    sets = list(sets)
    if not sets:
        raise EmptySetError("minkowski_sum needs at least one set")
    dim = _require_same_dim(sets)
    acc = sets[0].points
    acc_integral = sets[0].is_integral
    for A in sets[1:]:
        integral = acc_integral and A.is_integral
        acc = _pairwise_sums(acc, A.points, dim, integral)
        acc_integral = integral
    return PointSet._raw(dim, acc, acc_integral)


def iterated_sumset(A: PointSet, k: int) -> PointSet:
    """kA = A + ... + A (k summands), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = A.points
    for _ in range(k - 1):
        acc = _pairwise_sums(acc, A.points, A.dim, A.is_integral)
    return PointSet._raw(A.dim, acc, A.is_integral)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


def rref(rows: Iterable[Sequence[Coord]], width: int) -> tuple[list[list[Coord]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(width):
        pivot_row = None
        for r in range(row, len(mat)):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = Fraction(1, 1) / mat[row][col]
        mat[row] = [_canon(inv * x) for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [_canon(x - factor * y) for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[:row], pivots


def kernel_basis(rows: Iterable[Sequence[Coord]], width: int) -> list[Vec]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = _canon(-red[r][f])
        basis.append(tuple(v))
    return basis


class RationalMatrix:
    """Square matrix over Q (rows of canonical coordinates)."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(as_coord(c) for c in r) for r in rows)
        if not rows:
            raise ValueError("matrix needs at least one row")
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise DimensionMismatchError("matrix must be square")
        self.dim = d
        self.rows = rows

    @classmethod
    def identity(cls, d: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    def mat_vec(self, v: Vec) -> Vec:
        return tuple(_canon(sum(a * x for a, x in zip(row, v))) for row in self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.dim != other.dim:
            raise DimensionMismatchError("matrix dimensions differ")
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    def det(self) -> Coord:
        mat = [list(r) for r in self.rows]
        d = self.dim
        result = Fraction(1)
        sign = 1
        for col in range(d):
            pivot_row = None
            for r in range(col, d):
                if mat[r][col] != 0:
                    pivot_row = r
                    break
            if pivot_row is None:
                return 0
            if pivot_row != col:
                mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
                sign = -sign
            pivot = mat[col][col]
            result *= pivot
            for r in range(col + 1, d):
                if mat[r][col] != 0:
                    factor = Fraction(mat[r][col], 1) / pivot
                    mat[r] = [x - factor * y for x, y in zip(mat[r], mat[col])]
        return _canon(sign * result)

    def inverse(self) -> "RationalMatrix":
        d = self.dim
        aug = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * d)
        if len(red) < d or pivots[:d] != list(range(d)):
            raise SingularMatrixError("matrix is singular")
        return RationalMatrix([row[d:] for row in red[:d]])

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def is_integral(self) -> bool:
        return all(type(c) is int for row in self.rows for c in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RationalMatrix({list(list(r) for r in self.rows)!r})"


def linear_image(M: RationalMatrix, A: PointSet) -> PointSet:
    if M.dim != A.dim:
        raise DimensionMismatchError("matrix and set dimensions differ")
    return PointSet._raw(A.dim, frozenset(M.mat_vec(p) for p in A.points))


class LinearSystem:
    """An ordered family (L_1, ..., L_k) of invertible rational d x d maps."""

    __slots__ = ("dim", "maps")

    def __init__(self, maps: Iterable[RationalMatrix]):
        maps = tuple(maps)
        if not maps:
            raise ValueError("a linear system needs at least one map")
        dims = {M.dim for M in maps}
        if len(dims) != 1:
            raise DimensionMismatchError("maps of mixed dimension")
        for i, M in enumerate(maps):
            if M.det() == 0:
                raise SingularMatrixError(f"map {i + 1} is singular")
        self.dim = dims.pop()
        self.maps = maps

    @property
    def k(self) -> int:
        return len(self.maps)

    def normalized_tail(self) -> list[RationalMatrix]:
        """[L_1^{-1} L_j for j >= 2]: the family whose common invariant
        subspaces are exactly the (U, L_1(U)) witnesses of reducibility."""
        inv = self.maps[0].inverse()
        return [inv @ M for M in self.maps[1:]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearSystem):
            return NotImplemented
        return self.maps == other.maps

    def __repr__(self) -> str:
        return f"LinearSystem(dim={self.dim}, k={self.k})"


def weighted_sumset(system: LinearSystem, A: PointSet) -> PointSet:
    """L_1(A) + L_2(A) + ... + L_k(A)."""
    if system.dim != A.dim:
        raise DimensionMismatchError("system and set dimensions differ")
    return minkowski_sum([linear_image(M, A) for M in system.maps])


class Basis:
    """An ordered basis (b_1, ..., b_d) of Q^d."""

    __slots__ = ("dim", "vectors", "_inv")

    def __init__(self, vectors: Iterable[Sequence]):
        vecs = tuple(tuple(as_coord(c) for c in v) for v in vectors)
        d = len(vecs)
        if d == 0 or any(len(v) != d for v in vecs):
            raise DimensionMismatchError("need d vectors of length d")
        self.dim = d
        self.vectors = vecs
        # columns of the change-of-basis matrix are the basis vectors
        mat = RationalMatrix(list(zip(*vecs)))
        if mat.det() == 0:
            raise SingularMatrixError("basis vectors are dependent")
        self._inv = None

    @classmethod
    def standard(cls, d: int) -> "Basis":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def matrix(self) -> RationalMatrix:
        return RationalMatrix(list(zip(*self.vectors)))

    @property
    def inverse_matrix(self) -> RationalMatrix:
        if self._inv is None:
            self._inv = self.matrix.inverse()
        return self._inv

    def is_standard(self) -> bool:
        return all(
            self.vectors[i][j] == (1 if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Basis):
            return NotImplemented
        return self.vectors == other.vectors

    def __repr__(self) -> str:
        return f"Basis({[list(v) for v in self.vectors]!r})"


class Subspace:
    """A linear subspace of Q^d in canonical reduced-row-echelon form."""

    __slots__ = ("ambient_dim", "rows")

    def __init__(self, ambient_dim: int, rows: Iterable[Sequence]):
        rows = [as_vec(r, ambient_dim) for r in rows]
        red, _ = rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(_canon(x) for x in r) for r in red)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, vectors)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> Vec:
        """Canonical coset representative of v modulo this subspace."""
        w = list(as_vec(v, self.ambient_dim))
        for row in self.rows:
            pc = next(i for i, x in enumerate(row) if x != 0)
            coeff = w[pc]
            if coeff != 0:
                for i, x in enumerate(row):
                    if x != 0:
                        w[i] = _canon(w[i] - coeff * x)
        return tuple(w)

    def contains_vector(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    def annihilator(self) -> "Subspace":
        """{x : <u, x> = 0 for all u in this subspace}."""
        return Subspace(self.ambient_dim, kernel_basis(self.rows, self.ambient_dim))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------


def affine_dimension(A: PointSet) -> int:
    """Dimension of the affine hull of A (0 for a single point)."""
    pts = iter(A.points)
    anchor = next(pts)
    diffs = [vec_sub(p, anchor) for p in pts]
    if not diffs:
        return 0
    _, pivots = rref(diffs, A.dim)
    return len(pivots)


def project(A: PointSet, basis: Basis | None, coords: Iterable[int]) -> PointSet:
    """Image of A under the projection onto span{b_i : i in coords} that kills
    the complementary basis vectors.  ``coords`` is 1-based; the result keeps
    ambient dimension d (projection of everything to 0 when coords is empty).
    """
    d = A.dim
    if basis is None:
        basis = Basis.standard(d)
    if basis.dim != d:
        raise DimensionMismatchError("basis and set dimensions differ")
    index_set = set(coords)
    if not index_set <= set(range(1, d + 1)):
        raise ValueError(f"projection coordinates must lie in 1..{d}")
    mask = [1 if (i + 1) in index_set else 0 for i in range(d)]
    if basis.is_standard():
        proj = RationalMatrix([[mask[i] if i == j else 0 for j in range(d)] for i in range(d)])
    else:
        B = basis.matrix
        D = RationalMatrix([[mask[i] if i == j else 0 for j in range(d)] for i in range(d)])
        proj = B @ D @ basis.inverse_matrix
    return linear_image(proj, A)


def max_fiber(A: PointSet, U: Subspace) -> int:
    """Largest intersection of A with a single coset x + U."""
    if U.ambient_dim != A.dim:
        raise DimensionMismatchError("subspace and set dimensions differ")
    counts: dict[Vec, int] = {}
    for p in A.points:
        key = U.reduce(p)
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values())


def covering_number(A: PointSet, direction: Sequence) -> int:
    """Number of lines parallel to ``direction`` needed to cover a planar set."""
    if A.dim != 2:
        raise DimensionMismatchError("covering_number is defined for dimension 2")
    v = as_vec(direction, 2)
    if is_zero_vec(v):
        raise ValueError("direction must be nonzero")
    # the functional (-v2, v1) is constant exactly on lines parallel to v
    return len({_canon(-v[1] * p[0] + v[0] * p[1]) for p in A.points})
