"""Invariant-subspace structure of linear systems, and generalized
arithmetic progressions.

Q-irreducibility
----------------
A system (L_1, ..., L_k) of invertible maps is reducible when there are
nontrivial subspaces U, V of equal dimension with L_i(U) <= V for all i.
Since the L_i are invertible this forces V = L_1(U) and reduces to: U is a
common invariant subspace of the normalized family M_j = L_1^{-1} L_j.  The
decision procedure, in order:

1. *Cyclic scan.*  Spin candidate vectors u (standard basis, rational
   eigenvectors of each M_j, seeded pseudorandom vectors) to the smallest
   invariant subspace Z(u) containing u; any proper Z(u) is a witness.
2. *Shortcut.*  If some algebra element T has irreducible characteristic
   polynomial, the module is irreducible: an invariant U would give
   charpoly(T|_U) | charpoly(T) of degree dim U, impossible.
3. *Dimensions <= 3 are decided completely.*  Proper nontrivial rational
   subspaces are lines and hyperplanes.  A line span(u) is invariant iff u is
   a common eigenvector, and the eigenvalue of a rational eigenvector is
   rational, so enumerating tuples of rational eigenvalues and intersecting
   the stacked kernels ker(M_j - t_j I) finds every invariant line.
   Hyperplanes are dual: U is invariant under the M_j iff its annihilator is
   invariant under the transposes, so the same line search on transposes
   decides them.  For d <= 3 this covers all dimensions, hence never Unknown.
4. *Norton's criterion for d >= 4.*  For an algebra element T and an
   irreducible factor p of its characteristic polynomial with
   nullity(p(T)) = deg(p):  pick any 0 != v in ker p(T) and
   0 != w in ker p(T^tr).  If Z(v) is proper, reducible.  Else if the
   transpose-spin Z*(w) is proper, its annihilator is a proper invariant
   subspace, reducible.  Else the module is irreducible.  Completeness: let
   U be a proper nontrivial invariant subspace; T preserves U.  Either p
   divides charpoly(T|_U) -- then N = ker p(T) meets U, and N is a
   1-dimensional vector space over F[x]/(p) (its F-dimension equals deg p),
   so the nonzero T-invariant subspace N n U is all of N, giving
   v in N <= U and Z(v) <= U proper; or p does not divide charpoly(T|_U) --
   then p divides the characteristic polynomial of T on the quotient, and
   dually p(T^tr) kills a nonzero vector of the invariant subspace
   U^perp, forcing w in U^perp and Z*(w) <= U^perp proper.  Either way one
   of the two spins detects U.  If no schedule element admits a factor with
   nullity = degree, the verdict is Unknown (reported, never silent).

Every Reducible verdict is re-validated through :func:`is_reducible_witness`
before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import Matrix as SymMatrix
from sympy import Poly, Rational as SymRational, Symbol

from .core import (
    DimensionMismatchError,
    LinearSystem,
    PointSet,
    RationalMatrix,
    Subspace,
    Vec,
    as_vec,
    is_zero_vec,
    kernel_basis,
    rref,
    vec_add,
    vec_scale,
    vec_sub,
    _canon,
)
from .generators import splitmix64_stream, _rand_below
from .serialization import decode_point, encode_point

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"
COPRIME = "Coprime"

_X = Symbol("x")

DEFAULT_ENUMERATION_BUDGET = 1_000_000


class BudgetExceededError(RuntimeError):
    """A GAP enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str
    witness: Subspace | None = None

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = {
                "ambient_dim": self.witness.ambient_dim,
                "echelon_basis": [encode_point(r) for r in self.witness.rows],
            }
        return out


def is_reducible_witness(system: LinearSystem, U: Subspace) -> bool:
    """True iff U is invariant under every M_j = L_1^{-1} L_j.

    Such a U witnesses reducibility of (L_1, ..., L_k): take V = L_1(U); then
    L_j(U) = L_1(M_j(U)) <= L_1(U) = V for all j, with dim V = dim U.
    """
    if U.ambient_dim != system.dim:
        raise DimensionMismatchError("subspace and system dimensions differ")
    if not 1 <= U.dim < system.dim:
        raise ValueError("witness must be a nontrivial proper subspace")
    for M in system.normalized_tail():
        for row in U.rows:
            if not U.contains_vector(M.mat_vec(row)):
                return False
    return True


# ---------------------------------------------------------------------------
# spinning and algebra elements
# ---------------------------------------------------------------------------


def _spin(seeds: list[Vec], mats: list[RationalMatrix], d: int) -> Subspace:
    """Smallest subspace containing the seeds and invariant under the maps."""
    space = Subspace.zero(d)
    pending = list(seeds)
    while pending:
        v = pending.pop()
        r = space.reduce(v)
        if is_zero_vec(r):
            continue
        space = Subspace(d, [*space.rows, r])
        for M in mats:
            pending.append(M.mat_vec(r))
    return space


def _sym_matrix(M: RationalMatrix) -> SymMatrix:
    return SymMatrix(
        M.dim,
        M.dim,
        lambda i, j: SymRational(M.rows[i][j].numerator, M.rows[i][j].denominator),
    )


def _charpoly_factors(M: RationalMatrix) -> list[tuple[list[Fraction], int]]:
    """Irreducible factors of charpoly(M) over Q as (coefficients, degree),
    coefficients highest-first and monic up to a rational scalar."""
    poly = _sym_matrix(M).charpoly(_X)
    _, factors = Poly(poly.as_expr(), _X).factor_list()
    out = []
    for fac, _mult in factors:
        coeffs = [
            Fraction(int(c.p), int(c.q)) for c in Poly(fac, _X).all_coeffs()
        ]
        out.append((coeffs, len(coeffs) - 1))
    return out


def _rational_eigenvalues(M: RationalMatrix) -> list[Fraction]:
    return [
        _canon(-coeffs[1] / coeffs[0])
        for coeffs, deg in _charpoly_factors(M)
        if deg == 1
    ]


def _scaled_identity(c, d: int) -> RationalMatrix:
    return RationalMatrix([[c if i == j else 0 for j in range(d)] for i in range(d)])


def _mat_add(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(
        [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)]
    )


def _mat_poly(coeffs: list[Fraction], T: RationalMatrix) -> RationalMatrix:
    """Evaluate the polynomial (coefficients highest-first) at T by Horner."""
    d = T.dim
    acc = _scaled_identity(0, d)
    for c in coeffs:
        acc = _mat_add(acc @ T, _scaled_identity(c, d))
    return acc


def _eigenvector_basis(M: RationalMatrix, lam: Fraction) -> list[Vec]:
    shifted = _mat_add(M, _scaled_identity(-lam, M.dim))
    return kernel_basis(shifted.rows, M.dim)


def _candidate_vectors(mats: list[RationalMatrix], d: int) -> list[Vec]:
    cands: list[Vec] = [
        tuple(1 if j == i else 0 for j in range(d)) for i in range(d)
    ]
    for M in mats:
        for lam in _rational_eigenvalues(M):
            cands.extend(_eigenvector_basis(M, lam))
    stream = splitmix64_stream(0x5EED5E7)
    for _ in range(64):
        v = tuple(_rand_below(stream, 7) - 3 for _ in range(d))
        if not is_zero_vec(v):
            cands.append(v)
    return cands


def _element_schedule(mats: list[RationalMatrix], d: int) -> list[RationalMatrix]:
    """Algebra elements tried by the Norton test, deterministic order."""
    schedule: list[RationalMatrix] = list(mats)
    for i, A in enumerate(mats):
        for j, B in enumerate(mats):
            if i != j:
                schedule.append(A @ B)
    for i, A in enumerate(mats):
        for B in mats[i + 1 :]:
            schedule.append(_mat_add(A, B))
    stream = splitmix64_stream(0xA16EB8A)
    for _ in range(24):
        acc = _scaled_identity(_rand_below(stream, 5) - 2, d)
        for M in mats:
            c = _rand_below(stream, 5) - 2
            if c:
                acc = _mat_add(acc, _scaled_identity(c, d) @ M)
        schedule.append(acc)
    seen = set()
    unique = []
    for T in schedule:
        if T.rows not in seen:
            seen.add(T.rows)
            unique.append(T)
    return unique


def _norton_attempt(
    T: RationalMatrix, mats: list[RationalMatrix], tmats: list[RationalMatrix], d: int
) -> IrreducibilityVerdict | None:
    """Run Norton's criterion with algebra element T; None if T is unusable."""
    for coeffs, deg in _charpoly_factors(T):
        if deg == d:
            # irreducible characteristic polynomial: no invariant subspace
            # can exist (its restricted charpoly would be a proper factor)
            return IrreducibilityVerdict(IRREDUCIBLE)
        pT = _mat_poly(coeffs, T)
        ker = kernel_basis(pT.rows, d)
        if len(ker) != deg:
            continue
        Z = _spin([ker[0]], mats, d)
        if Z.dim < d:
            return IrreducibilityVerdict(REDUCIBLE, Z)
        ker_t = kernel_basis(pT.transpose().rows, d)
        Zt = _spin([ker_t[0]], tmats, d)
        if Zt.dim < d:
            return IrreducibilityVerdict(REDUCIBLE, Zt.annihilator())
        return IrreducibilityVerdict(IRREDUCIBLE)
    return None


def _invariant_line_witness(mats: list[RationalMatrix], d: int) -> Subspace | None:
    """A line invariant under every map, or None; complete over Q.

    Enumerates tuples of rational eigenvalues (a rational common eigenvector
    forces every eigenvalue rational) and intersects the stacked kernels.
    """
    per_map = [_rational_eigenvalues(M) for M in mats]
    if any(not evs for evs in per_map):
        return None
    for combo in product(*per_map):
        stacked: list[Vec] = []
        for M, lam in zip(mats, combo):
            stacked.extend(_mat_add(M, _scaled_identity(-lam, d)).rows)
        ker = kernel_basis(stacked, d)
        if ker:
            return Subspace(d, [ker[0]])
    return None


def decide_irreducible(system: LinearSystem) -> IrreducibilityVerdict:
    """Decide whether the system has a common nontrivial invariant rational
    subspace (after the L_1^{-1} normalization).  Complete for d <= 3; for
    d >= 4 a Norton-style test that can report Unknown on instances its
    element schedule cannot certify."""
    d = system.dim
    if d == 1:
        return IrreducibilityVerdict(IRREDUCIBLE)
    mats = system.normalized_tail()
    if not mats:
        # a single invertible map: every line is invariant under the empty
        # normalized family, so (L_1) alone is always reducible for d >= 2
        witness = Subspace(d, [tuple(1 if j == 0 else 0 for j in range(d))])
        verdict = IrreducibilityVerdict(REDUCIBLE, witness)
        assert is_reducible_witness(system, witness)
        return verdict
    for u in _candidate_vectors(mats, d):
        Z = _spin([u], mats, d)
        if 0 < Z.dim < d:
            assert is_reducible_witness(system, Z)
            return IrreducibilityVerdict(REDUCIBLE, Z)
    tmats = [M.transpose() for M in mats]
    if d <= 3:
        line = _invariant_line_witness(mats, d)
        if line is not None:
            assert is_reducible_witness(system, line)
            return IrreducibilityVerdict(REDUCIBLE, line)
        if d == 3:
            dual_line = _invariant_line_witness(tmats, d)
            if dual_line is not None:
                plane = dual_line.annihilator()
                assert is_reducible_witness(system, plane)
                return IrreducibilityVerdict(REDUCIBLE, plane)
        return IrreducibilityVerdict(IRREDUCIBLE)
    for T in _element_schedule(mats, d):
        verdict = _norton_attempt(T, mats, tmats, d)
        if verdict is not None:
            if verdict.status == REDUCIBLE:
                assert is_reducible_witness(system, verdict.witness)
            return verdict
    return IrreducibilityVerdict(UNKNOWN)


def coprime_sufficient(system: LinearSystem) -> str:
    """``Coprime`` if some |det L_i| = 1, else ``Unknown``.

    If |det L_i| = 1 then for any P, R with PL_iR integral,
    |det(P L_i R)| >= 1 gives |det P det R| >= 1, so the defining strict
    inequality 0 < |det P det R| < 1 is impossible.  The converse is not
    decided here: determinant larger than one does not certify
    non-coprimality.
    """
    for M in system.maps:
        if not M.is_integral():
            raise ValueError("coprimality criterion applies to integral systems only")
    if any(abs(M.det()) == 1 for M in system.maps):
        return COPRIME
    return UNKNOWN


# ---------------------------------------------------------------------------
# generalized arithmetic progressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GAP:
    """{base + sum l_i * generators[i] : 1 <= l_i <= lengths[i]}.

    The additive dimension is the number of generators; *proper* means the
    expansion has exactly prod(lengths) distinct points.
    """

    base: Vec
    generators: tuple[Vec, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        d = len(self.base)
        object.__setattr__(self, "base", as_vec(self.base, d))
        object.__setattr__(
            self, "generators", tuple(as_vec(g, d) for g in self.generators)
        )
        object.__setattr__(self, "lengths", tuple(int(L) for L in self.lengths))
        if len(self.generators) != len(self.lengths):
            raise ValueError("need one length per generator")
        if any(L < 1 for L in self.lengths):
            raise ValueError("lengths must be positive")

    @property
    def dim(self) -> int:
        return len(self.base)

    @property
    def additive_dimension(self) -> int:
        return len(self.generators)

    def volume(self) -> int:
        return math.prod(self.lengths)

    def expand(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> PointSet:
        if self.volume() > budget:
            raise BudgetExceededError(
                f"expansion of size {self.volume()} exceeds budget {budget}"
            )
        points = {self.base} if not self.generators else set()
        if self.generators:
            for combo in product(*(range(1, L + 1) for L in self.lengths)):
                p = self.base
                for li, g in zip(combo, self.generators):
                    p = vec_add(p, vec_scale(li, g))
                points.add(p)
        return PointSet(self.dim, points)

    def to_dict(self) -> dict:
        return {
            "base": encode_point(self.base),
            "generators": [encode_point(g) for g in self.generators],
            "lengths": list(self.lengths),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GAP":
        if not isinstance(data, dict) or not {"base", "generators", "lengths"} <= set(data):
            raise ValueError("GAP JSON needs keys 'base', 'generators', 'lengths'")
        base = tuple(data["base"])
        d = len(base)
        return cls(
            base=decode_point(base, d),
            generators=tuple(decode_point(g, d) for g in data["generators"]),
            lengths=tuple(data["lengths"]),
        )


def gap_contains(
    P: GAP, A: PointSet, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> bool:
    """Exact membership A <= P.

    When the generators are linearly independent each point has at most one
    rational coefficient vector, found by row reduction and then checked for
    integrality and the box constraints.  Dependent generators fall back to
    full expansion within the budget.
    """
    if P.dim != A.dim:
        raise DimensionMismatchError("GAP and set dimensions differ")
    D = P.additive_dimension
    if D == 0:
        return all(p == P.base for p in A.points)
    columns = list(zip(*P.generators))  # d rows, D columns
    _, pivots = rref([list(r) for r in columns], D)
    if len(pivots) < D:
        expansion = P.expand(budget)
        return A.points <= expansion.points
    for a in A.points:
        rhs = vec_sub(a, P.base)
        aug = [list(row) + [rhs[i]] for i, row in enumerate(columns)]
        red, piv = rref(aug, D + 1)
        if D in piv:
            return False  # inconsistent system: a is not even in the affine span
        coeffs = [Fraction(0)] * D
        for r, pc in enumerate(piv):
            coeffs[pc] = red[r][D]
        ok = all(
            Fraction(c).denominator == 1 and 1 <= c <= L
            for c, L in zip(coeffs, P.lengths)
        )
        if not ok:
            return False
    return True


def gap_is_proper(P: GAP, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    """True iff the expansion has exactly prod(lengths) points."""
    return len(P.expand(budget)) == P.volume()
