"""Certified checks of the sumset growth bounds, and asymptotic probes.

Every ``check_*`` returns a :class:`~sumsetlab.certificates.Certificate`
oriented as ``lhs <= rhs`` with ``slack = rhs - lhs`` (lower bounds put the
bound on the left, upper bounds put the bounded quantity on the left).  The
two probes never report Violated: their statements involve non-effective
constants, so an unfavourable instance is only ever Indeterminate.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from sympy import factorint

from .certificates import (
    HOLDS,
    INDETERMINATE,
    Certificate,
    Interval,
    digest,
    exact_certificate,
    int_nth_root_interval,
    interval_certificate,
    precision_schedule,
)
from .core import (
    Basis,
    DimensionMismatchError,
    LinearSystem,
    PointSet,
    Subspace,
    _canon,
    affine_dimension,
    as_vec,
    covering_number,
    iterated_sumset,
    max_fiber,
    minkowski_sum,
    project,
    weighted_sumset,
)
from .generators import long_simplex
from .serialization import (
    basis_to_dict,
    encode_point,
    pointset_to_dict,
    system_to_dict,
)
from .structure import IRREDUCIBLE, decide_irreducible


def _sets_digest(sets, *extra) -> str:
    return digest([pointset_to_dict(A) for A in sets] + list(extra))


# ---------------------------------------------------------------------------
# exact lower bounds
# ---------------------------------------------------------------------------


def check_elementary(sets: list[PointSet]) -> Certificate:
    """|A_1 + ... + A_k| >= |A_1| + ... + |A_k| - (k - 1)."""
    if not sets:
        raise ValueError("need at least one set")
    k = len(sets)
    lhs = sum(len(A) for A in sets) - (k - 1)
    rhs = len(minkowski_sum(sets))
    return exact_certificate(
        "elementary",
        lhs,
        rhs,
        params={"k": k, "sizes": [len(A) for A in sets]},
        inputs_digest=_sets_digest(sets),
    )


def check_gs_kfold(sets: list[PointSet], direction) -> Certificate:
    """Planar k-fold bound with covering numbers along a line direction:
    |sum A_i| >= (sum |A_i|/r_i - (k-1)) (sum r_i - (k-1)), where r_i is the
    number of lines parallel to ``direction`` needed to cover A_i."""
    if len(sets) < 2:
        raise ValueError("the planar k-fold bound needs k >= 2")
    if any(A.dim != 2 for A in sets):
        raise DimensionMismatchError("planar sets required")
    v = as_vec(direction, 2)
    k = len(sets)
    rs = [covering_number(A, v) for A in sets]
    density = sum(Fraction(len(A), r) for A, r in zip(sets, rs)) - (k - 1)
    lines = sum(rs) - (k - 1)
    lhs = _canon(density * lines)
    rhs = len(minkowski_sum(sets))
    return exact_certificate(
        "gs_kfold",
        lhs,
        rhs,
        params={
            "k": k,
            "sizes": [len(A) for A in sets],
            "covering_numbers": rs,
            "direction": encode_point(v),
        },
        inputs_digest=_sets_digest(sets, encode_point(v)),
    )


def check_freiman_kfold(A: PointSet, k: int) -> Certificate:
    """|kA| >= C(k+d-1, d)|A| - (k-1) C(k+d-1, d-1) for full-dimensional A.

    The bound is also evaluated in the rewritten form
    C(k+d-1, d-1) (k(|A|-d)/d + 1); the two agree identically because
    C(k+d-1, d) = (k/d) C(k+d-1, d-1).
    """
    d = A.dim
    if k < 1:
        raise ValueError("k must be >= 1")
    if affine_dimension(A) != d:
        raise ValueError("the k-fold lower bound needs a full-dimensional set")
    n = len(A)
    bound = math.comb(k + d - 1, d) * n - (k - 1) * math.comb(k + d - 1, d - 1)
    rewritten = _canon(
        Fraction(math.comb(k + d - 1, d - 1)) * (Fraction(k * (n - d), d) + 1)
    )
    assert bound == rewritten, "the two closed forms of the bound must agree"
    rhs = len(iterated_sumset(A, k))
    return exact_certificate(
        "freiman_kfold",
        bound,
        rhs,
        params={"k": k, "d": d, "size": n},
        inputs_digest=_sets_digest([A], {"k": k}),
    )


def check_freiman_lemma(A: PointSet) -> Certificate:
    """|2A| >= (d+1)|A| - d(d+1)/2, the classical doubling form (k = 2)."""
    d = A.dim
    if affine_dimension(A) != d:
        raise ValueError("the doubling lower bound needs a full-dimensional set")
    n = len(A)
    lhs = (d + 1) * n - d * (d + 1) // 2
    kfold = math.comb(d + 1, d) * n - math.comb(d + 1, d - 1)
    assert lhs == kfold, "k=2 specialization must match the k-fold bound"
    rhs = len(iterated_sumset(A, 2))
    return exact_certificate(
        "freiman_lemma",
        lhs,
        rhs,
        params={"d": d, "size": n},
        inputs_digest=_sets_digest([A]),
    )


def simplex_cardinality(d: int, N: int, k: int) -> int:
    """|k A_{d,N}| = C(k+d-1, d)(N-d) + C(k+d-1, d-1), exactly."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    if N <= d:
        raise ValueError("need N >= d + 1")
    return math.comb(k + d - 1, d) * (N - d) + math.comb(k + d - 1, d - 1)


def check_simplex_formula(d: int, N: int, k: int) -> Certificate:
    """Dual-route equality check: the closed form against brute-force
    enumeration of |k A_{d,N}|.  Holds only on exact agreement (slack 0)."""
    lhs = simplex_cardinality(d, N, k)
    rhs = len(iterated_sumset(long_simplex(d, N), k))
    slack = rhs - lhs
    return Certificate(
        statement_id="simplex_formula",
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        verdict=HOLDS if slack == 0 else "Violated",
        params={"d": d, "N": N, "k": k},
        inputs_digest=digest({"d": d, "N": N, "k": k}),
    )


# ---------------------------------------------------------------------------
# discrete Brunn-Minkowski
# ---------------------------------------------------------------------------


def _extract_dth_power(n: int, d: int) -> tuple[int, int]:
    """n = c**d * m with m free of d-th powers; returns (c, m)."""
    if n < 1:
        raise ValueError("need a positive integer")
    c, m = 1, 1
    for p, e in factorint(n).items():
        c *= p ** (e // d)
        m *= p ** (e % d)
    return c, m


def _root_sum_power_exact(sizes: list[int], d: int) -> int | None:
    """(sum n_i^{1/d})^d when it is exactly an integer, else None.

    Writing n_i = c_i^d m_i with m_i power-free, the sum collapses to a
    rational multiple of a single d-th root iff all m_i agree, and then
    (sum c_i)^d * m is exact.  (Distinct surviving radicals make the power
    irrational, so returning None and falling back to intervals loses
    nothing.)"""
    radicals: dict[int, int] = {}
    for n in sizes:
        c, m = _extract_dth_power(n, d)
        radicals[m] = radicals.get(m, 0) + c
    if len(radicals) == 1:
        m, total = radicals.popitem()
        return total ** d * m
    return None


def check_discrete_bm(sets: list[PointSet], basis: Basis | None = None) -> Certificate:
    """Discrete Brunn-Minkowski:
    |sum A_i| >= (sum |A_i|^{1/d})^d - sum_{I proper subset of [d]}
    (k-1)^{d-|I|} |pi_I(sum A_i)|.

    The root-power term is computed exactly whenever it is rational
    (perfect powers, equal sizes, common radical); otherwise by certified
    interval arithmetic with escalating precision.
    """
    if not sets:
        raise ValueError("need at least one set")
    d = sets[0].dim
    if any(A.dim != d for A in sets):
        raise DimensionMismatchError("mixed dimensions")
    if basis is None:
        basis = Basis.standard(d)
    if basis.dim != d:
        raise DimensionMismatchError("basis dimension mismatch")
    k = len(sets)
    total = minkowski_sum(sets)
    rhs = len(total)
    correction = 0
    for size in range(d):
        for I in combinations(range(1, d + 1), size):
            correction += (k - 1) ** (d - size) * len(project(total, basis, I))
    sizes = [len(A) for A in sets]
    params = {
        "k": k,
        "d": d,
        "sizes": sizes,
        "correction": correction,
        "basis": basis_to_dict(basis),
    }
    inputs = _sets_digest(sets, basis_to_dict(basis))
    exact_power = _root_sum_power_exact(sizes, d)
    if exact_power is not None:
        return exact_certificate(
            "discrete_bm", exact_power - correction, rhs,
            params=params, inputs_digest=inputs,
        )

    def make_sides(bits: int) -> tuple[Interval, Interval]:
        root_sum = Interval.point(0)
        for n in sizes:
            root_sum = root_sum + int_nth_root_interval(n, d, bits)
        lhs = root_sum.power(d) - Interval.point(correction)
        return lhs, Interval.point(rhs)

    return interval_certificate(
        "discrete_bm", make_sides, params=params, inputs_digest=inputs
    )


# ---------------------------------------------------------------------------
# Plunnecke-Ruzsa family
# ---------------------------------------------------------------------------


def check_ruzsa_triangle(U: PointSet, V: PointSet, W: PointSet) -> Certificate:
    """|U| |V + W| <= |V + U| |U + W|."""
    lhs = len(U) * len(minkowski_sum([V, W]))
    rhs = len(minkowski_sum([V, U])) * len(minkowski_sum([U, W]))
    return exact_certificate(
        "ruzsa_triangle",
        lhs,
        rhs,
        params={"sizes": [len(U), len(V), len(W)]},
        inputs_digest=_sets_digest([U, V, W]),
    )


def _iterated_or_origin(A: PointSet, m: int) -> PointSet:
    if m == 0:
        return PointSet(A.dim, [tuple(0 for _ in range(A.dim))])
    return iterated_sumset(A, m)


def check_plunnecke_ruzsa(A: PointSet, B: PointSet, m: int, n: int) -> Certificate:
    """|mA - nA| <= K^{m+n} |B| with K = |A + B| / |B| (the sharpest
    admissible doubling ratio for the hypothesis)."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if A.dim != B.dim:
        raise DimensionMismatchError("mixed dimensions")
    K = Fraction(len(minkowski_sum([A, B])), len(B))
    difference = minkowski_sum(
        [_iterated_or_origin(A, m), _iterated_or_origin(A, n).negate()]
    )
    lhs = len(difference)
    rhs = _canon(K ** (m + n) * len(B))
    return exact_certificate(
        "plunnecke_ruzsa",
        lhs,
        rhs,
        params={"m": m, "n": n, "K": K, "sizes": [len(A), len(B)]},
        inputs_digest=_sets_digest([A, B], {"m": m, "n": n}),
    )


def check_iterated_pr(sets: list[PointSet], k: int | None = None) -> Certificate:
    """|X + X| <= K^7 N for X = A_1 + ... + A_k with all |A_i| = N and
    K = |X| / N.  The hypothesis needs k >= 2: for a single summand K = 1
    and the conclusion |A + A| <= |A| is generally false."""
    if k is None:
        k = len(sets)
    if k != len(sets):
        raise ValueError("k disagrees with the number of sets")
    if k < 2:
        raise ValueError("the iterated bound needs at least two summands")
    sizes = {len(A) for A in sets}
    if len(sizes) != 1:
        raise ValueError("all summands must have equal size")
    N = sizes.pop()
    X = minkowski_sum(sets)
    K = Fraction(len(X), N)
    lhs = len(minkowski_sum([X, X]))
    rhs = _canon(K ** 7 * N)
    return exact_certificate(
        "iterated_pr",
        lhs,
        rhs,
        params={"k": k, "N": N, "K": K},
        inputs_digest=_sets_digest(sets),
    )


def check_linear_pr(system: LinearSystem, A: PointSet) -> Certificate:
    """|X + L_2(X) + ... + L_k(X)| <= K^{7k+1} |A| for X = A + L_2(A) + ...
    + L_k(A) and K = |X| / |A|.

    The leading map must be the identity: the planar shear pair
    (L_1, L_2) with L_1 != I sends a vertical progression A to a diagonal X
    with |L_1(X) + L_2(X)| = |X|^2, so no power of K = |X|/|A| controls the
    growth and the precondition is essential.
    """
    if not system.maps[0].is_identity():
        raise ValueError("the leading map must be the identity")
    if system.dim != A.dim:
        raise DimensionMismatchError("system and set dimensions differ")
    k = system.k
    X = weighted_sumset(system, A)
    K = Fraction(len(X), len(A))
    lhs = len(weighted_sumset(system, X))
    rhs = _canon(K ** (7 * k + 1) * len(A))
    return exact_certificate(
        "linear_pr",
        lhs,
        rhs,
        params={"k": k, "K": K, "size": len(A)},
        inputs_digest=_sets_digest([A], system_to_dict(system)),
    )


def check_fiber_bound(system: LinearSystem, A: PointSet, U: Subspace) -> Certificate:
    """max_fiber(A, U)^{2^r} <= (K|A|)^{2^r - 1} for r = dim U < d and
    K = |sum L_i(A)| / |A|; requires a certified irreducible system.

    Raising both sides to the 2^r power clears the fractional exponent of
    the usual form f <= (K|A|)^{1 - 2^{-r}}, keeping the comparison exact.
    """
    if U.ambient_dim != A.dim or system.dim != A.dim:
        raise DimensionMismatchError("system, set and subspace dimensions differ")
    if decide_irreducible(system).status != IRREDUCIBLE:
        raise ValueError("fiber bound requires a certified irreducible system")
    r = U.dim
    if r >= A.dim:
        raise ValueError("subspace must be proper")
    fiber = max_fiber(A, U)
    K = Fraction(len(weighted_sumset(system, A)), len(A))
    lhs = fiber ** (2 ** r)
    rhs = _canon((K * len(A)) ** (2 ** r - 1))
    return exact_certificate(
        "fiber_bound",
        lhs,
        rhs,
        params={"r": r, "K": K, "max_fiber": fiber, "size": len(A)},
        inputs_digest=_sets_digest(
            [A], system_to_dict(system), [encode_point(row) for row in U.rows]
        ),
    )


# ---------------------------------------------------------------------------
# probes (informational; never Violated)
# ---------------------------------------------------------------------------


def main_term_probe(system: LinearSystem, A: PointSet) -> Certificate:
    """Reports the deficit k^d |A| - |sum L_i(A)| against the conjectured
    main term.  Holds when the weighted sumset reaches the main term; a
    positive deficit is Indeterminate (the error term's constant is
    non-effective), annotated with the observed exponent
    log(deficit) / log |A|."""
    if system.dim != A.dim:
        raise DimensionMismatchError("system and set dimensions differ")
    if decide_irreducible(system).status != IRREDUCIBLE:
        raise ValueError("main-term probe requires a certified irreducible system")
    k, d = system.k, system.dim
    lhs = k ** d * len(A)
    rhs = len(weighted_sumset(system, A))
    deficit = lhs - rhs
    exponent = None
    if deficit > 0 and len(A) >= 2:
        exponent = f"{math.log(deficit) / math.log(len(A)):.6f}"
    return Certificate(
        statement_id="main_term",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        verdict=HOLDS if deficit <= 0 else INDETERMINATE,
        params={"k": k, "d": d, "size": len(A), "deficit": deficit, "exponent": exponent},
        inputs_digest=_sets_digest([A], system_to_dict(system)),
    )


def _fraction_root_interval(x: Fraction, d: int, bits: int) -> Interval:
    """Certified enclosure of x^{1/d} for non-negative rational x."""
    x = Fraction(x)
    scaled = int_nth_root_interval(x.numerator * x.denominator ** (d - 1), d, bits)
    return Interval(scaled.lo / x.denominator, scaled.hi / x.denominator)


def det_main_term_probe(system: LinearSystem, A: PointSet) -> Certificate:
    """Like :func:`main_term_probe` but against the determinant main term
    Lambda = (sum |det L_i|^{1/d})^d, interval-certified.  Holds when
    |sum L_i(A)| provably reaches Lambda |A|; otherwise Indeterminate."""
    if system.dim != A.dim:
        raise DimensionMismatchError("system and set dimensions differ")
    d = system.dim
    rhs = len(weighted_sumset(system, A))
    dets = [abs(Fraction(M.det())) for M in system.maps]
    last_bits = None
    for bits in precision_schedule():
        last_bits = bits
        root_sum = Interval.point(0)
        for value in dets:
            root_sum = root_sum + _fraction_root_interval(value, d, bits)
        lam = root_sum.power(d)
        lhs = Interval(lam.lo * len(A), lam.hi * len(A))
        decided = lhs.le(Interval.point(rhs))
        if decided:
            return Certificate(
                statement_id="det_main_term",
                lhs=lhs,
                rhs=rhs,
                slack=Interval.point(rhs) - lhs,
                verdict=HOLDS,
                params={"k": system.k, "d": d, "size": len(A)},
                precision_bits=bits,
                inputs_digest=_sets_digest([A], system_to_dict(system)),
            )
        if decided is False:
            break  # provably above the main term at finite size: informational
    return Certificate(
        statement_id="det_main_term",
        lhs=lhs,
        rhs=rhs,
        slack=Interval.point(rhs) - lhs,
        verdict=INDETERMINATE,
        params={"k": system.k, "d": d, "size": len(A)},
        precision_bits=last_bits,
        inputs_digest=_sets_digest([A], system_to_dict(system)),
    )


# ---------------------------------------------------------------------------
# polynomial growth probe
# ---------------------------------------------------------------------------


def _poly_eval(coeffs: tuple[Fraction, ...], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _interpolate(nodes: list[int], values: list[int]) -> tuple[Fraction, ...]:
    """Exact coefficients (low to high) of the unique polynomial of degree
    < len(nodes) through the given points, via Newton's divided differences."""
    n = len(nodes)
    table = [Fraction(v) for v in values]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for i in range(n):
        for j, c in enumerate(basis):
            coeffs[j] += table[i] * c
        basis = _poly_mul(basis, [Fraction(-nodes[i]), Fraction(1)])
    return _poly_trim(coeffs)


def _reference_growth_poly(d: int, size: int) -> tuple[Fraction, ...]:
    """Q(k) = C(k+d-1, d) * size - (k-1) C(k+d-1, d-1) as exact coefficients."""
    rising_d = [Fraction(1)]
    for j in range(d):
        rising_d = _poly_mul(rising_d, [Fraction(j), Fraction(1)])
    rising_d = [c / math.factorial(d) for c in rising_d]
    rising_d1 = [Fraction(1)]
    for j in range(1, d):
        rising_d1 = _poly_mul(rising_d1, [Fraction(j), Fraction(1)])
    rising_d1 = [c / math.factorial(d - 1) for c in rising_d1]
    second = _poly_mul([Fraction(-1), Fraction(1)], rising_d1)
    out = [Fraction(0)] * max(len(rising_d), len(second))
    for i, c in enumerate(rising_d):
        out[i] += size * c
    for i, c in enumerate(second):
        out[i] -= c
    return _poly_trim(out)


@dataclass(frozen=True)
class GrowthFitReport:
    """Observed |kA| growth against the minimal lower-bound polynomial."""

    dim: int
    size: int
    k_max: int
    values: tuple[int, ...]
    degree: int
    threshold: int
    polynomial: tuple[Fraction, ...]
    reference: tuple[Fraction, ...]
    equals_reference: bool
    dominates_reference: bool

    def to_dict(self) -> dict:
        frac = lambda c: f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
        return {
            "dim": self.dim,
            "size": self.size,
            "k_max": self.k_max,
            "values": list(self.values),
            "degree": self.degree,
            "threshold": self.threshold,
            "polynomial": [frac(c) for c in self.polynomial],
            "reference": [frac(c) for c in self.reference],
            "equals_reference": self.equals_reference,
            "dominates_reference": self.dominates_reference,
        }


def khovanskii_probe(A: PointSet, k_max: int) -> GrowthFitReport:
    """Computes |kA| for k = 1..k_max, interpolates the degree-d tail
    polynomial exactly, locates the stabilization threshold, and compares
    against the reference lower-bound polynomial Q (the k-fold bound).

    |kA| agrees with a polynomial of degree d = dim(A) for k large; the
    last d+1 computed values pin that polynomial down exactly when k_max is
    past the stabilization point."""
    d = affine_dimension(A)
    if d != A.dim:
        raise ValueError("growth probe expects a full-dimensional set")
    if k_max < d + 2:
        raise ValueError(f"need k_max >= {d + 2} to fit a degree-{d} polynomial")
    values = []
    acc = A
    values.append(len(acc))
    for _ in range(k_max - 1):
        acc = minkowski_sum([acc, A])
        values.append(len(acc))
    nodes = list(range(k_max - d, k_max + 1))
    poly = _interpolate(nodes, values[k_max - d - 1 :])
    threshold = k_max
    for k in range(k_max, 0, -1):
        if _poly_eval(poly, k) == values[k - 1]:
            threshold = k
        else:
            break
    reference = _reference_growth_poly(d, len(A))
    dominates = all(
        values[k - 1] >= _poly_eval(reference, k) for k in range(1, k_max + 1)
    )
    return GrowthFitReport(
        dim=d,
        size=len(A),
        k_max=k_max,
        values=tuple(values),
        degree=len(poly) - 1,
        threshold=threshold,
        polynomial=poly,
        reference=reference,
        equals_reference=poly == reference,
        dominates_reference=dominates,
    )


def fit_deficit_exponent(pairs: list[tuple[int, int]]) -> float:
    """Least-squares slope of log(deficit) against log(size).

    ``pairs`` holds (size, deficit) observations; deficits are clamped to 1
    so a zero-deficit instance contributes log 1 = 0 instead of blowing up.
    """
    xs = [math.log(size) for size, _ in pairs]
    ys = [math.log(max(deficit, 1)) for _, deficit in pairs]
    if len(set(xs)) < 2:
        raise ValueError("need at least two distinct sizes")
    fit = statistics.linear_regression(xs, ys)
    return fit.slope
