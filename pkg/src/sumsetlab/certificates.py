"""Verifiable certificates for inequalities between exact quantities.

Every check in the package returns a :class:`Certificate` oriented the same
way: the claim is ``lhs <= rhs`` and ``slack = rhs - lhs``, so the claim holds
iff the slack is non-negative.  Both sides are exact rationals or, when an
irrational quantity such as ``n**(1/d)`` is involved, a rational interval
guaranteed to contain the true value.  The verdict is

* ``Holds``          -- slack is provably >= 0,
* ``Violated``       -- slack is provably  < 0,
* ``Indeterminate``  -- the enclosing intervals still overlap zero at the
  configured precision cap (or the check declines to decide, e.g. an
  asymptotic probe at a single instance size).

Interval endpoints are Fractions with power-of-two denominators produced by
``sympy.integer_nthroot``, so a certificate can be replayed and re-verified
with integer arithmetic only.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot

HOLDS = "Holds"
VIOLATED = "Violated"
INDETERMINATE = "Indeterminate"

DEFAULT_PRECISION_CAP = 4096
_PRECISION_ENV = "SUMSETLAB_PRECISION_CAP"


def get_precision_cap() -> int:
    """Maximum interval precision in bits (env ``SUMSETLAB_PRECISION_CAP``)."""
    raw = os.environ.get(_PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{_PRECISION_ENV} must be positive")
    return cap


def precision_schedule(start: int = 128):
    """Yield 128, 256, 512, ... up to and including the precision cap."""
    cap = get_precision_cap()
    bits = min(start, cap)
    while True:
        yield bits
        if bits >= cap:
            return
        bits = min(bits * 2, cap)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] containing an exact real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        f = Fraction(x)
        return cls(f, f)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def power(self, n: int) -> "Interval":
        """[lo, hi]^n for non-negative intervals and n >= 0."""
        if self.lo < 0:
            raise ValueError("power is only implemented for non-negative intervals")
        if n < 0:
            raise ValueError("exponent must be non-negative")
        return Interval(self.lo ** n, self.hi ** n)

    def le(self, other: "Interval") -> bool | None:
        """Three-valued ``self <= other``: True / False / None (undecided)."""
        if self.hi <= other.lo:
            return True
        if self.lo > other.hi:
            return False
        return None

    def width(self) -> Fraction:
        return self.hi - self.lo


def int_nth_root_interval(n: int, d: int, bits: int) -> Interval:
    """Certified enclosure of n**(1/d) with width at most 2**-bits.

    Perfect d-th powers yield a degenerate (point) interval.  Otherwise the
    lower endpoint is floor((n * 2**(bits*d)) ** (1/d)) / 2**bits, which is
    exact integer arithmetic via ``sympy.integer_nthroot``.
    """
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if d < 1:
        raise ValueError("root degree must be >= 1")
    if n == 0:
        return Interval.point(0)
    root, exact = integer_nthroot(n, d)
    if exact:
        return Interval.point(root)
    scaled, _ = integer_nthroot(n << (bits * d), d)
    lo = Fraction(scaled, 1 << bits)
    return Interval(lo, lo + Fraction(1, 1 << bits))


def _encode_value(v) -> object:
    if isinstance(v, Interval):
        return {
            "lo": _encode_value(v.lo),
            "hi": _encode_value(v.hi),
        }
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)):
        return [_encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _encode_value(x) for k, x in v.items()}
    if v is None:
        return None
    raise TypeError(f"cannot encode {type(v).__name__} in a certificate")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    """sha256 of the canonical JSON encoding; used to pin certificate inputs."""
    return hashlib.sha256(canonical_json(_encode_value(obj)).encode()).hexdigest()


@dataclass(frozen=True)
class Certificate:
    """A checked instance of an inequality ``lhs <= rhs``.

    ``lhs``/``rhs``/``slack`` are ints, Fractions, or Intervals.  ``params``
    records the instance (sizes, exponents, ...) so the certificate is
    self-describing; ``witnesses`` carries counterexample data on violation.
    """

    statement_id: str
    lhs: object
    rhs: object
    slack: object
    verdict: str
    params: dict | None = None
    witnesses: dict | None = None
    precision_bits: int | None = None
    inputs_digest: str | None = None

    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        out = {
            "statement_id": self.statement_id,
            "lhs": _encode_value(self.lhs),
            "rhs": _encode_value(self.rhs),
            "slack": _encode_value(self.slack),
            "verdict": self.verdict,
        }
        if self.params is not None:
            out["params"] = _encode_value(self.params)
        if self.witnesses is not None:
            out["witnesses"] = _encode_value(self.witnesses)
        if self.precision_bits is not None:
            out["precision_bits"] = self.precision_bits
        if self.inputs_digest is not None:
            out["inputs_digest"] = self.inputs_digest
        return out


def exact_certificate(
    statement_id: str,
    lhs,
    rhs,
    *,
    params: dict | None = None,
    witnesses: dict | None = None,
    inputs_digest: str | None = None,
) -> Certificate:
    """Certificate for exact rational lhs and rhs (no intervals involved)."""
    slack = rhs - lhs
    verdict = HOLDS if slack >= 0 else VIOLATED
    return Certificate(
        statement_id=statement_id,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        verdict=verdict,
        params=params,
        witnesses=None if verdict == HOLDS else witnesses,
        inputs_digest=inputs_digest,
    )


def interval_certificate(
    statement_id: str,
    make_sides,
    *,
    params: dict | None = None,
    witnesses: dict | None = None,
    inputs_digest: str | None = None,
) -> Certificate:
    """Certificate for sides needing root enclosures, with escalation.

    ``make_sides(bits)`` must return ``(lhs, rhs)`` as Intervals computed at
    the given precision.  Precision doubles from 128 bits until the comparison
    is decided or the cap is reached; an undecided comparison at the cap is
    reported as ``Indeterminate`` (never guessed).
    """
    last = None
    for bits in precision_schedule():
        lhs, rhs = make_sides(bits)
        last = (lhs, rhs, bits)
        decided = lhs.le(rhs)
        if decided is not None:
            slack = rhs - lhs
            return Certificate(
                statement_id=statement_id,
                lhs=lhs,
                rhs=rhs,
                slack=slack,
                verdict=HOLDS if decided else VIOLATED,
                params=params,
                witnesses=None if decided else witnesses,
                precision_bits=bits,
                inputs_digest=inputs_digest,
            )
    lhs, rhs, bits = last
    return Certificate(
        statement_id=statement_id,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        verdict=INDETERMINATE,
        params=params,
        precision_bits=bits,
        inputs_digest=inputs_digest,
    )
