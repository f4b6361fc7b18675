"""Certified interval arithmetic over exact rationals.

Every quantity is an enclosure ``[lo, hi]`` with ``fractions.Fraction``
endpoints, so enclosures are exact and ordering decisions are decidable
whenever the interval is tight enough.  Transcendental constants (exp,
log) come from series with explicit remainder bounds followed by outward
dyadic rounding; rational inputs stay width zero, which is what makes
the integer-base construction exact end to end.

No binary floats enter or leave this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

from .errors import DivergentTail, FloorUndecidable, NotGreaterThanOne

Rat = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 256
MAX_PRECISION_BITS = 4096


def _frac(v: Rat) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class CReal:
    """A real number known only through a certified enclosure ``[lo, hi]``.

    ``precision_bits`` records the precision the value was produced at;
    it is metadata, the endpoints alone carry the certificate.
    """

    lo: Fraction
    hi: Fraction
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")
        if self.precision_bits <= 0:
            raise ValueError("precision_bits must be positive")

    @staticmethod
    def exact(v: Rat, precision_bits: int = DEFAULT_PRECISION_BITS) -> "CReal":
        f = _frac(v)
        return CReal(f, f, precision_bits)

    # -- queries ---------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, v: Rat) -> bool:
        f = _frac(v)
        return self.lo <= f <= self.hi

    def encloses(self, other: "CReal") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def certainly_lt(self, other: Union["CReal", Rat]) -> bool:
        o = _coerce(other, self.precision_bits)
        return self.hi < o.lo

    def certainly_gt(self, other: Union["CReal", Rat]) -> bool:
        o = _coerce(other, self.precision_bits)
        return self.lo > o.hi

    def certainly_le(self, other: Union["CReal", Rat]) -> bool:
        o = _coerce(other, self.precision_bits)
        return self.hi <= o.lo

    def certainly_ge(self, other: Union["CReal", Rat]) -> bool:
        o = _coerce(other, self.precision_bits)
        return self.lo >= o.hi

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Union["CReal", Rat]) -> "CReal":
        o = _coerce(other, self.precision_bits)
        return CReal(self.lo + o.lo, self.hi + o.hi, min(self.precision_bits, o.precision_bits))

    __radd__ = __add__

    def __neg__(self) -> "CReal":
        return CReal(-self.hi, -self.lo, self.precision_bits)

    def __sub__(self, other: Union["CReal", Rat]) -> "CReal":
        return self + (-_coerce(other, self.precision_bits))

    def __rsub__(self, other: Rat) -> "CReal":
        return _coerce(other, self.precision_bits) + (-self)

    def __mul__(self, other: Union["CReal", Rat]) -> "CReal":
        o = _coerce(other, self.precision_bits)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CReal(min(products), max(products), min(self.precision_bits, o.precision_bits))

    __rmul__ = __mul__

    def inv(self) -> "CReal":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure contains 0")
        return CReal(1 / self.hi, 1 / self.lo, self.precision_bits)

    def __truediv__(self, other: Union["CReal", Rat]) -> "CReal":
        return self * _coerce(other, self.precision_bits).inv()

    def __rtruediv__(self, other: Rat) -> "CReal":
        return _coerce(other, self.precision_bits) * self.inv()

    def __pow__(self, n: int) -> "CReal":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return (self ** (-n)).inv()
        if n == 0:
            return CReal.exact(1, self.precision_bits)
        # monotone endpoint powers (one normalization each beats an
        # interval squaring chain on big rationals)
        lo_n, hi_n = self.lo ** n, self.hi ** n
        if self.lo >= 0:
            return CReal(lo_n, hi_n, self.precision_bits)
        if self.hi <= 0:
            return CReal(lo_n, hi_n, self.precision_bits) if n % 2 \
                else CReal(hi_n, lo_n, self.precision_bits)
        if n % 2:
            return CReal(lo_n, hi_n, self.precision_bits)
        return CReal(Fraction(0), max(lo_n, hi_n), self.precision_bits)

    # -- set operations --------------------------------------------------

    def intersect(self, other: "CReal") -> "CReal":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("empty intersection")
        return CReal(lo, hi, max(self.precision_bits, other.precision_bits))

    def hull(self, other: "CReal") -> "CReal":
        return CReal(min(self.lo, other.lo), max(self.hi, other.hi),
                     min(self.precision_bits, other.precision_bits))

    def round_outward(self, bits: int) -> "CReal":
        """Push endpoints to the dyadic grid of step 2^-bits (soundly outward)."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return CReal(lo, hi, self.precision_bits)


def _coerce(v: Union[CReal, Rat], precision_bits: int) -> CReal:
    if isinstance(v, CReal):
        return v
    return CReal.exact(v, precision_bits)


# ---------------------------------------------------------------------------
# transcendental enclosures
# ---------------------------------------------------------------------------


def exp_fraction(q: Rat, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    """Certified enclosure of e^q for rational q.

    Argument halving brings the series argument below 1/2, so the Taylor
    remainder after the k-th term is below twice the next term.
    """
    q = _frac(q)
    if q == 0:
        return CReal.exact(1, precision_bits)
    if q < 0:
        return exp_fraction(-q, precision_bits).inv().round_outward(precision_bits + 16)
    halvings = 0
    t = q
    while t > Fraction(1, 2):
        t /= 2
        halvings += 1
    work_bits = precision_bits + 2 * halvings + 32
    target = Fraction(1, 1 << work_bits)
    partial = Fraction(1)
    term = Fraction(1)
    k = 0
    while True:
        k += 1
        term *= t / k
        partial += term
        nxt = term * t / (k + 1)
        if 2 * nxt <= target:
            break
    enc = CReal(partial, partial + 2 * nxt, precision_bits)
    for _ in range(halvings):
        enc = enc * enc
    return enc.round_outward(precision_bits + 16)


def _atanh_enclosure(t: Fraction, bits: int) -> CReal:
    """Enclosure of atanh(t) for 0 <= t < 1 via the odd-power series."""
    if t == 0:
        return CReal.exact(0, bits)
    target = Fraction(1, 1 << bits)
    t2 = t * t
    partial = Fraction(0)
    power = t
    j = 0
    while True:
        partial += power / (2 * j + 1)
        power *= t2
        j += 1
        bound = power / ((2 * j + 1) * (1 - t2))
        if bound <= target:
            break
    return CReal(partial, partial + bound, bits)


@lru_cache(maxsize=None)
def ln2_enclosure(precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    # ln 2 = 2 atanh(1/3)
    return (2 * _atanh_enclosure(Fraction(1, 3), precision_bits + 8)).round_outward(precision_bits + 4)


def log_fraction(x: Rat, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    """Certified enclosure of ln(x) for rational x > 0."""
    x = _frac(x)
    if x <= 0:
        raise ValueError("log requires a positive argument")
    exponent = 0
    m = x
    while m >= 2:
        m /= 2
        exponent += 1
    while m < 1:
        m *= 2
        exponent -= 1
    if m == 1:
        result = CReal.exact(0, precision_bits)
    else:
        t = (m - 1) / (m + 1)  # in (0, 1/3) for m in (1, 2)
        result = 2 * _atanh_enclosure(t, precision_bits + 16)
    if exponent:
        result = result + exponent * ln2_enclosure(precision_bits + 16)
    return result.round_outward(precision_bits + 8)


def log_interval(x: CReal, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    """Enclosure of ln over an interval with positive lower endpoint."""
    if x.lo <= 0:
        raise ValueError("log requires a certifiably positive enclosure")
    return CReal(log_fraction(x.lo, precision_bits).lo,
                 log_fraction(x.hi, precision_bits).hi,
                 precision_bits)


# ---------------------------------------------------------------------------
# certified floor
# ---------------------------------------------------------------------------

RefineFn = Callable[[int], CReal]


def certified_floor(x: CReal,
                    refine: Optional[RefineFn] = None,
                    start_bits: int = DEFAULT_PRECISION_BITS,
                    max_bits: int = MAX_PRECISION_BITS) -> int:
    """Floor of the real enclosed by ``x``, or FloorUndecidable.

    The result m certifies m <= x < m+1.  When the enclosure straddles an
    integer and ``refine`` is given, the enclosure is recomputed at doubled
    precision until it decides or ``max_bits`` is reached.  An exact
    endpoint pair (width zero) is always decidable.
    """
    bits = start_bits
    cur = x
    while True:
        fl = math.floor(cur.lo)
        fh = math.floor(cur.hi)
        if fl == fh or cur.is_exact:
            return fl
        # Note: an hi endpoint sitting exactly on an integer stays undecided
        # (the true value may equal it or lie below), which floor(hi) > floor(lo)
        # already captures.
        if refine is None or bits >= max_bits:
            raise FloorUndecidable(
                f"enclosure [{float(cur.lo)!r}, {float(cur.hi)!r}] straddles an "
                f"integer at {bits} bits")
        bits = min(bits * 2, max_bits)
        cur = refine(bits)


# ---------------------------------------------------------------------------
# weighted geometric tails
# ---------------------------------------------------------------------------

_TAIL_WEIGHTS = ("1", "n", "n2")


def geometric_tail(ratio: Union[CReal, Rat], first_exponent: int, weight: str = "1") -> CReal:
    """Certified enclosure of sum_{n >= s} w(n) * ratio^n, w in {1, n, n^2}.

    Closed forms (s = first_exponent, r = ratio):
        1  : r^s / (1 - r)
        n  : r^s (s - (s-1) r) / (1 - r)^2
        n^2: r^s (s^2 - (2s^2 - 2s - 1) r + (s-1)^2 r^2) / (1 - r)^3
    """
    if weight not in _TAIL_WEIGHTS:
        raise ValueError(f"weight must be one of {_TAIL_WEIGHTS}")
    if first_exponent < 0:
        raise ValueError("first_exponent must be nonnegative")
    r = _coerce(ratio, DEFAULT_PRECISION_BITS)
    if r.lo < 0 or not r.certainly_lt(1):
        raise DivergentTail(f"ratio enclosure [{r.lo}, {r.hi}] is not certifiably in [0, 1)")
    s = first_exponent
    head = r ** s
    one_minus = 1 - r
    if weight == "1":
        return head / one_minus
    if weight == "n":
        return head * (s - (s - 1) * r) / (one_minus * one_minus)
    quad = s * s - (2 * s * s - 2 * s - 1) * r + (s - 1) * (s - 1) * (r * r)
    return head * quad / (one_minus ** 3)


# ---------------------------------------------------------------------------
# growth base descriptors
# ---------------------------------------------------------------------------

_BETA_KINDS = ("rational", "exp_rational", "decimal")


@dataclass(frozen=True)
class BetaValue:
    """A growth base beta > 1 given exactly.

    ``kind`` is one of "rational" / "decimal" (value is beta itself, a
    decimal literal being read as an exact rational) or "exp_rational"
    (value is the exponent q, beta = e^q).
    """

    kind: str
    value: Fraction
    text: str
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind not in _BETA_KINDS:
            raise ValueError(f"unknown beta kind {self.kind!r}")
        object.__setattr__(self, "value", _frac(self.value))

    @staticmethod
    def parse(text: str) -> "BetaValue":
        t = text.strip()
        if t.startswith("e^"):
            return BetaValue("exp_rational", Fraction(t[2:]), t)
        kind = "decimal" if "." in t else "rational"
        return BetaValue(kind, Fraction(t), t)

    @staticmethod
    def from_rational(v: Rat) -> "BetaValue":
        f = _frac(v)
        return BetaValue("rational", f, str(f))

    @staticmethod
    def exp_of_rational(q: Rat) -> "BetaValue":
        f = _frac(q)
        return BetaValue("exp_rational", f, f"e^{f}")

    @property
    def is_exact_rational(self) -> bool:
        return self.kind in ("rational", "decimal")

    @property
    def is_integer(self) -> bool:
        return self.is_exact_rational and self.value.denominator == 1

    def eval(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
        cached = self._cache.get(precision_bits)
        if cached is not None:
            return cached
        if self.is_exact_rational:
            if self.value <= 1:
                raise NotGreaterThanOne(f"beta = {self.value} is not > 1")
            enc = CReal.exact(self.value, precision_bits)
        else:
            if self.value <= 0:
                raise NotGreaterThanOne(f"beta = e^{self.value} is not > 1")
            bits = precision_bits
            enc = exp_fraction(self.value, bits)
            while enc.lo <= 1 and bits < MAX_PRECISION_BITS:
                bits = min(bits * 2, MAX_PRECISION_BITS)
                enc = exp_fraction(self.value, bits)
            if enc.lo <= 1:
                raise NotGreaterThanOne(
                    f"enclosure of e^{self.value} does not separate from 1 "
                    f"at {MAX_PRECISION_BITS} bits")
        self._cache[precision_bits] = enc
        return enc


def eval_beta(b: BetaValue, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    """Certified enclosure of the growth base; raises NotGreaterThanOne."""
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    return b.eval(precision_bits)


# ---------------------------------------------------------------------------
# decimal serialization of enclosures
# ---------------------------------------------------------------------------

DECIMAL_DIGITS = 40


def _format_scaled(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def decimal_bounds(x: CReal, digits: int = DECIMAL_DIGITS) -> tuple[str, str]:
    """Outward-rounded decimal strings for the endpoints (sound, idempotent)."""
    scale = 10 ** digits
    lo = math.floor(x.lo * scale)
    hi = math.ceil(x.hi * scale)
    return _format_scaled(lo, digits), _format_scaled(hi, digits)


def interval_from_decimals(lo: str, hi: str, precision_bits: int = DEFAULT_PRECISION_BITS) -> CReal:
    return CReal(Fraction(lo), Fraction(hi), precision_bits)
