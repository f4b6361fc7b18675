"""Loop spectra: sequences a(n) of loop counts with certified analytic metadata.

A constructed spectrum for a base beta > 1 satisfies, with c = (beta-1)^2
and M = beta + k:

  * a(1) = 1,
  * sum_{n>=1} a(n) beta^-n = 1,
  * c beta^(m^2-m) <= a(m^2) <= c beta^(m^2-m) + M for m >= 2
    (the lower bound up to the floor defect < 1),
  * 0 <= a(n) <= M for non-square n.

The construction: put b(m^2) = floor(c beta^(m^2-m)) on squares, measure the
deficit delta = 1 - sum b(n) beta^-n in [0, 1), split off k = floor(beta^2 delta)
into the n = 2 slot and spread the remainder delta - k/beta^2 < 1/beta by its
greedy base-beta expansion.  Everything is interval-certified; the whole build
restarts at doubled precision whenever a floor is undecidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (FloorUndecidable, NoDeletableLoop, PrecisionExhausted,
                     TailUnavailable)
from .intervals import (DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS, BetaValue,
                        CReal, certified_floor, geometric_tail)

DEFAULT_N_MAX = 64


@dataclass(frozen=True)
class DigitTrace:
    """Audit trail of the construction; index i corresponds to n = i + 1."""

    b: tuple[int, ...]
    d: tuple[int, ...]
    d_prime: tuple[int, ...]


@dataclass(frozen=True)
class SpectrumMeta:
    """Certified analytic metadata of a constructed spectrum.

    c = (beta-1)^2 scales the square-index counts, delta is the deficit
    left by the floors, k = floor(beta^2 delta), M_bound = beta + k bounds
    the off-square counts, L = 1/beta is the radius of convergence of
    sum a(n) z^n, and tail_at_L encloses sum_{n > N_max} a(n) L^n.
    """

    beta: BetaValue
    precision_bits: int
    c: CReal
    delta: CReal
    k: int
    M_bound: CReal
    L: CReal
    tail_at_L: CReal
    deleted_loop: Optional[int] = None


@dataclass(frozen=True)
class LoopSpectrum:
    """Truncated loop-count sequence a(1..N_max) with optional metadata.

    ``a[i]`` holds a(i+1).  ``meta`` is present for constructed spectra only;
    user-supplied spectra carry ``finite_support`` to say whether the list is
    the whole (polynomial) spectrum or a truncation of something unknown.
    """

    a: tuple[int, ...]
    N_max: int
    meta: Optional[SpectrumMeta] = None
    digit_trace: Optional[DigitTrace] = None
    finite_support: bool = False

    def __post_init__(self) -> None:
        if len(self.a) != self.N_max:
            raise ValueError("a must have exactly N_max entries")
        if any(v < 0 for v in self.a):
            raise ValueError("loop counts must be nonnegative")

    def count(self, n: int) -> int:
        if not 1 <= n <= self.N_max:
            raise IndexError(f"n={n} outside 1..{self.N_max}")
        return self.a[n - 1]

    @property
    def is_constructed(self) -> bool:
        return self.meta is not None

    def support(self) -> list[int]:
        return [n for n in range(1, self.N_max + 1) if self.a[n - 1] > 0]


def user_spectrum(a: Sequence[int], finite_support: bool = True) -> LoopSpectrum:
    """Wrap an explicit count list (no analytic metadata)."""
    return LoopSpectrum(tuple(int(v) for v in a), len(a), finite_support=finite_support)


# ---------------------------------------------------------------------------
# greedy base-beta expansion
# ---------------------------------------------------------------------------


def _clamp_unit(r: CReal) -> CReal:
    # the true remainder lies in [0, 1); clamping interval slack is sound
    return CReal(max(r.lo, Fraction(0)), min(r.hi, Fraction(1)), r.precision_bits)


def _greedy_digits(x: CReal, B: CReal, num_digits: int) -> tuple[list[int], CReal]:
    """Greedy digits of x in base B plus the certified final remainder."""
    grid_bits = B.precision_bits + 64
    r = _clamp_unit(x)
    digits: list[int] = []
    for _ in range(num_digits):
        y = B * r
        d = certified_floor(y)
        digits.append(d)
        # outward rounding keeps denominators dyadic and of bounded size
        r = _clamp_unit((y - d).round_outward(grid_bits))
    return digits, r


def beta_expansion(x: CReal, beta: BetaValue, num_digits: int,
                   precision_bits: int = DEFAULT_PRECISION_BITS) -> tuple[int, ...]:
    """Greedy expansion digits d(1..num_digits) of x in base beta.

    Requires a certified 0 <= x < 1.  FloorUndecidable propagates when the
    enclosure of some partial remainder straddles a digit boundary.
    """
    if x.lo < 0 or not x.certainly_lt(1):
        raise ValueError("x must be certifiably in [0, 1)")
    B = beta.eval(precision_bits)
    digits, _ = _greedy_digits(x, B, num_digits)
    return tuple(digits)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _log2_bounds(x: Fraction) -> tuple[float, float]:
    """(lower, upper) float bounds on log2 of a positive rational."""
    v = math.log2(x.numerator) - math.log2(x.denominator)
    pad = 1e-9 * (abs(v) + 1)
    return v - pad, v + pad


def _build_once(beta: BetaValue, N_max: int, bits: int) -> LoopSpectrum:
    probe = beta.eval(bits)
    exact_integer_base = beta.is_integer
    lg_lo, _ = _log2_bounds(probe.lo)
    _, lg_hi = _log2_bounds(probe.hi)

    # The greedy digit loop multiplies the deficit's width by beta^N_max, so
    # the series arithmetic runs with that amplification pre-paid; the
    # untracked floor tail (beyond n_ext^2) must be small on the same scale.
    amp = math.ceil(N_max * lg_hi)
    series_bits = bits + 64 + amp
    n_ext = max(math.isqrt(N_max),
                math.ceil(math.sqrt((bits + 32 + amp) / lg_lo)))

    # Square-index floors: floor(c * beta^(m^2-m)) needs absolute precision,
    # i.e. roughly (m^2-m) log2(beta) bits before the point; each floor gets
    # its own evaluation with escalation on a near-integer hit.
    def scaled_power(e: int):
        def at_bits(bb: int) -> CReal:
            Bf = beta.eval(bb + math.ceil(e * lg_hi))
            return (Bf - 1) ** 2 * Bf ** e
        return at_bits

    floors: dict[int, int] = {1: 1}
    for m in range(2, n_ext + 1):
        val = scaled_power(m * m - m)
        floors[m * m] = certified_floor(val(bits), refine=val, start_bits=bits)

    B = beta.eval(series_bits)
    c = (B - 1) ** 2
    L = B.inv()
    if not beta.is_exact_rational:
        L = L.round_outward(series_bits)

    partial = CReal.exact(0, bits)
    for n, bn in sorted(floors.items()):
        partial = partial + bn * L ** n

    # tail of the floor series beyond n_ext^2: each floor lies in
    # (c beta^(m^2-m) - 1, c beta^(m^2-m)], so the tail is within
    # [c*T - slack, c*T] with T the geometric tail and slack = sum beta^-m^2.
    geo = geometric_tail(L, n_ext + 1, "1")
    if exact_integer_base:
        # integer beta with integer c: every floor is lossless, tail exact
        far_tail = c * geo
    else:
        slack = geometric_tail(L, (n_ext + 1) ** 2, "1")
        upper = (c * geo).hi
        far_tail = CReal(max(Fraction(0), (c * geo).lo - slack.hi), upper, bits)

    delta = 1 - (partial + far_tail)
    delta = CReal(max(delta.lo, Fraction(0)), max(delta.hi, Fraction(0)), bits)
    if not delta.certainly_lt(1):
        raise PrecisionExhausted(
            f"deficit enclosure [{delta.lo}, {delta.hi}] does not separate from 1")

    k = certified_floor(B * B * delta)
    x0 = _clamp_unit(delta - k * (L * L))
    digits, remainder = _greedy_digits(x0, B, N_max)
    if digits[0] != 0:
        raise RuntimeError("first expansion digit is nonzero; this indicates a "
                           "precision bug, the remainder is below 1/beta by design")
    d_prime = list(digits)
    d_prime[1] += k  # the k units live in the n = 2 slot

    a = [1] + [floors.get(n, 0) + d_prime[n - 1] for n in range(2, N_max + 1)]

    tracked_tail = CReal.exact(0, bits)
    for n, bn in sorted(floors.items()):
        if n > N_max:
            tracked_tail = tracked_tail + bn * L ** n
    tail_at_L = tracked_tail + far_tail + remainder * L ** N_max

    meta = SpectrumMeta(
        beta=beta,
        precision_bits=bits,
        c=c,
        delta=delta,
        k=k,
        M_bound=B + k,
        L=L,
        tail_at_L=tail_at_L,
    )
    trace = DigitTrace(
        b=tuple(floors.get(n, 0) for n in range(1, N_max + 1)),
        d=tuple(digits),
        d_prime=tuple([0] + d_prime[1:]),
    )
    return LoopSpectrum(tuple(a), N_max, meta=meta, digit_trace=trace)


def build_spectrum(beta: BetaValue, N_max: int = DEFAULT_N_MAX,
                   precision_bits: int = DEFAULT_PRECISION_BITS,
                   max_precision_bits: int = MAX_PRECISION_BITS) -> LoopSpectrum:
    """Construct the loop spectrum of the given base, truncated at N_max.

    Deterministic for fixed (beta descriptor, N_max, precision policy).
    Escalates precision on undecidable floors up to ``max_precision_bits``.
    """
    if N_max < 4:
        raise ValueError("N_max must be >= 4")
    bits = precision_bits
    while True:
        try:
            return _build_once(beta, N_max, bits)
        except FloorUndecidable:
            if bits >= max_precision_bits:
                raise
            bits = min(bits * 2, max_precision_bits)


def delete_loop(s: LoopSpectrum, n0: Optional[int] = None) -> LoopSpectrum:
    """Remove one loop of length n0 >= 2 (smallest available by default)."""
    if s.meta is not None and s.meta.deleted_loop is not None:
        raise NoDeletableLoop("spectrum already has a deleted loop recorded")
    if n0 is None:
        n0 = next((n for n in range(2, s.N_max + 1) if s.count(n) >= 1), None)
        if n0 is None:
            raise NoDeletableLoop(f"no loop of length in 2..{s.N_max} to delete")
    else:
        if n0 < 2:
            raise NoDeletableLoop("only loops of length >= 2 may be deleted")
        if not (2 <= n0 <= s.N_max) or s.count(n0) < 1:
            raise NoDeletableLoop(f"a({n0}) has no loop to delete")
    a = list(s.a)
    a[n0 - 1] -= 1
    meta = replace(s.meta, deleted_loop=n0) if s.meta is not None else None
    return LoopSpectrum(tuple(a), s.N_max, meta=meta, digit_trace=s.digit_trace,
                        finite_support=s.finite_support)


# ---------------------------------------------------------------------------
# certified sums and tails
# ---------------------------------------------------------------------------


def unit_sum_enclosure(s: LoopSpectrum) -> CReal:
    """Certified enclosure of sum_{n>=1} a(n) L^n (partial sum + stored tail).

    For an intact constructed spectrum this encloses 1; after deleting a loop
    of length n0 it encloses 1 - L^n0.
    """
    if s.meta is None:
        raise TailUnavailable("spectrum has no analytic metadata")
    L = s.meta.L
    total = CReal.exact(0, L.precision_bits)
    for n in range(1, s.N_max + 1):
        an = s.a[n - 1]
        if an:
            total = total + an * L ** n
    return total + s.meta.tail_at_L


def unit_sum_target(s: LoopSpectrum) -> CReal:
    """What the full series sums to: 1, or 1 - L^n0 for a deleted-loop variant."""
    if s.meta is None:
        raise TailUnavailable("spectrum has no analytic metadata")
    if s.meta.deleted_loop is None:
        return CReal.exact(1, s.meta.precision_bits)
    return 1 - s.meta.L ** s.meta.deleted_loop


def spectrum_tail_bounds(s: LoopSpectrum, from_n: int, weight: str = "1") -> CReal:
    """Certified upper bound on sum_{n >= from_n} w(n) a(n) L^n, w in {1, n}.

    Uses the comparison series: off-square counts are at most M, square
    counts at most c beta^(m^2-m) + M, so the tail is dominated by
    M * sum w(n) beta^-n  +  c * sum w(m^2) beta^-m  (m ranging over square roots).
    """
    if weight not in ("1", "n"):
        raise ValueError("weight must be '1' or 'n'")
    if s.meta is None:
        raise TailUnavailable("spectrum has no analytic metadata")
    if from_n < 1:
        raise ValueError("from_n must be >= 1")
    meta = s.meta
    m0 = math.isqrt(from_n - 1) + 1  # smallest m with m^2 >= from_n
    square_weight = "1" if weight == "1" else "n2"
    bound = (meta.M_bound * geometric_tail(meta.L, from_n, weight)
             + meta.c * geometric_tail(meta.L, m0, square_weight))
    return CReal(Fraction(0), bound.hi, meta.precision_bits)


def weighted_sum_enclosure(s: LoopSpectrum) -> CReal:
    """Certified enclosure/upper bound of sum_{n>=1} n a(n) L^n (mean return)."""
    if s.meta is None:
        raise TailUnavailable("spectrum has no analytic metadata")
    L = s.meta.L
    partial = CReal.exact(0, L.precision_bits)
    for n in range(1, s.N_max + 1):
        an = s.a[n - 1]
        if an:
            partial = partial + n * an * L ** n
    tail = spectrum_tail_bounds(s, s.N_max + 1, "n")
    return CReal(partial.lo, (partial + tail).hi, L.precision_bits)


# ---------------------------------------------------------------------------
# property checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def spectrum_checks(s: LoopSpectrum,
                    unit_width_tol: Fraction = Fraction(1, 10 ** 30)) -> list[CheckResult]:
    """Machine-check the defining properties of a constructed spectrum.

    For a deleted-loop variant the checks are applied to the parent counts
    (the deleted entry gets its unit back) and the unit-sum target becomes
    1 - L^n0.
    """
    if s.meta is None:
        raise TailUnavailable("spectrum has no analytic metadata")
    meta = s.meta
    B = meta.beta.eval(meta.precision_bits)
    results: list[CheckResult] = []

    def parent_count(n: int) -> int:
        v = s.count(n)
        if meta.deleted_loop == n:
            v += 1
        return v

    results.append(CheckResult("a(1) = 1", parent_count(1) == 1, f"a(1) = {parent_count(1)}"))

    enc = unit_sum_enclosure(s)
    target = unit_sum_target(s)
    overlap = enc.lo <= target.hi and target.lo <= enc.hi
    width_ok = enc.width <= unit_width_tol
    results.append(CheckResult(
        "unit sum encloses target",
        overlap and width_ok,
        f"width = {float(enc.width):.3e}, target in enclosure: {overlap}"))

    results.append(CheckResult(
        "deficit in [0, 1)",
        meta.delta.lo >= 0 and meta.delta.certainly_lt(1),
        f"delta in [{float(meta.delta.lo):.3e}, {float(meta.delta.hi):.3e}]"))

    if s.digit_trace is not None:
        results.append(CheckResult("first expansion digit is 0",
                                   s.digit_trace.d[0] == 0,
                                   f"d(1) = {s.digit_trace.d[0]}"))

    for m in range(2, math.isqrt(s.N_max) + 1):
        n = m * m
        scale = meta.c * B ** (n - m)
        val = parent_count(n)
        # lower bound certified up to the floor defect: a(m^2) > c beta^(m^2-m) - 1
        lower_ok = Fraction(val + 1) > scale.hi
        upper_ok = Fraction(val) <= (scale + meta.M_bound).lo
        results.append(CheckResult(
            f"square bound at n = {n}",
            lower_ok and upper_ok,
            f"a({n}) = {val}, scale in [{float(scale.lo):.6g}, {float(scale.hi):.6g}]"))

    squares = {m * m for m in range(1, math.isqrt(s.N_max) + 1)}
    bad = [n for n in range(2, s.N_max + 1)
           if n not in squares and not Fraction(parent_count(n)) <= meta.M_bound.lo]
    results.append(CheckResult(
        "off-square counts bounded by M",
        not bad,
        f"violations at {bad}" if bad else f"M in [{float(meta.M_bound.lo):.6g}, "
                                           f"{float(meta.M_bound.hi):.6g}]"))
    return results
