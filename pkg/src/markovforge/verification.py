"""End-to-end invariant suite: construction properties, oracle equivalence,
period, and classification-certificate consistency for one spectrum."""

from __future__ import annotations

from math import gcd
from typing import Optional

from .classifier import Verdict, classify
from .errors import TailUnavailable
from .graph import is_strongly_connected, lift_period, period, realize
from .oracle import (BudgetExceeded, count_first_returns, count_paths,
                     enumerate_paths, renewal_convolve, table_from_spectrum)
from .spectrum import CheckResult, LoopSpectrum, spectrum_checks

DEFAULT_ORACLE_DEPTH = 12
ENUM_STEP_BUDGET = 10 ** 6
REALIZE_VERTEX_BUDGET = 2 * 10 ** 6


def run_suite(s: LoopSpectrum, period_lift: int = 1,
              oracle_depth: int = DEFAULT_ORACLE_DEPTH,
              precision_bits: Optional[int] = None) -> list[CheckResult]:
    results: list[CheckResult] = []

    # construction properties (constructed spectra only)
    if s.meta is not None:
        results.extend(spectrum_checks(s))

    # oracle equivalence on the truncated realization; the explicit graph
    # spends a(n) n vertices per loop length, so shrink the depth until it
    # fits in memory (large bases reach millions of loops by length 9)
    depth = min(oracle_depth, s.N_max)
    while depth > 1 and sum(s.count(n) * n for n in range(1, depth + 1)) > REALIZE_VERTEX_BUDGET:
        depth -= 1
    g = realize(s, depth)
    results.append(CheckResult("realization strongly connected",
                               is_strongly_connected(g),
                               f"{len(g.vertices)} vertices"))
    f_dp = count_first_returns(g, g.root, depth)
    p_dp = count_paths(g, g.root, g.root, depth)
    results.append(CheckResult(
        "first returns match spectrum",
        tuple(f_dp) == s.a[:depth],
        f"depth {depth}"))
    results.append(CheckResult(
        "renewal convolution matches path counts",
        renewal_convolve(f_dp, depth) == p_dp,
        f"depth {depth}"))

    enum_ok = True
    enum_detail = "skipped (budget)"
    checked_to = 0
    for n in range(1, depth + 1):
        try:
            if enumerate_paths(g, g.root, g.root, n, ENUM_STEP_BUDGET) != p_dp[n]:
                enum_ok = False
                enum_detail = f"mismatch at n = {n}"
                break
            checked_to = n
        except BudgetExceeded:
            break
    if enum_ok and checked_to:
        enum_detail = f"walked all paths up to length {checked_to}"
    results.append(CheckResult("literal enumeration matches DP", enum_ok, enum_detail))

    # period
    lifted = lift_period(g, period_lift) if period_lift > 1 else g
    support = [n for n in s.support()]
    if support:
        expected = gcd(*(n * period_lift for n in support if n <= depth)) \
            if any(n <= depth for n in support) else None
        if expected is not None:
            structural = period(lifted)
            table = table_from_spectrum(s, depth * period_lift, period_lift)
            from_counts = [n for n, v in enumerate(table.p) if n > 0 and v > 0]
            oracle_gcd = gcd(*from_counts) if from_counts else None
            results.append(CheckResult(
                "period (structural vs oracle)",
                structural == expected and oracle_gcd == expected,
                f"structural = {structural}, from counts = {oracle_gcd}, "
                f"expected = {expected}"))

    # classification certificate consistency
    try:
        report = classify(s)
        ok, detail = _certificate_consistent(report)
        results.append(CheckResult("classification certificates consistent", ok, detail))
    except TailUnavailable:
        pass
    return results


def _certificate_consistent(report) -> tuple[bool, str]:
    v = report.verdict
    if v is Verdict.TRANSIENT:
        ok = (report.F_at_L is not None and report.F_at_L.certainly_lt(1)
              and report.R == report.L and report.has_mme is False)
        return ok, "transient: F(L) < 1 certified and R = L"
    if v is Verdict.POSITIVE_RECURRENT:
        ok = report.mean_return_bound is not None
        if report.F_at_L is not None:
            ok = ok and (report.F_at_L.contains(1) or report.F_at_L.certainly_gt(1))
        return ok, "positive recurrent: F-sum reaches 1 with finite mean return"
    if v is Verdict.NULL_RECURRENT:
        return False, "null recurrent verdicts require an exact analytic model"
    return True, "indeterminate verdicts carry no certificate"
