"""Exact path counting: the independent ground truth for everything else.

All counts are arbitrary-size integers.  Three routes are provided and
cross-checked in the tests: dynamic programming on the adjacency lists,
the renewal convolution of first-return counts, and (at desk scale)
literal enumeration by walking every path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InsufficientData
from .graph import ExplicitGraph
from .spectrum import LoopSpectrum

ENUMERATION_BUDGET = 10 ** 6


@dataclass(frozen=True)
class PathCountTable:
    """f[i] = first-return count f(i+1); p[i] = all-loop count p(i), p(0) = 1."""

    f: tuple[int, ...]
    p: tuple[int, ...]
    source: str

    def renewal_consistent(self) -> bool:
        n_max = len(self.p) - 1
        for n in range(1, n_max + 1):
            total = sum(self.f[k - 1] * self.p[n - k] for k in range(1, min(n, len(self.f)) + 1))
            if total != self.p[n]:
                return False
        return self.p[0] == 1

    def to_csv(self, period: int = 1) -> str:
        lines = ["n,f,p,growth_estimate"]
        for n in range(1, len(self.p)):
            fv = self.f[n - 1] if n <= len(self.f) else 0
            pv = self.p[n]
            est = f"{_ln_big(pv) / n:.12f}" if pv > 0 and n % period == 0 else ""
            lines.append(f"{n},{fv},{pv},{est}")
        return "\n".join(lines) + "\n"


def _ln_big(v: int) -> float:
    """Natural log of a positive big integer without float overflow."""
    if v <= 0:
        raise ValueError("positive integer required")
    shift = max(0, v.bit_length() - 53)
    return math.log(v >> shift) + shift * math.log(2)


# ---------------------------------------------------------------------------
# dynamic programming
# ---------------------------------------------------------------------------


def count_paths(g: ExplicitGraph, u: str, v: str, N: int) -> list[int]:
    """Exact counts p_uv(0..N) of length-n paths from u to v."""
    if N < 0:
        raise ValueError("N must be >= 0")
    adj = g.adjacency()
    vec = {u: 1}
    out = [1 if u == v else 0]
    for _ in range(N):
        nxt: dict[str, int] = {}
        for w, cnt in vec.items():
            for x in adj[w]:
                nxt[x] = nxt.get(x, 0) + cnt
        vec = nxt
        out.append(vec.get(v, 0))
    return out


def count_first_returns(g: ExplicitGraph, u: str, N: int) -> list[int]:
    """Exact first-return counts f_uu(1..N): loops at u avoiding u internally."""
    if N < 0:
        raise ValueError("N must be >= 0")
    adj = g.adjacency()
    out: list[int] = []
    # vec counts paths from u that have not revisited u
    vec = {u: 1}
    for step in range(1, N + 1):
        nxt: dict[str, int] = {}
        returned = 0
        for w, cnt in vec.items():
            for x in adj[w]:
                if x == u:
                    returned += cnt
                else:
                    nxt[x] = nxt.get(x, 0) + cnt
        out.append(returned)
        vec = nxt
    return out


def renewal_convolve(f: Sequence[int], N: int) -> list[int]:
    """p(0..N) from first-return counts via p(n) = sum_k f(k) p(n-k), p(0) = 1."""
    p = [1]
    for n in range(1, N + 1):
        p.append(sum(f[k - 1] * p[n - k] for k in range(1, min(n, len(f)) + 1)))
    return p


# ---------------------------------------------------------------------------
# literal enumeration (desk-scale cross-check)
# ---------------------------------------------------------------------------


class BudgetExceeded(Exception):
    pass


def enumerate_paths(g: ExplicitGraph, u: str, v: str, n: int,
                    budget: int = ENUMERATION_BUDGET) -> int:
    """Count length-n paths from u to v by walking each one."""
    adj = g.adjacency()
    walked = 0

    def walk(w: str, remaining: int) -> int:
        nonlocal walked
        walked += 1
        if walked > budget:
            raise BudgetExceeded(f"more than {budget} path steps")
        if remaining == 0:
            return 1 if w == v else 0
        return sum(walk(x, remaining - 1) for x in adj[w])

    return walk(u, n)


def enumerate_first_returns(g: ExplicitGraph, u: str, n: int,
                            budget: int = ENUMERATION_BUDGET) -> int:
    """Count length-n first-return loops at u by walking each path."""
    adj = g.adjacency()
    walked = 0

    def walk(w: str, remaining: int) -> int:
        nonlocal walked
        walked += 1
        if walked > budget:
            raise BudgetExceeded(f"more than {budget} path steps")
        if remaining == 0:
            return 1 if w == u else 0
        total = 0
        for x in adj[w]:
            if x == u:
                total += 1 if remaining == 1 else 0
            else:
                total += walk(x, remaining - 1)
        return total

    return walk(u, n)


# ---------------------------------------------------------------------------
# spectrum-level tables and growth estimates
# ---------------------------------------------------------------------------


def table_from_spectrum(s: LoopSpectrum, N: int, period_lift: int = 1) -> PathCountTable:
    """Renewal table for the (optionally lifted) loop system of a spectrum.

    After a lift by p, first returns are supported on multiples of p with
    f(n p) = a(n).
    """
    p = period_lift
    f = [0] * N
    for n in range(1, s.N_max + 1):
        if n * p <= N:
            f[n * p - 1] = s.count(n)
    return PathCountTable(tuple(f), tuple(renewal_convolve(f, N)), source="renewal convolution")


def table_from_graph(g: ExplicitGraph, N: int) -> PathCountTable:
    f = count_first_returns(g, g.root, N)
    p = count_paths(g, g.root, g.root, N)
    return PathCountTable(tuple(f), tuple(p), source="graph enumeration")


@dataclass(frozen=True)
class GrowthEstimate:
    """Trailing (1/n) log p(n) samples; ``value`` is the last one."""

    samples: tuple[tuple[int, float], ...]
    value: float


def growth_rate(p: Sequence[int], window: int, period: int = 1) -> GrowthEstimate:
    """Exponential growth estimate from the last ``window`` usable counts.

    Only indices in the residue class n = 0 mod period with p(n) > 0 enter,
    so periodic zero counts never hit log 0.
    """
    usable = [n for n in range(1, len(p)) if n % period == 0 and p[n] > 0]
    if len(usable) < window:
        raise InsufficientData(f"need {window} usable counts, have {len(usable)}")
    tail = usable[-window:]
    samples = tuple((n, _ln_big(p[n]) / n) for n in tail)
    return GrowthEstimate(samples, samples[-1][1])
