"""Counting m-centred edges across all labelled trees on t vertices.

M(t, m) denotes the total number of m-centred edges summed over every
labelled tree on {1..t} (equivalently, the number of pairs (edge, tree)
with the edge m-centred in that tree).  Small t admits exact enumeration
over all t^(t-2) Prufer codes; beyond that a Monte Carlo estimate over
uniform codes is the tool.  Totals grow like t^(t-1), which overflows
fixed-width floats around t = 17, so estimates are carried in log scale:
``value_log = log(mean per-tree count) + (t-2) log t``.

``bound_sums`` evaluates the two comparison sums that bracket the mean
count shape, sum k^(-3/2) e^(-c1 m^2 / k) and its lower-bound companion,
without the t^(t-1) prefactor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as _k

__all__ = [
    "CensusResult",
    "enumerate_M",
    "enumerate_M_range",
    "estimate_M",
    "bound_sums",
    "census_row_to_text",
    "census_row_from_text",
]

_ENUM_MAX_T = 9  # 9^7 ~ 4.8M codes; the next step, 10^8, is past the budget


@dataclass(frozen=True)
class CensusResult:
    """One census cell: either an exact total or a sampled estimate.

    ``exact`` is set only by full enumeration (samples == 0).  Sampled
    cells carry ``value_log`` / ``std_error_log``: the log of
    mean x t^(t-2) and the delta-method standard error of that log
    (se(mean)/mean).  A zero sample mean gives value_log = -inf and
    std_error_log = nan.
    """

    t: int
    m: int
    samples: int
    exact: int | None
    value_log: float
    std_error_log: float

    @property
    def method(self) -> str:
        return "enumerate" if self.exact is not None else "estimate"

    @property
    def estimate(self) -> float | None:
        """mean x t^(t-2) in linear scale; None for enumerated cells.
        Overflows to inf for large t, use value_log there."""
        if self.samples == 0:
            return None
        try:
            return math.exp(self.value_log)
        except OverflowError:
            return math.inf

    @property
    def std_error(self) -> float | None:
        """Linear-scale standard error (delta method), None unless sampled."""
        est = self.estimate
        if est is None:
            return None
        return est * self.std_error_log


def _exact_result(t: int, m: int, total: int) -> CensusResult:
    vlog = math.log(total) if total > 0 else -math.inf
    return CensusResult(t=t, m=m, samples=0, exact=total,
                        value_log=vlog, std_error_log=0.0)


def enumerate_M_range(t: int, m: int, lo: int, hi: int) -> int:
    """Exact centred-edge total over Prufer codes with odometer index in
    [lo, hi).  The code space for t splits into disjoint ranges whose
    partial sums add up to enumerate_M; callers may fan these out."""
    if t < 3:
        raise ValueError("code ranges need t >= 3")
    if not (0 <= lo <= hi <= t ** (t - 2)):
        raise ValueError("bad code range")
    if lo == hi:
        return 0
    return int(_k.centred_count_all_codes(t, m, lo, hi))


def enumerate_M(t: int, m: int) -> CensusResult:
    """M(t, m) by iterating every Prufer code.

    Refuses t > 9: the code space is t^(t-2) and 10^8 decodes is past
    this function's budget.
    """
    if t < 1 or m < 1:
        raise ValueError("t and m must be positive")
    if t > _ENUM_MAX_T:
        raise ValueError(
            f"enumerate_M refused: t={t} > {_ENUM_MAX_T} "
            f"(t^(t-2) = {t ** (t - 2)} trees exceeds the enumeration budget)")
    if t == 1:
        return _exact_result(t, m, 0)
    if t == 2:
        # single tree, single edge; both deletion sides are lone vertices
        return _exact_result(t, m, 1 if m == 1 else 0)
    n_codes = t ** (t - 2)
    # fixed-size chunks keep each kernel call interruptible and give the
    # partition the concurrency story relies on
    chunk = 1 << 18
    total = 0
    for lo in range(0, n_codes, chunk):
        total += enumerate_M_range(t, m, lo, min(lo + chunk, n_codes))
    return _exact_result(t, m, total)


def estimate_M(t: int, m: int, samples: int, stream: np.random.Generator,
               ) -> CensusResult:
    """Monte Carlo estimate of M(t, m) from uniform Prufer codes.

    The estimator is (sample mean of per-tree centred counts) x t^(t-2),
    unbiased because codes are in bijection with trees.  Kept in log
    scale; see CensusResult.
    """
    if m < 1 or m >= t:
        raise ValueError("need 1 <= m < t")
    if samples < 1:
        raise ValueError("samples must be positive")
    if t > 10 ** 6:
        raise ValueError(f"estimate_M refused: t={t} > 10^6")
    if t == 2:
        count = 1 if m == 1 else 0
        vlog = math.log(count) + 0.0 if count else -math.inf
        return CensusResult(t=t, m=m, samples=samples, exact=None,
                            value_log=vlog,
                            std_error_log=0.0 if count else math.nan)
    # batch size balances kernel call overhead against peak memory
    batch = max(1, min(samples, max(1, 4_000_000 // t)))
    done = 0
    tot = 0
    totsq = 0
    while done < samples:
        b = min(batch, samples - done)
        codes = stream.integers(1, t + 1, size=(b, t - 2), dtype=np.int64)
        counts = _k.centred_counts_sampled(codes, t, m)
        tot += int(counts.sum())
        totsq += int((counts * counts).sum())
        done += b
    mean = tot / samples
    if mean == 0.0:
        return CensusResult(t=t, m=m, samples=samples, exact=None,
                            value_log=-math.inf, std_error_log=math.nan)
    if samples > 1:
        var = (totsq - samples * mean * mean) / (samples - 1)
        var = max(var, 0.0)
    else:
        var = 0.0
    se_mean = math.sqrt(var / samples)
    value_log = math.log(mean) + (t - 2) * math.log(t)
    return CensusResult(t=t, m=m, samples=samples, exact=None,
                        value_log=value_log, std_error_log=se_mean / mean)


def bound_sums(t: int, m: int, c1: float, c2: float) -> tuple[float, float]:
    """The two bracketing sums for the mean centred-count shape.

    upper_sum = sum_{k=m}^{floor(t/2)} k^(-3/2) exp(-c1 m^2 / k)
    lower_sum = sum_{k=ceil(c2 m^2)}^{floor(t/2)} k^(-3/2)

    Both are returned bare, without the t^(t-1) prefactor they multiply;
    an empty summation range gives 0.0.
    """
    if m < 1 or m >= t:
        raise ValueError("need 1 <= m < t")
    if not (c1 > 0 and c2 > 0):
        raise ValueError("constants must be positive")
    top = t // 2
    if m > top:
        upper = 0.0
    else:
        k = np.arange(m, top + 1, dtype=np.float64)
        upper = float(np.sum(k ** -1.5 * np.exp(-c1 * m * m / k)))
    # exact ceiling of c2*m^2 (Fraction sidesteps float-product rounding)
    lo = int(math.ceil(Fraction(c2) * m * m))
    if lo > top:
        lower = 0.0
    else:
        k = np.arange(max(lo, 1), top + 1, dtype=np.float64)
        lower = float(np.sum(k ** -1.5))
    return upper, lower


# ---------------------------------------------------------------------------
# Row serialization
# ---------------------------------------------------------------------------

def census_row_to_text(result: CensusResult) -> str:
    """One comma-separated row: t,m,method,value_log,std_error_log,samples."""
    return (f"{result.t},{result.m},{result.method},"
            f"{result.value_log!r},{result.std_error_log!r},{result.samples}\n")


def census_row_from_text(text: str) -> CensusResult:
    parts = text.strip().split(",")
    if len(parts) != 6:
        raise ValueError("census row needs 6 fields")
    t, m = int(parts[0]), int(parts[1])
    method = parts[2]
    vlog = float(parts[3])
    selog = float(parts[4])
    samples = int(parts[5])
    if method == "enumerate":
        if samples != 0:
            raise ValueError("enumerated rows carry samples=0")
        exact = 0 if vlog == -math.inf else round(math.exp(vlog))
        return CensusResult(t=t, m=m, samples=0, exact=exact,
                            value_log=vlog, std_error_log=selog)
    if method != "estimate":
        raise ValueError(f"unknown census method {method!r}")
    return CensusResult(t=t, m=m, samples=samples, exact=None,
                        value_log=vlog, std_error_log=selog)
