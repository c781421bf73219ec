"""Smoothed entropies under the trace distance and n-copy experiments.

Tensor powers are handled as multiplicity classes ``(value, count)`` so that
``x^{(x) n}`` for a binary ``x`` costs ``n + 1`` entries instead of ``2**n``.
Every smoothed quantity is first computed as an exact rational (a support
size ``k`` or a cap level ``t``) and only the final logarithm is a float.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Literal, Sequence, Union

import numpy as np

from .dist import Distribution, Rational, as_fraction
from .errors import BudgetExceeded, DimensionMismatch, InfeasibleEps, UnsupportedMetric
from .lorenz import build_curve, invert_curve, log2_fraction
from .monotones import shannon_nonuniformity

MAX_CLASSES = 200_000
Groups = list[tuple[Fraction, int]]


class Metric(str, Enum):
    TRACE = "trace"
    PURIFIED = "purified"


MetricLike = Union[Metric, str]


@dataclass(frozen=True)
class RateExperiment:
    x: Distribution
    y: Distribution
    epsilon: float
    n_max: int
    rows: tuple[tuple[int, int, float], ...]
    predicted_rate: float
    regime: Literal["rate", "cost", "yield"] = "rate"


def _metric(m: MetricLike) -> Metric:
    try:
        return Metric(m)
    except ValueError:
        raise UnsupportedMetric(f"unknown metric {m!r}") from None


def _trace_only(m: MetricLike) -> None:
    if _metric(m) is not Metric.TRACE:
        raise UnsupportedMetric("smoothed quantities are implemented for the trace distance only")


def _epsilon(eps: Rational) -> Fraction:
    e = as_fraction(eps)
    if e < 0 or e >= 1:
        raise InfeasibleEps(f"eps = {e} must lie in [0, 1)")
    return e


def distance(x: Distribution, y: Distribution, m: MetricLike = Metric.TRACE) -> float:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions {x.dim} and {y.dim} differ")
    if _metric(m) is Metric.TRACE:
        return float(sum((abs(a - b) for a, b in zip(x.probs, y.probs)), Fraction(0)) / 2)
    fidelity = float(np.sum(np.sqrt(x.as_floats() * y.as_floats())))
    return math.sqrt(max(0.0, 1.0 - min(fidelity, 1.0) ** 2))


# ---- multiplicity classes ---------------------------------------------------

def groups_of(x: Distribution) -> Groups:
    counts: dict[Fraction, int] = defaultdict(int)
    for p in x.probs:
        counts[p] += 1
    return sorted(counts.items(), key=lambda vc: -vc[0])


def group_product(a: Groups, b: Groups, budget: int = MAX_CLASSES) -> Groups:
    counts: dict[Fraction, int] = defaultdict(int)
    for va, ca in a:
        for vb, cb in b:
            counts[va * vb] += ca * cb
    if len(counts) > budget:
        raise BudgetExceeded(f"{len(counts)} multiplicity classes exceed the budget of {budget}")
    return sorted(counts.items(), key=lambda vc: -vc[0])


def group_power(x: Distribution, n: int, budget: int = MAX_CLASSES) -> Groups:
    out: Groups = [(Fraction(1), 1)]
    base = groups_of(x)
    for _ in range(n):
        out = group_product(out, base, budget)
    return out


def _group_dim(groups: Groups) -> int:
    return sum(c for _, c in groups)


def smooth_support(groups: Groups, eps: Fraction) -> int:
    """Smallest ``k`` whose top-``k`` mass reaches ``1 - eps``."""
    need = 1 - eps
    mass, count = Fraction(0), 0
    for v, c in groups:
        if mass >= need:
            break
        if v == 0:
            break
        if mass + c * v >= need:
            return count + math.ceil((need - mass) / v)
        mass += c * v
        count += c
    return count


def smooth_max_level(groups: Groups, eps: Fraction) -> Fraction:
    """Lowest cap ``t`` on the largest component within trace distance ``eps``.

    Any state ``eps``-close keeps at least ``S_k - eps`` on the top ``k`` slots,
    so ``t >= (S_k - eps) / k``; capping the top at that level and pouring the
    removed mass into the rest attains it, unless the cap falls below ``1/d``.
    """
    best = Fraction(1, _group_dim(groups))
    mass, count = Fraction(0), 0
    for v, c in groups:
        # (mass + j v - eps) / (count + j) is monotone in j, so ends suffice.
        for j in (1, c):
            cand = (mass + j * v - eps) / (count + j)
            if cand > best:
                best = cand
        mass += c * v
        count += c
    return best


# ---- single-shot smoothed quantities ----------------------------------------

def h0_eps(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> float:
    _trace_only(metric)
    return math.log2(smooth_support(groups_of(x), _epsilon(eps)))


def i0_eps(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> float:
    return math.log2(x.dim) - h0_eps(x, eps, metric)


def iinf_eps(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> float:
    """Smoothed max-nonuniformity by water-filling; zero once the ball holds the uniform state."""
    _trace_only(metric)
    return log2_fraction(x.dim * smooth_max_level(groups_of(x), _epsilon(eps)))


def j0_eps(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> float:
    """``-log2 u0`` where ``u0`` is where the Lorenz curve first reaches ``1 - eps``."""
    _trace_only(metric)
    u0 = invert_curve(build_curve(x), 1 - _epsilon(eps))
    return -log2_fraction(u0)


def approx_formation(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> float:
    return iinf_eps(x, eps, metric)


def approx_distill(x: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE) -> tuple[float, float]:
    """``(achievable, optimal)``: ``I0^eps(x)`` and ``J0^eps(x)``."""
    return i0_eps(x, eps, metric), j0_eps(x, eps, metric)


def approx_convert_check(
    x: Distribution, y: Distribution, eps: Rational, metric: MetricLike = Metric.TRACE
) -> Literal["sufficient", "necessary-violated", "undetermined"]:
    """Sufficient and necessary conditions for ``eps``-approximate conversion, compared exactly."""
    _trace_only(metric)
    e = _epsilon(eps)
    gx, gy = groups_of(x), groups_of(y)
    distillable = Fraction(x.dim, smooth_support(gx, e / 2))
    formation_half = y.dim * smooth_max_level(gy, e / 2)
    if distillable >= formation_half:
        return "sufficient"
    if y.dim * smooth_max_level(gy, e) > x.dim * max(x.probs):
        return "necessary-violated"
    return "undetermined"


# ---- n-copy experiments -----------------------------------------------------

def _floor_log2(q: Fraction) -> int:
    return (q.numerator // q.denominator).bit_length() - 1


def _ceil_log2(q: Fraction) -> int:
    k = _floor_log2(q)
    return k if Fraction(2) ** k == q else k + 1


def aep_rows(x: Distribution, eps: Rational, ns: Sequence[int]) -> list[tuple[int, float, float]]:
    """``(n, H0^eps(x^n)/n, Hinf^eps(x^n)/n)`` with both entropies smoothed by ``eps``."""
    e = _epsilon(eps)
    rows = []
    for n in ns:
        g = group_power(x, n)
        h0 = math.log2(smooth_support(g, e))
        hinf = -log2_fraction(smooth_max_level(g, e))
        rows.append((n, h0 / n, hinf / n))
    return rows


def asymptotic_rate_experiment(x: Distribution, y: Distribution, eps: Rational, n_max: int) -> RateExperiment:
    """Certified copies ``m_n`` of ``y`` obtainable from ``n`` copies of ``x``.

    ``m_n`` is the largest ``m`` with ``I0^{eps/2}(x^n) >= Iinf^{eps/2}(y^m)``,
    which guarantees an ``eps``-approximate conversion; it is a lower bound on
    the optimum. Since ``n + 1`` copies can always be reduced to ``n``, the
    running maximum is also certified and keeps ``m_n`` non-decreasing.
    """
    e = _epsilon(eps)
    i_y = shannon_nonuniformity(y)
    if i_y <= 0:
        raise ValueError("the target must have positive nonuniformity")
    half = e / 2
    gx = [(Fraction(1), 1)]
    base_x = groups_of(x)
    y_powers: list[Groups] = [[(Fraction(1), 1)]]
    base_y = groups_of(y)
    rows = []
    best = 0
    for n in range(1, n_max + 1):
        gx = group_product(gx, base_x)
        distillable = Fraction(x.dim ** n, smooth_support(gx, half))
        m = best
        while True:
            while len(y_powers) <= m + 1:
                y_powers.append(group_product(y_powers[-1], base_y))
            nxt = y_powers[m + 1]
            if y.dim ** (m + 1) * smooth_max_level(nxt, half) <= distillable:
                m += 1
            else:
                break
        best = max(best, m)
        rows.append((n, best, best / n))
    return RateExperiment(x, y, float(e), n_max, tuple(rows), shannon_nonuniformity(x) / i_y)


def asymptotic_cost_experiment(x: Distribution, y: Distribution, eps: Rational, n_max: int) -> RateExperiment:
    """Pure bits paid (cost) or gained (yield) converting ``x^n`` into ``y^n``.

    Two stages with error ``eps/2`` each: distil ``k_n = floor(I0^{eps/2}(x^n))``
    pure bits, then form ``y^n`` from ``l_n = ceil(Iinf^{eps/2}(y^n))`` pure bits.
    The cost is ``l_n - k_n`` and the yield ``k_n - l_n`` (floored at zero).
    """
    e = _epsilon(eps)
    half = e / 2
    gap = shannon_nonuniformity(x) - shannon_nonuniformity(y)
    regime = "yield" if gap >= 0 else "cost"
    gx: Groups = [(Fraction(1), 1)]
    gy: Groups = [(Fraction(1), 1)]
    base_x, base_y = groups_of(x), groups_of(y)
    rows = []
    for n in range(1, n_max + 1):
        gx = group_product(gx, base_x)
        gy = group_product(gy, base_y)
        k_n = _floor_log2(Fraction(x.dim ** n, smooth_support(gx, half)))
        l_n = _ceil_log2(y.dim ** n * smooth_max_level(gy, half))
        m = max(l_n - k_n, 0) if regime == "cost" else max(k_n - l_n, 0)
        rows.append((n, m, m / n))
    return RateExperiment(x, y, float(e), n_max, tuple(rows), abs(gap), regime)


def experiment_to_csv(exp: RateExperiment, digits: int = 9) -> str:
    lines = ["n,m_n,ratio,predicted"]
    for n, m, ratio in exp.rows:
        lines.append(f"{n},{m},{ratio:.{digits}g},{exp.predicted_rate:.{digits}g}")
    return "\n".join(lines) + "\n"
