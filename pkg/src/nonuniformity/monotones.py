"""Nonuniformity monotones and related Schur-convex functions.

Logarithms are base 2 everywhere except in :func:`klimesh_f`, which uses the
natural log. Zero components follow ``0 log 0 = 0`` and ``0**p = inf`` for
``p < 0``, so negative orders diverge on states with zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np

from .dist import Distribution, ExtReal, Rational
from .errors import DimensionMismatch
from .lorenz import build_curve, eval_curve

Order = Union[float, int, Fraction]


@dataclass(frozen=True)
class MonotoneValue:
    name: str
    p: Optional[float]
    value: ExtReal


def parse_order(text: str) -> float:
    """Parse an order such as ``2``, ``1/2``, ``inf`` or ``-inf``."""
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "oo"):
        return math.inf
    if t in ("-inf", "-infinity", "-oo"):
        return -math.inf
    return float(Fraction(t))


def _sgn(p: float) -> int:
    return -1 if p < 0 else 1


def _log2_sum_exp2(exponents: np.ndarray) -> float:
    top = float(np.max(exponents))
    return top + math.log2(float(np.sum(np.exp2(exponents - top))))


def shannon_nonuniformity(x: Distribution) -> float:
    p = x.as_floats()
    p = p[p > 0]
    return math.log2(x.dim) + float(np.sum(p * np.log2(p)))


def renyi_nonuniformity(x: Distribution, p: Order) -> ExtReal:
    """Order-``p`` Renyi nonuniformity for any real or infinite ``p``.

    Evaluated as ``sgn(p) * (log d + log(sum x_i**p) / (p - 1))`` in log space so
    large ``|p|`` does not overflow.
    """
    p = float(p)
    d = x.dim
    probs = x.as_floats()
    if p == 0:
        return math.log2(d) - math.log2(x.support_size)
    if p == 1:
        return shannon_nonuniformity(x)
    if p == math.inf:
        return math.log2(d) + math.log2(float(max(x.probs)))
    if p < 0 and x.has_zeros:
        return math.inf
    if p == -math.inf:
        return -(math.log2(d) + math.log2(float(min(x.probs))))
    support = probs[probs > 0]
    log_sum = _log2_sum_exp2(p * np.log2(support))
    return _sgn(p) * (math.log2(d) + log_sum / (p - 1))


def tsallis_nonuniformity(x: Distribution, p: Order) -> ExtReal:
    """``sgn(p) / (p - 1) * (sum_i x_i**p d**(p-1) - 1)`` for ``p`` not 0 or 1."""
    p = float(p)
    if p in (0.0, 1.0) or not math.isfinite(p):
        raise ValueError(f"Tsallis order must be finite and not 0 or 1, got {p}")
    if p < 0 and x.has_zeros:
        return math.inf
    d = x.dim
    scaled = d * x.as_floats()
    scaled = scaled[scaled > 0]
    power_mean = float(np.sum(scaled ** p)) / d
    return _sgn(p) / (p - 1) * (power_mean - 1)


def burg_nonuniformity(x: Distribution) -> ExtReal:
    """Relative entropy of the uniform state to ``x``."""
    if x.has_zeros:
        return math.inf
    return -math.log2(x.dim) - float(np.mean(np.log2(x.as_floats())))


def gini(x: Distribution) -> Fraction:
    """Area between the Lorenz curve and the diagonal."""
    d = x.dim
    xs = sorted(x.probs, reverse=True)
    return Fraction(d - 1, 2 * d) - sum((i * xs[i] for i in range(1, d)), Fraction(0)) / d


def schutz(x: Distribution) -> Fraction:
    """Largest vertical gap between the Lorenz curve and the diagonal."""
    c = build_curve(x)
    return max(v - u for u, v in c.breakpoints)


def amato(x: Distribution) -> float:
    d = x.dim
    return float(np.sum(np.sqrt(1.0 / d**2 + x.as_floats() ** 2)))


def geometric(x: Distribution) -> float:
    """``1 - d * (prod x_i)**(1/d)``, computed through the mean log."""
    if x.has_zeros:
        return 1.0
    return 1.0 - x.dim * math.exp(float(np.mean(np.log(x.as_floats()))))


def lorenz_height_monotone(x: Distribution, u: Rational) -> Fraction:
    return eval_curve(build_curve(x), u)


def relative_entropy(x: Distribution, q: Distribution, p: Order) -> ExtReal:
    """Order-``p`` relative Renyi entropy ``H_p(x || q)``; ``p = 1`` is Kullback-Leibler."""
    if x.dim != q.dim:
        raise DimensionMismatch(f"dimensions {x.dim} and {q.dim} differ")
    p = float(p)
    xs, qs = x.as_floats(), q.as_floats()
    on_x = xs > 0
    if p == 0:
        mass = float(np.sum(qs[on_x]))
        return math.inf if mass == 0 else -math.log2(mass)
    if p == 1:
        if np.any(on_x & (qs == 0)):
            return math.inf
        return float(np.sum(xs[on_x] * np.log2(xs[on_x] / qs[on_x])))
    if p == math.inf:
        if np.any(on_x & (qs == 0)):
            return math.inf
        return math.log2(float(np.max(xs[on_x] / qs[on_x])))
    on_q = qs > 0
    if p == -math.inf:
        ratios = xs[on_q] / qs[on_q]
        low = float(np.min(ratios))
        return math.inf if low == 0 else -math.log2(low)
    if p > 1:
        if np.any(on_x & ~on_q):
            return math.inf
        keep = on_x
    elif p > 0:
        keep = on_x & on_q
    else:
        if np.any(~on_x & on_q):
            return math.inf
        keep = on_x & on_q
    if not np.any(keep):
        return math.inf
    log_sum = _log2_sum_exp2(p * np.log2(xs[keep]) + (1 - p) * np.log2(qs[keep]))
    return _sgn(p) / (p - 1) * log_sum


def klimesh_f(x: Distribution, r: float) -> ExtReal:
    """Catalysis witness family ``f_r`` (natural log)."""
    r = float(r)
    probs = x.as_floats()
    support = probs[probs > 0]
    if r <= 0 and x.has_zeros:
        return math.inf
    if r == 1:
        return float(np.sum(support * np.log(support)))
    if r == 0:
        return -float(np.sum(np.log(probs)))
    log_sum = _log2_sum_exp2(r * np.log2(support)) * math.log(2)
    return -log_sum if 0 < r < 1 else log_sum


DEFAULT_ORDERS = (-math.inf, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, math.inf)


def monotone_table(x: Distribution, orders: Optional[Iterable[float]] = None) -> list[MonotoneValue]:
    """Renyi rows for ``orders``; with no orders, the whole catalogue."""
    if orders is not None:
        return [MonotoneValue("renyi", p, renyi_nonuniformity(x, p)) for p in orders]
    rows = [MonotoneValue("renyi", p, renyi_nonuniformity(x, p)) for p in DEFAULT_ORDERS]
    rows += [MonotoneValue("tsallis", p, tsallis_nonuniformity(x, p)) for p in (-1.0, 0.5, 2.0)]
    rows += [
        MonotoneValue("shannon", None, shannon_nonuniformity(x)),
        MonotoneValue("burg", None, burg_nonuniformity(x)),
        MonotoneValue("gini", None, float(gini(x))),
        MonotoneValue("schutz", None, float(schutz(x))),
        MonotoneValue("amato", None, amato(x)),
        MonotoneValue("geometric", None, geometric(x)),
    ]
    return rows
