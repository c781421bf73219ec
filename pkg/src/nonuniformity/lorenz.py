"""Lorenz curves and the exact conversion witnesses read off them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .dist import Distribution, Rational, as_fraction
from .errors import OutOfDomain, OutOfRange


@dataclass(frozen=True)
class LorenzCurve:
    """Concave piecewise-linear curve through ``(k/d, S_k)`` for ``k = 0..d``."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    source_dim: int

    @property
    def heights(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.breakpoints)

    def slopes(self) -> list[Fraction]:
        d = self.source_dim
        h = self.heights
        return [d * (h[k + 1] - h[k]) for k in range(d)]


@dataclass(frozen=True)
class WitnessReport:
    decision: Literal["go", "no-go"]
    delta: Fraction
    failing_k: Optional[int]
    lambda_: float
    two_to_lambda: Fraction

    @property
    def go(self) -> bool:
        return self.decision == "go"


def _ky_fan_sums(x: Distribution) -> list[Fraction]:
    sums = [Fraction(0)]
    for p in sorted(x.probs, reverse=True):
        sums.append(sums[-1] + p)
    return sums


def build_curve(x: Distribution) -> LorenzCurve:
    d = x.dim
    sums = _ky_fan_sums(x)
    return LorenzCurve(tuple((Fraction(k, d), sums[k]) for k in range(d + 1)), d)


def eval_curve(c: LorenzCurve, u: Rational) -> Fraction:
    u = as_fraction(u)
    if u < 0 or u > 1:
        raise OutOfDomain(f"u = {u} lies outside [0, 1]")
    d = c.source_dim
    k = min(math.floor(u * d), d - 1)
    u0, v0 = c.breakpoints[k]
    _, v1 = c.breakpoints[k + 1]
    return v0 + (u - u0) * d * (v1 - v0)


def invert_curve(c: LorenzCurve, h: Rational) -> Fraction:
    """Smallest ``u`` with ``L(u) >= h``."""
    h = as_fraction(h)
    if h < 0 or h > 1:
        raise OutOfDomain(f"height {h} lies outside [0, 1]")
    if h == 0:
        return Fraction(0)
    d = c.source_dim
    heights = c.heights
    k = next(k for k in range(1, d + 1) if heights[k] >= h)
    step = heights[k] - heights[k - 1]
    return Fraction(k - 1, d) + (h - heights[k - 1]) / (d * step)


def ky_fan(x: Distribution, k: int) -> Fraction:
    if not 0 <= k <= x.dim:
        raise OutOfRange(f"k = {k} outside 0..{x.dim}")
    return _ky_fan_sums(x)[k]


def tail_length(c: LorenzCurve) -> Fraction:
    """Length of the flat stretch where the curve sits at height 1."""
    return 1 - invert_curve(c, 1)


def on_ramp_slope(c: LorenzCurve) -> Fraction:
    return c.slopes()[0]


def noisy_equivalent(x: Distribution, y: Distribution) -> bool:
    cx, cy = build_curve(x), build_curve(y)
    grid = {Fraction(k, x.dim) for k in range(x.dim + 1)} | {Fraction(k, y.dim) for k in range(y.dim + 1)}
    return all(eval_curve(cx, u) == eval_curve(cy, u) for u in grid)


def _elbow_gaps(x: Distribution, y: Distribution) -> list[Fraction]:
    """``L_x(k/d_y) - L_y(k/d_y)`` for ``k = 1..d_y``."""
    cx = build_curve(x)
    sy = _ky_fan_sums(y)
    return [eval_curve(cx, Fraction(k, y.dim)) - sy[k] for k in range(1, y.dim + 1)]


def _two_to_lambda(x: Distribution, y: Distribution) -> Fraction:
    cx, cy = build_curve(x), build_curve(y)
    heights = {h for h in cx.heights[1:]} | {h for h in cy.heights[1:]}
    return min(invert_curve(cy, h) / invert_curve(cx, h) for h in heights)


def log2_fraction(r: Fraction) -> float:
    if r <= 0:
        return -math.inf
    return math.log2(r.numerator) - math.log2(r.denominator)


def noisy_majorizes(x: Distribution, y: Distribution) -> WitnessReport:
    """Decide ``x -> y`` under noisy operations with witnesses.

    Only the ``d_y - 1`` interior elbows of ``y`` need checking since ``L_x``
    is concave and ``L_y`` is linear between its elbows.
    """
    gaps = _elbow_gaps(x, y)
    delta = min(gaps)
    failing = None if delta >= 0 else 1 + gaps.index(delta)
    ratio = _two_to_lambda(x, y)
    return WitnessReport(
        decision="go" if delta >= 0 else "no-go",
        delta=delta,
        failing_k=failing,
        lambda_=log2_fraction(ratio),
        two_to_lambda=ratio,
    )


def lambda_witness(x: Distribution, y: Distribution) -> WitnessReport:
    """Largest ``lambda`` with ``L_x(u) >= L_y(2**lambda * u)`` for all ``u``.

    ``2**lambda`` is the minimum over the union of elbow heights ``h`` of
    ``L_y^{-1}(h) / L_x^{-1}(h)``; on each interval between consecutive heights
    both inverses are linear, so the ratio is monotone there.
    """
    return noisy_majorizes(x, y)


def lambda_majorizes(x: Distribution, y: Distribution, scale: Rational) -> bool:
    """Exact test of ``L_x(u) >= L_y(scale * u)`` for all ``u``.

    Equivalent to ``x -> y (x) s`` with ``2**I(s) = scale`` when ``scale >= 1`` and
    to ``x (x) s -> y`` with ``2**I(s) = 1/scale`` otherwise, without building
    the sharp state. The right side bends only at ``k / (d_y * scale)``.
    """
    c = as_fraction(scale)
    cx = build_curve(x)
    sy = _ky_fan_sums(y)
    return all(eval_curve(cx, min(Fraction(1), Fraction(k, y.dim) / c)) >= sy[k] for k in range(1, y.dim + 1))


def rescaled_histogram(x: Distribution, v: Rational) -> Fraction:
    v = as_fraction(v)
    if v < 0 or v >= 1:
        raise OutOfDomain(f"v = {v} lies outside [0, 1)")
    xs = sorted(x.probs, reverse=True)
    return x.dim * xs[math.floor(x.dim * v)]


def curve_to_csv(c: LorenzCurve, exact: bool = True) -> str:
    rows = ["u,v"]
    for u, v in c.breakpoints:
        rows.append(f"{u},{v}" if exact else f"{float(u)!r},{float(v)!r}")
    return "\n".join(rows) + "\n"
