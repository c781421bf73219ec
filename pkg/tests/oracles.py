"""Brute-force reference computations used to check the closed forms."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from nonuniformity.dist import Distribution, SharpSpec, tensor_product
from nonuniformity.lorenz import build_curve, eval_curve, noisy_equivalent


def truncation_by_search(x: Distribution, ratio: Fraction, max_dim: int = 200) -> Distribution:
    """First dimension ``d'`` whose stretched-curve state passes the equivalence check."""
    curve = build_curve(x)
    sharp = SharpSpec.from_ratio(ratio).as_distribution()
    for d_new in range(1, max_dim + 1):
        heights = [eval_curve(curve, min(Fraction(1), Fraction(j, d_new) / ratio)) for j in range(d_new + 1)]
        y = Distribution(tuple(heights[j] - heights[j - 1] for j in range(1, d_new + 1)))
        if noisy_equivalent(tensor_product(y, sharp), x):
            return y
    raise AssertionError("no truncation found")


def curve_dominates(x: Distribution, y: Distribution, scale: float) -> bool:
    """Float check of ``L_x(u) >= L_y(scale * u)`` on every elbow of either side."""
    cx, cy = build_curve(x), build_curve(y)
    us = {k / x.dim for k in range(x.dim + 1)} | {min(1.0, k / (y.dim * scale)) for k in range(y.dim + 1)}
    for u in us:
        lx = float(eval_curve(cx, Fraction(u)))
        ly = float(eval_curve(cy, Fraction(min(1.0, scale * u))))
        if lx < ly - 1e-12:
            return False
    return True


def lambda_by_bisection(x: Distribution, y: Distribution, tol: float = 1e-10) -> float:
    lo, hi = 2.0 ** -40, 2.0 ** 40
    while hi / lo > 1 + tol:
        mid = math.sqrt(lo * hi)
        if curve_dominates(x, y, mid):
            lo = mid
        else:
            hi = mid
    return math.log2(lo)


def simplex_grid(d: int, resolution: int) -> np.ndarray:
    """Integer points of ``{n in N^d : sum n = resolution}``."""
    if d == 1:
        return np.array([[resolution]])
    if d == 2:
        a = np.arange(resolution + 1)
        return np.stack([a, resolution - a], axis=1)
    rows = [(a, b, resolution - a - b) for a in range(resolution + 1) for b in range(resolution + 1 - a)]
    return np.array(rows)


def smoothing_by_grid(x_counts: np.ndarray, eps_count: int, resolution: int = 1000) -> tuple[int, int]:
    """Minimal support size and minimal largest component over the trace ball.

    ``x_counts`` and ``eps_count`` are in units of ``1 / resolution``.
    """
    grid = simplex_grid(len(x_counts), resolution)
    inside = np.abs(grid - x_counts).sum(axis=1) <= 2 * eps_count
    ball = grid[inside]
    return int((ball > 0).sum(axis=1).min()), int(ball.max(axis=1).min())


def permutations_mixture_majorizes(x, y) -> bool:
    """Equal-dimension majorization by sorted partial sums (textbook definition)."""
    xs = sorted(x, reverse=True)
    ys = sorted(y, reverse=True)
    return all(sum(xs[:k]) >= sum(ys[:k]) for k in range(1, len(xs) + 1))


def all_sharp_states(max_dim: int):
    for d in range(1, max_dim + 1):
        for du in range(1, d + 1):
            yield SharpSpec(d, du)


def product_index(*dims):
    return list(itertools.product(*(range(d) for d in dims)))
