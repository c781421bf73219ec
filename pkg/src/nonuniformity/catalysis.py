"""Catalytic conversion: noisy-trumping decisions and the Lambda_cat witness."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from .conversion import CostYieldReport, decide, formation_ratio, lambda_bounds
from .dist import Distribution, SharpSpec, tensor_product
from .lorenz import log2_fraction
from .monotones import renyi_nonuniformity

TOLERANCE = 1e-9
POSITIVE_GRID = tuple(1e-3 * 10 ** (k / 8) for k in range(49))
REFINE_WIDTH = 1e-6
_GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class TrumpingReport:
    decision: Literal["trumps", "not"]
    lambda_cat: float
    argmin_p: float
    variant: Literal["standard", "strong"]
    boundary: bool
    worst: tuple[tuple[float, float], ...]

    @property
    def trumps(self) -> bool:
        return self.decision == "trumps"


def _golden_min(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    a, b = lo, hi
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > REFINE_WIDTH:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _gap_function(x: Distribution, y: Distribution) -> Callable[[float], float]:
    def gap(p: float) -> float:
        ix, iy = renyi_nonuniformity(x, p), renyi_nonuniformity(y, p)
        if math.isinf(iy):
            return -math.inf if not math.isinf(ix) else 0.0
        return ix - iy
    return gap


def _scan(x: Distribution, y: Distribution, grid: list[float], variant: str) -> TrumpingReport:
    gap = _gap_function(x, y)
    values = [(p, gap(p)) for p in grid]
    best_index = min(range(len(values)), key=lambda k: values[k][1])
    best_p, best = values[best_index]
    # Refine between the finite neighbours of the coarse minimum.
    if math.isfinite(best_p) and math.isfinite(best):
        left = values[best_index - 1][0] if best_index > 0 else best_p
        right = values[best_index + 1][0] if best_index + 1 < len(values) else best_p
        lo, hi = max(left, -1e3), min(right, 1e3)
        if math.isfinite(lo) and math.isfinite(hi) and hi - lo > REFINE_WIDTH and lo * hi >= 0:
            p, v = _golden_min(gap, lo, hi)
            if v < best:
                best_p, best = p, v
    worst = tuple(sorted(values, key=lambda pv: pv[1])[:3])
    # Orders 0 and infinity are rational comparisons; settle them exactly.
    exact_fail = Fraction(x.dim, x.support_size) < Fraction(y.dim, y.support_size) or (
        formation_ratio(x) < formation_ratio(y)
    )
    trumps = best >= -TOLERANCE and not exact_fail
    return TrumpingReport(
        decision="trumps" if trumps else "not",
        lambda_cat=best,
        argmin_p=best_p,
        variant=variant,
        boundary=abs(best) <= TOLERANCE,
        worst=worst,
    )


def _standard_grid() -> list[float]:
    return [0.0, *POSITIVE_GRID, math.inf]


def noisy_trumps(x: Distribution, y: Distribution) -> TrumpingReport:
    """Decide noisy-trumping from ``inf_{p >= 0} I_p(x) - I_p(y)`` on a log grid."""
    return _scan(x, y, _standard_grid(), "standard")


def strong_noisy_trumps(x: Distribution, y: Distribution) -> TrumpingReport:
    """Strong variant: negative orders join the grid when ``x`` has full support."""
    if x.has_zeros:
        return _scan(x, y, _standard_grid(), "strong")
    negative = [-p for p in reversed(POSITIVE_GRID)]
    return _scan(x, y, [-math.inf, *negative, *_standard_grid()], "strong")


def catalytic_cost_or_yield(x: Distribution, y: Distribution) -> CostYieldReport:
    report = noisy_trumps(x, y)
    value = report.lambda_cat
    lower, upper = lambda_bounds(x, y)
    if abs(value) <= TOLERANCE:
        kind = "equivalence"
    else:
        kind = "yield" if value > 0 else "cost"
    low, up = log2_fraction(lower), log2_fraction(upper)
    return CostYieldReport(
        lambda_=value,
        kind=kind,
        lower=low,
        upper=up,
        two_to_lambda=None,
        certified=low - TOLERANCE <= value <= up + TOLERANCE,
    )


def sharp_catalyst_useless_check(x: Distribution, y: Distribution, s: SharpSpec) -> bool:
    sd = s.as_distribution()
    return decide(tensor_product(x, sd), tensor_product(y, sd)).decision == decide(x, y).decision


def verify_catalyst(x: Distribution, y: Distribution, z: Distribution) -> bool:
    return decide(tensor_product(x, z), tensor_product(y, z)).go


def _fmt_p(p: float) -> str:
    return "inf" if p == math.inf else "-inf" if p == -math.inf else f"{p:.6g}"


def render_trumping_report(report: TrumpingReport, digits: int = 9) -> str:
    name = "Lambda_cat" if report.variant == "standard" else "Lambda_cat_strong"
    lines = [
        f"decision: {report.decision}" + (" (boundary)" if report.boundary else ""),
        f"{name}: {report.lambda_cat:.{digits}g}",
        f"argmin p: {_fmt_p(report.argmin_p)}",
        "worst grid points:",
    ]
    lines += [f"  p={_fmt_p(p)}  gap={v:.{digits}g}" for p, v in report.worst]
    return "\n".join(lines)
