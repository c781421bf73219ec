"""Convergence of smoothed n-copy entropies and certified rates for a binary state.

Writes one CSV row per n with the smoothed min/max entropy rates, the certified
distillation rate m_n/n, the two-stage formation cost ratio, and their gaps to
the asymptotic values. Use ``--n-max`` well beyond 14 to watch the gaps close.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from nonuniformity.dist import make_distribution, uniform
from nonuniformity.monotones import shannon_nonuniformity
from nonuniformity.smoothing import aep_rows, asymptotic_cost_experiment, asymptotic_rate_experiment


@dataclass(frozen=True)
class AepConfig:
    bias: str = "9/10"
    eps: str = "1/10"
    n_max: int = 14
    stride: int = 1


def run(cfg: AepConfig, out) -> None:
    p = Fraction(cfg.bias)
    x = make_distribution([p, 1 - p])
    eps = Fraction(cfg.eps)
    info = shannon_nonuniformity(x)
    entropy = math.log2(2) - info
    ns = list(range(1, cfg.n_max + 1, cfg.stride))
    start = time.perf_counter()
    aep = {n: (h0, hinf) for n, h0, hinf in aep_rows(x, eps, ns)}
    rate = {n: r for n, _, r in asymptotic_rate_experiment(x, make_distribution([1, 0]), eps, cfg.n_max).rows}
    cost = {n: r for n, _, r in asymptotic_cost_experiment(uniform(2), x, eps, cfg.n_max).rows}
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "h0_rate", "hinf_rate", "h0_gap", "distill_rate", "distill_gap", "cost_rate", "cost_gap"])
    for n in ns:
        h0, hinf = aep[n]
        writer.writerow([n, f"{h0:.6f}", f"{hinf:.6f}", f"{h0 - entropy:.6f}",
                         f"{rate[n]:.6f}", f"{info - rate[n]:.6f}", f"{cost[n]:.6f}", f"{cost[n] - info:.6f}"])
    print(f"# H={entropy:.6f} I={info:.6f} elapsed={time.perf_counter() - start:.2f}s", file=sys.stderr)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bias", default=AepConfig.bias)
    parser.add_argument("--eps", default=AepConfig.eps)
    parser.add_argument("--n-max", type=int, default=AepConfig.n_max)
    parser.add_argument("--stride", type=int, default=AepConfig.stride)
    parser.add_argument("--out", help="CSV path (default: stdout)")
    args = parser.parse_args()
    cfg = AepConfig(args.bias, args.eps, args.n_max, args.stride)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            run(cfg, fh)
    else:
        run(cfg, sys.stdout)


if __name__ == "__main__":
    main()
