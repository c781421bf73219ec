"""Check every monotone against random noisy channels and report the worst slack."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from nonuniformity.dist import apply_channel, random_distribution, random_noisy_channel
from nonuniformity.monotones import monotone_table


@dataclass(frozen=True)
class SurveyConfig:
    trials: int = 500
    max_dim: int = 6
    seed: int = 0


def run(cfg: SurveyConfig) -> dict[str, float]:
    rng = np.random.default_rng(cfg.seed)
    worst: dict[str, float] = {}
    for trial in range(cfg.trials):
        x = random_distribution(int(rng.integers(1, cfg.max_dim + 1)), rng, 0.25)
        channel = random_noisy_channel(x.dim, int(rng.integers(1, cfg.max_dim + 1)), cfg.seed * 100_000 + trial)
        before = monotone_table(x)
        after = monotone_table(apply_channel(channel, x))
        for b, a in zip(before, after):
            key = b.name if b.p is None else f"{b.name}[{b.p:g}]"
            if b.value == a.value:
                slack = 0.0
            else:
                slack = a.value - b.value
            worst[key] = max(worst.get(key, -np.inf), slack)
    return worst


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=SurveyConfig.trials)
    parser.add_argument("--seed", type=int, default=SurveyConfig.seed)
    args = parser.parse_args()
    for name, slack in sorted(run(SurveyConfig(trials=args.trials, seed=args.seed)).items()):
        print(f"{name:<16} max increase {slack: .3e}")


if __name__ == "__main__":
    main()
