"""Walk through the four-outcome catalysis example end to end.

Prints the failed direct conversion, the trumping witness, the catalyst check
and the synthesized protocol on the joint system.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from nonuniformity.catalysis import noisy_trumps, render_trumping_report, verify_catalyst
from nonuniformity.conversion import decide, format_protocol, synthesize, verify_protocol
from nonuniformity.dist import make_distribution, tensor_product


@dataclass(frozen=True)
class DemoConfig:
    source: tuple[str, ...] = ("1/2", "1/4", "1/4", "0")
    target: tuple[str, ...] = ("4/5", "1/5")
    catalyst: tuple[str, ...] = ("3/5", "2/5")


def run(cfg: DemoConfig) -> None:
    x, y, z = (make_distribution(v) for v in (cfg.source, cfg.target, cfg.catalyst))
    direct = decide(x, y)
    print(f"direct x -> y: {direct.decision} (delta {direct.delta}, first failing elbow {direct.failing_k})")
    print(render_trumping_report(noisy_trumps(x, y)))
    print(f"catalyst {z} works: {verify_catalyst(x, y, z)}")
    xz, yz = tensor_product(x, z), tensor_product(y, z)
    if decide(xz, yz).go:
        protocol = synthesize(xz, yz)
        print(f"protocol on the joint system ({len(protocol.steps)} steps, replays: {verify_protocol(protocol, xz, yz)}):")
        print(format_protocol(protocol), end="")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--catalyst", help="comma-separated catalyst components")
    args = parser.parse_args()
    cfg = DemoConfig() if not args.catalyst else DemoConfig(catalyst=tuple(args.catalyst.split(",")))
    run(cfg)


if __name__ == "__main__":
    main()
