"""Exact conversion: decisions, T-transform protocols, formation and distillation."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .dist import (
    Distribution,
    SharpSpec,
    as_fraction,
    tensor_product,
    uniform,
)
from .errors import DimensionMismatch, NotConvertible, ParseError
from .lorenz import WitnessReport, lambda_majorizes, lambda_witness, log2_fraction, noisy_majorizes


@dataclass(frozen=True)
class TTransform:
    """``w * Id + (1 - w) * swap(i, j)`` acting on two components."""

    i: int
    j: int
    w: Fraction

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError("a T-transform needs two distinct indices")
        if not Fraction(1, 2) <= self.w <= 1:
            raise ValueError(f"weight {self.w} outside [1/2, 1]")

    def apply(self, v: list[Fraction]) -> list[Fraction]:
        out = list(v)
        a, b = v[self.i], v[self.j]
        out[self.i] = self.w * a + (1 - self.w) * b
        out[self.j] = (1 - self.w) * a + self.w * b
        return out


@dataclass(frozen=True)
class Protocol:
    """Permutation then T-transforms on the common embedding dimension.

    ``pre_permutation[k]`` names the source slot moved to position ``k``.
    """

    d_common: int
    ancilla_in: int
    ancilla_out: int
    pre_permutation: tuple[int, ...]
    steps: tuple[TTransform, ...] = field(default_factory=tuple)

    def replay(self, x: Distribution) -> list[Fraction]:
        if x.dim * self.ancilla_in != self.d_common:
            raise DimensionMismatch(f"state of dimension {x.dim} does not embed into {self.d_common}")
        embedded = tensor_product(x, uniform(self.ancilla_in)).probs
        state = [embedded[k] for k in self.pre_permutation]
        for step in self.steps:
            state = step.apply(state)
        return state


@dataclass(frozen=True)
class CostYieldReport:
    lambda_: float
    kind: Literal["yield", "cost", "equivalence"]
    lower: float
    upper: float
    two_to_lambda: Fraction | None = None
    certified: bool = True


def decide(x: Distribution, y: Distribution) -> WitnessReport:
    return noisy_majorizes(x, y)


def _sorting_permutation(v: Sequence[Fraction]) -> tuple[int, ...]:
    # Stable: equal components keep their original order.
    return tuple(sorted(range(len(v)), key=lambda k: -v[k]))


def synthesize(x: Distribution, y: Distribution) -> Protocol:
    """Greedy T-transform protocol for ``x -> y`` on the LCM embedding.

    Each step pairs the first deficient level ``j_df`` with the last level
    before it that still carries excess. Moving ``min(excess, deficit)`` keeps
    the working vector sorted and majorizing the target, and it zeroes one
    discrepancy, so at most ``d - 1`` steps are needed.
    """
    if not decide(x, y).go:
        raise NotConvertible(f"{x} does not noisy-majorize {y}")
    d = math.lcm(x.dim, y.dim)
    anc_in, anc_out = d // x.dim, d // y.dim
    embedded = tensor_product(x, uniform(anc_in)).probs
    perm = _sorting_permutation(embedded)
    state = [embedded[k] for k in perm]
    target = sorted(tensor_product(y, uniform(anc_out)).probs, reverse=True)
    steps: list[TTransform] = []
    while state != target:
        j_df = next(k for k in range(d) if state[k] < target[k])
        j_ex = max(k for k in range(j_df) if state[k] > target[k])
        delta = min(state[j_ex] - target[j_ex], target[j_df] - state[j_df])
        step = TTransform(j_ex, j_df, 1 - delta / (state[j_ex] - state[j_df]))
        state = step.apply(state)
        steps.append(step)
    return Protocol(d, anc_in, anc_out, perm, tuple(steps))


def verify_protocol(p: Protocol, x: Distribution, y: Distribution) -> bool:
    if y.dim * p.ancilla_out != p.d_common:
        raise DimensionMismatch(f"target of dimension {y.dim} does not embed into {p.d_common}")
    if sorted(p.pre_permutation) != list(range(p.d_common)):
        raise DimensionMismatch("pre_permutation is not a permutation of the common dimension")
    out = sorted(p.replay(x), reverse=True)
    target = sorted(tensor_product(y, uniform(p.ancilla_out)).probs, reverse=True)
    return out == target


def distillable(x: Distribution) -> SharpSpec:
    """Largest sharp state reachable from ``x``; its nonuniformity is ``I0(x)``."""
    return SharpSpec(x.dim, x.support_size)


def formation_ratio(x: Distribution) -> Fraction:
    """``d * max(x)``, the exact value of ``2**I_inf(x)``."""
    return x.dim * max(x.probs)


def formation_cost(x: Distribution) -> float:
    """Smallest sharp-state nonuniformity that forms ``x``, namely ``I_inf(x)``."""
    return log2_fraction(formation_ratio(x))


def _bounds(x: Distribution, y: Distribution) -> tuple[Fraction, Fraction]:
    """Exact ``2**lower`` and ``2**upper`` for the sandwich on ``Lambda``."""
    i0 = lambda v: Fraction(v.dim, v.support_size)  # noqa: E731
    lower = i0(x) / formation_ratio(y)
    upper = min(i0(x) / i0(y), formation_ratio(x) / formation_ratio(y))
    return lower, upper


def lambda_bounds(x: Distribution, y: Distribution) -> tuple[Fraction, Fraction]:
    return _bounds(x, y)


def cost_or_yield(x: Distribution, y: Distribution) -> CostYieldReport:
    """``Lambda(x||y)`` as a yield or cost.

    ``2**Lambda`` is rational, so the conversion with a sharp state of exactly
    that size is re-decided as a cross-check (on curves, since the sharp state
    itself can have a huge dimension).
    """
    ratio = lambda_witness(x, y).two_to_lambda
    lower, upper = _bounds(x, y)
    kind = "yield" if ratio > 1 else "cost" if ratio < 1 else "equivalence"
    certified = lambda_majorizes(x, y, ratio)
    return CostYieldReport(
        lambda_=log2_fraction(ratio),
        kind=kind,
        lower=log2_fraction(lower),
        upper=log2_fraction(upper),
        two_to_lambda=ratio,
        certified=certified and lower <= ratio <= upper,
    )


# ---- protocol files ---------------------------------------------------------

def permutation_to_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        k = start
        while not seen[k]:
            seen[k] = True
            cycle.append(k)
            k = perm[k]
        cycles.append(tuple(cycle))
    return cycles


def cycles_to_permutation(cycles: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    perm = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            perm[a] = b
    return tuple(perm)


def format_protocol(p: Protocol) -> str:
    cycles = "".join("(" + " ".join(str(k) for k in c) + ")" for c in permutation_to_cycles(p.pre_permutation))
    lines = [
        "d_common,ancilla_in,ancilla_out",
        f"{p.d_common},{p.ancilla_in},{p.ancilla_out}",
        f"perm {cycles or '()'}",
    ]
    lines += [f"{s.i},{s.j},{s.w}" for s in p.steps]
    return "\n".join(lines) + "\n"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_protocol(text: str) -> Protocol:
    lines = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) < 3 or lines[0][1].replace(" ", "") != "d_common,ancilla_in,ancilla_out":
        raise ParseError("missing header 'd_common,ancilla_in,ancilla_out'", line=1, column=1)
    try:
        d_common, anc_in, anc_out = (int(t) for t in lines[1][1].split(","))
    except ValueError:
        raise ParseError("expected three integers", line=lines[1][0], column=1, token=lines[1][1]) from None
    n, perm_line = lines[2]
    if not perm_line.startswith("perm"):
        raise ParseError("expected 'perm' line with a cycle list", line=n, column=1, token=perm_line[:10])
    cycles = []
    for body in _CYCLE.findall(perm_line):
        if body.strip():
            cycles.append(tuple(int(t) for t in body.split()))
    steps = []
    for n, line in lines[3:]:
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError("expected 'i,j,w'", line=n, column=1, token=line)
        try:
            steps.append(TTransform(int(parts[0]), int(parts[1]), as_fraction(parts[2])))
        except ValueError:
            raise ParseError("bad T-transform", line=n, column=1, token=line) from None
    return Protocol(d_common, anc_in, anc_out, cycles_to_permutation(cycles, d_common), tuple(steps))
