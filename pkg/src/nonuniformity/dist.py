"""Finite classical probability distributions with exact rational components.

Tensor products use row-major indexing: component ``i * d_y + j`` of
``x (x) y`` equals ``x[i] * y[j]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeComponent,
    NotNormalized,
    NotRealizable,
    ParseError,
    TooMuchTruncation,
)

# Extended reals are plain floats; math.inf and -math.inf cover the two tags.
ExtReal = float

Rational = Union[Fraction, int, str, float]


def as_fraction(value: Rational) -> Fraction:
    """Convert to an exact rational.

    Floats go through their shortest decimal repr, so ``0.1`` becomes ``1/10``
    rather than the binary approximation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, np.floating):
        return as_fraction(float(value))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


@dataclass(frozen=True)
class Distribution:
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.probs:
            raise NotNormalized("a distribution needs at least one component")
        for k, p in enumerate(self.probs):
            if p < 0:
                raise NegativeComponent(f"component {k} is negative: {p}")
        total = sum(self.probs, Fraction(0))
        if total != 1:
            raise NotNormalized(f"components sum to {total}, not 1")

    @property
    def dim(self) -> int:
        return len(self.probs)

    @property
    def support_size(self) -> int:
        return sum(1 for p in self.probs if p > 0)

    @property
    def has_zeros(self) -> bool:
        return any(p == 0 for p in self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probs)

    def __getitem__(self, k: int) -> Fraction:
        return self.probs[k]

    def as_floats(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs], dtype=float)

    def __str__(self) -> str:
        return format_distribution(self)


@dataclass(frozen=True)
class SharpSpec:
    """Sharp state: uniform on ``d_u`` of ``d`` outcomes."""

    d: int
    d_u: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.d_u < 1 or self.d_u > self.d:
            raise ValueError(f"need 1 <= d_u <= d, got d={self.d}, d_u={self.d_u}")

    @classmethod
    def from_ratio(cls, ratio: Rational) -> "SharpSpec":
        """Smallest sharp state with ``d / d_u`` equal to ``ratio`` (at least 1)."""
        r = as_fraction(ratio)
        if r < 1:
            raise ValueError(f"ratio {r} is below 1")
        return cls(r.numerator, r.denominator)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.d, self.d_u)

    def nonuniformity(self) -> float:
        return math.log2(self.d) - math.log2(self.d_u)

    def as_distribution(self) -> Distribution:
        w = Fraction(1, self.d_u)
        return Distribution(tuple([w] * self.d_u + [Fraction(0)] * (self.d - self.d_u)))


@dataclass(frozen=True)
class Channel:
    """Column-stochastic matrix; ``matrix[out][in]``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.matrix or not self.matrix[0]:
            raise DimensionMismatch("empty channel matrix")
        width = len(self.matrix[0])
        if any(len(row) != width for row in self.matrix):
            raise DimensionMismatch("ragged channel matrix")
        for c in range(width):
            col = [row[c] for row in self.matrix]
            if any(e < 0 for e in col):
                raise NegativeComponent(f"column {c} has a negative entry")
            if sum(col, Fraction(0)) != 1:
                raise NotNormalized(f"column {c} does not sum to 1")

    @property
    def in_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def out_dim(self) -> int:
        return len(self.matrix)

    @property
    def uniform_preserving(self) -> bool:
        target = Fraction(self.in_dim, self.out_dim)
        return all(sum(row, Fraction(0)) == target for row in self.matrix)


def make_distribution(probs: Iterable[Rational]) -> Distribution:
    return Distribution(tuple(as_fraction(p) for p in probs))


def sort_descending(x: Distribution) -> Distribution:
    return Distribution(tuple(sorted(x.probs, reverse=True)))


def tensor_product(x: Distribution, y: Distribution) -> Distribution:
    return Distribution(tuple(a * b for a in x.probs for b in y.probs))


def tensor_power(x: Distribution, n: int) -> Distribution:
    out = Distribution((Fraction(1),))
    for _ in range(n):
        out = tensor_product(out, x)
    return out


def marginalize(xAB: Distribution, dA: int, dB: int, keep: Literal["A", "B"] = "A") -> Distribution:
    if dA < 1 or dB < 1 or dA * dB != xAB.dim:
        raise DimensionMismatch(f"dimension {xAB.dim} is not {dA} x {dB}")
    p = xAB.probs
    if keep == "A":
        return Distribution(tuple(sum(p[i * dB:(i + 1) * dB], Fraction(0)) for i in range(dA)))
    if keep == "B":
        return Distribution(tuple(sum((p[i * dB + j] for i in range(dA)), Fraction(0)) for j in range(dB)))
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def uniform(d: int) -> Distribution:
    if d < 1:
        raise ValueError("dimension must be positive")
    return Distribution(tuple([Fraction(1, d)] * d))


def _truncation_ratio(amount) -> Fraction:
    if isinstance(amount, SharpSpec):
        return amount.ratio
    if isinstance(amount, tuple):
        a, b = amount
        return Fraction(as_fraction(a), as_fraction(b))
    return as_fraction(amount)


def truncate(x: Distribution, amount) -> Distribution:
    """Smallest-dimensional ``y`` with ``y (x) s_I`` noisy-equivalent to ``x``.

    ``amount`` fixes ``2**I`` exactly: a pair ``(a, b)`` meaning ``a/b``, a
    rational, or a :class:`SharpSpec`. Adjoining ``s_I`` squeezes a Lorenz curve
    by ``2**I`` along the horizontal axis, so the answer has curve
    ``v -> L_x(v / 2**I)``; its dimension is the least common denominator of the
    stretched slope changes.
    """
    from .lorenz import build_curve, eval_curve, noisy_equivalent

    ratio = _truncation_ratio(amount)
    if ratio < 1:
        raise TooMuchTruncation(f"2^I = {ratio} is below 1, so I is negative")
    if ratio > Fraction(x.dim, x.support_size):
        raise TooMuchTruncation(f"2^I = {ratio} exceeds 2^I0 = {Fraction(x.dim, x.support_size)}")
    xs = sorted(x.probs, reverse=True)
    d = x.dim
    denominators = [1]
    for k in range(1, d):
        if xs[k - 1] != xs[k]:
            u = ratio * Fraction(k, d)
            if u < 1:
                denominators.append(u.denominator)
    d_new = math.lcm(*denominators)
    curve = build_curve(x)
    heights = [eval_curve(curve, min(Fraction(1), Fraction(j, d_new) / ratio)) for j in range(d_new + 1)]
    y = Distribution(tuple(heights[j] - heights[j - 1] for j in range(1, d_new + 1)))
    if not noisy_equivalent(tensor_product(y, SharpSpec.from_ratio(ratio).as_distribution()), x):
        raise NotRealizable(f"no state of dimension {d_new} truncates {x} by 2^I = {ratio}")
    return y


def apply_channel(D: Channel, x: Distribution) -> Distribution:
    if D.in_dim != x.dim:
        raise DimensionMismatch(f"channel takes dimension {D.in_dim}, state has {x.dim}")
    return Distribution(tuple(sum((m * p for m, p in zip(row, x.probs)), Fraction(0)) for row in D.matrix))


def random_noisy_channel(d_in: int, d_out: int, seed: int) -> Channel:
    """Sample a uniform-preserving channel as ancilla, permutation mixture, marginal.

    The input is padded with a uniform ancilla up to ``lcm(d_in, d_out)``,
    shuffled by a random mixture of permutations with Dirichlet weights rounded
    to rationals, and then coarse-grained to ``d_out`` outcomes.
    """
    rng = np.random.default_rng(seed)
    big = math.lcm(d_in, d_out)
    pad_in, pad_out = big // d_in, big // d_out
    n_perms = int(rng.integers(1, min(big, 6) + 1))
    raw = rng.dirichlet(np.ones(n_perms))
    ints = [max(1, int(round(w * 1000))) for w in raw]
    total = sum(ints)
    matrix = [[Fraction(0)] * d_in for _ in range(d_out)]
    for count in ints:
        weight = Fraction(count, total * pad_in)
        perm = rng.permutation(big)
        for c in range(big):
            matrix[int(perm[c]) // pad_out][c // pad_in] += weight
    return Channel(tuple(tuple(row) for row in matrix))


def random_distribution(
    d: int, rng: np.random.Generator, zero_prob: float = 0.0, resolution: int = 60
) -> Distribution:
    """Random rational distribution with denominators built from ``resolution``."""
    while True:
        ints = rng.integers(0, resolution + 1, size=d)
        if zero_prob > 0:
            ints = np.where(rng.random(d) < zero_prob, 0, ints)
        total = int(ints.sum())
        if total > 0:
            return Distribution(tuple(Fraction(int(k), total) for k in ints))


def parse_distribution_text(text: str) -> Distribution:
    """Parse one line of comma-separated rationals or decimals.

    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = [(n, line) for n, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise ParseError("no distribution found", line=1, column=1)
    if len(lines) > 1:
        n, line = lines[1]
        raise ParseError("expected a single line of components", line=n, column=1, token=line.strip()[:20])
    lineno, line = lines[0]
    values = []
    column = 1
    for token in line.split(","):
        stripped = token.strip()
        col = column + (len(token) - len(token.lstrip()))
        try:
            values.append(Fraction(stripped))
        except (ValueError, ZeroDivisionError):
            raise ParseError("not a rational or decimal number", line=lineno, column=col, token=stripped) from None
        column += len(token) + 1
    try:
        return Distribution(tuple(values))
    except (NegativeComponent, NotNormalized) as exc:
        raise type(exc)(f"line {lineno}: {exc}") from None


def format_distribution(x: Distribution) -> str:
    return ",".join(str(p) for p in x.probs)


def read_distribution(path) -> Distribution:
    with open(path, encoding="utf-8") as fh:
        return parse_distribution_text(fh.read())


def write_distribution(x: Distribution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_distribution(x) + "\n")


def as_distribution(x: Union[Distribution, SharpSpec, Sequence[Rational]]) -> Distribution:
    if isinstance(x, Distribution):
        return x
    if isinstance(x, SharpSpec):
        return x.as_distribution()
    return make_distribution(x)
