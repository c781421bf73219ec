import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonuniformity.dist import make_distribution, tensor_product, uniform
from nonuniformity.errors import DimensionMismatch
from nonuniformity.lorenz import build_curve, eval_curve
from nonuniformity.monotones import (
    amato,
    burg_nonuniformity,
    geometric,
    gini,
    klimesh_f,
    lorenz_height_monotone,
    monotone_table,
    parse_order,
    relative_entropy,
    renyi_nonuniformity,
    schutz,
    shannon_nonuniformity,
    tsallis_nonuniformity,
)

from strategies import distributions


def D(*ps):
    return make_distribution(ps)


LOG43 = math.log2(4 / 3)


def test_shannon_examples():
    assert shannon_nonuniformity(D("1/3", "1/3", "1/3", 0)) == pytest.approx(LOG43, abs=1e-12)
    assert shannon_nonuniformity(uniform(5)) == pytest.approx(0, abs=1e-12)
    assert shannon_nonuniformity(D(1, 0)) == 1


def test_renyi_examples():
    assert renyi_nonuniformity(D("1/2", "1/4", "1/4", 0), 0) == pytest.approx(LOG43, abs=1e-12)
    assert renyi_nonuniformity(D(0.9, 0.1), math.inf) == pytest.approx(1 + math.log2(0.9), abs=1e-12)
    s = D("1/2", "1/2", 0)
    assert renyi_nonuniformity(s, 2) == pytest.approx(math.log2(1.5), abs=1e-12)
    assert renyi_nonuniformity(s, -1) == math.inf
    assert renyi_nonuniformity(D("3/4", "1/4"), -math.inf) == pytest.approx(1, abs=1e-12)


@given(distributions(allow_zeros=False), st.floats(-50, 50).filter(lambda p: abs(p) > 1e-3 and abs(p - 1) > 1e-3))
def test_renyi_matches_closed_form(x, p):
    probs = x.as_floats()
    direct = (1 if p > 0 else -1) / (p - 1) * math.log2(float(np.sum(probs ** p * x.dim ** (p - 1))))
    assert renyi_nonuniformity(x, p) == pytest.approx(direct, abs=1e-9)


@given(distributions())
def test_renyi_continuous_at_one(x):
    i = shannon_nonuniformity(x)
    assert renyi_nonuniformity(x, 1 + 1e-7) == pytest.approx(i, abs=1e-5)
    assert renyi_nonuniformity(x, 1 - 1e-7) == pytest.approx(i, abs=1e-5)


@given(distributions())
def test_renyi_ordering(x):
    orders = [0, 0.01, 0.3, 0.5, 1, 1.5, 2, 7, 40, math.inf]
    values = [renyi_nonuniformity(x, p) for p in orders]
    assert all(a <= b + 1e-9 for a, b in zip(values, values[1:]))


@given(distributions())
def test_inf_and_sup_over_grid(x):
    grid = [10 ** (k / 4) for k in range(-16, 13)]
    values = [renyi_nonuniformity(x, p) for p in grid]
    assert renyi_nonuniformity(x, 0) <= min(values) + 1e-9
    assert renyi_nonuniformity(x, math.inf) >= max(values) - 1e-9
    assert values[0] == pytest.approx(renyi_nonuniformity(x, 0), abs=1e-2)
    assert values[-1] == pytest.approx(renyi_nonuniformity(x, math.inf), abs=1e-2)


def test_tsallis():
    assert tsallis_nonuniformity(D(0.9, 0.1), 2) == pytest.approx(0.64, abs=1e-12)
    assert tsallis_nonuniformity(uniform(4), 3) == pytest.approx(0, abs=1e-12)
    assert tsallis_nonuniformity(uniform(4), -2) == pytest.approx(0, abs=1e-12)
    with pytest.raises(ValueError):
        tsallis_nonuniformity(uniform(2), 1)


@given(distributions())
def test_tsallis_limit_is_shannon(x):
    i = shannon_nonuniformity(x)
    for p in (1 + 1e-6, 1 - 1e-6):
        assert tsallis_nonuniformity(x, p) / math.log(2) == pytest.approx(i, abs=1e-5)


@given(distributions(), st.sampled_from([-2.0, -0.5, 0.3, 0.5, 2.0, 3.0]))
def test_tsallis_nonnegative(x, p):
    assert tsallis_nonuniformity(x, p) >= -1e-12


def test_burg():
    assert burg_nonuniformity(uniform(3)) == pytest.approx(0, abs=1e-12)
    assert burg_nonuniformity(D(1, 0)) == math.inf
    expected = 0.5 * math.log2(0.5 / (2 / 3)) + 0.5 * math.log2(0.5 / (1 / 3))
    assert burg_nonuniformity(D("2/3", "1/3")) == pytest.approx(expected, abs=1e-12)


def test_table_two_examples():
    for d in (1, 2, 5):
        u = uniform(d)
        assert gini(u) == 0 and schutz(u) == 0
        assert amato(u) == pytest.approx(math.sqrt(2), abs=1e-12)
        assert geometric(u) == pytest.approx(0, abs=1e-12)
    assert schutz(D(1, 0)) == F(1, 2)
    assert gini(D(1, 0)) == F(1, 4)
    assert geometric(D(1, 0)) == 1


def _area_between(x) -> float:
    c = build_curve(x)
    us = np.linspace(0, 1, 20001)
    vs = np.array([float(eval_curve(c, F(u).limit_denominator(10**9))) for u in us])
    return float(np.trapezoid(vs - us, us))


@given(distributions(max_dim=4))
@settings(max_examples=25, deadline=None)
def test_gini_is_area_and_schutz_is_max_gap(x):
    c = build_curve(x)
    exact_area = sum(((u1 - u0) * (v0 + v1) / 2 for (u0, v0), (u1, v1) in zip(c.breakpoints, c.breakpoints[1:])),
                     F(0)) - F(1, 2)
    assert gini(x) == exact_area
    assert float(gini(x)) == pytest.approx(_area_between(x), abs=1e-6)
    fine = [F(k, 240) for k in range(241)]
    assert schutz(x) == max(eval_curve(c, u) - u for u in fine)


def test_lorenz_height():
    assert lorenz_height_monotone(D(0.9, 0.1), F(1, 4)) == F(9, 20)


def test_relative_entropy():
    x = D("3/4", "1/4")
    assert relative_entropy(x, uniform(2), -math.inf) == pytest.approx(1, abs=1e-12)
    assert relative_entropy(x, x, 1) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        relative_entropy(x, uniform(3), 1)
    assert relative_entropy(D(1, 0), D(0, 1), 2) == math.inf


@given(distributions(), st.sampled_from([0, 0.5, 1, 2, math.inf, -1, -math.inf]))
def test_relative_to_uniform_is_nonuniformity(x, p):
    expected = renyi_nonuniformity(x, p)
    got = relative_entropy(x, uniform(x.dim), p)
    if math.isinf(expected):
        assert got == expected
    else:
        assert got == pytest.approx(expected, abs=1e-9)


def test_klimesh():
    assert klimesh_f(uniform(2), 2) == pytest.approx(math.log(0.5), abs=1e-12)
    assert klimesh_f(D("1/2", "1/2", 0), 0) == math.inf
    assert klimesh_f(D(1, 0), 1) == 0
    assert klimesh_f(uniform(2), 0.5) == pytest.approx(-math.log(2 * math.sqrt(0.5)), abs=1e-12)
    assert klimesh_f(D("1/4", "3/4"), -1) == pytest.approx(math.log(4 + 4 / 3), abs=1e-12)


def test_parse_order_and_table():
    assert parse_order("inf") == math.inf and parse_order("-inf") == -math.inf
    assert parse_order("1/2") == 0.5
    rows = monotone_table(uniform(2), [0, 1, 2, math.inf])
    assert len(rows) == 4
    assert {r.name for r in monotone_table(D(0.9, 0.1))} >= {"gini", "schutz", "burg", "geometric"}
