from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonuniformity.dist import (
    Channel,
    SharpSpec,
    apply_channel,
    as_fraction,
    format_distribution,
    make_distribution,
    marginalize,
    parse_distribution_text,
    random_noisy_channel,
    sort_descending,
    tensor_product,
    truncate,
    uniform,
)
from nonuniformity.errors import (
    DimensionMismatch,
    NegativeComponent,
    NotNormalized,
    ParseError,
    TooMuchTruncation,
)
from nonuniformity.lorenz import noisy_equivalent

from oracles import truncation_by_search
from strategies import distributions, sharp_specs


def D(*ps):
    return make_distribution(ps)


class TestConstruction:
    def test_valid(self):
        assert D("1/2", "1/2").dim == 2
        x = D("1/2", "1/4", "1/4", 0)
        assert x.dim == 4 and x.support_size == 3

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            D("1/2", "1/3")

    def test_negative(self):
        with pytest.raises(NegativeComponent):
            D("3/2", "-1/2")

    def test_empty(self):
        with pytest.raises(NotNormalized):
            make_distribution([])

    def test_decimals_are_exact(self):
        assert D(0.9, 0.1).probs == (F(9, 10), F(1, 10))
        assert as_fraction("0.25") == F(1, 4)


def test_sort_descending():
    assert sort_descending(D("1/6", "2/3", "1/6")).probs == (F(2, 3), F(1, 6), F(1, 6))
    assert sort_descending(uniform(4)) == uniform(4)
    assert sort_descending(D(0, 1)).probs == (1, 0)


def test_tensor_examples():
    assert tensor_product(D(0.9, 0.1), uniform(2)) == D(0.45, 0.45, 0.05, 0.05)
    x = D("1/3", "2/3")
    assert tensor_product(x, uniform(1)) == x
    assert tensor_product(D(1, 0), D(1, 0)) == D(1, 0, 0, 0)


def test_marginal_examples():
    assert marginalize(D(0.45, 0.45, 0.05, 0.05), 2, 2, "A") == D(0.9, 0.1)
    bell = D("1/2", 0, 0, "1/2")
    assert marginalize(bell, 2, 2, "A") == uniform(2)
    assert marginalize(bell, 2, 2, "B") == uniform(2)
    with pytest.raises(DimensionMismatch):
        marginalize(bell, 3, 2)


@given(distributions(), distributions())
def test_tensor_then_marginalize_recovers_factors(x, y):
    xy = tensor_product(x, y)
    assert marginalize(xy, x.dim, y.dim, "A") == x
    assert marginalize(xy, x.dim, y.dim, "B") == y


@given(distributions())
def test_sort_idempotent_and_multiset(x):
    s = sort_descending(x)
    assert sort_descending(s) == s
    assert sorted(s.probs) == sorted(x.probs)


def test_uniform():
    assert uniform(1).probs == (1,)
    assert uniform(3).probs == (F(1, 3),) * 3


@given(sharp_specs(), sharp_specs())
def test_sharp_products_compose(a, b):
    prod = tensor_product(a.as_distribution(), b.as_distribution())
    assert noisy_equivalent(prod, SharpSpec(a.d * b.d, a.d_u * b.d_u).as_distribution())


def test_sharp_spec():
    s = SharpSpec(4, 1)
    assert s.nonuniformity() == 2
    assert s.as_distribution() == D(1, 0, 0, 0)
    assert SharpSpec.from_ratio(F(3, 2)) == SharpSpec(3, 2)
    with pytest.raises(ValueError):
        SharpSpec(2, 3)


class TestChannels:
    def test_t_transform(self):
        t = Channel(((F(3, 4), F(1, 4)), (F(1, 4), F(3, 4))))
        assert apply_channel(t, D(1, 0)) == D("3/4", "1/4")

    def test_identity_and_randomizing(self):
        x = D("1/2", "1/4", "1/4")
        ident = Channel(tuple(tuple(F(int(i == j)) for j in range(3)) for i in range(3)))
        assert apply_channel(ident, x) == x
        flat = Channel(tuple(tuple(F(1, 2) for _ in range(3)) for _ in range(2)))
        assert apply_channel(flat, x) == uniform(2)
        assert flat.uniform_preserving
        reset = Channel(((F(1), F(1)), (F(0), F(0))))
        assert not reset.uniform_preserving

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_channel(random_noisy_channel(3, 2, 0), uniform(2))

    @given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**31))
    @settings(max_examples=60)
    def test_sampled_channels_are_noisy(self, d_in, d_out, seed):
        c = random_noisy_channel(d_in, d_out, seed)
        assert (c.in_dim, c.out_dim) == (d_in, d_out)
        assert c.uniform_preserving
        assert apply_channel(c, uniform(d_in)) == uniform(d_out)

    def test_sampler_deterministic(self):
        assert random_noisy_channel(4, 2, 7) == random_noisy_channel(4, 2, 7)
        rows = random_noisy_channel(4, 2, 1).matrix
        assert all(sum(r) == 2 for r in rows)


class TestTruncate:
    def test_identity(self):
        x = D("1/2", "1/4", "1/4", 0)
        assert truncate(x, (1, 1)) == x

    def test_examples_match_search(self):
        # (1/2,1/2,0,0) with I = 1 and (1/2,1/2,0) with I = log(3/2) both collapse to (1).
        assert truncate(D("1/2", "1/2", 0, 0), (2, 1)) == D(1)
        assert truncate(D("1/2", "1/2", 0), (3, 2)) == D(1)
        assert truncation_by_search(D("1/2", "1/2", 0), F(3, 2)) == D(1)

    def test_zero_padded_catalyst(self):
        assert truncate(D(0.6, 0.4, 0, 0), (2, 1)) == D(0.6, 0.4)

    def test_too_much(self):
        with pytest.raises(TooMuchTruncation):
            truncate(D("1/2", "1/2", 0), (2, 1))
        with pytest.raises(TooMuchTruncation):
            truncate(uniform(2), (1, 2))

    @given(distributions(max_dim=5, resolution=6), st.data())
    @settings(max_examples=80, deadline=None)
    def test_against_dimension_search(self, x, data):
        top = F(x.dim, x.support_size)
        num = data.draw(st.integers(1, 6))
        ratio = min(top, 1 + (top - 1) * F(num, 6))
        y = truncate(x, ratio)
        assert y == truncation_by_search(x, ratio)
        assert noisy_equivalent(tensor_product(y, SharpSpec.from_ratio(ratio).as_distribution()), x)


class TestTextFormat:
    def test_parse(self):
        assert parse_distribution_text("1/2,1/4,1/4,0\n") == D("1/2", "1/4", "1/4", 0)
        assert parse_distribution_text("0.5, 0.5") == uniform(2)

    def test_errors(self):
        with pytest.raises(NotNormalized):
            parse_distribution_text("0.3,0.3")
        with pytest.raises(ParseError) as info:
            parse_distribution_text("0.5,x1")
        assert info.value.column == 5 and info.value.token == "x1"
        with pytest.raises(ParseError):
            parse_distribution_text("")

    @given(distributions(max_dim=8))
    def test_round_trip(self, x):
        assert parse_distribution_text(format_distribution(x)) == x
