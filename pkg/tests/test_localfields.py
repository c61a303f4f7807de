import pytest
from hypothesis import given, settings, strategies as st

from selmerbounds.arith import poly as P
from selmerbounds.arith.linalg import vp
from selmerbounds.localfields import LocalField, local_factor, places_above
from selmerbounds.numberfields import NumberField

Q8 = LocalField(2, (-1, -1, 0, 1))
Q8_POLY = [0, [2, 3, 2], [-5, -8, -5], [4, 7, 5], [-2, -2, -2], [1]]


def test_sqrt2_ramified():
    lf = local_factor([-2, 0, 1], LocalField(2))
    assert lf.shape() == [(2, 1)]


def test_277_totally_ramified_at_2():
    lf = local_factor([32, -48, 16, 8, 10, 1], LocalField(2))
    assert lf.shape() == [(5, 1)]
    assert lf.certified


def test_x2_minus_17_splits_with_cross_valuation_one():
    lf = local_factor([-17, 0, 1], LocalField(2))
    assert lf.shape() == [(1, 1), (1, 1)]
    assert list(lf.cross_valuations.values()) == [1]


def test_cross_valuations_of_products():
    assert list(local_factor([0, 2, 1], LocalField(2)).cross_valuations.values()) == [1]
    assert list(local_factor([0, 1, 1], LocalField(2)).cross_valuations.values()) == [0]
    lf = local_factor([0, -3, 0, 0, 0, 1], LocalField(3))
    assert lf.r == 2 and sorted(lf.cross_valuations.values()) == [1]


def test_linear_factor_trace_is_root():
    lf = local_factor([0, 1, 0, 0, 0, 1], LocalField(2))    # x (x^4 + 1)
    assert sorted(F.trace for F in lf.factors) == [(0,), (1,)]


def test_unramified_cubic_extension_example():
    lf = local_factor(Q8_POLY, Q8)
    assert lf.r == 5
    assert all(v == 0 for v in lf.cross_valuations.values())


def test_factor_polys_multiply_back():
    base = LocalField(3)
    f = [0, -3, 0, 0, 0, 1]
    lf = local_factor(f, base)
    N = lf.precision
    m = 3 ** N
    prod = [1]
    for F in lf.factors:
        prod = [c % m for c in P.mul(prod, [int(c[0]) for c in F.poly])]
    assert P.trim(prod) == P.trim([c % m for c in f])


def test_places_above_in_quadratic_field():
    K = NumberField((-5, 0, 1))
    assert len(places_above(K, 2)) == 1
    assert len(places_above(K, 11)) == 2


def eisenstein(p, d):
    return st.lists(st.integers(-3, 3), min_size=d - 1, max_size=d - 1).map(
        lambda c: [p * (1 + p * c[0])] + [p * x for x in c[1:]] + [1] if d > 1 else [p, 1])


@st.composite
def two_irreducible_factors(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    d1 = draw(st.integers(1, 3))
    d2 = draw(st.integers(1, 3))
    f = draw(eisenstein(p, d1))
    # the second factor: Eisenstein too, shifted by a random integer
    g = draw(eisenstein(p, d2))
    s = draw(st.integers(-4, 4))
    g = list(P.translate(tuple(g), s))
    return p, list(f), [int(c) for c in g]


@settings(max_examples=100, deadline=None, derandomize=True)
@given(two_irreducible_factors())
def test_cross_resultant_equals_global_resultant(data):
    p, f, g = data
    if P.resultant(f, g) == 0:
        return
    prod = [int(c) for c in P.mul(f, g)]
    lf = local_factor(prod, LocalField(p), want_polys=False)
    if lf.r != 2:
        return      # the shifted factor may have become reducible
    assert list(lf.cross_valuations.values()) == [vp(P.resultant(f, g), p)]


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.lists(st.integers(-8, 8), min_size=3, max_size=6), st.sampled_from([2, 3, 5]))
def test_local_degrees_sum_to_degree(c, p):
    f = list(c) + [1]
    if P.discriminant(f) == 0:
        return
    lf = local_factor(f, LocalField(p), want_polys=False)
    assert sum(F.e * F.f for F in lf.factors) == len(f) - 1
