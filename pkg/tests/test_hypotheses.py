import pytest

from selmerbounds import hypotheses as H
from selmerbounds.curves import HyperellipticCurve
from selmerbounds.localfields import LocalField, places_above
from selmerbounds.numberfields import NumberField

Q8 = LocalField(2, (-1, -1, 0, 1))
Q8_POLY = [0, [2, 3, 2], [-5, -8, -5], [4, 7, 5], [-2, -2, -2], [1]]


def test_277_holds_at_2_with_one_factor():
    C = HyperellipticCurve([32, -48, 16, 8, 10, 1])
    rep = H.place_report(C, 2)
    assert rep.dagger_i.verdict == H.HOLDS
    assert rep.r_v == 1 and rep.dim_V == 0
    assert rep.local_dims == (2, 4, 4)


def test_277_finite_places_all_hold():
    C = HyperellipticCurve([32, -48, 16, 8, 10, 1])
    verdicts, support = H.finite_places_report(C)
    assert all(v.verdict == H.HOLDS for v in verdicts)
    assert set(support) <= {2}


def test_x_x4_minus_3_fails_at_3():
    C = HyperellipticCurve([0, -3, 0, 0, 0, 1])
    v = H.check_dagger_i(C, 3)
    assert v.verdict == H.FAILS
    assert v.witness == [[0, 1]]


def test_local_dims_examples():
    assert H.local_dims(1, 1, 2) == (2, 4, 4)
    assert H.local_dims(0, 2, 1) == (1, 2, 1)
    assert H.local_dims(1, 2, 1) == (2, 4, 3)


def test_u4_index_for_single_factor_is_one():
    rep = H.place_report([-2, 0, 0, 0, 0, 1], LocalField(2), genus=2)
    assert rep.r_v == 1
    assert rep.u4_index_exponent == 0 and rep.dim_V == 0


def test_unramified_cubic_example_dims():
    rep = H.place_report(Q8_POLY, Q8, genus=2)
    assert rep.dagger_i.verdict == H.HOLDS
    assert rep.r_v == 5 and rep.dim_V == 3
    assert not rep.star
    assert 2 ** rep.u4_index_exponent == 2
    assert rep.phi_W_dim == 3


def test_linear_factor_trace():
    dimV, basis, lf = H.compute_V([-1, 0, 1], LocalField(2))   # (x - 1)(x + 1)
    assert [F.trace for F in lf.factors] == [(1,), (1,)]


def test_quadratic_base_field_place_above_2():
    K = NumberField((-5, 0, 1), "a")
    C = HyperellipticCurve([[1, 0], [1, 0], [0, 1], [0, 0], [1, 0], [1, 0]], K)
    (pl,) = places_above(K, 2)
    rep = H.place_report(C, pl)
    assert rep.dagger_i.verdict == H.HOLDS
    assert rep.local_dims == (4, 8, 8)
    _, support = H.finite_places_report(C)
    assert support == {}


def test_square_class_unit_counts():
    assert H.square_class_unit_count(2, 1, {1: 1}) == 4
    assert H.square_class_unit_count(2, 1, {5: 1}) == 16
    assert H.square_class_unit_count_direct(5, {1: 1}, 0) == 4
    assert H.square_class_unit_count_direct(5, {5: 1}, 0) == 16


def test_archimedean_marks_smallest_root():
    C = HyperellipticCurve([0, -3, 0, 0, 0, 1])   # roots -3^(1/4), 0, 3^(1/4)
    arch = H.archimedean(C)
    (rp,) = arch.real_places
    assert rp.real_roots == 3
    assert rp.marked == (1, 0)
    assert rp.pairs == [((0, 0), (1, 1))]


def test_span_v_requires_normalized_polynomial():
    with pytest.raises(ValueError, match="translate"):
        H.compute_V([1, 1, 1, 1], LocalField(2))
