from fractions import Fraction

import pytest

from selmerbounds import hypotheses as H
from selmerbounds.arith import poly as P
from selmerbounds.bounds import (BoundsError, CONDITIONAL, RELAXED, UNCONDITIONAL,
                                 delta_square_class, find_rational_points,
                                 relaxed_bounds_x5ax, selmer_bounds)
from selmerbounds.classgroups import ClassDataProvider
from selmerbounds.cli import CurveSpec
from selmerbounds.curves import HyperellipticCurve

from conftest import curve_path, imported_provider


def test_277_window_with_imported_data():
    C = HyperellipticCurve([32, -48, 16, 8, 10, 1])
    rep = selmer_bounds(C, imported_provider("277"))
    assert rep.window == (0, 2)
    assert rep.mode == UNCONDITIONAL
    assert rep.provenance[0]["provider"] == "imported"


def test_x5_x2_1_builtin_window(builtin_provider):
    C = HyperellipticCurve([1, 0, 1, 0, 0, 1])
    rep = selmer_bounds(C, builtin_provider)
    assert rep.window == (0, 2)
    assert rep.mode == UNCONDITIONAL
    assert rep.provenance[0]["provider"] == "builtin"


def test_rational_two_torsion_raises_lower_bound(builtin_provider):
    # x (x^4 + 3) has the single rational root 0
    rep = selmer_bounds(HyperellipticCurve([0, 3, 0, 0, 0, 1]), builtin_provider)
    assert rep.witnesses == ["0"]
    assert rep.lower >= 1
    assert rep.lower <= rep.upper


def test_torsion_refutes_conditional_upper_bound(builtin_provider):
    # x (x - 1) (x + 1) (x - 2) (x + 2): four independent points of order 2,
    # and (dagger.i) fails at 2 and 3, so the conditional upper bound is wrong
    f = [0, 4, 0, -5, 0, 1]
    rep = selmer_bounds(HyperellipticCurve(f), builtin_provider)
    assert sorted(rep.witnesses, key=Fraction) == ["-2", "-1", "0", "1", "2"]
    assert rep.mode == CONDITIONAL
    assert rep.failed_places == ["2", "3"]
    assert rep.upper < 4
    assert rep.lower == rep.upper
    assert any("does not hold for this curve" in n for n in rep.notes)


def test_failed_place_makes_report_conditional(builtin_provider):
    C = HyperellipticCurve([0, -3, 0, 0, 0, 1])
    rep = selmer_bounds(C, builtin_provider)
    assert rep.mode == CONDITIONAL
    assert rep.failed_places == ["3"]
    assert any("fails at 3" in n for n in rep.notes)


@pytest.mark.parametrize("p", [3, 11, 19])
def test_relaxed_x5ax_window(p, builtin_provider):
    C = HyperellipticCurve([0, -p, 0, 0, 0, 1])
    rep = relaxed_bounds_x5ax(C, builtin_provider)
    assert rep.mode == RELAXED
    assert rep.window == (1, 3)


@pytest.mark.parametrize("a", [-5, 3, -15, -7])
def test_relaxed_x5ax_refuses_other_parameters(a):
    C = HyperellipticCurve([0, a, 0, 0, 0, 1])
    with pytest.raises(BoundsError):
        relaxed_bounds_x5ax(C)


def test_relaxed_refuses_other_shapes():
    with pytest.raises(BoundsError):
        relaxed_bounds_x5ax(HyperellipticCurve([1, 0, 1, 0, 0, 1]))


def test_translation_does_not_change_window(builtin_provider):
    f = [1, 0, 1, 0, 0, 1]
    base = selmer_bounds(HyperellipticCurve(f), builtin_provider)
    for t in (1, -3, 7):
        g = [int(c) for c in P.translate(f, t)]
        rep = selmer_bounds(HyperellipticCurve(g), builtin_provider)
        assert rep.window == base.window
        assert rep.two_rank == base.two_rank


def test_delta_on_x5_x2_1_points():
    C = HyperellipticCurve([1, 0, 1, 0, 0, 1])
    pts = find_rational_points([1, 0, 1, 0, 0, 1], bound=10)
    assert (Fraction(0), Fraction(1)) in pts
    for a, b in pts:
        e = delta_square_class(C, (a, b))
        assert e.norms[0] == b * b
        assert e.all_even == all(v == 0 for d in e.parities.values() for v in d.values())


def test_delta_norm_identity_with_translation():
    # x^5 + 5 x^4 + ... is translated internally; the norm must still be p(a)
    f = [int(c) for c in P.translate([1, 0, 1, 0, 0, 1], 1)]
    C = HyperellipticCurve(f)
    e = delta_square_class(C, (Fraction(-1), Fraction(1)))
    assert e.norms[0] == 1


def test_delta_rejects_bad_points():
    C = HyperellipticCurve([1, 0, 1, 0, 0, 1])
    with pytest.raises(BoundsError):
        delta_square_class(C, (0, 2))
    D = HyperellipticCurve([0, -1, 0, 0, 0, 1])
    with pytest.raises(BoundsError):
        delta_square_class(D, (0, 0))


def test_delta_over_reducible_algebra():
    # p = x (x^4 + 3): two factor fields, the norms multiply to b^2
    C = HyperellipticCurve([0, 3, 0, 0, 0, 1])
    e = delta_square_class(C, (Fraction(1), Fraction(2)))
    assert len(e.norms) == 2
    assert e.norms[0] * e.norms[1] == 4
    assert sorted(e.norms) == [1, 4]


def test_report_json_is_deterministic(builtin_provider):
    C = HyperellipticCurve([1, 0, 1, 0, 0, 1])
    a = selmer_bounds(C, builtin_provider).to_json()
    b = selmer_bounds(C, ClassDataProvider()).to_json()
    assert a == b
    assert "(dagger.ii) is not checked" in a["notes"]


def test_square_class_counts_match_on_examples():
    for f in ([32, -48, 16, 8, 10, 1], [0, 4, 0, -5, 0, 1], [1, 0, 1, 0, 0, 1]):
        C = HyperellipticCurve(f)
        arch = H.archimedean(C)
        assert H.square_class_unit_count(C.genus, 1, arch.a_counts) == \
            H.square_class_unit_count_direct(C.degree, arch.a_counts, arch.complex_places)


@pytest.mark.parametrize("name", ["277", "x5x2_1", "x5x2_1_twist31", "deg11_a", "deg11_b", "deg11_c"])
def test_corpus_points_have_even_parities_everywhere(name):
    C = CurveSpec(curve_path(name)).curve
    verdicts, _ = H.finite_places_report(C)
    assert all(v.verdict == H.HOLDS for v in verdicts)
    for pt in find_rational_points([c[0] for c in C.input_poly], bound=50):
        assert delta_square_class(C, pt).all_even
