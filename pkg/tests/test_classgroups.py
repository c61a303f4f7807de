import json
import math

import pytest
import sympy

from selmerbounds.classgroups import (ClassDataError, ClassDataProvider, UnsupportedField,
                                      affine_relation, class_group_builtin, cl_star,
                                      cl_star_report, parse_class_data, import_class_data)
from selmerbounds.numberfields import NumberField

from conftest import classdata_path


def reduced_forms_class_number(D):
    """Class number of discriminant D < 0 by counting reduced primitive forms."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def fundamental_discriminants(count):
    out = []
    n = 3
    while len(out) < count:
        D = -n
        m = n // 4 if n % 4 == 0 else n
        sqfree = all(m % (q * q) for q in range(2, int(m ** 0.5) + 1))
        if D % 4 == 1 and sqfree:
            out.append(D)
        elif D % 4 == 0 and (D // 4) % 4 in (2, 3) and sqfree:
            out.append(D)
        n += 1
    return out


def quadratic_poly(D):
    return (-D // 4, 0, 1) if D % 4 == 0 else ((1 - D) // 4, -1, 1)


# frozen from the reduced-forms oracle
FROZEN_H = {-3: 1, -4: 1, -20: 2, -23: 3, -47: 5, -56: 4, -71: 7, -84: 4, -95: 8, -163: 1}


def test_frozen_oracle_values():
    for D, h in FROZEN_H.items():
        assert reduced_forms_class_number(D) == h


def test_builtin_matches_binary_forms_on_50_imaginary_quadratic_fields():
    for D in fundamental_discriminants(50):
        d = class_group_builtin(NumberField(quadratic_poly(D)))
        assert d.class_number == reduced_forms_class_number(D), D
        assert d.narrow_class_number == d.class_number


def test_sqrt_minus_5():
    d = class_group_builtin(NumberField((5, 0, 1)))
    assert d.invariants == [2]


def test_sqrt5_trivial_and_narrow_trivial():
    d = class_group_builtin(NumberField((-5, 0, 1)))
    assert d.invariants == [] and d.narrow_class_number == 1
    assert d.flags["class_number_certified"]


@pytest.mark.parametrize("poly,h,hplus", [((-3, 0, 1), 1, 2), ((-79, 0, 1), 3, 6),
                                          ((-229, 0, 1), 3, 3), ((-10, 0, 1), 2, 2)])
def test_real_quadratic_narrow(poly, h, hplus):
    d = class_group_builtin(NumberField(poly))
    assert d.class_number == h and d.narrow_class_number == hplus


def test_builtin_refuses_large_fields():
    with pytest.raises(UnsupportedField):
        class_group_builtin(NumberField((-1, -5, 1, -2, -1, -1, 0, 1, -3, -3, 0, 1)))


def test_import_accepts_277_file():
    d = import_class_data(classdata_path("277"))
    assert d.class_number == 1 and d.narrow_class_number == 1
    assert len(d.digest) == 64


def test_import_accepts_degree_11_file():
    d = import_class_data(classdata_path("deg11_b"))
    assert d.narrow_class_number == 1


def test_import_rejects_broken_chain():
    with pytest.raises(ClassDataError, match="divisibility chain"):
        import_class_data(classdata_path("bad_chain"))


def test_import_rejects_inconsistent_narrow_number():
    doc = {"field": {"poly": [-3, 0, 1]}, "invariants": [], "source": "x",
           "units": {"sign_matrix": [[1, 1]]}, "narrow_class_number": 1}
    with pytest.raises(ClassDataError, match="disagrees"):
        parse_class_data(doc)


def test_import_requires_sign_data():
    doc = {"field": {"poly": [-3, 0, 1]}, "invariants": [], "source": "x"}
    with pytest.raises(ClassDataError, match="missing sign data at real embeddings"):
        parse_class_data(doc)


def test_import_checks_relations_present_declared_group():
    doc = {"field": {"poly": [5, 0, 1]}, "invariants": [2], "source": "x",
           "generators": [[2, 2, 1, [1, 1]]], "relations": [{"exponents": [4]}]}
    with pytest.raises(ClassDataError, match="present the group"):
        parse_class_data(doc)


def test_export_import_round_trip_gives_same_cl_star():
    K = NumberField((-3, 0, 0, 0, 1))
    d = class_group_builtin(K)
    d2 = parse_class_data(json.loads(json.dumps(d.to_json())))
    for mode in ("pairing", "plain", "narrow"):
        a = cl_star([d], [], None, mode)
        b = cl_star([d2], [], None, mode)
        assert a == b


def _is_affine_image(F, G, lam, c):
    # G(x) == lam^n F((x - c) / lam)
    x = sympy.Symbol("x")
    n = len(F) - 1
    f = sum(sympy.Rational(a) * ((x - sympy.Rational(c)) / sympy.Rational(lam)) ** i for i, a in enumerate(F))
    g = sum(sympy.Rational(a) * x ** i for i, a in enumerate(G))
    return sympy.expand(sympy.Rational(lam) ** n * f - g) == 0


@pytest.mark.parametrize("F,G,expect", [
    ((1, 0, 1, 0, 0, 1), (31 ** 5, 0, 31 ** 3, 0, 0, 1), True),
    ((1, 0, 1, 0, 0, 1), (-(31 ** 5), 0, -(31 ** 3), 0, 0, 1), True),
    ((1, 1, 1), (1, -1, 1), True),
    ((-2, 0, 1), (-3, 0, 1), False),
    ((4, 2, 1, 0, 0, 1), (4, 2, 1, 0, 0, 1), True),
    ((-5, 0, 1), (-5 + 9, -6, 1), True),
])
def test_affine_relation(F, G, expect):
    rel = affine_relation(F, G)
    assert (rel is not None) == expect
    if rel:
        assert _is_affine_image(F, G, *rel)


def test_affine_relation_prefers_positive_scale():
    assert affine_relation((1, 0, 1, 0, 0, 1), (31 ** 5, 0, 31 ** 3, 0, 0, 1)) == (31, 0)
    assert affine_relation((1, 0, 1, 0, 0, 1), (-(31 ** 5), 0, -(31 ** 3), 0, 0, 1))[0] == -31


def test_cl_star_without_pairs_is_class_group():
    d = class_group_builtin(NumberField((-79, 0, 1)))
    inv, m = cl_star([d], [], None, "pairing")
    assert m == 0 and inv == d.invariants


def test_quartic_family_cl_star_two_rank_zero():
    for p in (3, 11, 19):
        dq = class_group_builtin(NumberField((0, 1)))
        d = class_group_builtin(NumberField((-p, 0, 0, 0, 1)))
        assert d.class_number % 2 == 1
        assert d.narrow_class_number == 2 * d.class_number
        res = cl_star_report([dq, d], [((0, 0), (1, 1))])
        assert res.two_rank == 0
