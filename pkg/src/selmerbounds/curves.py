"""Odd-degree hyperelliptic curves y^2 = p(x) and their etale algebras K[x]/(p)."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import poly as P
from .arith import finite as FF
from .arith.sturm import isolate_real_roots, refine, interval_eval
from .numberfields import (NumberField, rationals, kpoly, factor_over_field,
                           relative_algebra, charpoly_in_algebra)
from .orders import Order


class CurveError(ValueError):
    pass


def _fmt_elem(K, c):
    if K.degree == 1 or not any(c[1:]):
        return str(c[0])
    return "(" + P.to_str(P.trim(c), "a") + ")"


class HyperellipticCurve:
    """y^2 = p(x) over K with p monic, integral, squarefree, of odd degree >= 3.

    The polynomial is normalized on construction so that the x^(d-1)
    coefficient lies in every prime above 2: if needed p(x) is replaced by
    p(x + c) with c in O_K, and c is recorded in ``translation``.
    """

    def __init__(self, coeffs, base=None, label=None):
        K = base or rationals()
        self.K = K
        f = kpoly(K, coeffs)
        self.input_poly = [tuple(c) for c in f]
        d = len(f) - 1
        if d < 3 or d % 2 == 0:
            raise CurveError(f"degree must be odd and at least 3 (got {d})")
        if tuple(f[-1]) != K.one:
            raise CurveError("polynomial must be monic")
        for c in f:
            if not K.is_integral(c):
                raise CurveError("coefficients must be algebraic integers")
        df = FF.pderiv(K, f)
        if len(FF.pgcd(K, f, df)) > 1:
            raise CurveError("polynomial must be squarefree")
        self.degree = d
        self.genus = (d - 1) // 2
        self.label = label
        c = self._translation(f)
        self.translation = c
        self.poly = [tuple(x) for x in _kp_translate(K, f, c)]

    def _translation(self, f):
        K = self.K
        a = f[-2]
        primes2 = K.factor_prime(2)
        v = K.to_order(a)
        if all(P_.contains([int(x) for x in v]) for P_ in primes2):
            return K.zero
        c = [int(x) % 2 for x in v]
        return K.from_order(c)

    @property
    def translated(self):
        return any(self.translation)

    def __repr__(self):
        return f"HyperellipticCurve({self.describe()})"

    def describe(self):
        K = self.K
        out = "y^2 ="
        first = True
        for i in range(len(self.input_poly) - 1, -1, -1):
            c = self.input_poly[i]
            if not any(c):
                continue
            coef = _fmt_elem(K, c)
            neg = coef.startswith("-")
            if neg:
                coef = coef[1:]
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            term = mono if (mono and coef == "1") else (coef + ("*" + mono if mono else ""))
            if first:
                out += (" -" if neg else "") + " " + term
            else:
                out += (" - " if neg else " + ") + term
            first = False
        return out

    @cached_property
    def algebra(self):
        return EtaleAlgebra(self.K, self.poly)

    def rational_poly(self):
        """Normalized p as a tuple of rationals (only for K = Q)."""
        if self.K.degree != 1:
            raise CurveError("curve is not defined over Q")
        return tuple(c[0] for c in self.poly)


def _kp_translate(K, f, c):
    if not any(c):
        return f
    shift = [c, K.one]
    acc = []
    for a in reversed(f):
        acc = FF.padd(K, FF.pmul(K, acc, shift), [a])
    return acc


class RealRoot:
    """A real root of a squarefree rational polynomial, with an isolating interval."""

    def __init__(self, poly, interval):
        self.poly = poly
        self.lo, self.hi = interval

    def refine(self, width):
        if self.hi - self.lo > width:
            self.lo, self.hi = refine(self.poly, (self.lo, self.hi), width)

    def __lt__(self, other):
        w = Fraction(1)
        for _ in range(200):
            if self.hi < other.lo:
                return True
            if other.hi < self.lo:
                return False
            w /= 1024
            self.refine(w)
            other.refine(w)
        raise ArithmeticError("roots could not be separated")


@dataclass
class RealEmbedding:
    factor: int       # index of the factor field
    index: int        # index among that field's real embeddings (ascending roots)


class EtaleAlgebra:
    """A_K = K[x]/(p) = prod K_i, with factor fields and archimedean data."""

    def __init__(self, K, poly):
        self.K = K
        self.poly = [K.elem(c) for c in poly]
        self.degree = len(poly) - 1
        facs, shift = factor_over_field(K, self.poly)
        if shift != 0:
            raise CurveError("unsupported: the root does not generate some factor field over Q")
        self.factors = [f for f, _ in facs]
        self.abs_polys = [tuple(int(c) for c in N) for _, N in facs]

    @property
    def r(self):
        return len(self.factors)

    def factor_degrees(self):
        return [len(f) - 1 for f in self.factors]

    @cached_property
    def factor_fields(self):
        return [NumberField(N) for N in self.abs_polys]

    def factor_field(self, i):
        return self.factor_fields[i]

    @cached_property
    def abs_real_roots(self):
        return [[RealRoot(N, iv) for iv in isolate_real_roots(N)] if len(N) > 2
                else [RealRoot(N, (Fraction(-N[0]), Fraction(-N[0])))] for N in self.abs_polys]

    @cached_property
    def real_places(self):
        """For each real place of K: the real roots of p there, ascending, as RealEmbeddings."""
        K = self.K
        per_sigma = [[] for _ in range(K.r1)]
        for i, roots in enumerate(self.abs_real_roots):
            for j, rho in enumerate(roots):
                s = self._attribute(i, rho)
                per_sigma[s].append((rho, RealEmbedding(i, j)))
        out = []
        for lst in per_sigma:
            lst = _sorted_roots(lst)
            out.append([emb for _, emb in lst])
        return out

    def _attribute(self, i, rho):
        """The real place of K at which rho is a root of p_i."""
        K = self.K
        if K.degree == 1:
            return 0
        f = self.factors[i]
        width = Fraction(1, 2 ** 10)
        for _ in range(60):
            cands = []
            for s in range(K.r1):
                tlo, thi = K.root_interval(s, width)
                rho.refine(width)
                lo, hi = _eval2(f, (tlo, thi), (rho.lo, rho.hi))
                if lo <= 0 <= hi:
                    cands.append(s)
            if len(cands) == 1:
                return cands[0]
            if not cands:
                raise ArithmeticError("real root not attributed to any real place")
            width /= 2 ** 10
        raise ArithmeticError("real root attribution did not converge")

    @property
    def complex_places_of_K(self):
        return self.K.r2

    def real_root_counts(self):
        """Number of real roots of p at each real place of K."""
        return [len(x) for x in self.real_places]

    def factor_real_counts(self):
        """r1 of each factor field."""
        return [len(x) for x in self.abs_real_roots]

    @cached_property
    def order(self):
        """The order O_K[T] inside A, as a TowerAlgebra order (rank [K:Q] * d)."""
        K = self.K
        if K.degree == 1:
            from .orders import TowerAlgebra
            A = TowerAlgebra([[c[0] for c in self.poly]])
            return Order.power_basis(A)
        A = relative_algebra(K, self.poly)
        nb = K.degree
        basis = []
        for i in range(self.degree):
            for w in K.integral_basis:
                v = [Fraction(0)] * A.dim
                v[i * nb:(i + 1) * nb] = list(w)
                basis.append(v)
        return Order(A, basis)

    @cached_property
    def order_disc(self):
        return self.order.discriminant()


def _eval2(f, tiv, xiv):
    """Interval enclosure of f(theta, x) for f over K with interval arguments."""
    tlo, thi = tiv
    xlo, xhi = xiv
    a = b = Fraction(0)
    for c in reversed(f):
        clo, chi = interval_eval(P.trim(c), tlo, thi) if any(c) else (Fraction(0), Fraction(0))
        cands = (a * xlo, a * xhi, b * xlo, b * xhi)
        a, b = min(cands) + clo, max(cands) + chi
    return a, b


def _sorted_roots(lst):
    # insertion sort with exact comparisons (lists are short)
    out = []
    for item in lst:
        pos = len(out)
        for k, other in enumerate(out):
            if item[0] < other[0]:
                pos = k
                break
        out.insert(pos, item)
    return out
