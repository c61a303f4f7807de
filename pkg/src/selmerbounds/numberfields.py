"""Number fields over Q: maximal orders, prime decomposition, real embeddings.

Elements of a field K = Q[y]/(m) are tuples of Fractions (coordinates in the
power basis 1, y, ..., y^(n-1)).  The maximal order is computed with Round 2
at every prime whose square divides disc(m).
"""
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

import sympy

from .arith import poly as P
from .arith import linalg as L
from .arith import finite as FF
from .arith.factor import factor_over_Q
from .arith.sturm import isolate_real_roots, sign_at_root, refine, interval_eval
from .orders import TowerAlgebra, Order, round2, decompose, PrimeOver


@lru_cache(maxsize=4096)
def factor_integer(n):
    """Prime factorization of a nonzero integer as a sorted tuple of (p, k)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor zero")
    # factorint may hand back gmpy2 integers, which do not mix with Fraction
    return tuple(sorted((int(q), int(k)) for q, k in sympy.factorint(n).items()))


def _canonical_basis(rows):
    """HNF of a rational lattice with basis vector i of degree i."""
    den = 1
    for r in rows:
        for c in r:
            den = lcm(den, Fraction(c).denominator)
    n = len(rows)
    ints = [[int(Fraction(c) * den) for c in reversed(r)] for r in rows]
    H = L.hnf_basis(ints)
    out = [[Fraction(c, den) for c in reversed(r)] for r in reversed(H)]
    assert len(out) == n
    return out


class NumberField:
    """The field Q[y]/(m) for a monic irreducible integral polynomial m."""

    def __init__(self, poly, name=None):
        poly = P.trim(poly)
        if not poly or poly[-1] != 1 or not P.is_integral(poly):
            raise ValueError("defining polynomial must be monic with integer coefficients")
        self.poly = tuple(int(c) for c in poly)
        self.degree = len(poly) - 1
        self.name = name or P.to_str(self.poly, "y")
        self.algebra = TowerAlgebra([self.poly])
        self.zero = tuple([Fraction(0)] * self.degree)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (self.degree - 1))
        self.char = 0

    def __repr__(self):
        return f"NumberField({self.name})"

    # elementary arithmetic ---------------------------------------------
    def elem(self, c):
        if isinstance(c, (list, tuple)):
            v = [Fraction(x) for x in c]
            if len(v) > self.degree:
                v = list(P.rem(P.trim(v), self.poly)) if self.degree else v
            return tuple(v + [Fraction(0)] * (self.degree - len(v)))
        return tuple([Fraction(c)] + [Fraction(0)] * (self.degree - 1))

    def gen(self):
        if self.degree == 1:
            return (Fraction(-self.poly[0]),)
        return self.elem([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        r = P.rem(P.mul(P.trim(a), P.trim(b)), self.poly) if self.degree > 1 else P.mul(P.trim(a), P.trim(b))
        return self.elem(r)

    def inv(self, a):
        g = P.trim(a)
        if not g:
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return (Fraction(1) / Fraction(a[0]),)
        r0, r1 = self.poly, g
        s0, s1 = (), (1,)
        while P.deg(r1) > 0:
            q, r = P.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, P.sub(s0, P.mul(q, s1))
        c = Fraction(r1[0])
        return self.elem(P.scale(s1, 1 / c))

    def is_zero(self, a):
        return not any(a)

    def scale(self, c, a):
        return tuple(Fraction(c) * x for x in a)

    def norm(self, a):
        g = P.trim(a)
        if not g:
            return 0
        if self.degree == 1:
            return Fraction(a[0])
        return Fraction(P.resultant(self.poly, g))

    def trace(self, a):
        # power sums of the roots via Newton's identities
        return sum(Fraction(c) * s for c, s in zip(a, self.power_sums))

    @cached_property
    def power_sums(self):
        """Traces of 1, y, ..., y^(n-1)."""
        n = self.degree
        a = self.poly
        s = [Fraction(n)]
        for k in range(1, n):
            acc = Fraction(-k * a[n - k])
            for i in range(1, k):
                acc -= a[n - i] * s[k - i]
            s.append(acc)
        return s

    # integral structure --------------------------------------------------
    @cached_property
    def poly_disc(self):
        return P.discriminant(self.poly) if self.degree > 1 else 1

    @cached_property
    def _maximal(self):
        O = Order.power_basis(self.algebra)
        index = 1
        if self.degree > 1:
            for p, k in factor_integer(self.poly_disc):
                if k >= 2:
                    O, j = round2(O, p)
                    index *= p ** j
        basis = _canonical_basis(O.basis)
        return Order(self.algebra, basis), index

    @property
    def maximal_order(self):
        return self._maximal[0]

    @property
    def integral_basis(self):
        return [tuple(r) for r in self.maximal_order.basis]

    @property
    def index(self):
        return self._maximal[1]

    @cached_property
    def disc(self):
        return self.poly_disc // (self.index ** 2)

    @cached_property
    def disc_quotient(self):
        return self.index ** 2

    def to_order(self, a):
        return self.maximal_order.to_order(list(a))

    def from_order(self, v):
        return self.elem(self.maximal_order.to_algebra(v))

    def is_integral(self, a):
        return all(Fraction(c).denominator == 1 for c in self.to_order(a))

    # primes ------------------------------------------------------------
    @lru_cache(maxsize=None)
    def factor_prime(self, p):
        """Primes of the maximal order above p (sorted canonically)."""
        if self.index % p:
            return self._dedekind(p)
        return decompose(self.maximal_order, p)

    def factor_prime_by_orders(self, p):
        return decompose(self.maximal_order, p)

    def _dedekind(self, p):
        M = self.maximal_order
        n = self.degree
        F = FF.PrimeField(p)
        _, facs = FF.factor_mod_p(list(self.poly), F)
        def poly_elem(h):
            # h(theta) for h of degree possibly >= n, reduced mod the field polynomial
            r = P.rem(P.trim(h), self.poly) if len(h) > n else P.trim(h)
            vec = M.to_order(list(r) + [0] * (n - len(r)))
            return [_mod_p(x, p) for x in vec]

        primes = []
        fbar = FF.pfrom_ints(F, self.poly)
        for phi, e in facs:
            pe = [1]
            for _ in range(e):
                pe = FF.pmul(F, pe, phi)
            rest = FF.pdivmod(F, fbar, pe)[0]
            # idempotent: 1 mod phi^e, 0 mod rest
            s, t = _xgcd(F, pe, rest)
            idem = FF.prem(F, FF.pmul(F, t, rest), fbar)
            eps = poly_elem(idem)
            gen = poly_elem(phi)
            gens = [M.mul(gen, [int(i == j) for j in range(n)], p) for i in range(n)]
            rows = L.rref_mod_p(gens, p)[0]
            primes.append(PrimeOver(M, p, rows, eps, e, len(phi) - 1))
        primes.sort(key=lambda Q: (Q.f, Q.e, [list(r) for r in Q.rows_mod_p]))
        return primes

    def splitting_type(self, p):
        primes = self.factor_prime(p)
        if len(primes) == 1 and primes[0].f == self.degree:
            return "inert"
        if len(primes) == 1 and primes[0].e == self.degree:
            return "totally_ramified"
        return "other"

    def valuation(self, prime, a):
        return prime.valuation(self.to_order(a))

    def two_element(self, prime):
        """(p, alpha) with alpha in integral-basis coordinates."""
        return prime.p, [int(c) for c in prime.uniformizer_element]

    def prime_ideal_hnf(self, prime):
        return prime.hnf

    # real embeddings -----------------------------------------------------
    @cached_property
    def real_roots(self):
        """Isolating intervals of the real roots of m, ascending."""
        if self.degree == 1:
            r = Fraction(-self.poly[0])
            return [(r, r)]
        return isolate_real_roots(self.poly)

    @property
    def r1(self):
        return len(self.real_roots)

    @property
    def r2(self):
        return (self.degree - self.r1) // 2

    def sign_at(self, a, k):
        """Sign of a at the k-th real embedding (embeddings ordered by root)."""
        g = P.trim(a)
        if not g:
            return 0
        if self.degree == 1:
            v = g[0]
            return (v > 0) - (v < 0)
        return sign_at_root(g, self.poly, self.real_roots[k])

    def signs(self, a):
        return [self.sign_at(a, k) for k in range(self.r1)]

    def root_interval(self, k, width):
        if self.degree == 1:
            return self.real_roots[k]
        return refine(self.poly, self.real_roots[k], width)

    def eval_interval(self, a, k, width=Fraction(1, 2 ** 20)):
        lo, hi = self.root_interval(k, width)
        return interval_eval(P.trim(a), lo, hi)


def _mod_p(x, p):
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def _xgcd(F, a, b):
    r0, r1 = a, b
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = FF.pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, FF.psub(F, s0, FF.pmul(F, q, s1))
        t0, t1 = t1, FF.psub(F, t0, FF.pmul(F, q, t1))
    inv = F.inv(r0[0])
    return FF.pscale(F, s0, inv), FF.pscale(F, t0, inv)


RATIONALS = None


def rationals():
    global RATIONALS
    if RATIONALS is None:
        RATIONALS = NumberField((0, 1), name="Q")
    return RATIONALS


# polynomials over a number field -------------------------------------------

def kpoly(K, coeffs):
    """Polynomial over K from a list of coefficients (rationals or coordinate lists)."""
    return FF.ptrim(K, [K.elem(c) for c in coeffs])


def kpoly_is_rational(f):
    return all(not any(c[1:]) for c in f)


def kpoly_to_Q(f):
    return P.trim([c[0] for c in f])


def factor_over_field(K, f):
    """Monic irreducible factors of a squarefree monic f over K (Trager), with
    the shift s used.  Each factor is returned with the squarefree norm
    polynomial of x + s*y restricted to it.
    """
    if K.degree == 1:
        facs = factor_over_Q(kpoly_to_Q(f))
        out = []
        for g, k in facs:
            if k != 1:
                raise ValueError("polynomial is not squarefree")
            out.append((kpoly(K, g), tuple(g)))
        return out, 0
    d = len(f) - 1
    A = relative_algebra(K, f)
    for s in (0, 1, -1, 2, -2, 3, -3):
        z = [Fraction(0)] * A.dim
        xv = A.gen(1)
        yv = A.gen(0)
        z = [a + s * b for a, b in zip(xv, yv)]
        N = charpoly_in_algebra(A, z)
        if not P.is_squarefree(N):
            continue
        out = []
        for g, _ in factor_over_Q(N):
            # g(x + s y) as a polynomial over K
            shift = kpoly(K, [K.scale(s, K.gen()), K.one])
            acc = []
            for c in reversed(g):
                acc = FF.padd(K, FF.pmul(K, acc, shift), [K.elem(c)])
            h = FF.pgcd(K, f, acc)
            out.append((h, tuple(g)))
        out.sort(key=lambda t: (len(t[0]), [[float(x) for x in c] for c in reversed(t[0])]))
        assert sum(len(h) - 1 for h, _ in out) == d
        return out, s
    raise ArithmeticError("no squarefree norm found")


def relative_algebra(K, f):
    """TowerAlgebra for K[x]/(f) with f monic over K."""
    return TowerAlgebra([K.poly, [list(c) for c in f]])


def charpoly_in_algebra(A, z):
    """Characteristic polynomial over Q of multiplication by z."""
    n = A.dim
    rows = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        rows.append(A.mul(z, e))
    return P.trim(L.berkowitz(rows))
