"""Factorization of polynomials over p-adic fields and residue-field data.

Two kinds of base field are supported:

* ``LocalField``: an explicit tower Q_p(t)(pi), t a root of a monic integer
  polynomial irreducible mod p (unramified part) and pi a root of an
  Eisenstein polynomial over Z_p[t].
* ``Place``: the completion of a number field K at a prime v.

The shape of the factorization (ramification indices, residue degrees,
residue polynomials, trace data, cross-resultant valuations) is read off the
p-maximal order of O[x]/(p(x)) and is exact.  Factor polynomials are produced
from lifted idempotents at a working precision p^N, with N escalated when a
valuation cannot be certified.
"""
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .arith import poly as P
from .arith import linalg as L
from .arith.finite import PrimeField, ExtensionField, is_irreducible, pfrom_ints
from .orders import TowerAlgebra, Order, round2, decompose
from .numberfields import NumberField, rationals

DEFAULT_PRECISION_CAP = 2 ** 14
PRECISION_ENV = "SELMERBOUNDS_PADIC_CAP"


def precision_cap():
    raw = os.environ.get(PRECISION_ENV)
    if raw:
        return int(raw)
    return DEFAULT_PRECISION_CAP


class PrecisionExhausted(ArithmeticError):
    pass


class LocalField:
    """Q_p(t)(pi): unramified of degree f (modulus m), then Eisenstein E of degree e."""

    def __init__(self, p, modulus=None, eisenstein=None, precision=None):
        self.p = p
        if modulus is None:
            modulus = (0, 1)
        self.modulus = tuple(int(c) for c in modulus)
        self.f = len(self.modulus) - 1
        if self.modulus[-1] != 1:
            raise ValueError("unramified modulus must be monic")
        if self.f > 1 and not is_irreducible(pfrom_ints(PrimeField(p), self.modulus), PrimeField(p)):
            raise ValueError("unramified modulus must be irreducible mod p")
        levels = [list(self.modulus)]
        if eisenstein is not None:
            coeffs = [_tvec(c, self.f) for c in eisenstein]
            if coeffs[-1] != [1] + [0] * (self.f - 1):
                raise ValueError("Eisenstein polynomial must be monic")
            for c in coeffs[:-1]:
                if any(x % p for x in c):
                    raise ValueError("Eisenstein polynomial: lower coefficients must be divisible by p")
            if all(x % (p * p) == 0 for x in coeffs[0]):
                raise ValueError("Eisenstein polynomial: constant term must have valuation one")
            self.eisenstein = tuple(tuple(c) for c in coeffs)
            self.e = len(coeffs) - 1
            levels.append(coeffs)
        else:
            self.eisenstein = None
            self.e = 1
        self.levels = levels
        self.degree = self.e * self.f
        self.precision = precision
        self.algebra = TowerAlgebra(levels)
        self.base_order = Order.power_basis(self.algebra)

    def __repr__(self):
        return f"LocalField(p={self.p}, f={self.f}, e={self.e})"

    @cached_property
    def residue_field(self):
        if self.f == 1:
            return PrimeField(self.p)
        return ExtensionField(self.p, self.modulus)

    def elem(self, c):
        """Flat coordinate vector (t^j pi^i, t fastest) of an element of O_v."""
        n = self.degree
        if isinstance(c, int):
            return [c] + [0] * (n - 1)
        c = list(c)
        if c and isinstance(c[0], (list, tuple)):
            out = []
            for block in c:
                out.extend(_tvec(block, self.f))
            out += [0] * (n - len(out))
            return out
        return _tvec(c, self.f) + [0] * (n - self.f)

    def valuation(self, v):
        """Normalized valuation (v(pi) = 1) of an element given as a flat vector."""
        best = None
        p = self.p
        for i in range(self.e):
            block = v[i * self.f:(i + 1) * self.f]
            nz = [c for c in block if c]
            if not nz:
                continue
            val = self.e * min(L.vp(c, p) for c in nz) + i
            best = val if best is None else min(best, val)
        if best is None:
            raise ValueError("valuation of zero")
        return best

    def residue(self, v):
        """Image of an element of O_v in the residue field (coordinates in t)."""
        k = self.residue_field
        return k.from_coords([c % self.p for c in v[:self.f]])


def _tvec(c, f):
    if isinstance(c, int):
        return [c] + [0] * (f - 1)
    c = [int(x) for x in c]
    if len(c) > f:
        raise ValueError("coefficient has too many t-terms")
    return c + [0] * (f - len(c))


class Place:
    """The completion of a number field K at a prime v of its maximal order."""

    def __init__(self, K, prime):
        self.K = K
        self.prime = prime
        self.p = prime.p
        self.e = prime.e
        self.f = prime.f
        self.degree = self.e * self.f

    def __repr__(self):
        return f"Place({self.K.name}, p={self.p}, e={self.e}, f={self.f})"

    @property
    def residue_field(self):
        return self.prime.residue

    def label(self):
        idx = self.K.factor_prime(self.p).index(self.prime)
        return f"{self.p}.{idx}"


def places_above(K, p):
    return [Place(K, P_) for P_ in K.factor_prime(p)]


def rational_place(p):
    return places_above(rationals(), p)[0]


@dataclass
class LocalFactor:
    e: int
    f: int
    residue_poly: list          # coefficients over k (k-coordinates), monic, ascending
    trace: tuple                # Tr_{k_i/k}(T-bar) in k-coordinates
    poly: Optional[list] = None  # coefficients over O_v mod p^N (flat vectors), if available


@dataclass
class LocalFactorization:
    p: int
    base_e: int
    base_f: int
    factors: list
    cross_valuations: dict
    precision: int
    certified: bool
    index_exponent: int
    disc_valuation: int
    notes: list = field(default_factory=list)

    @property
    def r(self):
        return len(self.factors)

    def shape(self):
        return [(F.e, F.f) for F in self.factors]


# construction of O[x]/(p) -------------------------------------------------

def _setup(poly, base):
    """(algebra, order R = O_base[x]/(poly), residue basis elements, k, q)."""
    if isinstance(base, LocalField):
        nb = base.degree
        coeffs = [base.elem(c) for c in poly]
        algebra = TowerAlgebra(base.levels + [coeffs])
        R = Order.power_basis(algebra)
        k_basis = []
        for j in range(base.f):
            v = [0] * algebra.dim
            v[j] = 1
            k_basis.append(v)
        return algebra, R, nb, k_basis
    K = base.K
    nb = K.degree
    coeffs = [list(K.elem(c)) for c in poly]
    algebra = TowerAlgebra([list(K.poly), coeffs])
    d = len(poly) - 1
    basis = []
    for i in range(d):
        for w in K.integral_basis:
            v = [Fraction(0)] * algebra.dim
            v[i * nb:(i + 1) * nb] = list(w)
            basis.append(v)
    R = Order(algebra, basis)
    k_basis = []
    for idx in base.prime.residue.free:
        w = K.integral_basis[idx]
        v = [Fraction(0)] * algebra.dim
        v[:nb] = list(w)
        k_basis.append(v)
    return algebra, R, nb, k_basis


def _check_poly(poly, base):
    if len(poly) < 3:
        raise ValueError("local analysis needs a polynomial of degree at least 2")
    lead = poly[-1]
    if isinstance(base, LocalField):
        if base.elem(lead) != base.elem(1):
            raise ValueError("polynomial must be monic")
    else:
        if tuple(base.K.elem(lead)) != base.K.one:
            raise ValueError("polynomial must be monic")


class _Engine:
    """Shared state for the local analysis of one polynomial at one place."""

    def __init__(self, poly, base):
        _check_poly(poly, base)
        self.poly = list(poly)
        self.base = base
        self.p = base.p
        self.d = len(poly) - 1
        self.algebra, self.R, self.nb, self.k_basis = _setup(self.poly, base)
        disc = self.R.discriminant()
        if disc == 0:
            raise ValueError("polynomial is not separable")
        self.disc_vp = L.vp(disc, self.p)
        self.M, self.index_exponent = round2(self.R, self.p)
        primes = decompose(self.M, self.p)
        if isinstance(base, LocalField):
            self.primes = primes
        else:
            K = base.K
            _, alpha = K.two_element(base.prime)
            gamma = K.from_order(alpha)
            vec = [Fraction(0)] * self.algebra.dim
            vec[:self.nb] = list(gamma)
            g = self.M.to_order(vec)
            self.primes = [Q for Q in primes if not any(Q.residue.reduce_rational(g))]
        if not self.primes:
            raise AssertionError("no primes above the place")

    @cached_property
    def k(self):
        if isinstance(self.base, LocalField):
            return self.base.residue_field
        return self.base.prime.residue

    def k_coords(self, Q, u):
        """Express an element u of k_Q lying in k as coordinates in k's basis."""
        imgs = [list(Q.residue.reduce_rational(self.M.to_order(b))) for b in self.k_basis]
        sol = L.solve_mod_p(imgs, list(u), self.p)
        if sol is None:
            raise AssertionError("element does not lie in the base residue field")
        return tuple(sol)

    def factor_shape(self):
        base = self.base
        q = self.p ** base.f
        xvec = self.algebra.gen(len(self.algebra.degrees) - 1)
        xo = self.M.to_order(xvec)
        out = []
        for Q in self.primes:
            if Q.e % base.e or Q.f % base.f:
                raise AssertionError("inconsistent local degrees")
            e_i, f_i = Q.e // base.e, Q.f // base.f
            kQ = Q.residue
            tbar = kQ.reduce_rational(xo)
            conj = [tbar]
            for _ in range(f_i - 1):
                conj.append(kQ.pow(conj[-1], q))
            tr = conj[0]
            for c in conj[1:]:
                tr = kQ.add(tr, c)
            # residue polynomial prod (X - conj)
            rp = [kQ.one]
            for c in conj:
                new = [kQ.zero] * (len(rp) + 1)
                for i, a in enumerate(rp):
                    new[i + 1] = kQ.add(new[i + 1], a)
                    new[i] = kQ.sub(new[i], kQ.mul(a, c))
                rp = new
            out.append(LocalFactor(
                e=e_i, f=f_i,
                residue_poly=[self.k_coords(Q, c) for c in rp],
                trace=self.k_coords(Q, tr),
            ))
        return out

    def cross_valuations(self, N):
        """v(Res(p_i, p_j)) via lattice indices; None if precision is insufficient."""
        p = self.p
        m = p ** N
        Rrows = []
        for b in self.R.basis:
            c = self.M.to_order(b)
            Rrows.append([_mod(x, p, m) for x in c])
        eps = [Q.lifted_idempotent(N) for Q in self.primes]
        sizes = [Q.e * Q.f for Q in self.primes]

        def project(e):
            return [self.M.mul(e, r, m) for r in Rrows]

        def vol(rows, rank):
            vals = L.padic_elementary_valuations(rows, p, N)
            if len(vals) != rank:
                return None
            return sum(vals)

        single = []
        for e, s in zip(eps, sizes):
            v = vol(project(e), s)
            if v is None:
                return None
            single.append(v)
        out = {}
        fv = self.base.f
        r = len(eps)
        for i in range(r):
            for j in range(i + 1, r):
                e = [(a + b) % m for a, b in zip(eps[i], eps[j])]
                v = vol(project(e), sizes[i] + sizes[j])
                if v is None:
                    return None
                diff = v - single[i] - single[j]
                if diff % fv:
                    raise AssertionError("lattice index not a power of the residue field size")
                out[(i, j)] = diff // fv
        return out

    def factor_polys(self, N):
        """Factor polynomials over O_v modulo p^N (LocalField bases only)."""
        base = self.base
        p = self.p
        d = self.d
        nb = self.nb
        # denominators of the maximal order basis are powers of p
        den = 1
        for row in self.M.basis:
            for c in row:
                den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        a = L.vp(den, p) if den > 1 else 0
        if den != p ** a:
            raise AssertionError("unexpected denominator in a p-maximal order")
        Nint = N + a * (d + 1) + 1
        m = p ** Nint
        ring = Order.power_basis(base.algebra)
        xvec = self.algebra.gen(len(self.algebra.degrees) - 1)
        polys = []
        for Q in self.primes:
            eps = Q.lifted_idempotent(Nint + a)
            epsA = L.vec_mat(eps, self.M.basis)
            epsR = [int(c * den) % m for c in epsA]
            z = self.algebra.mul(xvec, epsR)
            rows = []
            for r in range(d):
                e = [0] * self.algebra.dim
                e[r * nb] = 1
                img = self.algebra.mul(e, z)
                img = [int(c) % m for c in img]
                rows.append([img[s * nb:(s + 1) * nb] for s in range(d)])

            def add(u, v):
                return [(x + y) % m for x, y in zip(u, v)]

            def mul(u, v):
                return ring.mul(u, v, m)

            def neg(u):
                return [(-x) % m for x in u]

            zero = [0] * nb
            one = [1] + [0] * (nb - 1)
            chi = L.berkowitz(rows, add, mul, neg, zero, one)
            di = Q.e * Q.f // base.degree
            coeffs = []
            mN = p ** N
            for j in range(di + 1):
                c = chi[d - j]
                scale = p ** (a * j)
                if any(x % scale for x in c):
                    raise PrecisionExhausted("factor coefficient not divisible as expected")
                coeffs.append([(x // scale) % mN for x in c])
            polys.append(list(reversed(coeffs)))
        return polys


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _mod(x, p, m):
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


_ENGINES = {}


def _base_key(base):
    if isinstance(base, LocalField):
        return ("local", base.p, base.modulus, base.eisenstein)
    return ("place", base.K.poly, base.p, tuple(tuple(r) for r in base.prime.rows_mod_p))


def _poly_key(poly):
    return tuple(tuple(c) if isinstance(c, (list, tuple)) else c for c in poly)


def engine(poly, base):
    """Cached local analysis state for (poly, base)."""
    if isinstance(base, Place) and base.K.degree == 1:
        base = LocalField(base.p)
        poly = [c[0] if isinstance(c, (list, tuple)) else c for c in poly]
        poly = [int(c) for c in poly]
    key = (_poly_key(poly), _base_key(base))
    eng = _ENGINES.get(key)
    if eng is None:
        if len(_ENGINES) > 512:
            _ENGINES.clear()
        eng = _ENGINES[key] = _Engine(poly, base)
    return eng


def local_factor(poly, base, precision=None, cap=None, want_polys=True):
    """Factor a monic separable polynomial over a local field.

    ``base`` is a LocalField or a Place.  Returns a LocalFactorization whose
    factor shape and residue data are exact; cross-resultant valuations and
    factor polynomials are computed at precision N, starting from
    2 v(disc) + 20 (or the explicit ``precision``) and doubling until the
    results are certified or the cap is reached.
    """
    eng = engine(poly, base)
    base = eng.base
    cap = cap or precision_cap()
    N = precision or getattr(base, "precision", None) or (2 * eng.disc_vp + 20)
    shape = eng.factor_shape()
    notes = []
    while True:
        cross = eng.cross_valuations(N)
        polys = None
        ok = cross is not None
        if ok and want_polys and isinstance(base, LocalField):
            try:
                polys = eng.factor_polys(N)
            except PrecisionExhausted:
                ok = False
        if ok:
            break
        if N * 2 > cap:
            notes.append(f"precision cap {cap} reached")
            return LocalFactorization(base.p, base.e, base.f, shape, {}, N, False,
                                      eng.index_exponent, eng.disc_vp, notes)
        N *= 2
    if polys is not None:
        for F, g in zip(shape, polys):
            F.poly = g
    return LocalFactorization(base.p, base.e, base.f, shape, cross, N, True,
                              eng.index_exponent, eng.disc_vp, notes)


# helpers on polynomials over O_v (LocalField) ----------------------------------

def ov_poly_mul(base, f, g, N):
    ring = base.base_order
    m = base.p ** N
    nb = base.degree
    out = [[0] * nb for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            c = ring.mul(a, b, m)
            out[i + j] = [(x + y) % m for x, y in zip(out[i + j], c)]
    return out


def ov_resultant(base, f, g, N):
    """Res(f, g) over O_v modulo p^N, as a flat vector (Sylvester determinant)."""
    ring = base.base_order
    m = base.p ** N
    nb = base.degree
    zero = [0] * nb
    S = []
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    for i in range(dg):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        S.append(row)
    for i in range(df):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        S.append(row)
    chi = L.berkowitz(
        S,
        lambda u, v: [(x + y) % m for x, y in zip(u, v)],
        lambda u, v: ring.mul(u, v, m),
        lambda u: [(-x) % m for x in u],
        zero, [1] + [0] * (nb - 1))
    c0 = chi[0]
    if size % 2:
        c0 = [(-x) % m for x in c0]
    return c0
