"""Orders in finite etale Q-algebras.

A ``TowerAlgebra`` is Q[y_0][y_1]...[y_k]/(monic relations), each relation
monic in its own variable with coefficients in the previous levels.  An
``Order`` is a full-rank Z-lattice in such an algebra closed under
multiplication, stored through integer structure constants.  The module
provides p-maximal orders (Round 2), prime decomposition over p, residue
fields, lifted idempotents and valuations.  Number fields and local fields
both sit on top of this.
"""
from fractions import Fraction
from functools import cached_property

from .arith import linalg as L
from .arith.finite import PrimeField, factor_mod_p


def _as_frac_vec(v):
    return [Fraction(c) for c in v]


class TowerAlgebra:
    """Q-algebra presented by a tower of monic polynomials.

    ``levels[0]`` is a list of rationals (ascending).  ``levels[l]`` for l > 0
    is a list of coefficients, each either a rational (scalar) or a flat
    vector in the algebra of the lower levels.  Flat vectors index monomials
    with the lowest level varying fastest.
    """

    def __init__(self, levels):
        self.levels = []
        self.degrees = []
        size = 1
        for lev in levels:
            coeffs = []
            for c in lev:
                if isinstance(c, (list, tuple)):
                    v = _as_frac_vec(c) + [Fraction(0)] * (size - len(c))
                    if len(v) != size:
                        raise ValueError("coefficient vector too long")
                else:
                    v = [Fraction(c)] + [Fraction(0)] * (size - 1)
                coeffs.append(v)
            lead = coeffs[-1]
            if lead[0] != 1 or any(lead[1:]):
                raise ValueError("tower relations must be monic")
            self.levels.append(coeffs)
            d = len(coeffs) - 1
            if d < 1:
                raise ValueError("tower relations must have positive degree")
            self.degrees.append(d)
            size *= d
        self.dim = size

    def _mul(self, k, a, b):
        """Product at level k (flat vectors of size prod(degrees[:k+1]))."""
        if k < 0:
            return [a[0] * b[0]]
        low = 1
        for d in self.degrees[:k]:
            low *= d
        d = self.degrees[k]
        A = [a[i * low:(i + 1) * low] for i in range(d)]
        B = [b[i * low:(i + 1) * low] for i in range(d)]
        prod_ = [[0] * low for _ in range(2 * d - 1)]
        for i in range(d):
            if not any(A[i]):
                continue
            for j in range(d):
                if not any(B[j]):
                    continue
                c = self._mul(k - 1, A[i], B[j])
                t = prod_[i + j]
                for s in range(low):
                    t[s] += c[s]
        rel = self.levels[k]
        for i in range(2 * d - 2, d - 1, -1):
            c = prod_[i]
            if not any(c):
                continue
            for j in range(d):
                t = self._mul(k - 1, c, rel[j])
                row = prod_[i - d + j]
                for s in range(low):
                    row[s] -= t[s]
        out = []
        for i in range(d):
            out.extend(prod_[i])
        return out

    def mul(self, a, b):
        return self._mul(len(self.degrees) - 1, list(a), list(b))

    def one(self):
        return [Fraction(1)] + [Fraction(0)] * (self.dim - 1)

    def gen(self, level):
        """The generator y_level as a flat vector."""
        stride = 1
        for d in self.degrees[:level]:
            stride *= d
        v = [Fraction(0)] * self.dim
        v[stride] = Fraction(1)
        return v

    def embed(self, level, vec):
        """Flat vector of the sub-algebra of levels < level, viewed in the whole algebra."""
        v = _as_frac_vec(vec)
        return v + [Fraction(0)] * (self.dim - len(v))


class Order:
    """Z-order given by a basis (rows, rational coordinates in the algebra)."""

    def __init__(self, algebra, basis, table=None):
        self.algebra = algebra
        self.basis = [_as_frac_vec(r) for r in basis]
        self.n = len(self.basis)
        if table is None:
            table = self._compute_table()
        self.table = table

    @cached_property
    def basis_inverse(self):
        return L.mat_inverse(self.basis)

    def _compute_table(self):
        inv = self.basis_inverse
        T = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                prod_ = self.algebra.mul(self.basis[i], self.basis[j])
                c = L.vec_mat(prod_, inv)
                if any(x.denominator != 1 for x in c):
                    raise ValueError("basis does not span a ring")
                row.append([int(x) for x in c])
            T.append(row)
        return T

    @classmethod
    def power_basis(cls, algebra):
        n = algebra.dim
        return cls(algebra, [[int(i == j) for j in range(n)] for i in range(n)])

    # arithmetic in order coordinates ----------------------------------
    def mul(self, u, v, mod=None):
        n = self.n
        out = [0] * n
        T = self.table
        for i in range(n):
            a = u[i]
            if not a:
                continue
            Ti = T[i]
            for j in range(n):
                b = v[j]
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(Ti[j]):
                    if c:
                        out[k] += ab * c
        if mod is not None:
            out = [c % mod for c in out]
        return out

    def pow(self, u, e, mod=None):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, u, mod)
            u = self.mul(u, u, mod)
            e >>= 1
        return r

    @cached_property
    def one(self):
        c = self.to_order(self.algebra.one())
        return [int(x) for x in c]

    def to_order(self, vec):
        """Coordinates of an algebra element in this basis (rational)."""
        c = L.vec_mat(_as_frac_vec(vec), self.basis_inverse)
        return [x.numerator if x.denominator == 1 else x for x in c]

    def to_algebra(self, coords):
        return L.vec_mat(coords, self.basis)

    def mult_matrix(self, u):
        """Rows: coordinates of u * b_j."""
        n = self.n
        rows = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            rows.append(self.mul(u, e))
        return rows

    def norm(self, u):
        return L.det(self.mult_matrix(u))

    def trace(self, u):
        M = self.mult_matrix(u)
        return sum(M[i][i] for i in range(self.n))

    def discriminant(self):
        n = self.n
        E = [[int(i == j) for j in range(n)] for i in range(n)]
        return L.det([[self.trace(self.mul(E[i], E[j])) for j in range(n)] for i in range(n)])

    def sublattice_order(self, rows, den):
        """The order with basis rows/den (order coordinates, rows echelon).

        Structure constants are computed from this order's table.
        """
        n = self.n
        H = rows
        T = []
        for i in range(n):
            row = []
            for j in range(n):
                prod_ = self.mul(H[i], H[j])
                c = L.solve_echelon(H, prod_)
                out = []
                for x in c:
                    x = Fraction(x) / den
                    if x.denominator != 1:
                        raise ValueError("lattice is not a ring")
                    out.append(int(x))
                row.append(out)
            T.append(row)
        basis = [[Fraction(x) / den for x in v] for v in L.mat_mul(H, self.basis)]
        return Order(self.algebra, basis, T)


# p-maximal orders -----------------------------------------------------------

def _frob_exponent(p, n):
    q = p
    while q < n:
        q *= p
    return q


def radical_mod_p(order, p):
    """Basis mod p (rref) of the p-radical I_p / pO."""
    n = order.n
    q = _frob_exponent(p, n)
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append(order.pow(e, q, p))
    ker = L.left_kernel_mod_p(rows, p)
    return L.rref_mod_p(ker, p)[0] if ker else []


def _lattice_with_p(rows_mod_p, p, n):
    gens = [list(r) for r in rows_mod_p] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    return L.hnf_basis(gens)


def round2(order, p, max_iter=200):
    """p-maximal order containing ``order``, and the exponent k with index p^k."""
    k = 0
    O = order
    for _ in range(max_iter):
        n = O.n
        I = _lattice_with_p(radical_mod_p(O, p), p, n)
        cols = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            row = []
            for w in I:
                c = L.solve_echelon(I, O.mul(e, w))
                row.extend(int(x) % p for x in c)
            cols.append(row)
        ker = L.left_kernel_mod_p(cols, p)
        if not ker:
            return O, k
        U = _lattice_with_p(ker, p, n)
        step = sum(L.vp(U[i][i], p) for i in range(n))
        k += n - step
        O = O.sublattice_order(U, p)
    raise ArithmeticError("Round 2 did not terminate")


# residue algebras and prime decomposition -----------------------------------

class ResidueAlgebra:
    """O / I for an ideal pO <= I <= O, with I / pO given by rref rows mod p."""

    def __init__(self, order, p, rref_rows):
        self.order = order
        self.p = p
        self.rows, self.pivots = L.rref_mod_p(rref_rows, p) if rref_rows else ([], [])
        piv = set(self.pivots)
        self.free = [i for i in range(order.n) if i not in piv]
        self.dim = len(self.free)
        self.order_size = p ** self.dim
        self.zero = tuple([0] * self.dim)

    def reduce(self, v):
        """Image of an order element (integer coordinates) in O/I."""
        p = self.p
        v = [int(c) % p for c in v]
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return tuple(v[i] for i in self.free)

    def reduce_rational(self, v):
        """Image of an element with p-integral rational coordinates."""
        p = self.p
        out = []
        for c in v:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ValueError("element is not p-integral")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return self.reduce(out)

    def lift(self, u):
        v = [0] * self.order.n
        for i, c in zip(self.free, u):
            v[i] = c
        return v

    @cached_property
    def one(self):
        return self.reduce(self.order.one)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def scale(self, c, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        return self.reduce(self.order.mul(self.lift(a), self.lift(b), self.p))

    def pow(self, a, e):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def is_zero(self, a):
        return not any(a)

    def basis_elements(self):
        out = []
        for k in range(self.dim):
            u = [0] * self.dim
            u[k] = 1
            out.append(tuple(u))
        return out

    def minpoly(self, a):
        """Minimal polynomial over F_p (ascending ints, monic)."""
        p = self.p
        powers = [self.one]
        while True:
            x = self.mul(powers[-1], a)
            rel = L.solve_mod_p([list(v) for v in powers], list(x), p)
            if rel is not None:
                return [(-c) % p for c in rel] + [1]
            powers.append(x)

    # field operations (valid when I is prime)
    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order_size - 2)

    def frobenius(self, a, power=1):
        return self.pow(a, self.p ** power)

    def trace_to_prime(self, a):
        s = a
        x = a
        for _ in range(self.dim - 1):
            x = self.frobenius(x)
            s = self.add(s, x)
        one = self.one
        k = next(i for i, c in enumerate(one) if c)
        c = s[k] * pow(one[k], -1, self.p) % self.p
        if self.scale(c, one) != s:
            raise AssertionError("trace not in the prime field")
        return c

    def elements(self):
        from itertools import product
        return [tuple(c) for c in product(range(self.p), repeat=self.dim)]


class PrimeOver:
    """A prime ideal P of a p-maximal order above p."""

    def __init__(self, order, p, rows_mod_p, idempotent, e, f):
        self.order = order
        self.p = p
        self.rows_mod_p = rows_mod_p
        self.idempotent = idempotent
        self.e = e
        self.f = f
        self.residue = ResidueAlgebra(order, p, rows_mod_p)

    def __repr__(self):
        return f"PrimeOver(p={self.p}, e={self.e}, f={self.f})"

    @cached_property
    def hnf(self):
        return _lattice_with_p(self.rows_mod_p, self.p, self.order.n)

    @cached_property
    def norm(self):
        return self.p ** self.f

    @cached_property
    def beta(self):
        """Element b of O \\ pO with b P contained in pO."""
        p, O = self.p, self.order
        n = O.n
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            row = []
            for w in self.hnf:
                row.extend(O.mul(e, w, p))
            rows.append(row)
        ker = L.left_kernel_mod_p(rows, p)
        if not ker:
            raise AssertionError("no inverse-different element found")
        return ker[0]

    def contains(self, v):
        return not any(self.residue.reduce(v))

    def valuation(self, v):
        """P-adic valuation of an element with rational coordinates."""
        den = 1
        for c in v:
            if isinstance(c, Fraction):
                den = den * c.denominator // _gcd(den, c.denominator)
        num = [int(Fraction(c) * den) for c in v]
        if not any(num):
            raise ValueError("valuation of zero")
        k = 0
        p = self.p
        # strip common factors of p first
        while all(c % p == 0 for c in num):
            num = [c // p for c in num]
            k += self.e
        beta = self.beta
        while True:
            y = self.order.mul(num, beta)
            if any(c % p for c in y):
                break
            num = [c // p for c in y]
            k += 1
        dv = L.vp(den, p) if den % p == 0 else 0
        return k - self.e * dv

    def lifted_idempotent(self, N):
        """The idempotent of this prime's component, modulo p^N."""
        return lift_idempotent(self.order, self.idempotent, self.p, N)

    @cached_property
    def uniformizer_element(self):
        """Element alpha with P = (p, alpha)."""
        x = None
        for w in self.hnf:
            if self.valuation(w) == 1:
                x = w
                break
        if x is None:
            raise AssertionError("no element of valuation one in the basis")
        p = self.p
        eps = self.lifted_idempotent(2)
        one = self.order.one
        xe = self.order.mul(x, eps)
        alpha = [(a + o - b) for a, o, b in zip(xe, one, eps)]
        m = p * p
        alpha = [((c + m // 2) % m) - m // 2 for c in alpha]
        return alpha


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lift_idempotent(order, eps, p, N):
    """Lift an idempotent mod p to one mod p^N (iterating e -> 3e^2 - 2e^3)."""
    m = p ** N
    e = [c % m for c in eps]
    for _ in range(200):
        e2 = order.mul(e, e, m)
        if e2 == e:
            return e
        e3 = order.mul(e2, e, m)
        e = [(3 * a - 2 * b) % m for a, b in zip(e2, e3)]
    raise ArithmeticError("idempotent lifting did not converge")


def decompose(order, p):
    """Primes of a p-maximal order above p, sorted by (f, e, residue data)."""
    n = order.n
    rad = radical_mod_p(order, p)
    B = ResidueAlgebra(order, p, rad)
    # Berlekamp subalgebra {a : a^p = a}
    rows = []
    for u in B.basis_elements():
        rows.append(list(B.sub(B.pow(u, p), u)))
    ker = L.left_kernel_mod_p(rows, p) if rows else []
    g = len(ker)
    idems = [B.one]
    F = PrimeField(p)
    for z in ker:
        if len(idems) == g:
            break
        z = tuple(c % p for c in z)
        new = []
        for e in idems:
            ze = B.mul(z, e)
            # minimal polynomial of ze inside eB, whose unit is e
            powers = [e]
            while True:
                x = B.mul(powers[-1], ze)
                rel = L.solve_mod_p([list(v) for v in powers], list(x), p)
                if rel is not None:
                    mu = [(-c) % p for c in rel] + [1]
                    break
                powers.append(x)
            _, facs = factor_mod_p(mu, F)
            roots = [(-h[0]) % p for h, _ in facs]
            if len(roots) == 1:
                new.append(e)
                continue
            for c in roots:
                acc = e
                for c2 in roots:
                    if c2 == c:
                        continue
                    num = B.sub(ze, B.scale(c2, e))
                    acc = B.scale(pow(c - c2, -1, p), B.mul(acc, num))
                new.append(acc)
        idems = new
    if len(idems) != g:
        raise AssertionError("idempotent splitting incomplete")
    primes = []
    for eb in idems:
        eps = lift_idempotent(order, B.lift(eb), p, 1)
        one = order.one
        comp = [(o - c) % p for o, c in zip(one, eps)]
        gens = list(rad)
        for i in range(n):
            ei = [0] * n
            ei[i] = 1
            gens.append(order.mul(comp, ei, p))
        Prows = L.rref_mod_p(gens, p)[0]
        f = n - len(Prows)
        span = [order.mul(eps, [int(i == j) for j in range(n)], p) for i in range(n)]
        ef = L.rank_mod_p(span, p)
        if ef % f:
            raise AssertionError("inconsistent ramification data")
        primes.append(PrimeOver(order, p, Prows, eps, ef // f, f))
    primes.sort(key=lambda P: (P.f, P.e, [list(r) for r in P.rows_mod_p]))
    return primes
