"""Finite fields F_p and F_q = F_p[t]/(m(t)), and polynomial factorization over them.

Elements of F_p are ints in [0, p).  Elements of F_q are tuples of length
deg(m) holding coefficients of 1, t, t^2, ...  Polynomials over a field are
lists of elements in ascending degree order, trimmed.
"""
import random
from functools import lru_cache
from itertools import product


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.char = p
        self.degree = 1
        self.order = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def elem(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def is_zero(self, a):
        return a == 0

    def coords(self, a):
        return (a,)

    def from_coords(self, v):
        return v[0] % self.p

    def elements(self):
        return list(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)

    def trace(self, a):
        return a


class ExtensionField:
    """F_p[t]/(m) for a monic irreducible m given as a tuple of ints."""

    def __init__(self, p, modulus):
        self.p = p
        self.char = p
        self.modulus = tuple(c % p for c in modulus)
        self.degree = len(self.modulus) - 1
        if self.modulus[-1] != 1 or self.degree < 1:
            raise ValueError("modulus must be monic of positive degree")
        self.order = p ** self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        self._gen = None

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("GFq", self.p, self.modulus))

    def gen(self):
        if self.degree == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    def elem(self, c):
        if isinstance(c, int):
            return (c % self.p,) + (0,) * (self.degree - 1)
        c = list(c) + [0] * (self.degree - len(c))
        return self._reduce([x % self.p for x in c])

    def _reduce(self, c):
        p, m, k = self.p, self.modulus, self.degree
        c = list(c)
        for i in range(len(c) - 1, k - 1, -1):
            f = c[i] % p
            if f:
                for j in range(k + 1):
                    c[i - k + j] = (c[i - k + j] - f * m[j]) % p
        c = [x % p for x in c[:k]]
        c += [0] * (k - len(c))
        return tuple(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        prod_ = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod_[i + j] += x * y
        return self._reduce(prod_)

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)

    def coords(self, a):
        return a

    def from_coords(self, v):
        return self.elem(tuple(v))

    def elements(self):
        return [tuple(c) for c in product(range(self.p), repeat=self.degree)]

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def trace(self, a):
        """Absolute trace to F_p, as an int."""
        s = a
        x = a
        for _ in range(self.degree - 1):
            x = self.frobenius(x)
            s = self.add(s, x)
        if any(s[1:]):
            raise AssertionError("trace not in prime field")
        return s[0]


def make_field(p, modulus=None):
    return PrimeField(p) if modulus is None else ExtensionField(p, modulus)


# polynomials over a field -------------------------------------------------

def ptrim(F, f):
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def pfrom_ints(F, f):
    return ptrim(F, [F.elem(c) for c in f])


def padd(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return ptrim(F, [F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def psub(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return ptrim(F, [F.sub(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def pmul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return ptrim(F, out)


def pscale(F, f, c):
    return ptrim(F, [F.mul(c, a) for a in f])


def pdivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = F.mul(r[i], inv)
        if not F.is_zero(c):
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return ptrim(F, q), ptrim(F, r[:dg])


def prem(F, f, g):
    return pdivmod(F, f, g)[1]


def pmonic(F, f):
    if not f:
        return f
    return pscale(F, f, F.inv(f[-1]))


def pgcd(F, f, g):
    while g:
        f, g = g, prem(F, f, g)
    return pmonic(F, f)


def pderiv(F, f):
    return ptrim(F, [F.mul(F.elem(i), f[i]) for i in range(1, len(f))])


def ppowmod(F, f, n, m):
    r = [F.one]
    f = prem(F, f, m)
    while n:
        if n & 1:
            r = prem(F, pmul(F, r, f), m)
        f = prem(F, pmul(F, f, f), m)
        n >>= 1
    return r


def peval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, f):
    """g with g^p = f, for f a polynomial in x^p."""
    p = F.char
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        # the inverse of Frobenius on F_q is Frobenius^(k-1)
        out.append(F.pow(c, F.order // p) if F.degree > 1 else c)
    return ptrim(F, out)


def squarefree_factorization(F, f):
    """List of (g, k), g monic squarefree, with f = lc * prod g^k."""
    f = pmonic(F, f)
    out = []
    if len(f) <= 1:
        return out
    _sqf(F, f, 1, out)
    merged = {}
    for g, k in out:
        key = k
        merged[key] = pmul(F, merged[key], g) if key in merged else g
    return sorted(((g, k) for k, g in merged.items() if len(g) > 1), key=lambda t: t[1])


def _sqf(F, f, mult, out):
    p = F.char
    d = pderiv(F, f)
    if not d:
        _sqf(F, _pth_root(F, f), mult * p, out)
        return
    c = pgcd(F, f, d)
    w = pdivmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if len(z) > 1:
            out.append((z, i * mult))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if len(c) > 1:
        _sqf(F, _pth_root(F, c), mult * p, out)


def distinct_degree_factorization(F, f):
    """f monic squarefree -> list of (g, d) where g is the product of degree-d factors."""
    q = F.order
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, q, f)
        g = pgcd(F, f, psub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(F, f, g)[0]
            h = prem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree_factorization(F, f, d, rng):
    """Split monic squarefree f, all of whose factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.order
    while True:
        a = ptrim(F, [F.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.char == 2:
            # trace map a + a^2 + ... + a^(2^(kd-1)), k = log2 q
            k = F.degree * d
            t = a
            s = a
            for _ in range(k - 1):
                t = prem(F, pmul(F, t, t), f)
                s = padd(F, s, t)
            b = s
        else:
            b = psub(F, ppowmod(F, a, (q ** d - 1) // 2, f), [F.one])
        g = pgcd(F, f, b)
        if 1 < len(g) < len(f):
            h = pdivmod(F, f, g)[0]
            return (equal_degree_factorization(F, g, d, rng)
                    + equal_degree_factorization(F, h, d, rng))


def _key(F, g):
    return (len(g), [F.coords(c) for c in reversed(g)])


def factor_mod_p(f, F):
    """Factor f over the finite field F.

    Returns ``(lc, [(g, k), ...])`` with monic irreducible g sorted by degree
    then coefficients.  Randomized splitting uses a seeded generator, and the
    output is sorted, so the result is deterministic.
    """
    if isinstance(F, int):
        F = PrimeField(F)
    f = ptrim(F, [c if isinstance(c, tuple) else F.elem(c) for c in f])
    if not f:
        raise ValueError("cannot factor zero")
    lead = f[-1]
    rng = random.Random(0x5eed ^ len(f))
    out = []
    for g, k in squarefree_factorization(F, f):
        for h, d in distinct_degree_factorization(F, g):
            for piece in equal_degree_factorization(F, h, d, rng):
                out.append((piece, k))
    out.sort(key=lambda t: (_key(F, t[0]), t[1]))
    return lead, out


def is_irreducible(f, F):
    """Rabin's test for f over F."""
    f = pmonic(F, ptrim(F, f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    x = [F.zero, F.one]
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    for r in primes:
        h = ppowmod(F, x, q ** (n // r), f)
        if len(pgcd(F, f, psub(F, h, x))) > 1:
            return False
    return not psub(F, ppowmod(F, x, q ** n, f), x)


@lru_cache(maxsize=None)
def standard_modulus(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficients are compared from the x^(k-1) term down to the constant term,
    each in [0, p).  Returned ascending as a tuple of ints.
    """
    if k < 1:
        raise ValueError("degree must be positive")
    F = PrimeField(p)
    for tail in product(range(p), repeat=k):
        poly = list(reversed(tail)) + [1]
        if poly[0] == 0 and k > 1:
            continue
        if is_irreducible(poly, F):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")
