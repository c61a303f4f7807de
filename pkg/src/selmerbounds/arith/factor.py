"""Factorization of polynomials over Q (Zassenhaus: factor mod p, Hensel lift, recombine)."""
from fractions import Fraction
from itertools import combinations
from math import isqrt

from . import poly as P
from .finite import PrimeField, factor_mod_p, pgcd, pfrom_ints, pderiv, pdivmod, pmul, psub, pscale


def _small_primes():
    p = 2
    while True:
        if all(p % q for q in range(2, isqrt(p) + 1)):
            yield p
        p += 1


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _mulm(f, g, m):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % m for c in out])


def _addm(f, g, m):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m for i in range(n)])


def _subm(f, g, m):
    return _addm(f, [-c for c in g], m)


def _divmodm(f, g, m):
    """Division by monic g modulo m."""
    r = [c % m for c in f]
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i] % m
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = (r[i - dg + j] - c * g[j]) % m
    return _trim(q), _trim(r[:dg])


def _xgcd_mod_p(a, b, p):
    """s, t with s a + t b = 1 over F_p (a, b coprime)."""
    F = PrimeField(p)
    r0, r1 = pfrom_ints(F, a), pfrom_ints(F, b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if len(r0) != 1:
        raise ArithmeticError("factors not coprime mod p")
    inv = F.inv(r0[0])
    return pscale(F, s0, inv), pscale(F, t0, inv)


def _hensel_pair(f, g, h, p, target):
    """Lift monic f = g h (mod p) to modulus >= target; g, h monic."""
    s, t = _xgcd_mod_p(g, h, p)
    m = p
    while m < target:
        m2 = m * m
        e = _subm(f, _mulm(g, h, m2), m2)
        q, r = _divmodm(_mulm(s, e, m2), h, m2)
        g = _addm(g, _addm(_mulm(t, e, m2), _mulm(q, g, m2), m2), m2)
        h = _addm(h, r, m2)
        b = _subm(_addm(_mulm(s, g, m2), _mulm(t, h, m2), m2), [1], m2)
        c, d = _divmodm(_mulm(s, b, m2), h, m2)
        s = _subm(s, d, m2)
        t = _subm(_subm(t, _mulm(t, b, m2), m2), _mulm(c, g, m2), m2)
        m = m2
    return g, h, m


def hensel_lift(f, factors, p, target):
    """Lift monic f = prod(factors) mod p to a modulus m >= target.

    Returns (lifted monic factors, m).
    """
    if len(factors) == 1:
        m = p
        while m < target:
            m *= m
        return [[c % m for c in f]], m
    k = len(factors) // 2
    A = [1]
    for h in factors[:k]:
        A = _mulm(A, h, p)
    B = [1]
    for h in factors[k:]:
        B = _mulm(B, h, p)
    m = p
    while m < target:
        m *= m
    fm = [c % m for c in f]
    A, B, m = _hensel_pair(fm, A, B, p, target)
    left, m1 = hensel_lift(A, factors[:k], p, target)
    right, m2 = hensel_lift(B, factors[k:], p, target)
    assert m1 == m2 == m
    return left + right, m


def _mignotte(f):
    n = P.deg(f)
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return 2 ** n * norm2 * abs(f[-1])


def _int_divides(g, f):
    q, r = P.divmod_(f, g)
    if r or not P.is_integral(q):
        return None
    return tuple(int(c) for c in q)


def _choose_prime(f, tries=5):
    best = None
    lead = f[-1]
    found = 0
    for p in _small_primes():
        if lead % p == 0:
            continue
        F = PrimeField(p)
        fp = pfrom_ints(F, f)
        if len(pgcd(F, fp, pderiv(F, fp))) > 1:
            continue
        _, facs = factor_mod_p(fp, F)
        if best is None or len(facs) < len(best[1]):
            best = (p, [g for g, _ in facs])
        found += 1
        if found >= tries or len(best[1]) == 1:
            return best


def factor_squarefree_primitive(f):
    """Irreducible factors over Z of a squarefree primitive integer polynomial."""
    f = tuple(f)
    if P.deg(f) <= 1:
        return [f]
    p, facs = _choose_prime(f)
    if len(facs) == 1:
        return [f]
    lead = f[-1]
    bound = 2 * _mignotte(f)
    # lift the monic associate of f
    m0 = p
    while m0 < bound:
        m0 *= m0
    inv = pow(lead, -1, m0)
    fm = [c * inv % m0 for c in f]
    lifted, m = hensel_lift(fm, facs, p, bound)
    out = []
    rest = f
    s = 1
    while 2 * s <= len(lifted):
        hit = False
        for S in combinations(range(len(lifted)), s):
            lead = rest[-1]
            g = [lead % m]
            for i in S:
                g = _mulm(g, lifted[i], m)
            g = P.trim([_sym(c, m) for c in g])
            g = P.primitive_part(g)
            q = _int_divides(g, rest)
            if q is not None:
                out.append(g)
                rest = q if q[-1] > 0 else tuple(-c for c in q)
                lifted = [h for i, h in enumerate(lifted) if i not in S]
                hit = True
                break
        if not hit:
            s += 1
    if P.deg(rest) > 0:
        out.append(P.primitive_part(rest))
    return out


def _sort_key(g):
    return (P.deg(g), tuple(reversed(g)))


def factor_over_Q_full(f):
    """Return (c, [(g, k), ...]) with f = c * prod g^k.

    Each g is an irreducible primitive integer polynomial with positive leading
    coefficient; sorted by degree then coefficients (leading coefficient first).
    """
    f = P.trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for g, k in P.squarefree_decomposition(f):
        for h in factor_squarefree_primitive(P.primitive_part(g)):
            out.append((h, k))
    out.sort(key=lambda t: (_sort_key(t[0]), t[1]))
    prod_ = (1,)
    for g, k in out:
        for _ in range(k):
            prod_ = P.mul(prod_, g)
    c = Fraction(f[-1]) / Fraction(prod_[-1])
    assert P.scale(prod_, c) == f
    return (c.numerator if c.denominator == 1 else c), out


def factor_over_Q(f):
    """Irreducible factors with multiplicities; see factor_over_Q_full."""
    return factor_over_Q_full(f)[1]


def is_irreducible_over_Q(f):
    facs = factor_over_Q(f)
    return len(facs) == 1 and facs[0][1] == 1


def rational_roots(f):
    return sorted(Fraction(-g[0], g[1]) for g, _ in factor_over_Q(f) if P.deg(g) == 1)
