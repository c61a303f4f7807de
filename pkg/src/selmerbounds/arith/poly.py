"""Dense univariate polynomials over Q.

A polynomial is a tuple of coefficients in ascending degree order, trimmed so
the last entry is nonzero.  The zero polynomial is the empty tuple.
Coefficients are ``int`` or ``fractions.Fraction``; functions never produce
floats.
"""
from fractions import Fraction
from math import gcd

from .linalg import det


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(_norm(c) for c in f)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def deg(f):
    return len(f) - 1 if f else -1


def lc(f):
    return f[-1] if f else 0


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f):
    return tuple(-c for c in f)


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    return trim([c * a for a in f])


def mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def divmod_(f, g):
    """Quotient and remainder of f by nonzero g over Q."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in f]
    dg = len(g) - 1
    inv = Fraction(1) / Fraction(g[-1])
    q = [Fraction(0)] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i] * inv
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] -= c * g[j]
    return trim(q), trim(r[:dg])


def rem(f, g):
    return divmod_(f, g)[1]


def exact_div(f, g):
    q, r = divmod_(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(f):
    if not f:
        return f
    c = Fraction(f[-1])
    return trim([Fraction(a) / c for a in f])


def gcd_(f, g):
    """Monic gcd over Q."""
    while g:
        f, g = g, rem(f, g)
    return monic(f)


def deriv(f):
    return trim([i * f[i] for i in range(1, len(f))])


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return _norm(acc) if isinstance(acc, Fraction) else acc


def compose(f, g):
    acc = ()
    for c in reversed(f):
        acc = add(mul(acc, g), (c,) if c else ())
    return acc


def translate(f, c):
    """f(x + c)."""
    return compose(f, trim((c, 1)))


def rescale(f, a):
    """a^deg(f) * f(x / a); the defining polynomial of a * root."""
    d = deg(f)
    return trim([f[i] * a ** (d - i) for i in range(d + 1)])


def content(f):
    """Positive rational content, so f / content(f) is primitive integral."""
    if not f:
        return 0
    num = 0
    den = 1
    for c in f:
        c = Fraction(c)
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den)


def primitive_part(f):
    """Primitive integer polynomial with positive leading coefficient."""
    if not f:
        return f
    c = content(f)
    if f[-1] < 0:
        c = -c
    return tuple(int(Fraction(a) / c) for a in f)


def is_integral(f):
    return all(Fraction(c).denominator == 1 for c in f)


def squarefree_decomposition(f):
    """Yun's algorithm: list of (g_k, k) with f = lc * prod g_k^k, g_k monic squarefree."""
    out = []
    if deg(f) < 1:
        return out
    f = monic(f)
    df = deriv(f)
    a = gcd_(f, df)
    b = exact_div(f, a)
    c = exact_div(df, a)
    d = sub(c, deriv(b))
    k = 1
    while deg(b) > 0:
        a = gcd_(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, deriv(b))
        if deg(a) > 0:
            out.append((a, k))
        k += 1
    return out


def is_squarefree(f):
    return deg(gcd_(f, deriv(f))) == 0


def squarefree_part(f):
    return exact_div(monic(f), gcd_(f, deriv(f)))


def sylvester(f, g):
    m, n = deg(f), deg(g)
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f, g):
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f."""
    if not f or not g:
        return 0
    m, n = deg(f), deg(g)
    if m == 0:
        return _norm(Fraction(f[0]) ** n)
    if n == 0:
        return _norm(Fraction(g[0]) ** m)
    return det(sylvester(f, g))


def discriminant(f):
    """(-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = deg(f)
    if d < 1:
        raise ValueError("discriminant needs positive degree")
    if d == 1:
        return 1
    r = Fraction(resultant(f, deriv(f))) / Fraction(f[-1])
    if (d * (d - 1) // 2) % 2:
        r = -r
    return _norm(r)


def to_str(f, var="x"):
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            term = mono
        elif mono and c == -1:
            term = "-" + mono
        elif mono:
            term = f"{c}*{mono}"
        else:
            term = str(c)
        parts.append(term)
    s = " + ".join(parts)
    return s.replace("+ -", "- ")
