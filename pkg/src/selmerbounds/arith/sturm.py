"""Real root isolation by Sturm sequences, with exact rational intervals.

Isolating intervals are open intervals (lo, hi) with rational endpoints at
which the polynomial does not vanish; each contains exactly one real root.
"""
from fractions import Fraction

from . import poly as P


def sturm_sequence(f):
    seq = [P.trim(f), P.deriv(f)]
    while seq[-1]:
        r = P.rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(P.neg(r))
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def sign_changes(seq, x):
    signs = [_sign(P.evaluate(g, x)) for g in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(f):
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(Fraction(f[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in f[:-1]), default=Fraction(0)) + 1


def _nudge(f, lo, hi, mid):
    """A point near mid, strictly between lo and hi, where f does not vanish."""
    if P.evaluate(f, mid) != 0:
        return mid
    k = 2
    while True:
        for cand in (mid + (hi - lo) / 2 ** k, mid - (hi - lo) / 2 ** k):
            if lo < cand < hi and P.evaluate(f, cand) != 0:
                return cand
        k += 1


def isolate_real_roots(f):
    """Disjoint isolating intervals for the real roots of squarefree f, ascending."""
    f = P.trim(f)
    if P.deg(f) < 1:
        return []
    if not P.is_squarefree(f):
        raise ValueError("isolate_real_roots needs a squarefree polynomial")
    seq = sturm_sequence(f)
    B = Fraction(root_bound(f))
    lo, hi = -B, B
    out = []
    stack = [(lo, hi, sign_changes(seq, lo), sign_changes(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = _nudge(f, a, b, (a + b) / 2)
        vm = sign_changes(seq, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.sort()
    return out


def count_roots(f, a, b):
    """Number of real roots of squarefree f in (a, b), f(a) f(b) != 0."""
    seq = sturm_sequence(f)
    return sign_changes(seq, a) - sign_changes(seq, b)


def refine(f, interval, width):
    """Shrink an isolating interval of f until hi - lo <= width."""
    lo, hi = interval
    slo = _sign(P.evaluate(f, lo))
    width = Fraction(width)
    while hi - lo > width:
        m = _nudge(f, lo, hi, (lo + hi) / 2)
        sm = _sign(P.evaluate(f, m))
        if sm == slo:
            lo = m
        else:
            hi = m
    return lo, hi


def interval_eval(g, lo, hi):
    """Enclosure of {g(x) : lo <= x <= hi} by naive interval Horner."""
    a = b = Fraction(0)
    for c in reversed(g):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


def sign_at_root(g, f, interval):
    """Sign of g at the root of f isolated by interval.  g must not vanish there."""
    lo, hi = interval
    width = hi - lo
    for _ in range(400):
        a, b = interval_eval(g, lo, hi)
        if a > 0:
            return 1
        if b < 0:
            return -1
        width = width / 16 if width else Fraction(1)
        lo, hi = refine(f, (lo, hi), width)
    raise ArithmeticError("sign undetermined; is g zero at the root?")
