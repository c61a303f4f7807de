"""Exact linear algebra over Z, Q, F_p and Z/p^N.

Matrices are lists of rows.  Row-vector conventions throughout: a lattice or
subspace is the span of the rows, and a linear map is given by the images of
the standard basis vectors as rows.
"""
from fractions import Fraction
from math import gcd
import operator


def _lcm(a, b):
    return a * b // gcd(a, b)


def det(M):
    """Determinant of a square matrix with int or Fraction entries (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    scale = Fraction(1)
    A = []
    for row in M:
        den = 1
        for c in row:
            if isinstance(c, Fraction):
                den = _lcm(den, c.denominator)
        A.append([int(c * den) for c in row])
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    d = Fraction(sign * A[n - 1][n - 1]) / scale
    return d.numerator if d.denominator == 1 else d


def berkowitz(A, add=operator.add, mul=operator.mul, neg=operator.neg, zero=0, one=1):
    """Characteristic polynomial det(xI - A), ascending coefficients.

    Division free, so it works over any commutative ring given its operations.
    """
    n = len(A)
    if n == 0:
        return [one]
    p = [one, neg(A[n - 1][n - 1])]
    for k in range(n - 2, -1, -1):
        m = n - k - 1
        R = A[k][k + 1:]
        C = [A[i][k] for i in range(k + 1, n)]
        A1 = [row[k + 1:] for row in A[k + 1:]]
        t = [one, neg(A[k][k])]
        v = C
        for s in range(m):
            acc = zero
            for a, b in zip(R, v):
                acc = add(acc, mul(a, b))
            t.append(neg(acc))
            if s < m - 1:
                nv = []
                for row in A1:
                    acc = zero
                    for a, b in zip(row, v):
                        acc = add(acc, mul(a, b))
                    nv.append(acc)
                v = nv
        newp = []
        for i in range(m + 2):
            acc = zero
            for j in range(max(0, i - len(t) + 1), min(i, m) + 1):
                acc = add(acc, mul(t[i - j], p[j]))
            newp.append(acc)
        p = newp
    return list(reversed(p))


def hnf(rows, track=0):
    """Row Hermite normal form over Z.

    The last ``track`` columns are carried along modulo 2 and never used as
    pivots.  Returns ``(H, rest)``: H is the echelon basis of the projection
    onto the leading columns (pivots positive, entries above a pivot reduced
    into [0, pivot)); ``rest`` are the tracked parts of rows whose leading part
    vanished, reduced modulo 2.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    lead = ncols - track
    work = [list(r) for r in rows]
    if track:
        for r in work:
            for j in range(lead, ncols):
                r[j] %= 2
    H = []
    col = 0
    while col < lead and work:
        nz = [r for r in work if r[col] != 0]
        zero = [r for r in work if r[col] == 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            keep = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                if q:
                    for j in range(col, ncols):
                        r[j] -= q * piv[j]
                    if track:
                        for j in range(lead, ncols):
                            r[j] %= 2
                if r[col] != 0:
                    keep.append(r)
                else:
                    zero.append(r)
            nz = keep
        piv = nz[0]
        if piv[col] < 0:
            for j in range(col, ncols):
                piv[j] = -piv[j]
            if track:
                for j in range(lead, ncols):
                    piv[j] %= 2
        H.append(piv)
        work = zero
        col += 1
    rest = [r[lead:] for r in work]
    if track:
        rest = [[c % 2 for c in r] for r in rest]
    # reduce entries above pivots
    pivots = []
    for r in H:
        c = next(j for j in range(lead) if r[j] != 0)
        pivots.append(c)
    for i in range(len(H)):
        ci = pivots[i]
        for k in range(i):
            q = H[k][ci] // H[i][ci]
            if q:
                for j in range(ci, ncols):
                    H[k][j] -= q * H[i][j]
                if track:
                    for j in range(lead, ncols):
                        H[k][j] %= 2
    return H, rest


def hnf_basis(rows):
    return hnf(rows)[0]


def snf_diagonal(rows):
    """Smith normal form diagonal of an integer matrix (nonzero entries only)."""
    A = [list(r) for r in hnf_basis(rows)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pick smallest nonzero entry of the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    for j in range(t, n):
                        A[i][j] -= q * A[t][j]
                if A[i][t] != 0:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for i in range(t, m):
                        A[i][j] -= q * A[i][t]
                if A[t][j] != 0:
                    done = False
            if done:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, n):
                    A[t][j] += A[bad][j]
                continue
            # move smallest entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, m):
                if A[i][t] != 0 and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if A[t][j] != 0 and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelian_invariants(relations, ngens):
    """Invariants of Z^ngens / <relations>: list of cyclic orders (0 for Z).

    Trivial factors are dropped; the list is sorted so each entry divides the
    next (free factors last).
    """
    diag = snf_diagonal(relations) if relations else []
    diag = sorted(diag)
    inv = [d for d in diag if d != 1]
    inv += [0] * (ngens - len(diag))
    return inv


def mat_inverse(M):
    """Inverse of a square rational matrix."""
    n = len(M)
    A = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def vec_mat(v, M):
    """Row vector times matrix."""
    n = len(M[0]) if M else 0
    out = [0] * n
    for a, row in zip(v, M):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return out


def mat_mul(A, B):
    return [vec_mat(r, B) for r in A]


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    A = [[c % p for c in r] for r in rows]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod_p(rows, p):
    return len(rref_mod_p(rows, p)[0])


def left_kernel_mod_p(rows, p):
    """Basis of {x : x * rows = 0} over F_p."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    A, piv = rref_mod_p(aug, p)
    out = []
    for row in A:
        if all(x == 0 for x in row[:n]):
            out.append(row[n:])
    # rows of A with zero left part: rref may keep only pivot rows, so rebuild
    k = m - sum(1 for c in piv if c < n)
    if len(out) != k:
        raise AssertionError("kernel computation inconsistent")
    return out


def solve_mod_p(rows, v, p):
    """Some x with x * rows = v over F_p, or None."""
    m = len(rows)
    n = len(v)
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    A, piv = rref_mod_p(aug, p)
    target = [c % p for c in v]
    x = [0] * m
    for row, c in zip(A, piv):
        if c >= n:
            break
        f = target[c]
        if f:
            target = [(a - f * b) % p for a, b in zip(target, row[:n])]
            x = [(a + f * b) % p for a, b in zip(x, row[n:])]
    if any(target):
        return None
    return x


def vp(n, p):
    """p-adic valuation of a nonzero integer or rational."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_elementary_valuations(rows, p, N):
    """Elementary divisor valuations of a matrix over Z/p^N.

    Returns the sorted valuations of the diagonal entries that are nonzero
    modulo p^N.
    """
    mod = p ** N
    A = [[c % mod for c in r] for r in rows]
    if not A:
        return []
    m, n = len(A), len(A[0])
    out = []

    def val(c):
        return N if c == 0 else vp(c, p)

    t = 0
    while t < min(m, n):
        best, bv = None, N
        for i in range(t, m):
            for j in range(t, n):
                c = A[i][j]
                if c:
                    v = val(c)
                    if v < bv:
                        best, bv = (i, j), v
                        if v == 0:
                            break
            if bv == 0:
                break
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        piv = A[t][t]
        unit = piv // p ** bv
        uinv = pow(unit, -1, mod)
        for i in range(t + 1, m):
            if A[i][t]:
                f = (A[i][t] // p ** bv) * uinv % mod
                A[i] = [(a - f * b) % mod for a, b in zip(A[i], A[t])]
        for i in range(t + 1, m):
            A[i][t] = 0
        # column operations only touch row t beyond this point
        out.append(bv)
        for j in range(t + 1, n):
            A[t][j] = 0
        t += 1
    return sorted(out)


def solve_echelon(H, v):
    """x with x * H = v for a square upper-triangular (echelon) H."""
    x = [Fraction(0)] * len(H)
    r = [Fraction(c) for c in v]
    for i, row in enumerate(H):
        c = next(j for j, a in enumerate(row) if a != 0)
        f = r[c] / row[c]
        x[i] = f
        if f:
            for j in range(c, len(row)):
                r[j] -= f * row[j]
    if any(r):
        raise ArithmeticError("vector not in the row span")
    return [int(a) if a.denominator == 1 else a for a in x]
