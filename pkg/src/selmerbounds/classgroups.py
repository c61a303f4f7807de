"""Class groups with sign data, and the class group Cl_*(A, C) of an etale algebra.

Class data for a number field L is a presentation: generators (prime ideals),
relations (exponent vectors of principal ideals (alpha) together with the
signs of alpha at the real embeddings), and the sign vectors of a generating
set of units modulo squares.  Sign vectors use 1 for a negative value and
columns ordered by the ascending real roots of the field's defining
polynomial.

From presentations of the factor fields K_i of A = K[x]/(p) one gets
Cl_*(A, C) as a quotient of (sum of the ideal groups) + Q, where Q is the
sign space of A modulo the marked-root subspace: one F_2 coordinate per pair
of real roots at each real place of K.
"""
import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np
from sympy import primerange

from .arith import linalg as L
from .arith import poly as P
from .numberfields import NumberField, factor_integer
from .schemas import SchemaError, validate_document
from .orders import Order

CLASSDATA_SCHEMA = "selmerbounds.classdata/1"


class ClassDataError(ValueError):
    pass


class UnsupportedField(ValueError):
    pass


@dataclass
class ClassGroupData:
    field_poly: tuple
    invariants: list
    generators: list            # [p, e, f, alpha (integral-basis coordinates)]
    relations: list             # [(exponents, sign_vector)]
    unit_signs: list            # sign vectors of units (including -1)
    source: str
    r1: int
    digest: Optional[str] = None
    flags: dict = field(default_factory=dict)
    declared_narrow: Optional[int] = None

    @property
    def class_number(self):
        return math.prod(self.invariants) if self.invariants else 1

    def narrow_invariants(self):
        return presentation_invariants(
            len(self.generators), self.r1,
            [(e, s) for e, s in self.relations],
            self.unit_signs)

    @property
    def narrow_class_number(self):
        return math.prod(self.narrow_invariants() or [1])

    def two_rank(self):
        return sum(1 for d in self.invariants if d % 2 == 0)

    def to_json(self):
        return {
            "schema": CLASSDATA_SCHEMA,
            "field": {"poly": list(self.field_poly)},
            "invariants": list(self.invariants),
            "generators": [[g[0], g[1], g[2], list(g[3])] for g in self.generators],
            "relations": [{"exponents": list(e), "sign_vector": list(s)} for e, s in self.relations],
            "units": {"sign_matrix": [list(s) for s in self.unit_signs]},
            "narrow_class_number": self.narrow_class_number,
            "source": self.source,
            "flags": dict(sorted(self.flags.items())),
        }


def presentation_invariants(ngens, nsign, relations, unit_signs):
    """Invariants of (Z^ngens + F_2^nsign) / relations: the narrow-type group."""
    rows = []
    for e, s in relations:
        rows.append(list(e) + [c % 2 for c in s])
    for s in unit_signs:
        rows.append([0] * ngens + [c % 2 for c in s])
    for k in range(nsign):
        rows.append([0] * ngens + [2 * int(k == j) for j in range(nsign)])
    if ngens + nsign == 0:
        return []
    if not rows:
        return L.abelian_invariants([], ngens + nsign)
    return L.abelian_invariants(rows, ngens + nsign)


# import / export ------------------------------------------------------------

def _check_chain(inv):
    for d in inv:
        if not isinstance(d, int) or d < 2:
            raise ClassDataError(f"invariant factors must be integers >= 2 (got {d!r})")
    for a, b in zip(inv, inv[1:]):
        if b % a:
            raise ClassDataError(f"invariant factors must form a divisibility chain: {a} does not divide {b}")


def parse_class_data(obj, raw=None):
    """Validate an imported class-data document and build ClassGroupData."""
    if not isinstance(obj, dict):
        raise ClassDataError("class data must be a JSON object")
    try:
        poly = tuple(int(c) for c in obj["field"]["poly"])
    except (KeyError, TypeError, ValueError):
        raise ClassDataError("field.poly must be a list of integers (ascending)")
    if len(poly) < 2 or poly[-1] != 1:
        raise ClassDataError("field.poly must be monic of positive degree")
    inv = obj.get("invariants")
    if not isinstance(inv, list):
        raise ClassDataError("invariants must be a list")
    _check_chain(inv)
    if "source" not in obj or not isinstance(obj["source"], str):
        raise ClassDataError("source must be a string")
    K = NumberField(poly)
    r1 = K.r1
    gens = obj.get("generators", [])
    rels_raw = obj.get("relations", [])
    declared = obj.get("narrow_class_number")
    h = math.prod(inv) if inv else 1
    # With h+ = h the units realise every sign vector, so sign data may be omitted.
    signs_free = declared is not None and declared == h
    units = obj.get("units", {}).get("sign_matrix")
    missing = f"missing sign data at real embeddings {list(range(r1))} of {P.to_str(poly)}"
    rels = []
    for k, rel in enumerate(rels_raw):
        e = rel.get("exponents")
        s = rel.get("sign_vector")
        if s is None:
            if r1 and not signs_free:
                raise ClassDataError(f"relation {k}: {missing}")
            s = [0] * r1
        if not isinstance(e, list) or len(e) != len(gens):
            raise ClassDataError(f"relation {k}: exponents must have one entry per generator")
        if len(s) != r1:
            raise ClassDataError(f"relation {k}: sign_vector must have {r1} entries")
        rels.append((tuple(int(x) for x in e), tuple(int(x) % 2 for x in s)))
    flags = {"imported": True}
    if units is None:
        if r1 and not signs_free:
            raise ClassDataError(f"units: {missing}")
        units = [[int(i == j) for j in range(r1)] for i in range(r1)]
        if r1:
            flags["unit_signs_inferred_from_narrow_class_number"] = True
    for k, s in enumerate(units):
        if len(s) != r1:
            raise ClassDataError(f"units.sign_matrix row {k} must have {r1} entries")
    unit_signs = [tuple(int(x) % 2 for x in s) for s in units]
    if r1 and tuple([1] * r1) not in unit_signs:
        unit_signs.append(tuple([1] * r1))
    if gens or rels:
        found = L.abelian_invariants([list(e) for e, _ in rels], len(gens))
        if found != list(inv):
            raise ClassDataError(f"relations present the group {found}, not the declared {inv}")
    elif inv:
        raise ClassDataError("a nontrivial class group needs generators and relations")
    for g in gens:
        if not (isinstance(g, list) and len(g) == 4):
            raise ClassDataError("generators must be [p, e, f, alpha] entries")
    digest = hashlib.sha256((raw if raw is not None else json.dumps(obj, sort_keys=True)).encode()).hexdigest()
    data = ClassGroupData(
        field_poly=poly, invariants=list(inv), generators=[tuple(g) for g in gens],
        relations=rels, unit_signs=unit_signs, source=obj["source"], r1=r1,
        digest=digest, flags=flags, declared_narrow=declared,
    )
    if data.declared_narrow is not None and data.declared_narrow != data.narrow_class_number:
        raise ClassDataError(
            f"declared narrow class number {data.declared_narrow} disagrees with the sign data "
            f"({data.narrow_class_number})")
    return data


def load_class_data(path):
    """All class-data documents in a file (a single object or a list)."""
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise ClassDataError(f"{path}: {exc.strerror}")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ClassDataError(f"{path}: line {exc.lineno}: {exc.msg}")
    docs = obj if isinstance(obj, list) else [obj]
    out = []
    for k, doc in enumerate(docs):
        try:
            try:
                validate_document(doc, "classdata")
            except SchemaError as exc:
                raise ClassDataError(str(exc))
            out.append(parse_class_data(doc, raw if len(docs) == 1 else json.dumps(doc, sort_keys=True)))
        except ClassDataError as exc:
            where = f"{path}" if len(docs) == 1 else f"{path}[{k}]"
            raise ClassDataError(f"{where}: {exc}")
    for d in out:
        d.flags["file"] = os.path.basename(str(path))
    return out


def import_class_data(path):
    docs = load_class_data(path)
    if len(docs) != 1:
        raise ClassDataError(f"{path}: expected a single class-data document")
    return docs[0]


# affine matching of defining polynomials ------------------------------------

def _rational_root(x, k):
    """Rational k-th roots of a positive or negative rational x (list)."""
    x = Fraction(x)
    out = []
    for sign in (1, -1):
        if x < 0 and k % 2 == 0:
            continue
        a, b = abs(x.numerator), x.denominator
        ra, rb = _iroot(a, k), _iroot(b, k)
        if ra is None or rb is None:
            continue
        r = Fraction(ra, rb) * (1 if x > 0 else -1) if k % 2 else Fraction(ra, rb)
        out.append(r * sign)
        if k % 2:
            break
    return out


def _iroot(n, k):
    if n == 0:
        return 0
    r = int(round(n ** (1.0 / k)))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    lo, hi = 0, n
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid ** k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def affine_relation(F, G):
    """(lam, c) with roots(G) = lam * roots(F) + c, or None.  F, G monic."""
    F, G = P.trim(F), P.trim(G)
    n = P.deg(F)
    if n != P.deg(G):
        return None
    if n == 1:
        return (Fraction(1), Fraction(-G[0]) + Fraction(F[0]))
    sF, sG = Fraction(F[n - 1]) / n, Fraction(G[n - 1]) / n
    Ft, Gt = P.translate(F, -sF), P.translate(G, -sG)
    cands = [Fraction(1)]
    for k in range(n - 1, -1, -1):
        fk = Fraction(Ft[k]) if k < len(Ft) else Fraction(0)
        if fk:
            gk = Fraction(Gt[k]) if k < len(Gt) else Fraction(0)
            if not gk:
                return None
            cands = _rational_root(gk / fk, n - k)
            break
    cands.sort(key=lambda x: (x < 0, abs(x)))
    for lam in cands:
        if P.rescale(Ft, lam) == Gt:
            # G(x) has roots lam*(r_F + sF) - sG ... recover c from root sums
            c = -sG + lam * sF
            return (lam, c)
    return None


# builtin computation -----------------------------------------------------------

def minkowski_bound(K):
    n = K.degree
    r2 = K.r2
    return math.factorial(n) / n ** n * (4 / math.pi) ** r2 * math.sqrt(abs(K.disc))


def _embedding_matrix(K):
    """Real matrix whose rows are Minkowski embeddings of the integral basis."""
    coeffs = [float(c) for c in reversed(K.poly)]
    roots = np.roots(coeffs) if K.degree > 1 else np.array([-float(K.poly[0])])
    real = sorted(r.real for r in roots if abs(r.imag) < 1e-9)
    cplx = sorted((r for r in roots if r.imag > 1e-9), key=lambda z: (z.real, z.imag))
    rows = []
    for w in K.integral_basis:
        vals = []
        for t in real:
            vals.append(sum(float(c) * t ** j for j, c in enumerate(w)))
        for t in cplx:
            z = sum(float(c) * t ** j for j, c in enumerate(w))
            vals.append(math.sqrt(2) * z.real)
            vals.append(math.sqrt(2) * z.imag)
        rows.append(vals)
    return np.array(rows, dtype=float)


def lll(basis_int, E, delta=0.75):
    """LLL-reduce integer row vectors (coordinates) with respect to the embedding E."""
    B = [list(r) for r in basis_int]
    n = len(B)
    if n <= 1:
        return B

    def vec(i):
        return np.array(B[i], dtype=float) @ E

    def gso():
        bs, mu = [], np.zeros((n, n))
        for i in range(n):
            v = vec(i)
            w = v.copy()
            for j in range(i):
                mu[i, j] = v @ bs[j] / (bs[j] @ bs[j])
                w = w - mu[i, j] * bs[j]
            bs.append(w)
        return bs, mu

    k = 1
    bs, mu = gso()
    guard = 0
    while k < n and guard < 10000:
        guard += 1
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k, j]))
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                bs, mu = gso()
        if bs[k] @ bs[k] >= (delta - mu[k, k - 1] ** 2) * (bs[k - 1] @ bs[k - 1]):
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return B


def _candidates(n, count):
    """Nonzero coefficient vectors by increasing sup norm; first nonzero entry positive."""
    out = []
    r = 1
    while len(out) < count and r < 64:
        for c in product(range(-r, r + 1), repeat=n):
            if max(abs(x) for x in c) != r:
                continue
            first = next(x for x in c if x)
            if first < 0:
                continue
            out.append(c)
            if len(out) >= count:
                break
        r += 1
    return out


class _RelationSearch:
    def __init__(self, K):
        self.K = K
        self.M = K.maximal_order
        self.n = K.degree
        self.B = minkowski_bound(K)
        Bint = int(math.floor(self.B * (1 + 1e-12) + 1e-9))
        self.Bint = Bint
        fb = []
        for p in map(int, primerange(2, Bint + 1)):
            for Pr in K.factor_prime(p):
                if Pr.norm <= Bint:
                    fb.append(Pr)
        self.fb = fb
        self.fb_primes = sorted({Pr.p for Pr in fb})
        self.E = _embedding_matrix(K)
        self.relations = {}

    def try_element(self, alpha):
        if not any(alpha):
            return
        N = self.M.norm(alpha)
        if N == 0:
            return
        rest = abs(int(N))
        vps = {}
        for p in self.fb_primes:
            if rest % p == 0:
                k = 0
                while rest % p == 0:
                    rest //= p
                    k += 1
                vps[p] = k
        if rest != 1:
            return
        exps = [0] * len(self.fb)
        for p, k in vps.items():
            tot = 0
            for idx, Pr in enumerate(self.fb):
                if Pr.p == p:
                    v = Pr.valuation(alpha)
                    exps[idx] = v
                    tot += v * Pr.f
            if tot != k:
                return
        signs = tuple(1 if s < 0 else 0 for s in self.K.signs(self.K.from_order(alpha)))
        key = (tuple(exps), signs)
        if key not in self.relations:
            self.relations[key] = [int(c) for c in alpha]

    def search_lattice(self, rows, count):
        red = lll(rows, self.E)
        for c in _candidates(len(red), count):
            alpha = [0] * self.n
            for a, r in zip(c, red):
                if a:
                    alpha = [x + a * y for x, y in zip(alpha, r)]
            self.try_element(alpha)

    def run(self, effort):
        n = self.n
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        self.search_lattice(ident, effort)
        for Pr in self.fb:
            self.search_lattice(Pr.hnf, max(effort // 8, 30))


def class_group_builtin(K, effort=400, max_rounds=6, max_degree=6, max_disc=10 ** 8):
    """Class group with sign data from a Minkowski-bound relation search.

    The relation lattice is enlarged (effort doubled) until the group and the
    unit sign rank are unchanged by a doubling.  The computed group surjects
    onto the true class group, so its order is a certified multiple of h;
    completeness of relations and of unit signs is heuristic beyond that.
    """
    if not isinstance(K, NumberField):
        K = NumberField(K)
    n = K.degree
    if n > max_degree or abs(K.disc) > max_disc:
        raise UnsupportedField(
            f"builtin class groups are limited to degree <= {max_degree} and |disc| <= {max_disc}; "
            "supply imported class data for this field")
    r1 = K.r1
    if n == 1:
        return ClassGroupData(K.poly, [], [], [], [(1,)], "builtin (rational field)", 1,
                              flags={"class_number_certified": True, "narrow_certified": True,
                                     "stable": True, "effort": 0, "minkowski_bound": 1})
    S = _RelationSearch(K)
    prev = None
    e = effort
    result = None
    for rnd in range(max_rounds):
        S.run(e)
        rels = list(S.relations.keys())
        ngen = len(S.fb)
        rows = [list(ex) + list(sg) for ex, sg in rels]
        if ngen:
            rank = len(L.hnf_basis([list(ex) for ex, _ in rels])) if rels else 0
        else:
            rank = 0
        H, rest = L.hnf(rows, track=r1) if rows else ([], [])
        usigns = [tuple(s) for s in rest if any(s)]
        usigns.append(tuple([1] * r1))
        ub = L.rref_mod_p([list(s) for s in usigns], 2)[0] if r1 else []
        if rank == ngen:
            inv = L.abelian_invariants([list(ex) for ex, _ in rels], ngen)
            state = (tuple(inv), len(ub))
            result = (inv, H, ub, rank)
            if state == prev:
                break
            prev = state
        e *= 2
    else:
        if result is None:
            raise ArithmeticError("relation search did not reach full rank")
    inv, H, ub, _ = result
    gens = []
    for Pr in S.fb:
        p, alpha = K.two_element(Pr)
        gens.append((p, Pr.e, Pr.f, tuple(alpha)))
    relations = [(tuple(r[:len(S.fb)]), tuple(c % 2 for c in r[len(S.fb):])) for r in H]
    h = math.prod(inv) if inv else 1
    data = ClassGroupData(
        field_poly=K.poly, invariants=list(inv), generators=gens, relations=relations,
        unit_signs=[tuple(s) for s in ub], source=f"builtin Minkowski-bound relation search (effort {e})",
        r1=r1,
        flags={
            "minkowski_bound": round(S.B, 6),
            "factor_base_size": len(S.fb),
            "class_number_multiple_certified": h,
            "class_number_certified": h == 1,
            "odd_class_number_certified": h % 2 == 1,
            "unit_signs_heuristic": True,
            "stable": prev is not None and (tuple(inv), len(ub)) == prev,
            "effort": e,
        })
    return data


# Cl_* of an etale algebra ------------------------------------------------------

@dataclass
class ClStarResult:
    invariants: list
    two_rank: int
    q_dim: int
    plain_two_rank: int
    narrow_two_rank: int
    pairing: list

    def to_json(self):
        return {
            "invariants": self.invariants,
            "two_rank": self.two_rank,
            "sign_quotient_dim": self.q_dim,
            "class_group_two_rank": self.plain_two_rank,
            "narrow_class_group_two_rank": self.narrow_two_rank,
            "pairing": self.pairing,
        }


def align_class_data(data, field_poly):
    """Permutation of sign columns taking data's embedding order to field_poly's.

    Returns a list perm with perm[j] = data column for our embedding j.
    """
    rel = affine_relation(field_poly, data.field_poly)
    if rel is None:
        raise ClassDataError(
            f"class data field {P.to_str(data.field_poly)} is not an affine transform of "
            f"{P.to_str(field_poly)}")
    lam, _ = rel
    r1 = data.r1
    return list(range(r1)) if lam > 0 else list(range(r1 - 1, -1, -1))


def cl_star(datas, pairs, perms=None, mode="pairing"):
    """Cl_*(A, C) from per-factor class data.

    ``pairs``: list of ((i1, j1), (i2, j2)) real embeddings paired at the real
    places of K.  mode "plain" ignores signs, "narrow" uses all signs.
    """
    perms = perms or [list(range(d.r1)) for d in datas]
    offsets = []
    ng = 0
    for d in datas:
        offsets.append(ng)
        ng += len(d.generators)
    if mode == "plain":
        coords = []
    elif mode == "narrow":
        coords = [("single", i, j) for i, d in enumerate(datas) for j in range(d.r1)]
    else:
        coords = [("pair", a, b) for a, b in pairs]
    m = len(coords)

    def q_image(i, s):
        s2 = [s[perms[i][j]] for j in range(len(perms[i]))]
        out = []
        for c in coords:
            if c[0] == "single":
                out.append(s2[c[2]] if c[1] == i else 0)
            else:
                _, (i1, j1), (i2, j2) = c
                v = (s2[j1] if i1 == i else 0) + (s2[j2] if i2 == i else 0)
                out.append(v % 2)
        return out

    rows = []
    for i, d in enumerate(datas):
        for e, s in d.relations:
            row = [0] * ng
            row[offsets[i]:offsets[i] + len(e)] = list(e)
            rows.append(row + q_image(i, s))
        for s in d.unit_signs:
            rows.append([0] * ng + q_image(i, s))
    for k in range(m):
        rows.append([0] * ng + [2 * int(k == j) for j in range(m)])
    total = ng + m
    inv = L.abelian_invariants(rows, total) if total else []
    if 0 in inv:
        raise ClassDataError("class data do not present a finite group")
    return inv, m


def cl_star_report(datas, pairs, perms=None):
    inv, m = cl_star(datas, pairs, perms, "pairing")
    pinv, _ = cl_star(datas, pairs, perms, "plain")
    ninv, _ = cl_star(datas, pairs, perms, "narrow")

    def tr(x):
        return sum(1 for d in x if d % 2 == 0)

    return ClStarResult(inv, tr(inv), m, tr(pinv), tr(ninv),
                        [[list(a), list(b)] for a, b in pairs])


class ClassDataProvider:
    """Class data per field: imported documents first, then the builtin search."""

    def __init__(self, imported=(), builtin=True, effort=400):
        self.imported = list(imported)
        self.builtin = builtin
        self.effort = effort
        self._cache = {}

    def get(self, field_poly):
        """(ClassGroupData, sign-column permutation) for the field of field_poly."""
        field_poly = tuple(int(c) for c in field_poly)
        if field_poly in self._cache:
            return self._cache[field_poly]
        known = self.imported + [d for d, _ in self._cache.values()
                                  if not d.flags.get("imported")]
        for d in known:
            if d.r1 == 0 and len(d.field_poly) != len(field_poly):
                continue
            if affine_relation(field_poly, d.field_poly) is not None:
                res = (d, align_class_data(d, field_poly))
                break
        else:
            if not self.builtin:
                raise ClassDataError(f"no class data for the field {P.to_str(field_poly)}")
            try:
                d = class_group_builtin(NumberField(field_poly), effort=self.effort)
            except UnsupportedField as exc:
                raise ClassDataError(f"field {P.to_str(field_poly)}: {exc}")
            res = (d, list(range(d.r1)))
        self._cache[field_poly] = res
        return res
