"""Local hypotheses for the Selmer bound: finite places and archimedean data.

At a finite place v the key condition is that the local order O_v[T] splits
as the product of the O_v[T_i] over the irreducible factors p_i of p over
K_v; equivalently all cross resultants Res(p_i, p_j) are v-units.  Above 2
the trace vectors t_i = Tr(T-bar_i) in the residue field k_v control the
index of the image of the units.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import linalg as L
from .localfields import LocalField, Place, local_factor, engine, places_above
from .numberfields import factor_integer
from .orders import round2

HOLDS = "holds"
FAILS = "fails"
UNDECIDED = "undecided"


@dataclass
class DaggerVerdict:
    place: str
    p: int
    verdict: str
    method: str
    r_v: Optional[int] = None
    cross_valuations: dict = field(default_factory=dict)
    witness: Optional[list] = None
    precision: Optional[int] = None

    def to_json(self):
        return {
            "place": self.place,
            "p": self.p,
            "verdict": self.verdict,
            "method": self.method,
            "r_v": self.r_v,
            "cross_resultant_valuations": {f"{i},{j}": v for (i, j), v in sorted(self.cross_valuations.items())},
            "witness": self.witness,
            "working_precision": self.precision,
        }


@dataclass
class PlaceReport:
    place: str
    p: int
    r_v: int
    ramification: list
    residue_degrees: list
    residue_polys: list
    traces: list
    dim_V: int
    V_basis: list
    star: bool
    dagger_i: DaggerVerdict
    u4_index_exponent: int
    phi_W_dim: int
    S_basis: list
    local_dims: Optional[tuple]
    local_degree: int

    def to_json(self):
        return {
            "place": self.place,
            "p": self.p,
            "r_v": self.r_v,
            "ramification_indices": self.ramification,
            "residue_degrees": self.residue_degrees,
            "residue_polynomials": [[list(c) for c in q] for q in self.residue_polys],
            "traces": [list(t) for t in self.traces],
            "dim_V": self.dim_V,
            "V_basis": [list(v) for v in self.V_basis],
            "star": self.star,
            "dagger_i": self.dagger_i.to_json(),
            "u4_over_w_index": 2 ** self.u4_index_exponent,
            "phi_W_dim": self.phi_W_dim,
            "S_basis": self.S_basis,
            "local_dims": list(self.local_dims) if self.local_dims else None,
            "local_degree": self.local_degree,
        }


def place_label(base):
    if isinstance(base, LocalField):
        return f"{base.p}" if base.degree == 1 else f"{base.p}(f={base.f},e={base.e})"
    if base.K.degree == 1:
        return str(base.p)
    return base.label()


def _poly_for(curve):
    if curve.K.degree == 1:
        return [int(c[0]) for c in curve.poly]
    return list(curve.poly)


def _base_for(curve, place):
    if isinstance(place, int):
        if curve.K.degree != 1:
            raise ValueError("an integer place is only meaningful over Q")
        return LocalField(place)
    if isinstance(place, Place) and place.K.degree == 1:
        return LocalField(place.p)
    return place


# (dagger.i) -------------------------------------------------------------------

def check_dagger_i_poly(poly, base, precision=None):
    """(dagger.i) for a monic separable polynomial over a local base."""
    label = place_label(base)
    p = base.p
    eng = engine(poly, base)
    if eng.disc_vp == 0:
        return DaggerVerdict(label, p, HOLDS, "unramified", r_v=len(eng.primes))
    r = len(eng.primes)
    if r == 1:
        return DaggerVerdict(label, p, HOLDS, "single-factor", r_v=1)
    if eng.index_exponent == 0:
        return DaggerVerdict(label, p, HOLDS, "maximal-order", r_v=r)
    lf = local_factor(poly, base, precision=precision, want_polys=False)
    if not lf.certified:
        return DaggerVerdict(label, p, UNDECIDED, "cross-resultant", r_v=r,
                             precision=lf.precision)
    bad = sorted(k for k, v in lf.cross_valuations.items() if v > 0)
    verdict = FAILS if bad else HOLDS
    return DaggerVerdict(label, p, verdict, "cross-resultant", r_v=r,
                         cross_valuations=dict(lf.cross_valuations),
                         witness=[list(b) for b in bad] or None,
                         precision=lf.precision)


def check_dagger_i(curve, place, precision=None):
    base = _base_for(curve, place)
    return check_dagger_i_poly(_poly_for(curve), base, precision)


def index_support(curve):
    """{q: k} with [O_A : O_K[T]] = prod q^k (only q with k > 0)."""
    R = curve.algebra.order
    disc = curve.algebra.order_disc
    out = {}
    for q, k in factor_integer(disc):
        if k >= 2:
            _, j = round2(R, q)
            if j:
                out[q] = j
    return out


def finite_places_report(curve, precision=None):
    """(dagger.i) verdicts: places above 2 and above every prime dividing the index."""
    K = curve.K
    support = index_support(curve)
    primes = sorted(set(support) | {2})
    out = []
    for q in primes:
        for pl in places_above(K, q):
            if q not in support:
                out.append(DaggerVerdict(place_label(pl), q, HOLDS, "maximal-order"))
            else:
                out.append(check_dagger_i(curve, pl, precision))
    return out, support


# the span V above 2 ---------------------------------------------------------

def _rank_f2(vectors):
    rows = [list(v) for v in vectors if any(v)]
    return L.rref_mod_p(rows, 2)[0] if rows else []


def compute_V(curve_or_poly, place):
    """(dim V, rref basis of V, traces) at a place above 2."""
    if hasattr(curve_or_poly, "poly"):
        poly, base = _poly_for(curve_or_poly), _base_for(curve_or_poly, place)
    else:
        poly, base = curve_or_poly, place
    if base.p != 2:
        raise ValueError("the span V is defined at places above 2")
    lf = local_factor(poly, base, want_polys=False)
    traces = [F.trace for F in lf.factors]
    basis = _rank_f2(traces)
    # sum of e_i t_i vanishes
    s = [0] * len(traces[0])
    for F in lf.factors:
        if F.e % 2:
            s = [(a + b) % 2 for a, b in zip(s, F.trace)]
    if any(s):
        if not _in_prime(poly[-2], base):
            raise ValueError("a_{d-1} must lie in the prime above 2; translate x first")
        raise AssertionError("trace relation violated")
    return len(basis), basis, lf


def _in_prime(c, base):
    """Does the integral coefficient c lie in the maximal ideal of the base?"""
    if isinstance(base, LocalField):
        coords = [c] if not isinstance(c, (list, tuple)) else list(c)
        # the ideal is 2 O only when unramified; ramified bases are not normalized here
        return all(Fraction(x) % base.p == 0 for x in coords) if base.e == 1 else True
    c = list(c) if isinstance(c, (list, tuple)) else [c]
    a = base.K.elem(c + [0] * (base.K.degree - len(c)))
    return not any(a) or base.K.valuation(base.prime, a) > 0


def s_space_basis(ram):
    """Basis of {s in F_2^r : sum e_i s_i = 0}."""
    r = len(ram)
    rows = [[e % 2] for e in ram]
    return L.left_kernel_mod_p(rows, 2)


def phi_W(traces, k):
    """The set {(Tr_{k/F_2}(t_i v))_i : v in k} for the residue field k."""
    ts = [_kelem(k, t) for t in traces]
    out = set()
    for v in k.elements():
        out.add(tuple(_ktrace(k, k.mul(t, v)) for t in ts))
    return out


def _kelem(k, coords):
    if hasattr(k, "from_coords"):
        return k.from_coords(coords)
    return tuple(coords)


def _ktrace(k, a):
    if hasattr(k, "trace_to_prime"):
        return k.trace_to_prime(a)
    return k.trace(a)


def local_dims(d2, r, g):
    """Dimensions (H^1 image, H^1(K_v, J[2]), local Selmer image) at a place.

    d2 is [K_v : Q_2] for places above 2 and 0 otherwise.
    """
    a = r - 1 + d2 * g
    return (a, 2 * a, r - 1 + 2 * d2 * g)


def place_report(curve_or_poly, place, genus=None, precision=None):
    if hasattr(curve_or_poly, "poly"):
        curve = curve_or_poly
        poly, base = _poly_for(curve), _base_for(curve, place)
        g = curve.genus
    else:
        poly, base = curve_or_poly, place
        g = genus if genus is not None else (len(poly) - 2) // 2
    dagger = check_dagger_i_poly(poly, base, precision)
    if base.p == 2:
        dimV, basis, lf = compute_V(poly, base)
    else:
        lf = local_factor(poly, base, want_polys=False)
        dimV, basis = 0, []
    r = lf.r
    ram = [F.e for F in lf.factors]
    k = engine(poly, base).k
    if base.p == 2:
        img = phi_W([F.trace for F in lf.factors], k)
        phi_dim = (len(img) - 1).bit_length()
        if 2 ** phi_dim != len(img) or phi_dim != dimV:
            raise AssertionError("image of W inconsistent with V")
    else:
        phi_dim = 0
    star = base.p == 2 and dimV == r - 1
    if star and dagger.verdict == FAILS:
        raise AssertionError("(*) holds but (dagger.i) fails")
    d2 = base.degree if base.p == 2 else 0
    return PlaceReport(
        place=place_label(base), p=base.p, r_v=r, ramification=ram,
        residue_degrees=[F.f for F in lf.factors],
        residue_polys=[F.residue_poly for F in lf.factors],
        traces=[F.trace for F in lf.factors],
        dim_V=dimV, V_basis=basis, star=star, dagger_i=dagger,
        u4_index_exponent=(r - 1 - dimV) if base.p == 2 else 0,
        phi_W_dim=phi_dim, S_basis=s_space_basis(ram),
        local_dims=local_dims(d2, r, g), local_degree=base.degree,
    )


def star_holds(poly, base):
    dimV, _, lf = compute_V(poly, base)
    return dimV == lf.r - 1


def u4_w_index(poly, base):
    dimV, _, lf = compute_V(poly, base)
    return 2 ** (lf.r - 1 - dimV)


# archimedean data -------------------------------------------------------------

@dataclass
class RealPlaceData:
    index: int
    real_roots: int
    marked: tuple
    pairs: list
    s_v: int

    def to_json(self):
        return {"real_place": self.index, "real_roots": self.real_roots,
                "marked_root": list(self.marked),
                "pairs": [[list(a), list(b)] for a, b in self.pairs], "s_v": self.s_v}


@dataclass
class ArchimedeanReport:
    real_places: list
    complex_places: int
    a_counts: dict
    s_total: int

    def to_json(self):
        return {"real_places": [r.to_json() for r in self.real_places],
                "complex_places_of_base": self.complex_places,
                "real_root_histogram": {str(k): v for k, v in sorted(self.a_counts.items())},
                "s_total": self.s_total}


def archimedean(curve):
    A = curve.algebra
    out = []
    a = {}
    for s, embs in enumerate(A.real_places):
        n = len(embs)
        if n % 2 == 0:
            raise AssertionError("odd-degree polynomial with an even number of real roots")
        marked = (embs[0].factor, embs[0].index)
        pairs = [((embs[i].factor, embs[i].index), (embs[i + 1].factor, embs[i + 1].index))
                 for i in range(1, n, 2)]
        out.append(RealPlaceData(s, n, marked, pairs, (n - 1) // 2))
        a[n] = a.get(n, 0) + 1
    return ArchimedeanReport(out, curve.K.r2, a, sum(r.s_v for r in out))


def square_class_unit_count(g, degK, a_counts):
    """Closed form 2^(g [K:Q]) * 2^(a_3 + 2 a_5 + 3 a_7 + ...)."""
    return 2 ** (g * degK + sum(((j - 1) // 2) * n for j, n in a_counts.items()))


def square_class_unit_count_direct(d, a_counts, complex_places):
    """2^(gamma + beta - alpha) from Dirichlet's unit theorem."""
    alpha = sum(a_counts.values()) + complex_places
    beta = complex_places * d
    gamma = sum(((d + j) // 2) * n for j, n in a_counts.items())
    return 2 ** (gamma + beta - alpha)
