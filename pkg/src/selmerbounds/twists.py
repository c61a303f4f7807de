"""Quadratic twists y^2 = a^d p(x/a), eligibility, and a resumable twist scanner."""
import json
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction

from sympy import primerange

from .bounds import selmer_bounds
from .classgroups import ClassDataProvider
from .curves import HyperellipticCurve
from .localfields import local_factor, places_above
from .arith import factor_mod_p
from .numberfields import factor_integer

RECORD_SCHEMA = "selmerbounds.twist-record/1"
DENSITY_SCHEMA = "selmerbounds.density/1"


class TwistError(ValueError):
    pass


def squarefree_part(a):
    """(a0, b) with a = a0 * b^2 and a0 squarefree."""
    a = int(a)
    a0, b = (1 if a > 0 else -1), 1
    for q, k in factor_integer(abs(a)):
        a0 *= q ** (k % 2)
        b *= q ** (k // 2)
    return a0, b


def twist_curve(curve, a):
    """C(a): y^2 = a^d p(x/a) for a nonzero integer a, on the input model.

    C(a b^2) is isomorphic to C(a) via (x, y) -> (x / b^2, y / b^d), and the
    model for the squarefree part is the one analyzed: the larger model can
    fail (dagger.i) at primes dividing b for reasons of the model alone.
    """
    a = int(a)
    if a == 0:
        raise TwistError("cannot twist by 0")
    a0, _ = squarefree_part(a)
    K = curve.K
    d = curve.degree
    coeffs = [K.scale(a0 ** (d - k), c) for k, c in enumerate(curve.input_poly)]
    label = f"{curve.label or 'C'} twisted by {a}"
    T = HyperellipticCurve(coeffs, K, label=label)
    T.twist_parameter = a
    T.model_parameter = a0
    return T


def splitting_pattern(curve, q):
    """'inert', 'totally_ramified' or 'other' for every prime of K above q."""
    A = curve.algebra
    if A.r != 1:
        raise TwistError("eligibility needs p irreducible over the base field")
    K = curve.K
    if K.degree == 1:
        L = A.factor_fields[0]
        if L.index % q:
            # Dedekind: the factorization mod q gives the splitting directly
            _, facs = factor_mod_p(list(L.poly), q)
            if len(facs) == 1 and facs[0][1] == 1:
                return ["inert"]
            if len(facs) == 1 and len(facs[0][0]) == 2:
                return ["totally_ramified"]
            return ["other"]
        return [L.splitting_type(q)]
    out = []
    d = curve.degree
    for pl in places_above(K, q):
        lf = local_factor(curve.poly, pl, want_polys=False)
        if lf.r == 1 and lf.factors[0].f == d:
            out.append("inert")
        elif lf.r == 1 and lf.factors[0].e == d:
            out.append("totally_ramified")
        else:
            out.append("other")
    return out


def eligible(curve, q):
    """(verdict, pattern): every prime above q inert or totally ramified in A/K."""
    pat = splitting_pattern(curve, q)
    return all(t != "other" for t in pat), pat


@dataclass
class DensityReport:
    primes_scanned: int
    inert: int
    ramified: int
    expected: Fraction = None

    def to_json(self):
        out = {"schema": DENSITY_SCHEMA, "primes_scanned": self.primes_scanned,
               "inert": self.inert, "totally_ramified": self.ramified}
        n = self.primes_scanned - self.ramified
        out["inert_frequency"] = self.inert / n if n else None
        if self.expected is not None and n:
            p = float(self.expected)
            mean = n * p
            sigma = math.sqrt(n * p * (1 - p))
            z = (self.inert - mean) / sigma if sigma else 0.0
            out.update({"expected_density": str(self.expected), "expected_count": mean,
                        "sigma": sigma, "z_score": z, "within_3_sigma": abs(z) <= 3})
        out["note"] = ("Selmer ranks of the twists are not computed; only the bound windows "
                       "are reported")
        return out


def _analyze_prime(args):
    C, q, imported = args
    t0 = time.perf_counter()
    ok, pat = eligible(C, q)
    if not ok:
        return q, None
    T = twist_curve(C, q)
    rep = selmer_bounds(T, ClassDataProvider(imported))
    rec = {"schema": RECORD_SCHEMA, "q": q, "eligible": True, "splitting": pat,
           "bounds": rep.to_json(), "seconds": round(time.perf_counter() - t0, 4)}
    return q, rec


def read_records(path):
    """Complete records of a scan file; a partial trailing line is ignored."""
    recs = []
    if not os.path.exists(path):
        return recs
    with open(path) as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            try:
                recs.append(json.loads(line))
            except json.JSONDecodeError:
                break
    return recs


def _truncate_to_complete(path):
    if not os.path.exists(path):
        return
    with open(path, "rb") as fh:
        data = fh.read()
    good = 0
    for line in data.splitlines(keepends=True):
        if not line.endswith(b"\n"):
            break
        try:
            json.loads(line)
        except ValueError:
            break
        good += len(line)
    if good != len(data):
        with open(path, "r+b") as fh:
            fh.truncate(good)


def scan(curve, prime_bound, out_path, provider=None, jobs=1, expected_density=None,
         stop_after=None):
    """Twist by every eligible prime q <= prime_bound, appending NDJSON records.

    Records are written in ascending order of q.  An existing file is resumed
    after its last complete record.  Returns the DensityReport over all primes
    up to the bound.  ``stop_after`` limits the number of new records (used to
    simulate interruptions).
    """
    if curve.algebra.r != 1:
        raise TwistError("eligibility needs p irreducible over the base field")
    imported = list(provider.imported) if provider else []
    _truncate_to_complete(out_path)
    done = read_records(out_path)
    last = done[-1]["q"] if done else 0
    primes = [int(q) for q in primerange(2, prime_bound + 1)]
    todo = [q for q in primes if q > last]
    args = [(curve, q, imported) for q in todo]
    written = 0
    with open(out_path, "a") as fh:
        if jobs and jobs > 1:
            from multiprocessing import Pool
            with Pool(jobs) as pool:
                for q, rec in pool.imap(_analyze_prime, args, chunksize=4):
                    if rec is not None:
                        fh.write(json.dumps(rec, sort_keys=True) + "\n")
                        fh.flush()
                        written += 1
                        if stop_after and written >= stop_after:
                            pool.terminate()
                            break
        else:
            for a in args:
                q, rec = _analyze_prime(a)
                if rec is not None:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
                    fh.flush()
                    written += 1
                    if stop_after and written >= stop_after:
                        break
    return density_report(curve, prime_bound, expected_density)


def density_report(curve, prime_bound, expected_density=None):
    inert = ram = 0
    primes = [int(q) for q in primerange(2, prime_bound + 1)]
    for q in primes:
        pat = splitting_pattern(curve, q)
        if all(t == "inert" for t in pat):
            inert += 1
        elif all(t != "other" for t in pat):
            ram += 1
    exp = Fraction(expected_density) if expected_density is not None else None
    return DensityReport(len(primes), inert, ram, exp)
