"""Command line: analyze, local, delta and twist-scan on JSON curve specs.

Exit codes: 0 for an unconditional result, 2 for a conditional one, 1 on
error.  Reports are deterministic JSON (sorted keys, no timings).
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import hypotheses as H
from .bounds import (BoundsError, UNCONDITIONAL, delta_square_class,
                     relaxed_bounds_x5ax, selmer_bounds, _x5ax_prime)
from .classgroups import ClassDataError, ClassDataProvider, load_class_data
from .curves import CurveError, HyperellipticCurve
from .localfields import PrecisionExhausted, places_above, precision_cap
from .numberfields import NumberField, rationals
from .schemas import SchemaError, validate_document
from .twists import TwistError, scan

EXIT_OK, EXIT_ERROR, EXIT_CONDITIONAL = 0, 1, 2


class SpecError(ValueError):
    pass


def _line_of(raw, path):
    """Best-effort line number of the first key of a JSON path in the raw text."""
    for key in path:
        if isinstance(key, str):
            idx = raw.find(f'"{key}"')
            if idx >= 0:
                return raw.count("\n", 0, idx) + 1
    return None


def _coef(x):
    if isinstance(x, bool):
        raise SpecError(f"bad coefficient {x!r}")
    return Fraction(x) if isinstance(x, (int, str)) else x


class CurveSpec:
    def __init__(self, path):
        self.path = path
        try:
            with open(path) as fh:
                raw = fh.read()
        except OSError as exc:
            raise SpecError(f"{path}: {exc.strerror}")
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: line {exc.lineno}: {exc.msg}")
        try:
            validate_document(doc, "curve")
        except SchemaError as exc:
            msg = str(exc)
            key = msg.split(":")[0].split("/")
            line = _line_of(raw, key)
            raise SpecError(f"{path}: line {line}: {msg}" if line else f"{path}: {msg}")
        self.doc = doc
        self.label = doc.get("label") or os.path.splitext(os.path.basename(path))[0]
        base = doc.get("base", "rational")
        if base == "rational":
            self.K = rationals()
        else:
            self.K = NumberField(tuple(base["poly"]), base.get("name", "a"))
        coeffs = []
        for c in doc["poly"]:
            if isinstance(c, list):
                coeffs.append([_coef(x) for x in c])
            else:
                coeffs.append([_coef(c)] + [Fraction(0)] * (self.K.degree - 1))
        line = _line_of(raw, ["poly"])
        try:
            self.curve = HyperellipticCurve(coeffs, self.K, label=self.label)
        except (CurveError, ValueError) as exc:
            raise SpecError(f"{path}: line {line}: poly: {exc}")
        here = os.path.dirname(os.path.abspath(path))
        self.class_data_paths = [os.path.join(here, p) for p in doc.get("class_data", [])]
        self.inert_density = doc.get("inert_density")


def make_provider(spec, option):
    """Class-data provider for a curve file and a --classgroup-provider value."""
    if option in (None, "auto"):
        paths = spec.class_data_paths
    elif option == "builtin":
        paths = []
    elif option.startswith("import:"):
        target = option[len("import:"):]
        if os.path.isdir(target):
            paths = sorted(os.path.join(target, f) for f in os.listdir(target) if f.endswith(".json"))
        else:
            paths = [target]
    else:
        raise SpecError(f"unknown class group provider {option!r}")
    docs = []
    for p in paths:
        docs.extend(load_class_data(p))
    return ClassDataProvider(docs)


def _kstr(K, c):
    if K.degree == 1:
        return str(c[0])
    return [str(x) for x in c]


def curve_json(C, spec=None):
    K = C.K
    return {
        "label": C.label,
        "base_field": "Q" if K.degree == 1 else {"poly": list(K.poly)},
        "equation": C.describe(),
        "input_poly": [_kstr(K, c) for c in C.input_poly],
        "poly": [_kstr(K, c) for c in C.poly],
        "translation": _kstr(K, C.translation),
        "degree": C.degree,
        "genus": C.genus,
        "factor_fields": [list(N) for N in C.algebra.abs_polys],
    }


def build_report(C, provider, precision=None):
    verdicts, support = H.finite_places_report(C, precision)
    places2 = [H.place_report(C, pl, precision=precision) for pl in places_above(C.K, 2)]
    arch = H.archimedean(C)
    closed = H.square_class_unit_count(C.genus, C.K.degree, arch.a_counts)
    direct = H.square_class_unit_count_direct(C.degree, arch.a_counts, arch.complex_places)
    if closed != direct:
        raise AssertionError("square-class unit counts disagree")
    rep = selmer_bounds(C, provider, precision)
    out = {
        "schema": "selmerbounds.report/1",
        "version": __version__,
        "curve": curve_json(C),
        "hypotheses": {
            "finite_places": [v.to_json() for v in verdicts],
            "index_support": {str(q): k for q, k in sorted(support.items())},
            "places_above_2": [r.to_json() for r in places2],
            "archimedean": arch.to_json(),
            "dagger_ii": "undecided",
        },
        "square_class_units": {"closed_form": closed, "direct_count": direct},
        "bounds": rep.to_json(),
        "precision_policy": {"padic_precision": precision or "auto", "cap": precision_cap()},
    }
    if rep.mode != UNCONDITIONAL and _x5ax_prime(C) is not None:
        try:
            out["relaxed_bounds"] = relaxed_bounds_x5ax(C, provider).to_json()
        except BoundsError as exc:
            out["relaxed_bounds_refused"] = str(exc)
    return out, rep


def _emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    spec = CurveSpec(args.spec)
    provider = make_provider(spec, args.classgroup_provider)
    doc, rep = build_report(spec.curve, provider, args.padic_precision)
    validate_document(doc, "report")
    _emit(doc, args.out)
    if rep.mode == UNCONDITIONAL or args.conditional_ok:
        return EXIT_OK
    return EXIT_CONDITIONAL


def _find_place(K, label):
    label = str(label)
    p = int(label.split(".")[0])
    places = places_above(K, p)
    if K.degree == 1:
        return places[0]
    if "." not in label:
        if len(places) == 1:
            return places[0]
        raise SpecError(f"several places above {p}: use one of " +
                        ", ".join(pl.label() for pl in places))
    for pl in places:
        if pl.label() == label:
            return pl
    raise SpecError(f"no place labelled {label}")


def cmd_local(args):
    spec = CurveSpec(args.spec)
    place = _find_place(spec.K, args.place)
    rep = H.place_report(spec.curve, place, precision=args.padic_precision)
    doc = {"schema": "selmerbounds.place/1", **rep.to_json()}
    validate_document(doc, "place")
    _emit(doc, args.out)
    if rep.dagger_i.verdict == H.HOLDS or args.conditional_ok:
        return EXIT_OK
    return EXIT_CONDITIONAL


def cmd_delta(args):
    spec = CurveSpec(args.spec)
    try:
        a, b = (Fraction(x.strip()) for x in args.point.split(","))
    except ValueError:
        raise SpecError(f"--point must be 'a,b' with rational a, b (got {args.point!r})")
    elem = delta_square_class(spec.curve, (a, b))
    doc = {"schema": "selmerbounds.delta/1", **elem.to_json()}
    validate_document(doc, "delta")
    _emit(doc, args.out)
    return EXIT_OK


def cmd_twist_scan(args):
    spec = CurveSpec(args.spec)
    provider = make_provider(spec, args.classgroup_provider)
    base = selmer_bounds(spec.curve, provider, args.padic_precision)
    if base.mode != UNCONDITIONAL and not args.conditional_ok:
        sys.stderr.write("base curve is conditional; pass --conditional-ok to scan anyway\n")
        return EXIT_CONDITIONAL
    density = args.expected_density or spec.inert_density
    rep = scan(spec.curve, args.max_prime, args.out, provider, jobs=args.jobs,
               expected_density=density)
    doc = rep.to_json()
    doc["records_file"] = args.out
    validate_document(doc, "density")
    _emit(doc, args.summary)
    return EXIT_OK if base.mode == UNCONDITIONAL or args.conditional_ok else EXIT_CONDITIONAL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--padic-precision", type=int, default=None,
                        help="starting p-adic precision (default: automatic, doubled up to the cap)")
    common.add_argument("--classgroup-provider", default=None,
                        help="'builtin' or 'import:PATH' (file or directory of class data)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--conditional-ok", action="store_true",
                        help="exit 0 on conditional results")
    parser = argparse.ArgumentParser(prog="selmerbounds",
                                     description="2-Selmer bounds for odd-degree hyperelliptic curves")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="full hypothesis and bound report")
    p.add_argument("spec")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("local", parents=[common], help="local report at one place")
    p.add_argument("spec")
    p.add_argument("--place", required=True, help="a prime p (over Q) or a label like 2.0")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_local)
    p = sub.add_parser("delta", parents=[common], help="square class of a - T for a point (a, b)")
    p.add_argument("spec")
    p.add_argument("--point", required=True, help="a,b")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_delta)
    p = sub.add_parser("twist-scan", parents=[common], help="bounds for twists by eligible primes")
    p.add_argument("spec")
    p.add_argument("--max-prime", type=int, required=True)
    p.add_argument("--out", required=True, help="NDJSON record file (appended, resumable)")
    p.add_argument("--summary", default=None, help="write the density report here (default stdout)")
    p.add_argument("--expected-density", default=None, help="declared inert density, e.g. 1/5")
    p.set_defaults(func=cmd_twist_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ClassDataError, CurveError, BoundsError, TwistError,
            SchemaError, PrecisionExhausted, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
