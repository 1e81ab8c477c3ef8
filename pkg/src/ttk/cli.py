"""ttk command line.

Every command prints one JSON document on stdout and a one-line summary on
stderr.  Exit status: 0 valid / success, 1 validation failures, 2 usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import balls, chains, gpd, models2types, tta, ttg
from .report import Violation
from .steenrod import resolution as sres

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _algebra(doc, check=True):
    doc = doc.get("algebra", doc)
    try:
        return tta.TwoTrackAlgebra.from_json(doc, check=check)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed algebra document: {exc!r}") from None


def _bundle(path, need_complex=True):
    doc = _load(path)
    A = _algebra(doc)
    C = None
    if need_complex:
        if "complex" not in doc:
            raise UsageError(f"{path} has no 'complex' entry")
        C = chains.complex_from_json(A, doc["complex"])
    return doc, A, C


def _violations(rep):
    return [v.as_dict() if isinstance(v, Violation) else {"clause": "", "detail": str(v)} for v in rep]


def _emit(obj, summary: str, code: int = EXIT_OK):
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    sys.stderr.write(summary + "\n")
    return code


def _group(G):
    return {"order": len(G.elements), "elements": list(G.elements)}


# ---------------------------------------------------------------------------
# commands


def cmd_check_gpd(args):
    doc = _load(args.file)
    rep = gpd.groupoid_violations_json(doc)
    out = {"command": "check-gpd", "valid": not rep, "violations": _violations(rep)}
    if not rep:
        G = gpd.groupoid_from_json(doc)
        out["objects"] = len(G.objects)
        out["morphisms"] = len(G.morphisms)
        out["components"] = len(gpd.skeleton_representatives(G))
    return _emit(out, f"check-gpd: {len(rep)} violation(s)", EXIT_INVALID if rep else EXIT_OK)


def cmd_check_ttg(args):
    doc = _load(args.file)
    try:
        G = ttg.TwoTrackGroupoid.from_json(doc, check=False)
    except (gpd.GroupoidError, KeyError, TypeError, ValueError) as exc:
        rep = getattr(exc, "report", None) or [Violation("ttg.malformed", str(exc))]
        return _emit({"command": "check-ttg", "valid": False, "violations": _violations(rep)},
                     "check-ttg: malformed document", EXIT_INVALID)
    rep = ttg.validate_ttg(G, per_clause=args.limit)
    out = {"command": "check-ttg", "valid": not rep, "violations": _violations(rep)}
    if not rep:
        h = ttg.homotopy_groups(G)
        out["pi1"], out["pi2"] = _group(h.pi1), _group(h.pi2)
    return _emit(out, f"check-ttg: {len(rep)} violation(s)", EXIT_INVALID if rep else EXIT_OK)


def cmd_check_tta(args):
    doc = _load(args.file)
    try:
        A = tta.TwoTrackAlgebra.from_json(doc.get("algebra", doc), check=False)
    except (tta.AlgebraError, gpd.GroupoidError, KeyError, TypeError, ValueError) as exc:
        rep = getattr(exc, "report", None) or [Violation("tta.malformed", str(exc))]
        return _emit({"command": "check-tta", "valid": False, "violations": _violations(rep)},
                     "check-tta: malformed document", EXIT_INVALID)
    rep = tta.check_axioms(A, per_clause=args.limit)
    out = {"command": "check-tta", "valid": not rep, "objects": list(A.objects),
           "violations": _violations(rep)}
    return _emit(out, f"check-tta: {len(rep)} violation(s)", EXIT_INVALID if rep else EXIT_OK)


def cmd_obstruct(args):
    A = _algebra(_load(args.algebra))
    doc = _load(args.chain)
    try:
        ch = balls.BallChain.from_json(A, doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed chain document: {exc!r}") from None
    if args.canonical:
        ch = balls.canonical_orientation(ch)
    rep = balls.validate_chain(ch)
    if rep:
        return _emit({"command": "obstruct", "valid": False, "violations": _violations(rep)},
                     "obstruct: invalid chain", EXIT_INVALID)
    val = balls.obstruction(ch)
    out = {"command": "obstruct", "valid": True, "k": ch.k, "hom": tta.hom_key(*ch.hom),
           "obstruction": val, "zero": A.is_zero(val)}
    return _emit(out, f"obstruct: {val}")


def cmd_toda(args, n):
    A = _algebra(_load(args.algebra))
    ys = args.elements
    if len(ys) != n:
        raise UsageError(f"toda{n} takes {n} elements, got {len(ys)}")
    fn = tta.toda3 if n == 3 else tta.toda4
    vals = fn(A, *ys, cap=args.cap)
    out = {"command": f"toda{n}", "elements": ys, "values": list(vals),
           "contains_zero": any(A.is_zero(v) for v in vals)}
    return _emit(out, f"toda{n}: {len(vals)} value(s)")


def cmd_sec_check(args, tertiary=False):
    _, A, C = _bundle(args.file)
    name = "tert-check" if tertiary else "sec-check"
    if tertiary:
        if not isinstance(C, chains.TertiaryPreChainComplex):
            raise UsageError("tert-check needs a complex with xi")
        window, ob = chains.tertiary_window(C), chains.tertiary_obstruction
    else:
        window, ob = chains.secondary_window(C), chains.secondary_obstruction
        if isinstance(C, chains.TertiaryPreChainComplex):
            C = C.secondary()
    cells = []
    for k in window:
        try:
            v = ob(C, k)
            cells.append({"n": k, "obstruction": v, "zero": A.is_zero(v)})
        except chains.SecondaryInvalid as exc:
            cells.append({"n": k, "obstruction": None, "zero": False, "error": str(exc)})
    ok = all(c["zero"] for c in cells)
    out = {"command": name, "window": list(C.window), "valid": ok, "obstructions": cells}
    bad = sum(not c["zero"] for c in cells)
    return _emit(out, f"{name}: {bad} nonzero obstruction(s)", EXIT_OK if ok else EXIT_INVALID)


def cmd_correct(args):
    _, A, C = _bundle(args.file)
    a_objects = args.a_objects or list(C.objects.values())
    try:
        if isinstance(C, chains.TertiaryPreChainComplex) and not args.secondary:
            R = chains.correct_2tracks(C, a_objects)
        else:
            S = C.secondary() if isinstance(C, chains.TertiaryPreChainComplex) else C
            R = chains.correct_1tracks(S, a_objects)
    except chains.NoCorrectionFound as exc:
        return _emit({"command": "correct", "corrected": False, "error": "NoCorrectionFound",
                      "detail": str(exc)}, f"correct: {exc}", EXIT_INVALID)
    out = {"command": "correct", "corrected": True, "complex": R.to_json()}
    return _emit(out, "correct: corrected complex found")


def _module(args):
    if not getattr(args, "module", None):
        return None
    try:
        return sres.ModulePresentation.from_json(_load(args.module))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed module document: {exc!r}") from None


def _resolution(args):
    return sres.minimal_resolution(_module(args), args.s_max, args.t_max)


def cmd_resolve(args):
    R = _resolution(args)
    problems = R.d_squared_violations() + R.minimality_violations() + R.exactness_violations()
    out = {"command": "resolve", "s_max": R.s_max, "t_max": R.t_max, "valid": not problems,
           "problems": problems,
           "generators": [{"s": s, "degrees": degs} for s, degs in enumerate(R.gens)]}
    if args.full:
        out["resolution"] = R.to_json()
    return _emit(out, f"resolve: {sum(map(len, R.gens))} generators", EXIT_INVALID if problems else EXIT_OK)


def cmd_ext(args):
    if args.complex:
        _, A, C = _bundle(args.complex)
        if args.target is None:
            raise UsageError("ext on a complex needs --target")
        if args.target not in A.objects:
            raise UsageError(f"unknown target {args.target!r}")
        dim = chains.ext_groups(C, args.target, args.s)
        out = {"command": "ext", "s": args.s, "target": args.target, "dim": dim}
        return _emit(out, f"ext: dim {dim}")
    if args.t is None:
        raise UsageError("ext over the Steenrod algebra needs --t")
    R = _resolution(args)
    dim = chains.ext_groups(R, args.t, args.s)
    reps = [sres.cocycle_rep(R, args.s, args.t, i).as_dict() for i in range(dim)]
    out = {"command": "ext", "s": args.s, "t": args.t, "dim": dim, "cocycles": reps}
    return _emit(out, f"ext: dim Ext^({args.s},{args.t}) = {dim}")


def cmd_chart(args):
    R = _resolution(args)
    chart = sres.ext_chart(R)
    sys.stdout.write(sres.emit_chart(chart, args.format))
    sys.stderr.write(f"chart: {sum(chart.dims.values())} classes\n")
    return EXIT_OK


def _setup(args):
    doc, A, C = _bundle(args.file)
    if not isinstance(C, chains.TertiaryPreChainComplex):
        raise UsageError("d2/d3/e-page need a tertiary complex (with gamma and xi)")
    target = args.target or doc.get("target")
    if target is None:
        raise UsageError("no target given (use --target or a bundle with 'target')")
    return A, chains.AdamsSetup(C, target)


def cmd_d(args, r):
    A, setup = _setup(args)
    if not A.has_element(args.element):
        raise UsageError(f"unknown element {args.element!r}")
    fn = chains.d2_element if r == 2 else chains.d3_element
    cl = fn(setup, args.element, args.n)
    out = {"command": f"d{r}", "element": args.element, "n": args.n, "class": cl.as_dict(),
           "zero": cl.is_zero}
    return _emit(out, f"d{r}: {'zero' if cl.is_zero else cl.rep}")


def cmd_e_page(args):
    _, setup = _setup(args)
    lat = chains.e_page(setup, args.page)
    out = {"command": "e-page", "page": args.page, "cells": chains.e_page_json(lat)}
    return _emit(out, f"e-page: E{args.page} with {len(lat)} cells")


def cmd_forget_double(args):
    doc = _load(args.file)
    try:
        D = models2types.DoubleGroupoid.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed double groupoid: {exc!r}") from None
    rep = models2types.validate_double(D, per_clause=args.limit)
    if rep:
        return _emit({"command": "forget-double", "valid": False, "violations": _violations(rep)},
                     f"forget-double: {len(rep)} violation(s)", EXIT_INVALID)
    G = models2types.forget_double(D)
    rep = ttg.validate_ttg(G, per_clause=args.limit)
    out = {"command": "forget-double", "valid": not rep, "violations": _violations(rep)}
    if not rep:
        h = ttg.homotopy_groups(G)
        out["pi1"], out["pi2"] = _group(h.pi1), _group(h.pi2)
    if args.emit:
        out["ttg"] = G.to_json()
    return _emit(out, f"forget-double: {len(rep)} violation(s)", EXIT_INVALID if rep else EXIT_OK)


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ttk", description="2-track algebra toolkit")
    p.add_argument("--seed", type=int, default=None, help="accepted for reproducible scripts; unused")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)
        return sp

    for name, fn, h in (("check-gpd", cmd_check_gpd, "validate a groupoid document"),
                        ("check-ttg", cmd_check_ttg, "validate a 2-track groupoid"),
                        ("check-tta", cmd_check_tta, "check the 2-track algebra axioms")):
        sp = add(name, fn, h)
        sp.add_argument("file")
        sp.add_argument("--limit", type=_positive, default=20, help="violations reported per clause")

    sp = add("obstruct", cmd_obstruct, "obstruction of a cubical ball chain")
    sp.add_argument("chain")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--canonical", action="store_true", help="orient the chain first")

    for n in (3, 4):
        sp = add(f"toda{n}", lambda a, n=n: cmd_toda(a, n), f"length-{n} Toda bracket")
        sp.add_argument("elements", nargs="+")
        sp.add_argument("--algebra", required=True)
        sp.add_argument("--cap", type=_positive, default=tta.DEFAULT_CAP, help="enumeration cap")

    sp = add("sec-check", lambda a: cmd_sec_check(a, False), "secondary obstructions of a complex")
    sp.add_argument("file")
    sp = add("tert-check", lambda a: cmd_sec_check(a, True), "tertiary obstructions of a complex")
    sp.add_argument("file")

    sp = add("correct", cmd_correct, "correct gamma (or xi) to kill the obstructions")
    sp.add_argument("file")
    sp.add_argument("--a-objects", nargs="*", default=None)
    sp.add_argument("--secondary", action="store_true", help="only correct the 1-tracks")

    def caps(sp):
        sp.add_argument("--s-max", type=_nonneg, default=8)
        sp.add_argument("--t-max", type=_nonneg, default=21)
        sp.add_argument("--module", default=None, help="module presentation JSON (default F2)")

    sp = add("resolve", cmd_resolve, "minimal resolution over the Steenrod algebra")
    caps(sp)
    sp.add_argument("--full", action="store_true", help="include the differentials")

    sp = add("ext", cmd_ext, "Ext of a resolution")
    caps(sp)
    sp.add_argument("--s", type=_nonneg, required=True)
    sp.add_argument("--t", type=_nonneg, default=None)
    sp.add_argument("--complex", default=None, help="bundle with a complex in a 2-track algebra")
    sp.add_argument("--target", default=None)

    sp = add("chart", cmd_chart, "Ext chart as TSV or SVG")
    caps(sp)
    sp.add_argument("--format", default="tsv")

    for r in (2, 3):
        sp = add(f"d{r}", lambda a, r=r: cmd_d(a, r), f"the differential d{r} of a class")
        sp.add_argument("file")
        sp.add_argument("--element", required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--target", default=None)

    sp = add("e-page", cmd_e_page, "E-page lattice of a tertiary complex")
    sp.add_argument("file")
    sp.add_argument("--page", type=int, choices=(2, 3, 4), default=3)
    sp.add_argument("--target", default=None)

    sp = add("forget-double", cmd_forget_double, "the 2-track groupoid of a double groupoid")
    sp.add_argument("file")
    sp.add_argument("--limit", type=_positive, default=20)
    sp.add_argument("--emit", action="store_true", help="include the 2-track groupoid")
    return p


# errors from the library that mean "bad input" rather than "invalid structure"
_INPUT_ERRORS = (
    UsageError, tta.CompositesNotNull, tta.NotComposable, tta.EnumerationCapExceeded, tta.NotDefined,
    tta.MalformedAlgebra, tta.AlgebraError, gpd.GroupoidError, chains.ChainError, balls.BallError,
    sres.SteenrodError, models2types.InvalidDouble, KeyError,
)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except _INPUT_ERRORS as exc:
        name = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stdout.write(json.dumps({"error": name, "detail": str(msg)}, indent=2) + "\n")
        sys.stderr.write(f"ttk: {name}: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
