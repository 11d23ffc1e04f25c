"""Command-line front end.

Every verb builds a :class:`Report`.  ``--format text`` prints a short human
answer, ``records`` the tab-separated record lines and ``json`` the report
object.  Exit status: 0 pass, 1 fail, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from pathlib import Path

from . import classify, structure
from .liealg import check_antisymmetry, check_jacobi
from .parsing import ParseError, parse_expr, parse_spec
from .polymodule import Family, InvalidParameters, ModuleSpec, SPoly, act_word, check_module_axiom
from .report import ERROR, FAIL, PASS, Record, Report
from .scalars import PARAMS, DivisionByZero

FORMATS = ("text", "records", "json")
FORMAT_ENV = "AFFVIR_FORMAT"
EXIT = {PASS: 0, FAIL: 1, ERROR: 1}


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------

def _bindings(args) -> dict:
    out = {}
    for item in args.set or ():
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in PARAMS:
            raise UsageError(f"--set expects NAME=VALUE with NAME in {' '.join(PARAMS)}, got {item!r}")
        v = parse_expr(value, "scalar")
        if not v.is_constant():
            raise UsageError(f"--set {name} must bind a rational number")
        out[name] = v.to_fraction()
    for name in ("L", "A"):
        if out.get(name) == 0:
            raise UsageError(f"{name} must be nonzero")
    return out


def _bind(value, bindings):
    return value.subs(bindings) if bindings else value


def _spec(args, bindings) -> ModuleSpec:
    if getattr(args, "spec", None):
        spec = parse_spec(args.spec)
    else:
        if not args.family:
            raise UsageError("--family or --spec is required")
        params = [parse_expr(getattr(args, k), "scalar")
                  for k in ("lam", "alpha", "beta", "gamma")]
        spec = ModuleSpec(args.family, *params)
    return spec.subs(bindings) if bindings else spec


def _read(value: str) -> str:
    """``@path`` reads an expression file."""
    if value.startswith("@"):
        return Path(value[1:]).read_text()
    return value


def _operator_text(u) -> str | None:
    """Render words made only of h[0] and d[0] as the polynomial they multiply by."""
    poly = SPoly()
    for word, c in u.terms.items():
        if any(g.index != 0 or g.kind not in "hd" for g in word):
            return None
        term = SPoly(c)
        for g in word:
            term = term * (SPoly.t() if g.kind == "h" else SPoly.s())
        poly = poly + term
    text = str(poly)
    return text if len(poly.terms) == 1 and " " not in text else f"({text})"


# -- verbs -----------------------------------------------------------------------

def cmd_act(args, bindings):
    spec = _spec(args, bindings)
    u = _bind(parse_expr(_read(args.x), "enveloping"), bindings)
    g = _bind(parse_expr(_read(args.g), "spoly"), bindings)
    result = act_word(spec, u, g)
    op = _operator_text(u)
    if op is None:
        op = str(u) if len(u.terms) == 1 else f"({u})"
        line = f"{op} . ({g}) = {result}"
    else:
        line = f"{op}*({g}) = {result}"
    rep = Report(f"act {spec}", checked=1, summary=line)
    rep.add(Record("act", f"x={u}; g={g}", "", str(result), PASS))
    return rep, [line]


def cmd_verify_axioms(args, bindings):
    if args.lie:
        reps = [check_antisymmetry(args.window), check_jacobi(args.window)]
        rep = Report(f"lie-axioms window={args.window}")
        for r in reps:
            rep.checked += r.checked
            for rec in r.details:
                rep.add(rec)
    else:
        spec = _spec(args, bindings)
        rep = check_module_axiom(spec, args.window, args.degree)
        rep.name = f"verify-axioms {spec} window={args.window} degree={args.degree}"
    line = f"{rep.name}: {rep.status} ({rep.checked} checks)"
    rep.summary = line
    return rep, [line] + _failure_lines(rep)


def cmd_simplicity(args, bindings):
    spec = _spec(args, bindings)
    reason = structure.simplicity_reason(spec)
    rep = Report(f"simplicity {spec}", checked=1)
    if structure.is_simple(spec):
        line = f"{spec}: simple; {reason}"
        rep.add(Record("simplicity", str(spec), "simple", "simple", PASS))
    else:
        shape = structure.proper_submodule(spec)
        line = (f"{spec}: not simple; {reason}; submodule generator "
                f"{structure.format_generator(shape.g)}")
        rep.add(Record("simplicity", str(spec), "simple", f"not simple; {shape}"))
    rep.summary = line
    return rep, [line]


def cmd_submodule(args, bindings):
    spec = _spec(args, bindings)
    shape = structure.proper_submodule(spec)
    if shape is None:
        line = f"{spec}: no proper submodule ({structure.simplicity_reason(spec)})"
        rep = Report(f"submodule {spec}", summary=line)
        return rep, [line]
    rep = structure.check_invariance(spec, shape, args.window, args.degree)
    rep.name = f"submodule {spec}"
    one_in = shape.contains(SPoly(1))
    rep.checked += 1
    rep.add(Record("one-not-in-V", "1", "not in V", "in V" if one_in else "not in V",
                   FAIL if one_in else PASS))
    tau = structure.tau_check(spec.lam, spec.alpha, spec.beta, spec.gamma, args.degree,
                              window=min(args.window, 2))
    rep.checked += tau.checked
    for r in tau.details:
        rep.add(r)
    line = (f"{spec}: V = C[s,t]*{_paren(structure.format_generator(shape.g))}; "
            f"invariance and tau {rep.status} ({rep.checked} checks); "
            f"1 {'in' if one_in else 'not in'} V")
    rep.summary = line
    return rep, [line] + _failure_lines(rep)


def _paren(text: str) -> str:
    return text if text.startswith("(") and text.endswith(")") else f"({text})"


def cmd_generate_one(args, bindings):
    spec = _spec(args, bindings)
    w = _bind(parse_expr(_read(args.g), "spoly"), bindings)
    wit = structure.generate_one(spec, w)
    line = f"u = {wit.u}"
    rep = Report(f"generate-one {spec} w={w}", checked=1, summary=line)
    rep.add(Record("witness", f"w={w}", "1", str(act_word(spec, wit.u, w)), PASS))
    lines = [line, f"check: u . ({w}) = 1"]
    if args.verbose:
        lines[1:1] = [f"# {s}" for s in wit.steps]
    return rep, lines


def cmd_iso(args, bindings):
    a = parse_spec(args.first)
    b = parse_spec(args.second)
    if bindings:
        a, b = a.subs(bindings), b.subs(bindings)
    res = structure.iso_check(a, b)
    word = "isomorphic" if res.isomorphic else "not isomorphic"
    tag = " [extension]" if res.extension else ""
    line = f"{a} vs {b}: {word} ({res.reason}){tag}"
    rep = Report(f"iso {a} {b}", checked=1, summary=line)
    rep.add(Record("iso", f"{a}; {b}", "isomorphic", word, PASS if res.isomorphic else FAIL))
    return rep, [line]


def cmd_classify(args, bindings):
    text = _read(args.candidate)
    cand = parse_expr(text, "ef-candidate")
    if bindings:
        cand = classify.EFCandidate(cand.E0.subs(bindings), cand.F0.subs(bindings),
                                    cand.lam.subs(bindings), cand.gamma.subs(bindings),
                                    tuple((i, p.subs(bindings)) for i, p in cand.p))
    rep = Report("classify", checked=1)
    try:
        res = classify.classify_candidate(cand, window=args.window, degree=args.degree)
    except classify.ClassificationError as exc:
        line = f"rejected ({exc.constraint}): {exc.detail}"
        rep.add(Record(exc.constraint, str(cand), "member of a family", exc.detail))
        rep.summary = line
        return rep, [line]
    line = str(res)
    rep.add(Record("classify", str(cand), "member of a family", line, PASS))
    if res.validation is not None:
        rep.checked += res.validation.checked
    rep.summary = line
    lines = [line] + ([f"# {s}" for s in res.derivation] if args.verbose else [])
    return rep, lines


def cmd_lemma_check(args, bindings):
    spec = _spec(args, bindings)
    indices = [args.index] if args.index is not None else range(-3, 4)
    powers = [args.power] if args.power is not None else range(0, 5)
    rep = Report(f"lemma-check {spec} degree={args.degree}")
    for i in indices:
        for m in powers:
            r = classify.lemma_identity_check(spec, i, m, args.degree)
            rep.checked += r.checked
            for rec in r.details:
                rep.add(rec)
    line = f"{rep.name}: {rep.status} ({rep.checked} checks)"
    rep.summary = line
    return rep, [line] + _failure_lines(rep)


def _failure_lines(rep: Report) -> list[str]:
    return [f"  {r.check} [{r.inputs}] expected {r.expected}, got {r.got}" for r in rep.failures[:5]]


# -- parser ----------------------------------------------------------------------

def _module_opts(p, family_required=False):
    p.add_argument("--family", choices=[f.value for f in Family], required=family_required)
    p.add_argument("--spec", help="module as Family(lambda, alpha, beta, gamma)")
    p.add_argument("--lambda", dest="lam", default="L")
    p.add_argument("--alpha", default="A")
    p.add_argument("--beta", default="B")
    p.add_argument("--gamma", default="G")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="affvir", description="Exact computations with the "
                                 "affine-Virasoro algebra of type A1 and its modules.")
    ap.add_argument("--format", choices=FORMATS, default=None,
                    help=f"output format (default: ${FORMAT_ENV} or text)")
    ap.add_argument("--set", action="append", metavar="NAME=VALUE",
                    help="bind a parameter (L, A, B, G) to a rational number")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("act", help="apply an algebra or enveloping element to a vector")
    _module_opts(p)
    p.add_argument("--x", required=True, help="element, e.g. 'e[1] - (1/L)*f[-1]'; @file reads a file")
    p.add_argument("--g", required=True, help="vector in s, t")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("verify-axioms", help="check the module axiom (or Lie axioms with --lie)")
    _module_opts(p)
    p.add_argument("--lie", action="store_true", help="check antisymmetry and Jacobi instead")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("simplicity", help="decide simplicity")
    _module_opts(p)
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("submodule", help="proper submodule V with invariance and tau checks")
    _module_opts(p)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_submodule)

    p = sub.add_parser("generate-one", help="witness u with u . g = 1")
    _module_opts(p)
    p.add_argument("--g", required=True)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_generate_one)

    p = sub.add_parser("iso", help="decide isomorphism of two modules")
    p.add_argument("first", help="e.g. 'Omega(2, 3, 1, 0)'")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("classify", help="classify candidate data E0, F0")
    p.add_argument("--candidate", required=True,
                   help="'E0 = ...; F0 = ...; lambda = ...; gamma = ...' or @file")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lemma-check", help="operator identities e_i d_0^m = (d_0 - i)^m e_i etc.")
    _module_opts(p)
    p.add_argument("--index", type=int)
    p.add_argument("--power", type=int)
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_lemma_check)
    return ap


def _emit(rep: Report, lines: list[str], fmt: str, out) -> None:
    if fmt == "json":
        print(rep.to_json(), file=out)
    elif fmt == "records":
        print(rep.to_records(), file=out)
    else:
        for line in lines:
            print(line, file=out)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or os.environ.get(FORMAT_ENV, "text")
    if fmt not in FORMATS:
        print(f"affvir: error: ${FORMAT_ENV} must be one of {', '.join(FORMATS)}", file=err)
        return 2
    try:
        bindings = _bindings(args)
        rep, lines = args.func(args, bindings)
    except (ParseError, UsageError, InvalidParameters, OSError) as exc:
        print(f"affvir: error: {exc}", file=err)
        return 2
    except (structure.StructureError, DivisionByZero, ValueError) as exc:
        rep = Report(args.verb, status=ERROR)
        rep.add(Record(type(exc).__name__, " ".join(argv or sys.argv[1:]), "", str(exc), ERROR))
        rep.summary = f"error: {exc}"
        _emit(rep, [f"{args.verb}: error ({type(exc).__name__}): {exc}"], fmt, out)
        return EXIT[ERROR]
    _emit(rep, lines, fmt, out)
    return EXIT[rep.status]

