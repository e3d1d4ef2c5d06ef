"""Command line front end ``qalg``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path as FsPath
from typing import List, Optional

from . import __version__, selftest
from .algebra import (
    AlgebraMorphism,
    basic_version,
    check_algebra,
    format_vector,
    is_basic_split,
    is_connected,
    radical_layer_dims,
)
from .classify import algebra_type, decide_fg
from .constructions import (
    beilinson,
    cyclic_action,
    double_construction,
    quasi_veronese2,
    skew_group_algebra,
    smash_z2,
    trivial_extension,
    twisted_trivial_extension,
)
from .errors import InfiniteOrder, NotSelfInjective, QalgError, SchemaError
from .fields import format_scalar
from .fileio import algebra_to_doc, automorphism_from_spec, dumps, load_spec, read_algebra
from .frobenius import (
    automorphism_order,
    find_frobenius_form,
    is_inner,
    nakayama_from_form,
    outer_order,
    vertex_permutation,
)

CONSTRUCTIONS = ("skew", "smash2", "veronese2", "trivext", "twisted-trivext", "beilinson", "basic", "double")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QALG_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SchemaError(f"QALG_SEED is not an integer: {env!r}") from None
    return 0


def _report(command, digest, results, reasons, args):
    return {
        "command": command,
        "input_digest": digest,
        "results": results,
        "reasons": reasons,
        "seed": _seed(args),
        "options": {"bound": args.bound, "attempts": args.attempts},
        "version": __version__,
    }


def _text(report) -> str:
    lines = [f"{report['command']}  {report.get('input_digest') or ''}".rstrip()]
    if "file" in report:
        lines.append(f"file: {report['file']}")
    for key, value in report["results"].items():
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"{key}:")
            for item in value:
                lines.append(f"  {item}")
        else:
            lines.append(f"{key}: {value}")
    for r in report["reasons"]:
        lines.append("reason: " + " | ".join(str(x) for x in r))
    lines.append(f"seed: {report['seed']}  version: {report['version']}")
    return "\n".join(lines) + "\n"


def _emit(report, args, out):
    out.write(dumps(report) if args.json else _text(report))


def _frobenius_summary(A, args):
    form = find_frobenius_form(A, args.attempts, _seed(args))
    if form:
        return form, {"frobenius": "yes", "form": form.origin}
    return form, {"frobenius": "no", "frobenius_proven": form.proven}


# ---------------------------------------------------------------- commands

def cmd_info(args, out):
    A, dg = read_algebra(args.file)
    results = {
        "dimension": A.dim,
        "field": str(A.field),
        "basis": [str(lab) for lab in A.labels],
        "graded": A.is_graded,
        "radical_layers": radical_layer_dims(A),
        "socle_dimension": A.socle_space.dim,
        "connected": is_connected(A),
        "basic_split": is_basic_split(A),
        "table_violations": len(check_algebra(A)),
    }
    results.update(_frobenius_summary(A, args)[1])
    _emit(_report("info", dg, results, [], args), args, out)
    return 0


def cmd_type(args, out):
    A, dg = read_algebra(args.file)
    T = algebra_type(A)
    comps = []
    for c in T.components:
        cert = c.certificate
        comps.append({
            "label": str(c.label),
            "definiteness": cert.kind,
            "pivots": [str(p) for p in cert.pivots],
            "kernel": [[str(x) for x in v] for v in cert.kernel],
        })
    results = {"type": str(T.label), "components": comps}
    _emit(_report("type", dg, results, [], args), args, out)
    return 0


def cmd_nakayama(args, out):
    A, dg = read_algebra(args.file)
    seed = _seed(args)
    form = find_frobenius_form(A, args.attempts, seed)
    if not form:
        raise NotSelfInjective("algebra is not Frobenius")
    nu = nakayama_from_form(A, form)
    order = automorphism_order(nu, args.bound)
    oo = outer_order(A, nu, args.bound, seed)
    inner = is_inner(A, nu, seed)
    results = {
        "form": form.origin,
        "gram": [[format_scalar(x) for x in row] for row in form.gram],
        "nakayama": [f"{lab} -> {img}" for lab, img in nu.describe()],
        "gram_relation_verified": True,
        "automorphism_order": order if order is not None else f"exceeds {args.bound}",
        "outer_order": oo.value if oo.status == "finite" else oo.status,
        "outer_order_note": oo.note,
        "inner": inner.status,
    }
    try:
        results["vertex_permutation"] = vertex_permutation(A, nu)
    except QalgError:
        pass
    if inner:
        results["inner_witness"] = format_vector(A, inner.witness)
    _emit(_report("nakayama", dg, results, [], args), args, out)
    return 0


def _sigma(A, args, default="nakayama"):
    text = args.sigma or default
    if text == "identity":
        return AlgebraMorphism.identity(A)
    if text == "nakayama":
        form = find_frobenius_form(A, args.attempts, _seed(args))
        if not form:
            raise NotSelfInjective("no Nakayama automorphism: algebra is not Frobenius")
        return nakayama_from_form(A, form)
    return automorphism_from_spec(A, load_spec(text))


def cmd_construct(args, out):
    A, _ = read_algebra(args.file)
    kind = args.kind
    if kind == "skew":
        sigma = _sigma(A, args)
        n = automorphism_order(sigma, args.bound)
        if n is None:
            raise InfiniteOrder(f"automorphism has no finite order up to {args.bound}")
        B = skew_group_algebra(A, cyclic_action(A, sigma, n))
    elif kind == "smash2":
        B = smash_z2(A)
    elif kind == "veronese2":
        B = quasi_veronese2(A)
    elif kind == "trivext":
        B = trivial_extension(A)
    elif kind == "twisted-trivext":
        B = twisted_trivial_extension(A, _sigma(A, args))
    elif kind == "beilinson":
        B = beilinson(A)
    elif kind == "basic":
        B = basic_version(A)
    else:
        B = double_construction(A)
    B.name = f"{kind}({A.name})" if A.name else kind
    text = dumps(algebra_to_doc(B))
    if args.output:
        FsPath(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def _fg_report(path, args):
    A, dg = read_algebra(path)
    v = decide_fg(A, args.bound, _seed(args), args.attempts)
    results = {
        "answer": v.answer,
        "hypothesis_failures": v.hypothesis_failures,
        "notices": v.notices,
        "details": {k: (str(x) if x is not None else None) for k, x in sorted(v.details.items())},
    }
    if v.blocks:
        results["blocks"] = [
            {"answer": b.answer, "reasons": [list(r) for r in b.reasons], "details": {k: str(x) for k, x in sorted(b.details.items())}}
            for b in v.blocks
        ]
    return _report("fg", dg, results, [list(r) for r in v.reasons], args)


def cmd_fg(args, out):
    paths = list(args.files)
    if args.batch:
        d = FsPath(args.batch)
        if not d.is_dir():
            raise SchemaError(f"{args.batch} is not a directory")
        paths += sorted(str(p) for p in d.glob("*.json"))
    if not paths:
        raise SchemaError("no input files")
    if len(paths) == 1 and not args.batch:
        _emit(_fg_report(paths[0], args), args, out)
        return 0
    worst = 0
    for p in paths:
        try:
            rep = _fg_report(p, args)
            rep["file"] = p
            _emit(rep, args, out)
        except QalgError as exc:
            worst = max(worst, exc.exit_code)
            out.write(f"{p}: error: {type(exc).__name__}: {exc}\n")
    return worst


def cmd_selftest(args, out):
    extra = []
    for p in args.fixtures:
        A, _ = read_algebra(p)
        extra.append((FsPath(p).name, A))
    results = selftest.run(extra)
    if args.json:
        out.write(dumps({"command": "selftest", "results": [
            {"check": n, "pass": ok, "detail": d} for n, ok, d in results
        ], "version": __version__}))
    else:
        for name, ok, detail in results:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "") + "\n")
    return 0 if all(ok for _, ok, _ in results) else 4


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--bound", type=int, default=64, help="bound for order searches (default 64)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized searches (fallback: QALG_SEED)")
    common.add_argument("--attempts", type=int, default=32, help="random functionals tried when looking for a Frobenius form")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qalg", description="Exact computations with quiver algebras.")
    p.add_argument("--version", action="version", version=f"qalg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="dimensions, layers, socle, Frobenius status")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("type", parents=[common], help="Dynkin type of the separated quiver")
    s.add_argument("file")
    s.set_defaults(func=cmd_type)

    s = sub.add_parser("nakayama", parents=[common], help="Nakayama automorphism and its orders")
    s.add_argument("file")
    s.set_defaults(func=cmd_nakayama)

    s = sub.add_parser("construct", parents=[common], help="build a new algebra file")
    s.add_argument("kind", choices=CONSTRUCTIONS)
    s.add_argument("file")
    s.add_argument("--sigma", help="automorphism: JSON object, path to one, 'nakayama' or 'identity'")
    s.add_argument("-o", "--output", help="write here instead of standard output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("fg", parents=[common], help="decide the (Fg) property")
    s.add_argument("files", nargs="*")
    s.add_argument("--batch", help="directory of .json files, processed in name order")
    s.set_defaults(func=cmd_fg)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant corpus")
    s.add_argument("fixtures", nargs="*", help="extra algebra files whose tables are checked")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except QalgError as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if args.json:
            out.write(dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc),
                             "exit_code": exc.exit_code, "version": __version__}))
        print(f"error: {msg}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
