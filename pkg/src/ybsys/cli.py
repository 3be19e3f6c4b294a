"""Command line interface: ``ybsys {verify,emit,relations,derive-system,search}``.

Exit codes: 0 success, 1 a nonzero residual or failed check, 2 malformed
input, 3 search space over the candidate limit.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .algebras import OperatorQuadruple, named_algebra, theorem21_quadruple, theorem31_quadruple
from .commutators import coloured_system_residuals, reflection_residuals, wxz_residuals
from .errors import DocumentError, SearchSpaceTooLarge, YBError
from .functional import (SearchConfig, audit_transcription, derive_system, search_solutions,
                         transcribed_system)
from .io import (algebra_from_document, dumps, matrix_document, matrix_to_body,
                 quadruple_document, quadruple_from_document, read_document, report_document,
                 write_document)
from .relations import check_paper_relations, derive_relations, dichotomy_witness
from .rings import Ring
from .tensor import ColouredOperator

log = logging.getLogger("ybsys")

EXIT_OK, EXIT_NONZERO, EXIT_INPUT, EXIT_TOO_LARGE = 0, 1, 2, 3

FAMILIES = ("theorem21", "theorem31-1", "theorem31-2")

FAMILY_HELP = """\
families:
  theorem21    constant operators, parameters lambda, lambda' (and sigma for dim2)
  theorem31-1  coloured operators, parameters p, p', q, q'
  theorem31-2  coloured operators, parameters p, q, ell, m; ell and m stand for
               the scalars usually written lambda, mu in this case, renamed so
               they do not clash with the theorem21 lambda
"""


class UsageError(Exception):
    pass


def _parse_params(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    q = Ring()
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad --params item {item!r}; expected name=value")
        name, value = (s.strip() for s in item.split("=", 1))
        try:
            out[name] = q(value).constant_value()
        except YBError as exc:
            raise UsageError(f"bad value for {name}: {exc}") from exc
    return out


def _algebra(spec: str):
    if spec in ("dim2", "x3", "klein"):
        return named_algebra(spec)
    if Path(spec).exists():
        return algebra_from_document(spec)
    raise UsageError(f"unknown algebra {spec!r}; use dim2, x3, klein or an algebra file")


def _specialize(M, params):
    if not params:
        return M
    if isinstance(M, ColouredOperator):
        if set(params) & set(M.spectral):
            raise UsageError("spectral variables cannot be fixed with --params")
        return ColouredOperator(M.matrix.substitute(params), M.spectral)
    return M.substitute(params)


def _family_quadruple(family: str, algebra: str, params: dict) -> OperatorQuadruple:
    alg = _algebra(algebra)
    if family == "theorem21":
        quad = theorem21_quadruple(alg)
    else:
        if set(params) & {"u", "v"}:
            raise UsageError("spectral variables cannot be fixed with --params")
        quad = theorem31_quadruple(alg, int(family[-1]))
    ops = [_specialize(M, params) for M in quad]
    return OperatorQuadruple(*ops, provenance=quad.provenance)


def _status_lines(report) -> list:
    return [{"label": lab, "zero": pos is None,
             "first_nonzero": None if pos is None else list(pos)} for lab, pos in report.status()]


def _print_report(report, header: str):
    print(header)
    for lab, pos in report.status():
        if pos is None:
            print(f"  {lab}: zero")
        else:
            entry = report[lab][pos]
            print(f"  {lab}: NONZERO at {pos}: {entry}")
    failure = report.first_failure()
    print("result: all residuals zero" if failure is None else f"result: first failing condition {failure[0]}")


# -- verify ---------------------------------------------------------------------

def _verify_operands(args):
    params = _parse_params(args.params)
    if args.input:
        ops, provenance = quadruple_from_document(args.input)
        ops = {k: _specialize(M, params) for k, M in ops.items()}
        return ops, provenance
    if not args.family:
        raise UsageError("verify needs --family or --input")
    quad = _family_quadruple(args.family, args.algebra, params)
    return dict(zip("ABCD", quad)), quad.provenance


def cmd_verify(args) -> int:
    ops, provenance = _verify_operands(args)
    system = args.system
    coloured = any(isinstance(M, ColouredOperator) for M in ops.values())
    if system == "wxz":
        if "W" in ops:
            W, X, Z = ops["W"], ops["X"], ops["Z"]
        elif "A" in ops:
            # W and Z from A, X from B
            W, X, Z = ops["A"], ops["B"], ops["A"]
        if any(isinstance(M, ColouredOperator) for M in (W, X, Z)):
            raise UsageError("the wxz system takes constant matrices")
        report = wxz_residuals(W, X, Z, workers=args.threads)
    else:
        if set(ops) != set("ABCD"):
            raise UsageError(f"the {system} system needs operators A, B, C, D")
        A, B, C, D = (ops[k] for k in "ABCD")
        if system == "reflection":
            if coloured:
                raise UsageError("the reflection system takes constant matrices; use --system coloured")
            report = reflection_residuals(A, B, C, D, workers=args.threads)
        else:
            A, B, C, D = (M if isinstance(M, ColouredOperator) else ColouredOperator.from_constant(M)
                          for M in (A, B, C, D))
            report = coloured_system_residuals(A, B, C, D, workers=args.threads)
    body = {"command": "verify", "system": system, "provenance": provenance,
            "all_zero": report.all_zero, "conditions": _status_lines(report)}
    if args.emit_residuals:
        residuals = {lab: matrix_to_body(r) for lab, r in zip(report.labels, report.residuals)}
        write_document(args.emit_residuals,
                       report_document(report.residuals[0].ring, dict(body, residuals=residuals)))
    if args.json:
        sys.stdout.write(dumps(report_document(report.residuals[0].ring, body)))
    else:
        _print_report(report, f"{system} system, {provenance}")
    return EXIT_OK if report.all_zero else EXIT_NONZERO


# -- emit -----------------------------------------------------------------------

def cmd_emit(args) -> int:
    params = _parse_params(args.params)
    quad = _family_quadruple(args.family, args.algebra, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, M in zip("ABCD", quad):
        write_document(out / f"{name}.json", matrix_document(M, name))
    write_document(out / "quadruple.json", quadruple_document(quad))
    print(f"wrote A.json, B.json, C.json, D.json and quadruple.json to {out}")
    return EXIT_OK


# -- relations --------------------------------------------------------------------

def _scalar_arg(text):
    if text is None:
        return None
    try:
        return Ring()(text).constant_value()
    except YBError as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from exc


def cmd_relations(args) -> int:
    from .algebras import two_dim_algebra

    values = {"lambda": _scalar_arg(args.lam), "lambda'": _scalar_arg(args.lam_prime),
              "sigma": _scalar_arg(args.sigma)}
    bindings = {k: v for k, v in values.items() if v is not None}
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    entries = derive_relations(quad)
    if bindings:
        entries = [e.specialize(bindings) for e in entries]
    body = {"command": "relations", "specialization": {k: str(v) for k, v in bindings.items()},
            "entries": [str(e) for e in entries]}
    status = EXIT_OK
    if args.check_paper:
        if len(bindings) != 3:
            raise UsageError("--check-paper needs numeric --lambda, --lambda-prime and --sigma")
        point = (values["lambda"], values["lambda'"], values["sigma"])
        try:
            checks = check_paper_relations(point, allow_boundary=args.allow_boundary)
            witness = dichotomy_witness(point, allow_boundary=args.allow_boundary)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        body["checks"] = [c.to_json() for c in checks]
        body["dichotomy"] = {"rank": witness["rank"], "ac_in_span": witness["ac"],
                             "ca_in_span": witness["ca"]}
        if not all(c.ok for c in checks):
            status = EXIT_NONZERO
    if args.json:
        sys.stdout.write(dumps(report_document(quad.A.ring, body)))
        return status
    print("entries of A12 L1 B12 L2 - L2 C12 L1 D12:")
    for k, e in enumerate(entries):
        print(f"  ({k // 4},{k % 4}) {e}")
    if args.check_paper:
        print("published relations:")
        for c in body["checks"]:
            if c["member"]:
                state = "in span" + (", revalidated" if c["revalidated"] else ", NOT revalidated")
            else:
                state = "NOT in span"
            print(f"  {c['relation']}: {state}")
            if c["member"]:
                print(f"    certificate: [{', '.join(c['certificate'])}]")
        d = body["dichotomy"]
        print(f"span rank {d['rank']}; ac in span: {d['ac_in_span']}; ca in span: {d['ca_in_span']}")
    return status


# -- derive-system -------------------------------------------------------------------

def cmd_derive_system(args) -> int:
    part = args.part.upper()
    derived = derive_system(part)
    transcribed = transcribed_system(part)
    audit = audit_transcription(part, points=args.points, modulus=args.modulus, seed=args.seed)
    body = {
        "command": "derive-system", "part": part, "count": len(derived),
        "equations": [{"key": lab, "polynomial": str(eq)} for lab, eq in derived],
        "transcribed": [{"equation": lab, "polynomial": str(eq)} for lab, eq in transcribed],
        "audit": audit.to_json(),
    }
    if args.json:
        sys.stdout.write(dumps(report_document(derived.equations[0].ring, body)))
    else:
        print(f"[[A,{'A,A' if part == 'AAA' else 'C,C'}]] = 0: {len(derived)} distinct equations")
        for lab, eq in derived:
            print(f"  {lab}: {eq} = 0")
        print(f"audit against the transcription at {audit.points} points mod {audit.modulus}:")
        for e in audit.entries:
            extra = f" (repair: {e['repair']})" if e["repair"] else ""
            where = f", derived {e['derived_label']} scaled by {e['scale']}" if e["derived_label"] else ""
            print(f"  {e['equation']}: {e['status']}{where}{extra}")
        print(f"  discrepancies: {len(audit.discrepancies)}, unexplained: {audit.unexplained}")
    return EXIT_OK if audit.unexplained == 0 else EXIT_NONZERO


# -- search ------------------------------------------------------------------------

def _load_search_config(path) -> tuple:
    _, ring, body = read_document(path, "search_config")
    if ring.vars:
        raise DocumentError("search_config ring must be a coefficient field (rational or prime_field)")
    try:
        config = SearchConfig.from_json(body)
    except (TypeError, ValueError, KeyError) as exc:
        raise DocumentError(f"bad search config: {exc}") from exc
    if (config.modulus or None) != ring.modulus:
        raise DocumentError("search_config ring and domain disagree on the characteristic")
    return ring, config


def cmd_search(args) -> int:
    ring, config = _load_search_config(args.config)
    result = search_solutions(config, threads=args.threads)
    doc = report_document(ring, {"command": "search", "config": config.to_json(),
                                 "result": result.to_json()})
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"{result.candidates} candidates, {result.filter_survivors} pass the functional filter, "
          f"{len(result.solutions)} verified", file=sys.stderr)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ybsys", description="Exact Yang-Baxter system workbench.",
                                epilog=FAMILY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def family_args(sp, required):
        sp.add_argument("--family", choices=FAMILIES, required=required)
        sp.add_argument("--algebra", default="dim2", help="dim2, x3, klein or an algebra JSON file")
        sp.add_argument("--params", help="name=value,... (symbolic when omitted)")

    v = sub.add_parser("verify", help="check a Yang-Baxter system", epilog=FAMILY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    v.add_argument("--system", choices=("wxz", "reflection", "coloured"), required=True)
    family_args(v, False)
    v.add_argument("--input", help="quadruple JSON file instead of --family")
    v.add_argument("--emit-residuals", metavar="PATH", help="write the residual matrices to PATH")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="write the operators of a family as JSON", epilog=FAMILY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    family_args(e, True)
    e.add_argument("--out", required=True, help="output directory")
    e.set_defaults(func=cmd_emit)

    r = sub.add_parser("relations", help="generator relations of the theorem21 exchange algebra")
    r.add_argument("--lambda", dest="lam")
    r.add_argument("--lambda-prime", dest="lam_prime")
    r.add_argument("--sigma")
    r.add_argument("--check-paper", action="store_true",
                   help="certify the published relation sets by span membership")
    r.add_argument("--allow-boundary", action="store_true", help="permit lambda or lambda' = -1")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_relations)

    d = sub.add_parser("derive-system", help="derive the functional equations and audit the transcription")
    d.add_argument("--part", choices=("aaa", "acc", "AAA", "ACC"), required=True)
    d.add_argument("--points", type=int, default=200)
    d.add_argument("--modulus", type=int, default=10007)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_derive_system)

    s = sub.add_parser("search", help="bounded search for new coefficient functions")
    s.add_argument("--config", required=True, help="search_config JSON file")
    s.add_argument("--out", help="results file (stdout when omitted)")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SearchSpaceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (UsageError, DocumentError, YBError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
