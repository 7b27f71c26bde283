"""Command line front end: ``umbrella-hopf gen | check | query``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 refusal to answer a query about an unverified presentation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .hopf import (QuotientHopf, RefusedError, Report, check_coalgebra_axioms,
                   check_commutator_filtration, check_hopf_ideal, nakayama_automorphism,
                   target_of, verify_crossed_product, verify_nakayama, DEFAULT_SEED)
from .liealg import block_matrix, congruence_normalize, matrix_from_json, matrix_rank
from .rewrite import (PresentationError, ReductionSystem, check_confluence, enumerate_normal_words,
                      pbw_monomial_count)
from .serialize import dumps, is_stamped, presentation_from_json, presentation_to_json, stamp
from .umbrella import build_hopf_data, build_presentation, build_wzz_example, gkdim, iso_map

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="umbrella-hopf",
                                 description="Exact checks on the umbrella Hopf algebras UM(A).")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def source(p, with_file=True):
        g = p.add_argument_group("algebra")
        if with_file:
            g.add_argument("--in", dest="infile", metavar="FILE", help="presentation JSON file")
        g.add_argument("--r", type=_nonneg)
        g.add_argument("--s", type=_nonneg)
        g.add_argument("--matrix", metavar="FILE", help="JSON file with an antisymmetric matrix")
        g.add_argument("--wzz", type=_fraction, metavar="LAMBDA", help="the 3-generator test algebra")
        g.add_argument("--yy-coef", type=_fraction, default=Fraction(1, 3),
                       help="coefficient c in [y_i,y_j] = c A_ij x0^3 (default 1/3)")

    def output(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from reports")

    g = sub.add_parser("gen", help="write a presentation file")
    source(g, with_file=False)
    output(g)

    c = sub.add_parser("check", help="confluence, Hopf ideal and coalgebra axioms")
    source(c)
    output(c)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--samples", type=_nonneg, default=50)

    q = sub.add_parser("query", help="ask one question about a verified algebra")
    q.add_argument("what", choices=("nf", "order", "primitives", "hilbert", "nakayama",
                                    "crossed", "commfilt", "iso"))
    source(q)
    output(q)
    q.add_argument("--expr")
    q.add_argument("--cutoff", type=_nonneg)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--force", action="store_true", help="answer even without a verified stamp")
    q.add_argument("--target", metavar="FILE", help="iso: target matrix (default: block normal form)")
    q.add_argument("--P", dest="pmatrix", metavar="FILE", help="iso: congruence matrix")
    return ap


# -- loading -----------------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _read_matrix(path: str, antisymmetric: bool = True):
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("A", data.get("matrix"))
    return matrix_from_json(data, antisymmetric=antisymmetric)


def _build_doc(args) -> dict:
    """Presentation document from --r/--s, --matrix or --wzz."""
    chosen = [args.matrix is not None, args.wzz is not None, args.r is not None or args.s is not None]
    if sum(chosen) != 1:
        raise InputError("give exactly one of --r/--s, --matrix, --wzz (or --in)")
    if args.wzz is not None:
        return presentation_to_json(*build_wzz_example(args.wzz))
    if args.matrix is not None:
        A = _read_matrix(args.matrix)
    else:
        if args.r is None or args.s is None:
            raise InputError("--r and --s go together")
        if 2 * args.s > args.r:
            raise InputError(f"need r >= 2s, got r={args.r}, s={args.s}")
        A = block_matrix(args.r, args.s)
    return presentation_to_json(build_presentation(A, args.yy_coef), build_hopf_data(A))


def _load(args):
    if getattr(args, "infile", None):
        doc = _read_json(args.infile)
        if not isinstance(doc, dict):
            raise InputError("presentation file must hold a JSON object")
        return doc, True
    return _build_doc(args), False


def _emit(args, payload: dict, text: str):
    body = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    sys.stdout.write(body if args.format == "json" else text + "\n")


def _report_text(rep: dict) -> str:
    lines = [f"{rep['check']}: {rep['verdict']}"]
    for f in rep["failures"][:20]:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in sorted(f.items())))
    if len(rep["failures"]) > 20:
        lines.append(f"  ... {len(rep['failures']) - 20} more")
    return "\n".join(lines)


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    doc = _build_doc(args)
    p, _ = presentation_from_json(doc)
    n = len(p.generators)
    meta = p.meta
    summary = {"generators": n, "family": meta.get("family")}
    lines = [f"generators = {n}"]
    if "A" in meta:
        A = matrix_from_json(meta["A"])
        g = gkdim(A.shape[0], matrix_rank(A) // 2)
        summary["gkdim"] = g
        lines.append(f"GKdim = {g}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        summary["out"] = args.out
    if args.format == "json":
        sys.stdout.write(dumps(summary))
    else:
        print("\n".join(lines))
    return EXIT_OK


def _confluence_report(R: ReductionSystem, p) -> Report:
    c = check_confluence(R)
    d = c.to_dict()
    return Report("confluence", target_of(p), "pass" if c.confluent else "fail",
                  d["triples_failed"], c.elapsed_ms, {"triples_total": c.triples_total})


def cmd_check(args) -> int:
    doc, from_file = _load(args)
    p, data = presentation_from_json(doc)
    if data is None:
        raise InputError("presentation file has no hopf section")
    t0 = time.perf_counter()
    try:
        R = ReductionSystem(p)
        steps = [_confluence_report(R, p)]
    except PresentationError as exc:
        steps = [Report("confluence", target_of(p), "fail", [{"condition": str(exc)}])]
    if steps[0].passed:
        steps.append(check_hopf_ideal(p, data, R=R))
        if steps[-1].passed:
            H = QuotientHopf(p, data, R=R, verify=False)
            steps.append(check_coalgebra_axioms(H, samples=args.samples, seed=args.seed))
    ok = all(s.passed for s in steps) and len(steps) == 3
    failures = [dict(f, step=s.check) for s in steps for f in s.failures]
    rep = Report("pipeline", target_of(p), "pass" if ok else "fail", failures,
                 round((time.perf_counter() - t0) * 1000, 3),
                 {"steps": {s.check: s.verdict for s in steps},
                  "reports": [s.to_dict(timing=not args.no_timing) for s in steps],
                  "generators": len(p.generators)})
    payload = rep.to_dict(timing=not args.no_timing)
    if ok and from_file:
        with open(args.infile, "w", encoding="utf-8") as fh:
            fh.write(dumps(stamp(doc, [s.check for s in steps])))
    _emit(args, payload, "\n".join(_report_text(s.to_dict()) for s in steps)
          + f"\nverdict: {rep.verdict}")
    return EXIT_OK if ok else EXIT_FAIL


def _hopf_for_query(args) -> QuotientHopf:
    doc, from_file = _load(args)
    p, data = presentation_from_json(doc)
    if data is None:
        raise InputError("presentation file has no hopf section")
    if args.force:
        return QuotientHopf(p, data, verify=False)
    if from_file:
        if not is_stamped(doc):
            raise RefusedError("presentation has no valid verified stamp; run check first or pass --force")
        R = ReductionSystem(p)
        R.confluent = True  # vouched for by the stamp
        return QuotientHopf(p, data, R=R, verify=False)
    return QuotientHopf(p, data)


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise InputError(f"--{name} is required for query {args.what}")
    return v


def _query_iso(args) -> int:
    A = _read_matrix(_need(args, "matrix"))
    if args.target or args.pmatrix:
        if not (args.target and args.pmatrix):
            raise InputError("--target and --P go together")
        B = _read_matrix(args.target)
        P = _read_matrix(args.pmatrix, antisymmetric=False)
    else:
        P, B, _ = congruence_normalize(A)
    t0 = time.perf_counter()
    _, iso = iso_map(A, B, P)
    d = iso.to_dict()
    rep = Report("iso", target_of(iso.target), "pass" if iso.verified else "fail", d["failures"],
                 round((time.perf_counter() - t0) * 1000, 3),
                 {"substitution": d["substitution"], "relations": len(iso.source.pairs)})
    payload = rep.to_dict(timing=not args.no_timing)
    _emit(args, payload, _report_text(payload))
    return EXIT_OK if iso.verified else EXIT_FAIL


def cmd_query(args) -> int:
    if args.what == "iso":
        return _query_iso(args)
    H = _hopf_for_query(args)
    gens = H.generators
    timing = not args.no_timing
    if args.what == "nf":
        expr = _need(args, "expr")
        res = gens.format(H.nf(gens.parse(expr)))
        _emit(args, {"query": "nf", "input": expr, "result": res}, res)
    elif args.what == "order":
        expr = _need(args, "expr")
        o = H.order(gens.parse(expr), cutoff=args.cutoff if args.cutoff is not None else 32)
        _emit(args, {"query": "order", "input": expr, "result": o}, f"order = {o}")
    elif args.what == "primitives":
        basis = H.primitive_space(_need(args, "cutoff"))
        _emit(args, {"query": "primitives", "cutoff": args.cutoff, "dim": len(basis),
                     "basis": [gens.format(b) for b in basis]}, f"dim = {len(basis)}")
    elif args.what == "hilbert":
        n = enumerate_normal_words(H.R, _need(args, "cutoff"))
        _emit(args, {"query": "hilbert", "cutoff": args.cutoff, "normal_words": n,
                     "pbw_count": pbw_monomial_count(H.weights, args.cutoff)}, str(n))
    else:
        if args.what == "nakayama":
            rep = verify_nakayama(H, nakayama_automorphism(H))
        elif args.what == "crossed":
            rep = verify_crossed_product(H, args.cutoff if args.cutoff is not None else 4)
        else:
            rep = check_commutator_filtration(H, args.k, args.cutoff if args.cutoff is not None else 5)
        payload = rep.to_dict(timing=timing)
        _emit(args, payload, _report_text(payload))
        return EXIT_OK if rep.passed else EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"gen": cmd_gen, "check": cmd_check, "query": cmd_query}[args.command]
    try:
        return handler(args)
    except RefusedError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InputError, PresentationError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
