"""Command-line interface: ``rstirling <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 size budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import __version__
from . import combinatorics as cb
from . import geometry, polyalg, rings, suites
from .errors import BudgetError, DomainError, ParameterError
from .groebner import hilbert_text

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ENUMERATE_COLUMNS = ["sigma", "code", "inv", "coinv", "monomial"]
VERIFY_COLUMNS = ["check", "n", "k", "r", "verdict", "informational", "summary"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Emitters
# ---------------------------------------------------------------------------


def _envelope(command: str, config: dict, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "rstirling",
        "version": __version__,
        "command": command,
        "config": config,
        **payload,
    }


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def code_text(c) -> str:
    return "(" + ",".join(str(x) for x in c) + ")"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _params(args) -> cb.Parameters:
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    return cb.Parameters(args.n, args.k, args.r)


def enumerate_rows(p: cb.Parameters) -> list:
    """``(sigma, code, inv, coinv, monomial)`` rows in lexicographic order of codes."""
    rows = []
    for sigma in cb.enumerate_partitions(p):
        c = cb.code(sigma)
        rows.append((sigma.format(), code_text(c), cb.inv(sigma), sum(c), polyalg.monomial_text(c)))
    return rows


def cmd_enumerate(args, out) -> int:
    p = _params(args)
    rows = enumerate_rows(p)
    if args.format == "csv":
        out.write(_csv(ENUMERATE_COLUMNS, rows))
    elif args.format == "json":
        records = [dict(zip(ENUMERATE_COLUMNS, row)) for row in rows]
        out.write(_json(_envelope("enumerate", {"parameters": p.as_dict()}, {"count": len(rows), "rows": records})))
    else:
        width = max(len(r[0]) for r in rows)
        cwidth = max(len(r[1]) for r in rows)
        for row in rows:
            out.write(f"{row[0]:<{width}}  {row[1]:<{cwidth}}  inv={row[2]}  coinv={row[3]}  {row[4]}\n")
    return EXIT_OK


def _triples(args) -> list:
    if args.n is not None:
        if args.k is None:
            ks = range(1, args.n + 1)
        else:
            ks = [args.k]
        out = []
        for k in ks:
            rs = [args.r] if args.r is not None else range(0, k + 1)
            out.extend(cb.Parameters(args.n, k, r) for r in rs)
        return out
    if args.max_n is None:
        raise UsageError("give --n (optionally --k, --r) or --max-n")
    return list(cb.Parameters.all_up_to(args.max_n, args.min_n))


def _summary(report) -> str:
    d = report.details
    if report.check == "hilbert" and "series" in d:
        return d["series"]
    if report.check == "conjecture-probe" and "equal_as_stated" in d:
        return (
            f"as stated: {d['equal_as_stated']}; after shift q^{d['vandermonde_shift']}: "
            f"{d['equal_after_shift']}"
        )
    if report.check == "schubert-zbasis" and "determinants" in d:
        return "determinants " + " ".join(f"{k}:{v}" for k, v in d["determinants"].items())
    if report.witnesses:
        return f"{len(report.witnesses)} witness(es); first: {json.dumps(report.witnesses[0], sort_keys=True)}"
    return ", ".join(f"{k}={v}" for k, v in d.items() if not isinstance(v, (list, dict)))


def _resolve_budget(args):
    if args.budget is None:
        return None
    defaults = [suites.budget_for(k) for k in (rings.GROEBNER, rings.CHARACTER, suites.COMBINATORICS)]
    if args.budget > min(defaults) and not args.allow_large:
        raise UsageError(f"--budget {args.budget} exceeds a default budget; add --allow-large to confirm")
    if args.budget > min(defaults):
        print(f"warning: budget n <= {args.budget} may take a long wall-clock time", file=sys.stderr)
    return args.budget


def cmd_verify(args, out) -> int:
    try:
        names = suites.resolve(args.suite)
    except KeyError as exc:
        raise UsageError(f"unknown suite {exc.args[0]!r}; choose from {', '.join(suites.ALL)} or all")
    triples = _triples(args)
    budget = _resolve_budget(args)
    start = time.perf_counter()
    reports = suites.run_suites(names, triples, budget=budget, jobs=args.jobs, sample=args.sample, seed=args.seed)
    elapsed = time.perf_counter() - start
    ok = suites.gating_passed(reports)
    gating = [r for r in reports if not r.informational]
    passed = sum(r.passed for r in gating)
    info = len(reports) - len(gating)
    if args.format == "json":
        config = {
            "suites": names,
            "parameters": [p.as_dict() for p in sorted(set(triples), key=lambda p: (p.n, p.k, p.r))],
            "budget": budget,
            "seed": args.seed,
            "sample": args.sample,
        }
        payload = {
            "verdict": "pass" if ok else "fail",
            "reports": [r.as_dict(timings=args.timings) for r in reports],
        }
        if args.timings:
            payload["wall_seconds"] = round(elapsed, 6)
        out.write(_json(_envelope("verify", config, payload)))
    elif args.format == "csv":
        rows = [
            (r.check, r.params.n, r.params.k, r.params.r, "pass" if r.passed else "fail",
             r.informational, _summary(r))
            for r in reports
        ]
        out.write(_csv(VERIFY_COLUMNS, rows))
    else:
        for r in reports:
            verdict = ("info-" if r.informational else "") + ("pass" if r.passed else "fail")
            line = f"{r.check} {r.params}: {verdict}"
            summary = _summary(r)
            if summary:
                line += f"  [{summary}]"
            if args.timings:
                line += f"  ({r.seconds:.3f}s)"
            out.write(line + "\n")
        out.write(f"summary: {passed}/{len(gating)} passed, {info} informational\n")
    return EXIT_OK if ok else EXIT_FAIL


def _word(text: str) -> tuple:
    try:
        return cb.parse_word(text)
    except (DomainError, ValueError) as exc:
        raise UsageError(f"malformed word {text!r}: {exc}")


def _ints(text: str) -> tuple:
    try:
        if "," in text or " " in text.strip():
            return tuple(int(x) for x in text.replace(",", " ").split())
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise UsageError(f"malformed integer list {text!r}")


def cmd_poly(args, out) -> int:
    kind = args.kind
    if kind == "schubert":
        perm = _word(args.perm)
        if not cb.is_permutation(perm):
            raise UsageError(f"{args.perm} is not a permutation")
        f = polyalg.schubert(perm)
    elif kind == "word-schubert":
        w = _word(args.word)
        k = args.k if args.k is not None else max(w)
        if args.n is not None and args.n != len(w):
            raise UsageError(f"--n {args.n} does not match the word length {len(w)}")
        f = polyalg.word_schubert(w, k)
    elif kind == "demazure":
        f = polyalg.demazure(_ints(args.gamma))
    elif kind in ("elementary", "homogeneous"):
        build = polyalg.elementary if kind == "elementary" else polyalg.homogeneous
        n = args.n if args.n is not None else args.m
        f = build(args.d, args.m, n)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    text = polyalg.to_text(f)
    if args.format == "json":
        out.write(_json(_envelope("poly", {"kind": kind, "nvars": f.nvars}, {"polynomial": text})))
    elif args.format == "csv":
        out.write(_csv(["kind", "polynomial"], [(kind, text)]))
    else:
        out.write(text + "\n")
    return EXIT_OK


def cmd_groebner(args, out) -> int:
    p = _params(args)
    rings.check_budget(p, _resolve_budget(args))
    Q = rings.quotient(p)
    basis = [polyalg.to_text(g) for g in Q.basis]
    series = Q.hilbert_series()
    if args.format == "json":
        payload = {
            "basis": basis,
            "leading_terms": [polyalg.monomial_text(m) for m in Q.leading_terms()],
            "hilbert_series": series,
            "dimension": Q.dimension,
        }
        out.write(_json(_envelope("groebner", {"parameters": p.as_dict()}, payload)))
    elif args.format == "csv":
        out.write(_csv(["generator"], [(g,) for g in basis]))
    else:
        for g in basis:
            out.write(g + "\n")
        out.write(f"hilbert: {hilbert_text(series)}\n")
    return EXIT_OK


def cmd_code(args, out) -> int:
    try:
        sigma = cb.OrderedSetPartition.parse(args.sigma)
    except (DomainError, ValueError) as exc:
        raise UsageError(f"malformed partition {args.sigma!r}: {exc}")
    c = cb.code(sigma, args.r)
    record = {"sigma": sigma.format(), "code": list(c), "inv": cb.inv(sigma), "coinv": sum(c),
              "monomial": polyalg.monomial_text(c)}
    if args.format == "json":
        out.write(_json(_envelope("code", {"r": args.r}, record)))
    elif args.format == "csv":
        out.write(_csv(ENUMERATE_COLUMNS, [(record["sigma"], code_text(c), record["inv"], record["coinv"],
                                            record["monomial"])]))
    else:
        out.write(code_text(c) + "\n")
    return EXIT_OK


def cmd_iota(args, out) -> int:
    p = _params(args)
    c = _ints(args.code)
    check = cb.is_valid_code(c, p)
    if not check:
        out.write(f"invalid: {check.describe()}\n")
        return EXIT_FAIL
    sigma = cb.iota(c, p)
    if args.format == "json":
        out.write(_json(_envelope("iota", {"parameters": p.as_dict()}, {"code": list(c), "sigma": sigma.format()})))
    elif args.format == "csv":
        out.write(_csv(["code", "sigma"], [(code_text(c), sigma.format())]))
    else:
        out.write(sigma.format() + "\n")
    return EXIT_OK


def cmd_pattern(args, out) -> int:
    w = _word(args.word)
    k = args.k if args.k is not None else max(w)
    pm = geometry.pattern_matrix(w, k)
    ini = sorted(geometry.initial_indices(w))
    if args.format == "json":
        payload = {"rows": [list(r) for r in pm.entries], "initial_indices": ini, "stars": pm.star_count}
        out.write(_json(_envelope("pattern", {"word": cb.format_word(w), "k": k}, payload)))
    elif args.format == "csv":
        out.write(_csv([f"c{j}" for j in range(1, len(w) + 1)], pm.entries))
    else:
        out.write(pm.render() + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(sp, triple=True):
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    if triple:
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--r", type=int, default=0)


def _add_budget(sp):
    sp.add_argument("--budget", type=int, help="largest n allowed (default from environment or built-in)")
    sp.add_argument("--allow-large", action="store_true", help="acknowledge a budget above the default")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rstirling", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rstirling {__version__}")
    parser.add_argument("--schubert-cache", type=int, help="size of the Schubert polynomial memo table")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("enumerate", help="list ordered r-Stirling partitions with codes and statistics")
    _add_common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", default=None,
                    help=f"one of {', '.join(suites.ALL)}, or all (repeatable)")
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--seed", type=int, default=0, help="seed for --sample")
    sp.add_argument("--sample", type=int, help="check this many random group elements per triple (chevalley)")
    sp.add_argument("--timings", action="store_true", help="include wall-clock times (output no longer reproducible)")
    _add_budget(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("poly", help="print a polynomial")
    sp.add_argument("kind", choices=["schubert", "word-schubert", "demazure", "elementary", "homogeneous"])
    sp.add_argument("--perm")
    sp.add_argument("--word")
    sp.add_argument("--gamma")
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("groebner", help="reduced neglex Groebner basis of the ideal")
    _add_common(sp)
    _add_budget(sp)
    sp.set_defaults(func=cmd_groebner)

    sp = sub.add_parser("code", help="coinversion code of a partition such as 25|1|34")
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.set_defaults(func=cmd_code)

    sp = sub.add_parser("iota", help="partition with a given coinversion code")
    _add_common(sp)
    sp.add_argument("--code", required=True, help="digits (2011) or comma separated")
    sp.set_defaults(func=cmd_iota)

    sp = sub.add_parser("pattern", help="pattern matrix of a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.set_defaults(func=cmd_pattern)
    return parser


_REQUIRED = {
    "schubert": ["perm"],
    "word-schubert": ["word"],
    "demazure": ["gamma"],
    "elementary": ["d", "m"],
    "homogeneous": ["d", "m"],
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify" and not args.suite:
        args.suite = ["all"]
    if args.command == "poly":
        missing = [f"--{a}" for a in _REQUIRED[args.kind] if getattr(args, a) is None]
        if missing:
            print(f"rstirling: error: poly {args.kind} needs {' '.join(missing)}", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.schubert_cache is not None:
            polyalg.set_schubert_cache_size(args.schubert_cache)
        return args.func(args, out)
    except BudgetError as exc:
        print(f"rstirling: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParameterError, DomainError) as exc:
        print(f"rstirling: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry():  # console script
    sys.exit(main())
