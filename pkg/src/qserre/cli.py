"""Command-line front end: ``qserre verify|ingest|explain|derivations|hopf|normalize``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import algebras as A
from . import report
from .pbw import SpecDocumentError, spec_from_json, validate_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# ingested algebras of this process, by user name
REGISTRY: dict = {}


class UsageError(Exception):
    pass


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> report.Config:
    sample = None
    if getattr(args, "numeric_sample", None):
        try:
            sample = tuple(Fraction(x) for x in args.numeric_sample)
        except ValueError:
            raise UsageError(f"--numeric-sample needs two rationals, got {args.numeric_sample}") from None
    for name in ("degbound", "window", "jobs"):
        v = getattr(args, name, None)
        if v is not None and v < (1 if name == "jobs" else 0):
            raise UsageError(f"--{name} must be nonnegative")
    return report.Config(
        degbound=getattr(args, "degbound", None),
        window=getattr(args, "window", None),
        jobs=getattr(args, "jobs", 1) or 1,
        seed=getattr(args, "seed", 0),
        numeric_sample=sample,
        timing=getattr(args, "timing", False),
    )


def _emit(rep: report.VerificationReport, out: str | None) -> int:
    _write(rep.to_json(), out)
    c = rep.counts()
    print(f"{rep.suite}: {c['pass']} pass, {c['discrepancy']} discrepancy, {c['fail']} fail", file=sys.stderr)
    return EXIT_FAIL if rep.failed else EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    try:
        rep = report.run_suite(args.suite, cfg)
    except report.UnknownSuite:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(['all', *report.SUITES])}") from None
    except report.ConfigError as exc:
        raise UsageError(str(exc)) from None
    return _emit(rep, args.out)


def _locate(text: str, message: str) -> str:
    """Prefix ``line:col`` of the first quoted key named in ``message``."""
    m = re.search(r"\[('|\")(.+?)\1\]", message)
    if not m:
        return message
    pos = text.find(f'"{m.group(2)}"')
    if pos < 0:
        return message
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"line {line}:{col}: {message}"


def ingest(path: str, name: str | None = None) -> A.NamedAlgebra:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        spec = spec_from_json(text, path)
    except SpecDocumentError as exc:
        raise SpecDocumentError(_locate(text, str(exc))) from None
    rep = validate_spec(spec)
    if not rep.confluent:
        lines = [f"{path}: presentation is not confluent"]
        for f in rep.failures:
            lines.append(f"  overlap triple ({', '.join(f.word.split())}): (ab)c = {f.left}; a(bc) = {f.right}")
        raise SpecDocumentError("\n".join(lines))
    key = name or spec.name or path
    alg = A.NamedAlgebra(key, spec)
    REGISTRY[key] = alg
    return alg


def cmd_ingest(args) -> int:
    try:
        alg = ingest(args.file, args.name)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except SpecDocumentError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    spec = alg.spec
    same = [n for n in ("u", "gru") if A.algebra_by_name(n).spec == spec]
    print(f"registered {alg.name}: variables {', '.join(spec.vars)}; "
          f"{len(validate_spec(spec).checks)} overlaps resolve"
          + (f"; equal to built-in {same[0]}" if same else ""))
    return EXIT_OK


def cmd_explain(args) -> int:
    try:
        print(report.explain(args.id))
    except KeyError:
        raise UsageError(f"unknown check id {args.id!r}") from None
    return EXIT_OK


def cmd_derivations(args) -> int:
    from . import derivations as D
    cfg = _config(args)
    win, db = cfg.win(2), cfg.bound(6)
    scan = D.hh1_scan(win, db, cfg.jobs)
    doc = {
        "schema": report.SCHEMA,
        "command": "derivations scan",
        "config": {"window": win, "degbound": db},
        "rows": [{"weight": list(r.weight), "derivations": r.der_dim, "inner": r.inner_dim, "outer": r.outer}
                 for r in scan.rows if r.der_dim or r.inner_dim],
        "total_outer": scan.total,
        "support": [list(w) for w in scan.support()],
    }
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_hopf(args) -> int:
    from . import hopf
    cfg = _config(args)
    if args.action == "verify":
        try:
            alg = A.algebra_by_name(args.algebra)
        except KeyError:
            raise UsageError(f"unknown algebra {args.algebra!r}") from None
        if alg.name not in ("Vcheck", "Ugeq0"):
            raise UsageError("hopf verify needs --algebra vcheck or ugeq0")
        recs = [c for c in report.suite_hopf_axioms(cfg) if c.id.startswith(f"hopf.{alg.name}.")]
        rep = report.VerificationReport(f"hopf verify {args.algebra}", recs, cfg.echo())
        return _emit(rep, args.out)
    if args.action == "auto-scan":
        rep = report.VerificationReport("hopf auto-scan", report.suite_auto_scan(cfg), cfg.echo())
        return _emit(rep, args.out)
    if args.action == "hopf-auto-scan":
        rep = report.VerificationReport("hopf hopf-auto-scan", report.suite_hopf_auto(cfg), cfg.echo())
        return _emit(rep, args.out)
    if args.action == "check":
        if not args.candidate:
            raise UsageError("hopf check needs a candidate literal such as 'sigma=id a=1 b=2 c=1 d=-3'")
        try:
            cand = hopf.AutoCandidate.parse(" ".join(args.candidate))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad candidate literal: {exc}") from None
        rel = hopf.is_automorphism(cand)
        comp = hopf.hopf_check(cand)
        doc = {
            "candidate": str(cand),
            "relators": {k: str(v) for k, v in sorted(rel.residuals.items())},
            "automorphism": rel.ok,
            "coproduct_compatibility": {k: str(v) for k, v in sorted(comp.items())},
        }
        _write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n", args.out)
        return EXIT_OK
    raise UsageError(f"unknown hopf action {args.action!r}")


def cmd_normalize(args) -> int:
    try:
        alg = REGISTRY.get(args.algebra) or A.algebra_by_name(args.algebra)
    except KeyError:
        raise UsageError(f"unknown algebra {args.algebra!r}") from None
    extra = A.named_elements(alg.spec) if alg.spec.vars == A.U_VARS else None
    try:
        x = alg.spec.parse(args.expr, extra)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(x)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qserre", description="Exact verification of U+_{r,s}(B2), its torus embedding, derivations and Hopf structure.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window=True):
        sp.add_argument("--degbound", type=int)
        if window:
            sp.add_argument("--window", type=int)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="suite name or 'all'")
    common(v)
    v.add_argument("--numeric-sample", nargs=2, metavar=("R0", "S0"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--timing", action="store_true", help="add per-suite wall times to the report")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("ingest", help="load and validate an algebra-spec JSON file")
    i.add_argument("file")
    i.add_argument("--name")
    i.set_defaults(func=cmd_ingest)

    e = sub.add_parser("explain", help="describe a check record")
    e.add_argument("id")
    e.set_defaults(func=cmd_explain)

    d = sub.add_parser("derivations", help="derivation scans")
    d.add_argument("action", choices=["scan"])
    common(d)
    d.set_defaults(func=cmd_derivations)

    h = sub.add_parser("hopf", help="Hopf structure and automorphisms")
    h.add_argument("action", choices=["verify", "auto-scan", "hopf-auto-scan", "check"])
    h.add_argument("candidate", nargs="*", help="candidate literal for 'check'")
    h.add_argument("--algebra", default="vcheck")
    common(h)
    h.set_defaults(func=cmd_hopf)

    n = sub.add_parser("normalize", help="print the PBW normal form of an expression")
    n.add_argument("expr")
    n.add_argument("--algebra", default="u")
    n.set_defaults(func=cmd_normalize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qserre: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
