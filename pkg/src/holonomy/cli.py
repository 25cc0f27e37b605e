"""Command line front end.

Human-readable tables go to standard output; a machine document (JSON)
is written behind --json, either to a file or, with a bare --json, to
standard output in place of the table.  Reports are byte-identical
across runs for fixed inputs and seed: they carry no wall times, and
exact rationals are serialized as strings like "-1/2" so no float ever
enters the exact pipelines.

Exit codes: 0 = computed, and matching the expected verdict where one
exists; 1 = computed with a mismatch or a failed verification; 2 =
input error.  Malformed input never produces a traceback: diagnostics
go to the error stream.
"""

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .bergerkit import (
    berger_report,
    first_criterion,
    prolongation,
    split_curvature_space,
    vdual_tilde_k,
    vtwice_g2_and_ghat,
    vtwice_g3,
    weak_criterion,
)
from .catalog2d import (
    CATALOG,
    DEFAULT_LAMBDA_GRID,
    LambdaRule,
    UnknownFamily,
    catalog_algebra,
    catalog_keys,
    classify,
    expected_verdicts,
)
from .connlab import UnregisteredFamily, verify_connection
from .repcore import (
    LinearRep,
    NotClosed,
    decomposable_along_invariant_lines,
    direct_sum_dual,
    direct_sum_twice,
    rep_from_rows,
)

REP_KINDS = ("plain", "v-dual", "v-twice")


class CLIError(Exception):
    """Input problem; reported on the error stream with exit code 2."""


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError(f"not a rational number: {text!r} ({exc})") from None


def parse_algebra_document(doc) -> LinearRep:
    """Build a representation from {"n": ..., "name": ..., "basis": ...}.

    Basis entries are strings parsed as optionally-signed integer
    ratios.  Entries in lowest terms round-trip exactly through
    algebra_document.
    """
    if not isinstance(doc, dict):
        raise CLIError("algebra document must be a JSON object")
    missing = {"n", "basis"} - set(doc)
    if missing:
        raise CLIError(f"algebra document missing keys: {sorted(missing)}")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise CLIError("'n' must be a positive integer")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise CLIError("'name' must be a string")
    basis = doc["basis"]
    if not isinstance(basis, list):
        raise CLIError("'basis' must be a list of matrices")
    rows = []
    for b, mat in enumerate(basis):
        if (not isinstance(mat, list) or len(mat) != n
                or any(not isinstance(r, list) or len(r) != n for r in mat)):
            raise CLIError(f"basis[{b}] is not an {n} x {n} matrix")
        for r in mat:
            for e in r:
                if not isinstance(e, str):
                    raise CLIError(
                        f"basis[{b}] has a non-string entry {e!r}; "
                        "rationals must be strings like \"-1/2\"")
        rows.append([[parse_rational(e) for e in r] for r in mat])
    try:
        return rep_from_rows(n, rows, name=name)
    except NotClosed as exc:
        raise CLIError(str(exc)) from None
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def algebra_document(g: LinearRep) -> dict:
    return {
        "n": g.n,
        "name": g.name,
        "basis": [[[str(e) for e in row] for row in b.to_rows()]
                  for b in g.basis],
    }


def _rat_str(x):
    return None if x is None else str(Fraction(x))


def _load_algebra(args):
    """Resolve the input algebra.  An explicit --file wins over a
    positional catalog key.  Returns (rep, catalog_key_or_None, lam)."""
    lam = parse_rational(args.lam) if getattr(args, "lam", None) else None
    if getattr(args, "file", None):
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise CLIError(f"cannot read {args.file}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise CLIError(f"invalid JSON in {args.file}: {exc}") from None
        return parse_algebra_document(doc), None, lam
    name = getattr(args, "name", None)
    if not name:
        raise CLIError("provide a catalog key or --file")
    try:
        return catalog_algebra(name, lam), name, lam
    except (UnknownFamily, LambdaRule) as exc:
        raise CLIError(str(exc)) from None


def _command_echo(argv) -> list:
    """The command with output plumbing stripped: where the report is
    written is not an input, so it must not break byte-identity."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--json":
            i += 1
            # drop a following value (a path or "-"), but not an option
            if i < len(argv) and (argv[i] == "-"
                                  or not argv[i].startswith("-")):
                i += 1
            continue
        if tok.startswith("--json="):
            i += 1
            continue
        out.append(tok)
        i += 1
    return out


def _report_document(argv, payload, seed=None) -> dict:
    doc = {
        "tool": {"name": "holonomy", "version": __version__},
        "command": _command_echo(argv),
    }
    if seed is not None:
        doc["seed"] = seed
    doc.update(payload)
    return doc


def _emit(args, argv, payload, lines, seed=None) -> None:
    doc = _report_document(argv, payload, seed=seed)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    target = getattr(args, "json", None)
    if target in (None, False):
        sys.stdout.write("\n".join(lines) + "\n")
    elif target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
        sys.stdout.write("\n".join(lines) + "\n")


# -- check -------------------------------------------------------------------


def cmd_check(args, argv) -> int:
    g, key, lam = _load_algebra(args)
    kind = args.rep
    dec = decomposable_along_invariant_lines(g) if g.n == 2 else None
    payload = {
        "check": {
            "algebra": g.name or "unnamed",
            "document": algebra_document(g),
            "lambda": _rat_str(lam),
            "rep": kind,
        }
    }
    if kind == "plain":
        rep = berger_report(g, kind="plain", decomposable=dec)
        block_g = g
    else:
        s = direct_sum_dual(g) if kind == "v-dual" else direct_sum_twice(g)
        rep = berger_report(s.rep, kind=kind, decomposable=dec)
        split = split_curvature_space(s)
        if kind == "v-dual":
            model = vdual_tilde_k(g)
            model_name = "dual-pairing space"
        else:
            model = vtwice_g2_and_ghat(g)[0]
            model_name = "second prolongation"
        if not (rep.first_criterion == split.verdict == model.verdict):
            raise RuntimeError(
                "criterion pipelines disagree; this is an internal error")
        payload["check"]["split_pipeline"] = {
            "dim_k": split.dim,
            "dim_generated": split.generated.dim,
            "first_criterion": split.verdict,
        }
        payload["check"]["model_pipeline"] = {
            "name": model_name,
            "dim": model.dim,
            "first_criterion": model.verdict,
        }
        block_g = s.rep
    payload["check"]["generic_pipeline"] = {
        "dim_g": rep.dim_g,
        "dim_k": rep.dim_k,
        "dim_generated": rep.dim_generated,
        "first_criterion": rep.first_criterion,
        "dim_k1": rep.dim_k1,
        "second_criterion": rep.second_criterion,
    }
    payload["check"]["decomposable"] = dec

    computed = None
    expected = None
    if kind in ("v-dual", "v-twice"):
        computed = ("decomposable" if dec
                    else ("pass" if rep.first_criterion else "fail"))
        if key is not None:
            expected = expected_verdicts(key, lam, kind)
    payload["check"]["computed"] = computed
    payload["check"]["expected"] = expected
    payload["check"]["match"] = (None if expected is None
                                 else computed == expected)

    c = payload["check"]
    lines = [
        f"algebra {c['algebra']} (n = {g.n}, dim = {g.dim}) rep {kind} "
        f"on dimension {block_g.n}",
        f"  dim K = {rep.dim_k}, generated = {rep.dim_generated}, "
        f"first criterion: {'pass' if rep.first_criterion else 'fail'}",
        f"  dim K1 = {rep.dim_k1}, "
        f"second criterion: {'pass' if rep.second_criterion else 'fail'}",
    ]
    if dec is not None:
        lines.append(f"  decomposable: {'yes' if dec else 'no'}")
    if computed is not None:
        lines.append(f"  verdict: {computed}"
                     + (f" (expected {expected})" if expected else ""))
    _emit(args, argv, payload, lines)
    return 1 if payload["check"]["match"] is False else 0


# -- classify ----------------------------------------------------------------


def cmd_classify(args, argv) -> int:
    if args.lambda_grid is None:
        grid = DEFAULT_LAMBDA_GRID
    else:
        text = args.lambda_grid.strip()
        grid = tuple(parse_rational(t) for t in text.split(",") if t) \
            if text else ()
    report = classify(args.kind, grid)
    payload = {
        "classification": {
            "kind": report.kind,
            "lambda_grid": [str(x) for x in report.lambda_grid],
            "overall_match": report.overall_match,
            "rows": [
                {
                    "key": r.key,
                    "lambda": _rat_str(r.lam),
                    "decomposable": r.decomposable,
                    "computed": r.computed,
                    "expected": r.expected,
                    "match": r.match,
                    "dim_g": r.dim_g,
                    "dim_k": r.dim_k,
                    "dim_generated": r.dim_generated,
                }
                for r in report.rows
            ],
        }
    }
    lines = [f"classification sweep: {report.kind}, "
             f"grid {{{', '.join(str(x) for x in report.lambda_grid)}}}"]
    for r in report.rows:
        lam = "" if r.lam is None else f" lambda={r.lam}"
        flag = "ok" if r.match else "MISMATCH"
        lines.append(f"  {r.key}{lam}: computed {r.computed}, "
                     f"expected {r.expected} [{flag}]")
    lines.append(f"overall: "
                 f"{'match' if report.overall_match else 'MISMATCH'} "
                 f"({len(report.rows)} rows)")
    _emit(args, argv, payload, lines)
    return 0 if report.overall_match else 1


# -- connection ----------------------------------------------------------------


def cmd_connection(args, argv) -> int:
    lam = parse_rational(args.lam) if args.lam else None
    try:
        verdict = verify_connection(
            args.family,
            lam=None if lam is None else float(lam),
            samples=args.samples,
            tol=args.tol,
            seed=args.seed,
            variant=args.variant,
        )
    except UnregisteredFamily as exc:
        raise CLIError(str(exc)) from None
    payload = {"connection": asdict(verdict)}
    v = verdict
    lines = [
        f"connection {v.family}"
        + (f" lambda={v.lam}" if v.lam is not None else "")
        + (f" variant={v.variant}" if v.variant != "default" else ""),
        f"  samples = {v.samples}, seed = {v.seed}",
        f"  boundary residual     = {v.boundary_residual:.3e}",
        f"  mixed-symmetry resid  = {v.p2_residual:.3e}",
        f"  membership residual   = {v.membership_residual:.3e}",
        f"  curvature span rank   = {v.span_rank} (dim g = {v.dim_g})",
        f"  verdict: {'pass' if v.passed else 'fail'}",
    ]
    if v.notes:
        lines.append(f"  notes: {v.notes}")
    _emit(args, argv, payload, lines, seed=args.seed)
    return 0 if verdict.passed else 1


# -- prolong -------------------------------------------------------------------


def cmd_prolong(args, argv) -> int:
    g, _, lam = _load_algebra(args)
    order = args.order
    payload = {
        "prolongation": {
            "algebra": g.name or "unnamed",
            "lambda": _rat_str(lam),
            "order": order,
        }
    }
    p = prolongation(g, order)
    payload["prolongation"]["dim"] = p.dim
    lines = [f"prolongation order {order} of {g.name or 'unnamed'}: "
             f"dim = {p.dim}"]
    if order == 1:
        wk = weak_criterion(g)
        payload["prolongation"]["weak_criterion"] = wk
        lines.append(f"  weak criterion: {'pass' if wk else 'fail'}")
    elif order == 2:
        p2, ghat = vtwice_g2_and_ghat(g)
        payload["prolongation"]["dim_ghat"] = ghat.dim
        payload["prolongation"]["first_criterion"] = p2.verdict
        lines.append(f"  dim ghat = {ghat.dim}, doubled-rep first "
                     f"criterion: {'pass' if p2.verdict else 'fail'}")
    else:
        p3 = vtwice_g3(g)
        payload["prolongation"]["second_criterion"] = p3.verdict
        lines.append(f"  doubled-rep second criterion: "
                     f"{'pass' if p3.verdict else 'fail'}")
    _emit(args, argv, payload, lines)
    return 0


# -- catalog-list ---------------------------------------------------------------


def cmd_catalog_list(args, argv) -> int:
    rows = []
    for entry in CATALOG:
        lam = Fraction(1) if entry.takes_lambda else None
        g = catalog_algebra(entry.key, lam)
        row = {
            "key": entry.key,
            "takes_lambda": entry.takes_lambda,
            "forbidden_lambda": [str(x) for x in entry.forbidden],
            "dim_g": g.dim,
        }
        if not entry.takes_lambda:
            row["expected_v-dual"] = expected_verdicts(entry.key, None,
                                                       "v-dual")
            row["expected_v-twice"] = expected_verdicts(entry.key, None,
                                                        "v-twice")
        rows.append(row)
    payload = {"catalog": rows}
    lines = [f"{len(rows)} catalog families"]
    for row in rows:
        tail = " (lambda)" if row["takes_lambda"] else (
            f"  v-dual: {row['expected_v-dual']}, "
            f"v-twice: {row['expected_v-twice']}")
        lines.append(f"  {row['key']} dim={row['dim_g']}{tail}")
    _emit(args, argv, payload, lines)
    return 0


# -- driver --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="holonomy",
        description="exact verification of holonomy criteria for linear "
                    "Lie algebra representations")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_io(p, with_rep=False):
        p.add_argument("name", nargs="?", default=None,
                       help="catalog key (or use --file)")
        p.add_argument("--file", help="path to an algebra document (JSON); "
                       "wins over the positional key")
        p.add_argument("--lambda", dest="lam", default=None,
                       help="rational parameter for parametrized families")
        if with_rep:
            p.add_argument("--rep", choices=REP_KINDS, default="plain")
        p.add_argument("--json", nargs="?", const="-", default=None,
                       help="write the machine report to PATH, or to "
                       "standard output if no path is given")

    p = sub.add_parser("check", help="run both criteria on an algebra")
    add_io(p, with_rep=True)

    p = sub.add_parser("classify", help="sweep the 2-dimensional catalog")
    p.add_argument("--kind", choices=("v-dual", "v-twice"),
                   default="v-twice")
    p.add_argument("--lambda-grid", dest="lambda_grid", default=None,
                   help="comma-separated rationals; empty for none")
    p.add_argument("--json", nargs="?", const="-", default=None)

    p = sub.add_parser("connection",
                       help="verify an explicit coordinate connection")
    p.add_argument("family")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--variant", default="default")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", nargs="?", const="-", default=None)

    p = sub.add_parser("prolong", help="compute a prolongation")
    add_io(p)
    p.add_argument("--order", type=int, choices=(1, 2, 3), default=1)

    p = sub.add_parser("catalog-list", help="list the catalog families")
    p.add_argument("--json", nargs="?", const="-", default=None)
    return ap


_DISPATCH = {
    "check": cmd_check,
    "classify": cmd_classify,
    "connection": cmd_connection,
    "prolong": cmd_prolong,
    "catalog-list": cmd_catalog_list,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags already; keep that contract
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.cmd](args, argv)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
