"""Command-line interface.

Commands: construct, metrics, formula, search, verify, iso-classify,
convert.  The primary payload goes to stdout as JSON unless --format
selects adm or dot.  Exit codes: 0 on success (including CONFIRMED and
INCONCLUSIVE verdicts), 2 when a verification run is REFUTED, 1 on
usage or runtime errors.
"""

import argparse
import json
import sys

from .core import ParseError, canonical_form, from_adm, from_json, to_adm, \
    to_dot, to_json_obj
from .families import (
    FamilySpec,
    bound_name_from_cli_name,
    closed_form,
    construct_family,
    family_kind_from_cli_name,
)
from .metrics import metric_summary, summary_to_json_obj
from .search import (
    CheckpointError,
    Constraints,
    Objective,
    SearchMode,
    SearchTask,
    enumerate_task,
    report_to_json_obj,
)
from .verify import (
    CheckId,
    Depth,
    TheoremCheck,
    Verdict,
    list_checks,
    report_to_json_obj as verification_to_json_obj,
    verify_theorem,
    write_report,
)

_FAMILY_PARAMS = ("n", "r", "s", "d", "i", "a", "b", "c", "j")


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)


def _emit_json(obj, out_path):
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out_path)


def _read_digraph(source):
    """Load a digraph from a path or '-' (stdin); sniffs adm vs JSON."""
    if source == "-":
        text = sys.stdin.read()
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    head = text.lstrip()
    if head.startswith("{"):
        return from_json(text)
    return from_adm(text)


def _render(D, fmt):
    if fmt == "adm":
        return to_adm(D)
    if fmt == "dot":
        return to_dot(D)
    return json.dumps(to_json_obj(D), indent=2, sort_keys=True) + "\n"


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="edl",
        description="Extremal digraph constructions, invariants, "
                    "searches, and theorem checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named family member")
    p.add_argument("--family", required=True,
                   help="kebab-case family name, e.g. d-nrs")
    for name in _FAMILY_PARAMS:
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--format", choices=("json", "adm", "dot"),
                   default="json")
    p.add_argument("--out", help="write to a file instead of stdout")

    p = sub.add_parser("metrics", help="distance invariants of a digraph")
    p.add_argument("input", help="path to an .adm or .json digraph, "
                                 "or - for stdin")
    p.add_argument("--out")

    p = sub.add_parser("formula", help="evaluate a closed-form bound")
    p.add_argument("--bound", required=True,
                   help="kebab-case bound name, e.g. biconn-general")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--rad2", type=int)
    p.add_argument("--out")

    p = sub.add_parser("search", help="exhaustive extremal search")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--strong", action="store_true")
    p.add_argument("--bipartite", metavar="C1,C2",
                   help="fixed class sizes, e.g. 3,3")
    p.add_argument("--rad-out", type=int, dest="rad_out")
    p.add_argument("--rad2", type=int)
    p.add_argument("--diameter", type=int)
    p.add_argument("--objective",
                   choices=tuple(o.value for o in Objective),
                   default="max-size")
    p.add_argument("--mode", choices=tuple(m.value for m in SearchMode),
                   help="defaults to full for n <= 3, else row-capped")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--checkpoint", help="checkpoint file path")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run registered theorem checks")
    p.add_argument("--check", nargs="+",
                   choices=tuple(c.value for c in CheckId),
                   help="one or more check ids")
    p.add_argument("--depth", choices=tuple(d.value for d in Depth))
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--rad2", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report-dir", default="reports",
                   help="directory for report files")
    p.add_argument("--no-report", action="store_true",
                   help="do not write report files")
    p.add_argument("--list", action="store_true",
                   help="list registered checks and exit")

    p = sub.add_parser("iso-classify",
                       help="group digraph files by isomorphism")
    p.add_argument("inputs", nargs="+", help="digraph files")
    p.add_argument("--out")

    p = sub.add_parser("convert", help="convert between digraph formats")
    p.add_argument("input", help="path to an .adm or .json digraph, "
                                 "or - for stdin")
    p.add_argument("--to", required=True, choices=("adm", "json", "dot"),
                   dest="to_fmt")
    p.add_argument("--out")
    return parser


def _cmd_construct(args):
    params = {k: getattr(args, k) for k in _FAMILY_PARAMS
              if getattr(args, k) is not None}
    kind = family_kind_from_cli_name(args.family)
    D = construct_family(FamilySpec.make(kind, **params))
    _emit(_render(D, args.format), args.out)
    return 0


def _cmd_metrics(args):
    D = _read_digraph(args.input)
    _emit_json(summary_to_json_obj(metric_summary(D)), args.out)
    return 0


def _cmd_formula(args):
    params = {k: getattr(args, k) for k in ("n", "r", "rad2")
              if getattr(args, k) is not None}
    name = bound_name_from_cli_name(args.bound)
    value = closed_form(name, **params)
    _emit_json({"bound": name.value, "params": params, "value": value},
               args.out)
    return 0


def _cmd_search(args):
    bip = None
    if args.bipartite is not None:
        parts = args.bipartite.split(",")
        if len(parts) != 2:
            raise ValueError(
                f"--bipartite needs two sizes like 3,3, got "
                f"{args.bipartite!r}")
        bip = (int(parts[0]), int(parts[1]))
    cons = Constraints(strong=args.strong, bipartite=bip,
                       rad_out_eq=args.rad_out, rad2_eq=args.rad2,
                       diameter_eq=args.diameter)
    mode_name = args.mode
    if mode_name is None:
        mode_name = "full" if args.n <= 3 else "row-capped"
    task = SearchTask(args.n, cons, Objective(args.objective),
                      SearchMode(mode_name), threads=args.threads,
                      checkpoint_path=args.checkpoint)
    report = enumerate_task(task)
    _emit_json(report_to_json_obj(report), args.out)
    return 0


def _markdown_table(rows):
    head = ("| check | params | depth | verdict | note |",
            "| --- | --- | --- | --- | --- |")
    body = []
    for check, rep, note in rows:
        params = ", ".join(f"{k}={v}" for k, v in check.params) or "-"
        verdict = rep.verdict.value
        if rep.verdict is Verdict.INCONCLUSIVE and rep.reason:
            verdict = f"{verdict} ({rep.reason})"
        body.append(f"| {check.id.value} | {params} | "
                    f"{check.depth.value} | {verdict} | {note} |")
    return "\n".join(head + tuple(body)) + "\n"


def _verify_note(rep):
    ev = rep.evidence
    for key in ("max_size", "max_edges", "members_checked",
                "points_checked", "violations"):
        if key in ev:
            return f"{key}={ev[key]}"
    return ""


def _cmd_verify(args):
    if args.list:
        _emit_json(list_checks(), None)
        return 0
    if not args.check:
        raise ValueError("verify needs --check (or --list)")
    if args.depth is None:
        raise ValueError("verify needs --depth")
    params = {k: getattr(args, k) for k in ("n", "r", "rad2")
              if getattr(args, k) is not None}
    depth = Depth(args.depth)
    rows = []
    for name in args.check:
        check = TheoremCheck.make(CheckId(name), depth, **params)
        rep = verify_theorem(check, threads=args.threads)
        if not args.no_report:
            write_report(rep, directory=args.report_dir)
        rows.append((check, rep, _verify_note(rep)))
    if len(rows) == 1:
        _emit_json(verification_to_json_obj(rows[0][1]), None)
    else:
        sys.stdout.write(_markdown_table(rows))
    if any(rep.verdict is Verdict.REFUTED for _, rep, _ in rows):
        return 2
    return 0


def _cmd_iso_classify(args):
    loaded = [(path, _read_digraph(path)) for path in args.inputs]
    groups = {}
    for path, D in loaded:
        key = to_adm(canonical_form(D))
        groups.setdefault(key, []).append(path)
    obj = [{"canonical_adm": key, "members": sorted(members)}
           for key, members in sorted(groups.items())]
    _emit_json(obj, args.out)
    return 0


def _cmd_convert(args):
    D = _read_digraph(args.input)
    _emit(_render(D, args.to_fmt), args.out)
    return 0


_HANDLERS = {
    "construct": _cmd_construct,
    "metrics": _cmd_metrics,
    "formula": _cmd_formula,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "iso-classify": _cmd_iso_classify,
    "convert": _cmd_convert,
}


def run(argv):
    """Parse argv (no program name) and execute; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return _HANDLERS[args.command](args)
    except (ParseError, CheckpointError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
