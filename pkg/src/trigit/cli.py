"""Command-line entry point: ``trigit run|check|mine|classify|tokens``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .engine.pipeline import RunOptions, RunReport, describe_actions, run_pipeline, write_outputs
from .model import ProjectLoadError

EXIT_OK = 0
EXIT_SATISFIED = 1
EXIT_ENCODING = 2
EXIT_PARSE = 3
EXIT_USAGE = 4

log = logging.getLogger("trigit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code(satisfied: bool = False, encoding: bool = False, parse: bool = False,
              io: bool = False) -> int:
    """Highest applicable code wins."""
    for flag, code in ((io, EXIT_USAGE), (parse, EXIT_PARSE), (encoding, EXIT_ENCODING),
                       (satisfied, EXIT_SATISFIED)):
        if flag:
            return code
    return EXIT_OK


# -- text rendering ----------------------------------------------------------------------

class Style:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    def __call__(self, text: str, code: str) -> str:
        return f"\033[{code}m{text}\033[0m" if self.enabled else text


def use_color(stream) -> bool:
    return "TRIGIT_NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def format_text_report(report: RunReport, style: Style | None = None) -> str:
    style = style or Style(False)
    lines = [f"triggers: {len(report.triggers)}"]
    tags = {"satisfied": ("SATISFIED", "1;32"), "forced": ("FORCED", "1;33"),
            "unsatisfied": ("pending", "2"), "unevaluable": ("UNEVALUABLE", "1;31")}
    for t in report.triggers:
        word, code = tags[t.state]
        lines.append(f"  {style(f'[{word}]', code)} {t.class_name}.{t.unit}: {t.explanation}")
    lines.append(f"errors: {len(report.errors)}")
    lines.extend(f"  {e}" for e in report.errors)
    if report.load_errors:
        lines.append(f"load errors: {len(report.load_errors)}")
        lines.extend(f"  {e}" for e in report.load_errors)
    if report.diagnostics:
        lines.append(f"diagnostics: {len(report.diagnostics)}")
        lines.extend(f"  {d}" for d in report.diagnostics)
    lines.append(f"edits: {len(report.edits)}")
    lines.extend(f"  {e.file}:{e.start_line}-{e.end_line} {e.origin.value} ({e.unit})" for e in report.edits)
    if report.dry_run:
        lines.append("dry run:")
        lines.extend(f"  {d}" for d in report.dry_run)
    lines.append("timings_ms: " + " ".join(f"{k}={v:.1f}" for k, v in report.timings_ms.items()))
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        out.write(format_text_report(report, Style(use_color(out))))


# -- subcommands ----------------------------------------------------------------------------

def _options(args, check: bool = False) -> RunOptions:
    opts = RunOptions(
        mode="notify" if check else args.mode,
        debug=args.debug,
        assume_true=args.assume_true,
        no_action=True if check else args.no_action,
        lenient=args.lenient,
        source_root=Path(args.source_root),
        out_dir=Path(args.out_dir) if args.out_dir else None,
        patch_path=Path(args.patch_out) if args.patch_out else None,
        format=args.format,
    )
    try:
        opts.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return opts


def _run(args, check: bool, out) -> int:
    opts = _options(args, check)
    try:
        outcome = run_pipeline(opts.source_root, opts)
    except ProjectLoadError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    report = outcome.report
    if check:
        report.dry_run = describe_actions(outcome.frontend.units, report)
    try:
        write_outputs(outcome, opts)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit_report(report, opts.format, out)
    return exit_code(satisfied=bool(report.satisfied), encoding=bool(report.errors))


def cmd_run(args, out=sys.stdout) -> int:
    return _run(args, False, out)


def cmd_check(args, out=sys.stdout) -> int:
    return _run(args, True, out)


def cmd_mine(args, out=sys.stdout) -> int:
    from .miner import format_summary, mine
    records, summary = mine(args.source_root, keep_all=args.all)
    for r in records:
        out.write(r.to_json() + "\n")
    print(format_summary(summary), file=sys.stderr)
    return EXIT_OK


def cmd_classify(args, out=sys.stdout) -> int:
    from .classifier import (DatasetError, FormatError, Hyperparameters, format_table, load_dataset,
                             load_embeddings, loo_cross_validate)
    from .classifier.evaluation import featurize_dataset

    if args.dataset is None:
        raise UsageError("classify needs --dataset")
    config = args.config or ("both" if args.embeddings else "baseline")
    systems = ["baseline", "full"] if config == "both" else [config]
    if "full" in systems and not args.embeddings:
        raise UsageError("the full configuration needs --embeddings")
    try:
        data = load_dataset(args.dataset)
        emb = load_embeddings(args.embeddings) if args.embeddings else None
    except (DatasetError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if len(data) < 3 or len({d.label for d in data}) < 2:
        print("error: dataset needs at least 3 examples with both labels", file=sys.stderr)
        return EXIT_USAGE
    hyper = Hyperparameters(args.learning_rate, args.epochs, args.l2)
    rows = {}
    for system in systems:
        X, y = featurize_dataset(data, system, emb)
        cv = loo_cross_validate(X, y, hyper, on_fold=lambda i, p, s=system, n=len(data):
                                log.info("%s fold %d/%d p=%.4f", s, i + 1, n, p))
        log.info("%s: %d folds, %d positive, %d negative", system, cv.folds, cv.positives, cv.negatives)
        rows[system] = cv.metrics
        if args.out_dir:
            dest = Path(args.out_dir)
            dest.mkdir(parents=True, exist_ok=True)
            (dest / f"metrics-{system}.json").write_text(json.dumps(cv.metrics.to_dict(), indent=2) + "\n")
    pos = sum(d.label for d in data)
    if args.format == "json":
        doc = {s: m.to_dict() for s, m in rows.items()}
        doc["balance"] = {"yes": pos, "no": len(data) - pos}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(format_table(rows) + "\n")
        out.write(f"class balance: yes={pos} no={len(data) - pos}\n")
    return EXIT_OK


def cmd_tokens(args, out=sys.stdout) -> int:
    from .complexity import complexity_table, format_complexity
    from .frontend import compile_project
    from .model import load_project

    try:
        project = load_project(args.source_root, strict=not args.lenient)
    except ProjectLoadError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    frontend = compile_project(project.files)
    rows = complexity_table(frontend.units, project.files)
    if args.format == "json":
        out.write(json.dumps([{"unit": r.unit, "class": r.class_name, "total": r.total,
                               "trigger": r.trigger, "action": r.action, "structure": r.structure}
                              for r in rows], indent=2) + "\n")
    else:
        out.write(format_complexity(rows) + "\n")
    return exit_code(encoding=bool(frontend.errors))


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--debug", action="store_true", help="log each phase; write stripped classes")
    common.add_argument("--format", choices=("text", "json"), default="text")

    run_flags = _Parser(add_help=False)
    run_flags.add_argument("source_root")
    run_flags.add_argument("--assume-true", action="store_true", help="force every trigger to true")
    run_flags.add_argument("--no-action", action="store_true", help="evaluate and check, never edit")
    run_flags.add_argument("--mode", choices=("notify", "fold", "patch"), default="notify")
    run_flags.add_argument("--out-dir")
    run_flags.add_argument("--patch-out")
    run_flags.add_argument("--lenient", action="store_true", help="skip unparseable files")

    parser = _Parser(prog="trigit", description="Executable trigger-action comments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("run", parents=[common, run_flags], help="evaluate triggers and take actions")
    sub.add_parser("check", parents=[common, run_flags], help="check encodings and describe actions")

    p = sub.add_parser("mine", parents=[common], help="extract trigger-action TODO candidates")
    p.add_argument("source_root")
    p.add_argument("--all", action="store_true", help="keep comments without cue words")

    p = sub.add_parser("classify", parents=[common], help="leave-one-out evaluation of the classifier")
    p.add_argument("--dataset")
    p.add_argument("--config", choices=("baseline", "full", "both"))
    p.add_argument("--embeddings")
    p.add_argument("--out-dir")
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--l2", type=float, default=1e-4)

    p = sub.add_parser("tokens", parents=[common], help="token complexity of each unit")
    p.add_argument("source_root")
    p.add_argument("--lenient", action="store_true")
    return parser


COMMANDS = {"run": cmd_run, "check": cmd_check, "mine": cmd_mine, "classify": cmd_classify,
            "tokens": cmd_tokens}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"trigit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"trigit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
