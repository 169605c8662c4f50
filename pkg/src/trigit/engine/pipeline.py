"""End-to-end workflow: load, compile, check, evaluate, then edit and render."""
from __future__ import annotations

import logging
import shutil
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..frontend import EncodingError, FrontendResult, Kind, TrigItUnit, compile_project
from ..model import LoadedProject, load_project
from ..syntax.printer import print_unit
from .edits import ActionError, Edit, describe_step, drop_conflicts, execute_actions, fold_guards, \
    materialize_all, remove_satisfied_units, sort_edits
from .evaluate import EvalError, Evaluator, TriggerResult, check_encoding, format_explanation
from .patch import Patch, render_patch

log = logging.getLogger(__name__)

FORCED = "forced by assume-true"


@dataclass
class RunOptions:
    mode: str = "notify"  # notify | fold | patch
    debug: bool = False
    assume_true: bool = False
    no_action: bool = False
    lenient: bool = False
    source_root: Path | None = None
    out_dir: Path | None = None
    patch_path: Path | None = None
    format: str = "text"

    def validate(self) -> None:
        if self.mode not in ("notify", "fold", "patch"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "fold" and self.out_dir is None:
            raise ValueError("fold mode requires an output directory")
        if self.mode == "patch" and self.patch_path is None:
            raise ValueError("patch mode requires a patch path")

    @property
    def edits_enabled(self) -> bool:
        return self.mode in ("fold", "patch") and not self.no_action


@dataclass
class RunReport:
    triggers: list[TriggerResult] = field(default_factory=list)
    errors: list[EncodingError] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    edits: list[Edit] = field(default_factory=list)
    load_errors: list[str] = field(default_factory=list)
    timings_ms: dict[str, float] = field(default_factory=lambda: dict.fromkeys(
        ("model", "evaluate", "action", "render"), 0.0))
    dry_run: list[str] = field(default_factory=list)

    @property
    def satisfied(self) -> list[TriggerResult]:
        return [t for t in self.triggers if t.satisfied]

    def to_json(self, include_timings: bool = True) -> dict:
        doc = {
            "triggers": [{
                "unit": t.unit,
                "class": t.class_name,
                "satisfied": None if t.status == "unevaluable" else t.satisfied,
                "status": t.state,
                "explanation": t.explanation,
                "evidence": None if t.evidence is None else {"file": t.evidence[0], "line": t.evidence[1]},
            } for t in self.triggers],
            "errors": [{
                "unit": e.unit, "category": e.category.value, "file": e.file,
                "line": e.line, "message": e.message,
            } for e in self.errors],
            "edits": [{
                "file": e.file, "origin": e.origin.value, "startLine": e.start_line,
                "endLine": e.end_line, "unit": e.unit,
            } for e in self.edits],
            "diagnostics": list(self.diagnostics),
            "load_errors": list(self.load_errors),
            "timings_ms": dict(self.timings_ms) if include_timings else {},
        }
        if self.dry_run:
            doc["dry_run"] = list(self.dry_run)
        return doc


@dataclass
class RunOutcome:
    report: RunReport
    project: LoadedProject
    frontend: FrontendResult
    patch: Patch | None = None
    transformed: dict[str, str] | None = None


def _unevaluable(unit_name, class_name, why) -> TriggerResult:
    return TriggerResult(unit_name, class_name, False, f"unevaluable: {why}", None, "unevaluable")


def evaluate_all(project: LoadedProject, frontend: FrontendResult, options: RunOptions,
                 report: RunReport | None = None) -> RunOutcome:
    """Check every unit, evaluate every trigger, and only then derive edits."""
    report = report or RunReport()
    model = project.model
    units = frontend.units
    report.errors.extend(frontend.errors)
    report.diagnostics.extend(frontend.diagnostics)

    t0 = time.perf_counter()
    blocked: set[tuple[str, str]] = set()
    for u in units:
        errs = check_encoding(u, model)
        if errs:
            blocked.add(u.key)
            report.errors.extend(errs)
    failed_keys = {(c, m) for c, m, _ in frontend.failed}
    evaluator = Evaluator(model, {u.key: u for u in units})
    results: dict[tuple[str, str], TriggerResult] = {}
    for u in units:
        if options.assume_true:
            results[u.key] = TriggerResult(u.name, u.class_name, True, FORCED, None, "forced")
        elif u.key in blocked:
            results[u.key] = _unevaluable(u.name, u.class_name, "encoding errors")
        else:
            try:
                t = evaluator.truth(u.query)
            except EvalError as exc:
                results[u.key] = _unevaluable(u.name, u.class_name, str(exc))
                continue
            results[u.key] = TriggerResult(u.name, u.class_name, t.value,
                                           format_explanation(t.reason, t.evidence), t.evidence)
    ordered: list[tuple[tuple, TriggerResult]] = []
    for u in units:
        ordered.append(((u.file, u.span.start), results[u.key]))
    for cls, name, span in frontend.failed:
        if options.assume_true:
            r = TriggerResult(name, cls, True, FORCED, None, "forced")
        else:
            r = _unevaluable(name, cls, "encoding errors")
        ordered.append(((span.file, span.start), r))
    ordered.sort(key=lambda kv: kv[0])
    report.triggers = [r for _, r in ordered]
    report.timings_ms["evaluate"] = (time.perf_counter() - t0) * 1000

    # Action prints are report output, not edits, so they appear in every mode.
    for u in units:
        r = results[u.key]
        if r.satisfied and u.kind is Kind.ACTION and u.key not in blocked:
            for step in u.actions:
                if type(step).__name__ == "DiagnosticPrint":
                    report.diagnostics.append(f"[{u.name}] {step.message}")

    t1 = time.perf_counter()
    outcome = RunOutcome(report, project, frontend)
    if options.edits_enabled:
        edits = _derive_edits(units, results, blocked | failed_keys, project, report)
        report.edits = sort_edits(edits)
    report.timings_ms["action"] = (time.perf_counter() - t1) * 1000

    t2 = time.perf_counter()
    if options.edits_enabled:
        originals = {p: f.text for p, f in project.files.items()}
        if options.mode == "patch":
            outcome.patch = render_patch(report.edits, originals)
        else:
            outcome.transformed = materialize_all(originals, report.edits)
    report.timings_ms["render"] = (time.perf_counter() - t2) * 1000
    return outcome


def _derive_edits(units: list[TrigItUnit], results, blocked, project, report) -> list[Edit]:
    files = project.files
    candidates: list[Edit] = []
    removals = []
    for u in units:
        r = results[u.key]
        if not r.satisfied or u.key in blocked:
            continue
        notes: list[str] = []
        if u.kind is Kind.ACTION:
            try:
                candidates.extend(execute_actions_without_prints(u, files, notes))
            except ActionError as exc:
                report.diagnostics.append(f"[{u.name}] action skipped: {exc}")
                continue
        else:
            candidates.extend(fold_guards(u.guard_sites, True, files, u.name))
        report.diagnostics.extend(f"[{u.name}] {n}" for n in notes)
        removals.append(u)
    candidates.extend(remove_satisfied_units(
        removals, [results[u.key] for u in removals], files))
    kept, dropped = drop_conflicts(candidates)
    for e in dropped:
        report.diagnostics.append(
            f"[{e.unit}] skipped {e.origin.value} edit at {e.file}:{e.start_line}: overlaps an earlier edit")
    return kept


def execute_actions_without_prints(unit, files, notes):
    edits = execute_actions(unit, files, notes)
    notes[:] = [n for n in notes if not n.startswith(f"[{unit.name}] ")]
    return edits


def describe_actions(units: list[TrigItUnit], report: RunReport) -> list[str]:
    """Dry-run lines describing what each unit would change."""
    by_key = {(t.class_name, t.unit): t for t in report.triggers}
    lines = []
    for u in units:
        t = by_key.get(u.key)
        if t is None:
            continue
        if t.status == "unevaluable":
            suffix = "(blocked: encoding errors)"
        elif t.satisfied:
            suffix = "(would execute)"
        else:
            suffix = "(trigger currently false)"
        steps = []
        if u.kind is Kind.ACTION:
            steps = [describe_step(s) for s in u.actions]
        else:
            for s in u.guard_sites:
                steps.append(f"would fold guard {u.name}() at {s.file}:{s.span.start_line}")
        steps.append(f"would remove TrigIt method {u.name}")
        lines.extend(f"{step} {suffix}" for step in steps)
    return lines


def run_pipeline(source_root, options: RunOptions) -> RunOutcome:
    """Load the project under ``source_root`` and run the whole workflow."""
    t0 = time.perf_counter()
    project = load_project(source_root, strict=not options.lenient)
    model_ms = (time.perf_counter() - t0) * 1000
    log.debug("model: %d files, %d classes, %d build configs", len(project.model.java_files),
              len(project.model.classes), len(project.model.build_configs))
    report = RunReport()
    report.load_errors = [str(e) for e in project.errors]
    frontend = compile_project(project.files)
    report.timings_ms["model"] = model_ms
    log.debug("compiled %d units, %d encoding errors", len(frontend.units), len(frontend.errors))
    outcome = evaluate_all(project, frontend, options, report)
    for t in report.triggers:
        log.debug("trigger %s.%s: %s", t.class_name, t.unit, t.explanation)
    return outcome


def write_outputs(outcome: RunOutcome, options: RunOptions) -> None:
    if options.mode == "patch" and outcome.patch is not None:
        Path(options.patch_path).write_text(outcome.patch.text, encoding="utf-8")
    if options.mode == "fold" and outcome.transformed is not None:
        out = Path(options.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for rel, text in outcome.transformed.items():
            dest = out / rel
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(text, encoding="utf-8")
        for rel in outcome.project.other_files:
            dest = out / rel
            dest.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(outcome.project.root / rel, dest)
    if options.debug:
        if options.out_dir is None:
            log.warning("debug: no --out-dir given, stripped classes not written")
            return
        debug_dir = Path(options.out_dir) / "trigit-debug"
        debug_dir.mkdir(parents=True, exist_ok=True)
        files = outcome.project.files
        for qname, cls in sorted(outcome.frontend.stripped.items()):
            src = files[cls.span.file]
            text = print_unit(cls, src.tokens).lstrip("\n") + "\n"
            (debug_dir / f"{qname}.java").write_text(text, encoding="utf-8")
            log.debug("wrote stripped class %s", qname)
