"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import io
import itertools
import random
import time
from pathlib import Path

import numpy as np
import pytest

from corpus import generate_class, generate_file, guard_source, random_edits, trigit_units_source, write_corpus
from oracles import apply_with_patch_tool, brute_force_cues, brute_force_filter, oracle_name, random_argument
from synthetic import DIM, brute_force_separable, separable_dataset, shuffled
from table2 import write_table2_corpus
from trigit.classifier import LabeledComment, Metrics, featurize, loo_cross_validate, loss_and_grad
from trigit.classifier.embeddings import parse_embeddings
from trigit.classifier.evaluation import featurize_dataset
from trigit.cli import main
from trigit.engine import RunOptions, fold_guards, materialize, render_patch, run_pipeline
from trigit.frontend import Category, compile_project, name_substitute, strip_for_evaluation
from trigit.miner import extract_todos, filter_by_cue_words, split_trigger_action
from trigit.model import SourceFile
from trigit.syntax import parse_source, print_unit
from trigit.syntax.parser import parse_expression
from trigit.syntax.printer import node_text

GOLDEN = Path(__file__).parent / "golden"
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def verdict(capsys):
    def say(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return say


def test_criterion_1_figure_fidelity(fixture_copy, tmp_path, verdict):
    start = time.perf_counter()
    intact = run_pipeline(fixture_copy("fig3"), RunOptions()).report.triggers[0].satisfied
    (tmp_path / "src" / "FieldMapper.java").unlink()
    removed = run_pipeline(tmp_path / "src", RunOptions(mode="patch", patch_path=tmp_path / "p.diff"))
    golden = removed.patch.text == (GOLDEN / "fig3_fieldmapper_removed.patch").read_text()
    a = intact is False and removed.report.triggers[0].satisfied is True and golden

    fig2 = run_pipeline(FIXTURES / "fig2", RunOptions()).report.triggers[0]
    b = fig2.satisfied is True and fig2.explanation == "Java version 1.7 >= 1.6; file: trigit.properties, line: 1"

    fig1_root = tmp_path / "fig1"
    fig1_root.mkdir()
    src = (FIXTURES / "fig1" / "AbstractStreamingHasher.java").read_text()
    (fig1_root / "AbstractStreamingHasher.java").write_text(src)
    before = run_pipeline(fig1_root, RunOptions()).report.triggers[0].satisfied
    (fig1_root / "AbstractStreamingHasher.java").write_text(
        src.replace("private AbstractStreamingHasher(", "public AbstractStreamingHasher("))
    after = run_pipeline(fig1_root, RunOptions()).report.triggers[0].satisfied
    c = before is False and after is True
    elapsed = time.perf_counter() - start
    verdict(1, a and b and c and elapsed < 1.0,
            f"fig3 flip+golden={a} fig2 explanation={b} fig1 flip={c} runtime={elapsed:.3f}s (<1s)")


def test_criterion_2_strip_oracle(verdict):
    agree = idempotent = 0
    for seed in range(50):
        text, _ = generate_class(seed)
        _, ast = parse_source(text)
        cls = ast.child("ClassDecl")
        slim = strip_for_evaluation(cls)
        agree += slim.shape() == brute_force_filter(cls).shape()
        idempotent += strip_for_evaluation(slim).shape() == slim.shape()
    verdict(2, agree == 50 and idempotent == 50, f"oracle agreement {agree}/50, idempotent {idempotent}/50")


def substituted(expr: str) -> str:
    toks, e = parse_expression(expr)
    return node_text(name_substitute(e, "A", toks), toks)


def test_criterion_3_name_substitution(verdict):
    worked = substituted("TrigIt.getField(f).setPrivate()") == 'TrigIt.getField("f").setPrivate()'
    ok = 0
    nested = 0
    for seed in range(20):
        rng = random.Random(seed)
        arg = random_argument(rng)
        nested += "(" in arg
        ok += substituted(f"TrigIt.getMethod({arg}).isPublic()") == f'TrigIt.getMethod("{oracle_name(arg)}").isPublic()'
    discard = substituted("TrigIt.getMethod(m(a(b), c.d())).isPublic()") == 'TrigIt.getMethod("m").isPublic()'
    verdict(3, worked and ok == 20 and discard,
            f"worked example={worked}, oracle {ok}/20 ({nested} with arguments), nested discard={discard}")


def test_criterion_4_encoding_checks(tmp_path, verdict):
    (tmp_path / "C.java").write_text(
        "class C {\n  private int g;\n  @TrigItMethod\n  boolean t() {\n"
        "    return TrigIt.getClass(\"C\").getField(\"f\").isPrivate();\n  }\n}\n")
    report = run_pipeline(tmp_path, RunOptions()).report
    missing = [e.category for e in report.errors] == [Category.MISSING_REFERENT]
    code = main(["run", str(tmp_path)], io.StringIO())
    exempt = 0
    for fx in ("fig1", "fig2", "fig3"):
        root = tmp_path / fx
        root.mkdir()
        for f in (FIXTURES / fx).iterdir():
            (root / f.name).write_text(f.read_text())
        (root / "Probe.java").write_text(
            "class Probe {\n  @TrigItMethod\n  boolean p() {\n"
            "    return TrigIt.hasClass(\"Ghost\") || TrigIt.getClasses().findAny(\"Ghost2\").isPresent();\n  }\n}\n")
        errs = run_pipeline(root, RunOptions()).report.errors
        exempt += not any(e.category is Category.MISSING_REFERENT for e in errs)
    verdict(4, missing and code == 2 and exempt == 3,
            f"MISSING_REFERENT={missing} exit={code} (2) existence exemption {exempt}/3 fixtures")


def source_file(text: str, path: str = "G.java") -> SourceFile:
    toks, ast = parse_source(text, path)
    return SourceFile(path, text, toks, ast)


def test_criterion_5_fold_and_patch(tmp_path, verdict):
    table_ok = 0
    for value, negated, has_else in itertools.product([True, False], repeat=3):
        src = guard_source(negated, has_else)
        sf = source_file(src)
        [site] = compile_project({"G.java": sf}).units[0].guard_sites
        out = materialize(src, fold_guards([site], value, {"G.java": sf}))
        effective = value != negated
        kept = "        thenStmt();\n" if effective else ("        elseStmt();\n" if has_else else "")
        body = "        before();\n" + kept + "        after();\n"
        expected = src[:src.index("        before();")] + body + src[src.index("    }\n\n    @Trig"):]
        table_ok += out == expected
    equal = 0
    for seed in range(100):
        rng = random.Random(seed)
        originals, edits = {}, []
        for k in range(rng.randint(1, 2)):
            gf = generate_file(seed * 10 + k)
            originals[gf.path] = gf.source
            edits += random_edits(rng, gf.path, gf.source, rng.randint(1, 6))
        patch = render_patch(edits, originals)
        expected = {p: materialize(t, [e for e in edits if e.file == p]) for p, t in originals.items()}
        work = tmp_path / f"s{seed}"
        work.mkdir()
        equal += apply_with_patch_tool(work, originals, patch.text) == expected
    verdict(5, table_ok == 8 and equal == 100, f"truth table {table_ok}/8, patch-apply equivalence {equal}/100")


def test_criterion_6_round_trip(verdict):
    fixtures = sorted(FIXTURES.rglob("*.java"))
    exact = 0
    for path in fixtures:
        src = path.read_text()
        toks, ast = parse_source(src)
        exact += print_unit(ast, toks) == src
    fuzz = 0
    for seed in range(200):
        src = generate_file(seed).source
        toks, ast = parse_source(src)
        fuzz += print_unit(ast, toks) == src
    verdict(6, exact == len(fixtures) and fuzz == 200,
            f"fixtures {exact}/{len(fixtures)}, generated {fuzz}/200 byte-exact")


def test_criterion_7_miner(tmp_path, verdict):
    write_table2_corpus(tmp_path)
    todos = extract_todos(tmp_path)
    kept = filter_by_cue_words(todos)
    brute = [r for r in todos if brute_force_cues(r.text)]
    same = [r.file for r in kept] == [r.file for r in brute] and all(r.cues == brute_force_cues(r.text) for r in kept)
    split = split_trigger_action("Remove this guard once lazyStackTrace() works in Java 9.")
    documented = split is not None and split[:2] == ("lazyStackTrace() works in Java 9.", "Remove this guard")
    verdict(7, len(todos) == 18 and len(kept) == 18 and same and documented,
            f"records {len(todos)}, filtered in {len(kept)}/18, brute-force equal={same}, once split={documented}")


def test_criterion_8_classifier(verdict):
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        n, d = rng.integers(3, 12), rng.integers(1, 6)
        X, y = rng.normal(size=(n, d)), rng.integers(0, 2, size=n)
        w, b, l2 = rng.normal(size=d), float(rng.normal()), float(rng.uniform(0, 0.5))
        _, gw, gb = loss_and_grad(w, b, X, y, l2)
        eps = 1e-6
        for j in range(d + 1):
            if j < d:
                e = np.zeros(d)
                e[j] = eps
                num = (loss_and_grad(w + e, b, X, y, l2)[0] - loss_and_grad(w - e, b, X, y, l2)[0]) / (2 * eps)
                ana = gw[j]
            else:
                num = (loss_and_grad(w, b + eps, X, y, l2)[0] - loss_and_grad(w, b - eps, X, y, l2)[0]) / (2 * eps)
                ana = gb
            worst = max(worst, abs(ana - num) / max(1e-8, abs(ana) + abs(num)))
    grad_ok = worst < 1e-5

    rng = random.Random(0)
    ident = True
    for _ in range(500):
        tp, fp, fn, tn = (rng.randint(0, 30) for _ in range(4))
        m = Metrics.from_counts(tp, fp, fn, tn)
        total = tp + fp + fn + tn
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        ident &= (m.accuracy == ((tp + tn) / total if total else 0.0) and (m.precision, m.recall) == (p, r)
                  and m.f1 == (2 * p * r / (p + r) if p + r else 0.0))

    folds = []
    loo_cross_validate(np.arange(14.0).reshape(7, 2), np.arange(7) % 2, on_fold=lambda i, p: folds.append(i))

    rows, lines = separable_dataset(40)
    emb = parse_embeddings(lines)

    def accuracy(rs):
        data = [LabeledComment(r["trigger"], r["action"], r["label"] == "yes") for r in rs]
        X, y = featurize_dataset(data, "full", emb)
        return loo_cross_validate(X, y).metrics.accuracy, brute_force_separable(X, y)

    full, separable = accuracy(rows)
    control, _ = accuracy(shuffled(rows))
    diff = len(featurize("a", "b", "full", emb)) - len(featurize("a", "b", "baseline"))
    ok = grad_ok and ident and len(folds) == 7 and separable and full >= 0.9 and full - control >= 0.3 \
        and diff == 2 * DIM
    verdict(8, ok, f"max grad rel err {worst:.2e}, metric identities={ident}, folds {len(folds)}/7, "
                   f"full acc {full:.3f} vs shuffled {control:.3f}, length diff {diff}=2*{DIM}")


def test_criterion_9_determinism_and_overhead(tmp_path, verdict):
    root = tmp_path / "corpus"
    files = write_corpus(root, 200, seed=4)
    classes = [spec.name for gf in files for spec in gf.classes]
    (root / "gen" / "units").mkdir(parents=True, exist_ok=True)
    (root / "gen" / "units" / "Units.java").write_text(trigit_units_source(20, classes))
    start = time.perf_counter()
    first = run_pipeline(root, RunOptions(mode="patch", patch_path=tmp_path / "a.diff"))
    elapsed = time.perf_counter() - start
    second = run_pipeline(root, RunOptions(mode="patch", patch_path=tmp_path / "b.diff"))
    same_report = first.report.to_json(include_timings=False) == second.report.to_json(include_timings=False)
    same_patch = first.patch.text == second.patch.text and first.patch.text != ""
    units = len(first.report.triggers)
    verdict(9, same_report and same_patch and units == 20 and elapsed < 2.0,
            f"identical report={same_report} patch={same_patch}, {units} units over 201 files in "
            f"{elapsed:.3f}s (<2s; evaluate phase {first.report.timings_ms['evaluate']:.1f}ms)")
