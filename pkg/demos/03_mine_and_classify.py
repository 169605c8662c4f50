"""From raw TODO comments to a trigger-action classifier.

The first half scans a tiny code base for TODO comments, keeps the ones with
a condition cue word (if, when, once, as, then) and splits each into a
trigger part and an action part.

The second half evaluates the logistic-regression classifier with
leave-one-out cross validation on a synthetic labeled set. Its word vectors
are built so that only the embeddings separate the two classes, which makes
the gap between the lexical baseline and the full feature set easy to see.

Run with ``python3 demos/03_mine_and_classify.py``.
"""
import random
import tempfile
from pathlib import Path

from trigit.classifier import LabeledComment, format_table, loo_cross_validate
from trigit.classifier.embeddings import parse_embeddings
from trigit.classifier.evaluation import featurize_dataset
from trigit.miner import format_summary, mine

SOURCES = {
    "Cache.java": """class Cache {
    // TODO: Remove this guard once lazyStackTrace() works in Java 9.
    void a() {}
    // TODO (sam): swap inner classes for lambdas when we are on java 8
    void b() {}
    // TODO refactor later
    void c() {}
    /* TODO if Ints.compare is ever removed, drop this helper too */
    void d() {}
}
""",
    "Hash.java": """class Hash {
    // TODO consider ByteString here, when that is available
    int h;
    // FIXME not a TODO marker, ignored
    int g;
}
""",
}


def mining_demo() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        for name, text in SOURCES.items():
            (root / name).write_text(text)
        records, summary = mine(root)
        print(format_summary(summary))
        for r in records:
            print(f"\n{r.file}:{r.line}  cues={r.cues}")
            print(f"  text    : {r.text}")
            if r.split:
                print(f"  trigger : {r.trigger}")
                print(f"  action  : {r.action}   (template {r.template})")
            else:
                print("  (no template matched)")


def synthetic(n: int = 30, dim: int = 4, seed: int = 0):
    rng = random.Random(seed)
    rows, lines = [], []
    for i in range(n):
        positive = i % 2 == 0
        word = ("zorp" if positive else "quex") + "abcdefghij"[i % 10] + "abcdefghij"[i // 10]
        sign = 1.0 if positive else -1.0
        vec = [sign * (1 + rng.random())] + [rng.uniform(-1, 1) for _ in range(dim - 1)]
        lines.append(word + " " + " ".join(f"{v:.5f}" for v in vec))
        rows.append(LabeledComment(f"{word} is ready", "remove the shim", positive))
    return rows, parse_embeddings(lines)


def classification_demo() -> None:
    data, emb = synthetic()
    results = {}
    for system in ("baseline", "full"):
        X, y = featurize_dataset(data, system, emb)
        cv = loo_cross_validate(X, y)
        results[system] = cv.metrics
        print(f"{system}: {X.shape[1]} features, {cv.folds} folds")
    print()
    print(format_table(results))


if __name__ == "__main__":
    print("== mining ==")
    mining_demo()
    print("\n== classification ==")
    classification_demo()
