"""Retiring a Java-version workaround by folding its guards.

Test code often carries branches like ``if (runningOnJava6()) ... else ...``
long after the old runtime stopped mattering. Here the branch condition is a
trigger method that reads the project's Java version from
``trigit.properties``. When the configured version reaches 1.6, fold mode
writes a copy of the sources where every guarded ``if`` is replaced by the
branch that would run, and the trigger method itself is removed.

Run with ``python3 demos/02_fold_version_guards.py``.
"""
import io
import tempfile
from pathlib import Path

from trigit.cli import main

TEST_CLASS = """public class ResultTest {
    public void testRender() {
        String expected;
        if (trigItJava6()) {
            expected = "<input placeholder=\\"\\"/>";
        } else {
            expected = "<input/>";
        }
        check(expected);
    }

    @TrigItMethod
    boolean trigItJava6() {
        return TrigIt.getJavaVersion().greaterEqualThan(TrigIt.JAVA6);
    }
}
"""


def show_run(root: Path, out_dir: Path) -> None:
    buf = io.StringIO()
    code = main(["run", str(root), "--mode", "fold", "--out-dir", str(out_dir)], buf)
    print(buf.getvalue().rstrip())
    print(f"exit code {code}")


def main_demo() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp) / "project"
        root.mkdir()
        (root / "ResultTest.java").write_text(TEST_CLASS)

        for version in ("1.5", "1.7"):
            (root / "trigit.properties").write_text(f"java.version={version}\n")
            out_dir = Path(tmp) / f"folded-{version}"
            print(f"\n### java.version={version}")
            show_run(root, out_dir)
            folded = out_dir / "ResultTest.java"
            if folded.exists():
                print("\n--- folded ResultTest.java ---")
                print(folded.read_text())


if __name__ == "__main__":
    main_demo()
