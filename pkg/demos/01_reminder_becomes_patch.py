"""A TODO that knows when it is due, and what to do about it.

Two classes live side by side. A developer left a note that ``simpleName``
should become protected once ``FieldMapper`` is merged into ``Mapper``.
Instead of prose, the note is written as a trigger method plus an action
method. This script:

1. runs ``trigit check`` while both classes exist (nothing is due yet),
2. deletes ``FieldMapper.java`` to simulate the merge,
3. runs ``trigit run --mode patch`` and prints the resulting diff.

Run with ``python3 demos/01_reminder_becomes_patch.py``.
"""
import io
import tempfile
from pathlib import Path

from trigit.cli import main

MAPPER = """package demo;

public class Mapper {
    private final String simpleName = "m";

    public final String simpleName() {
        return simpleName;
    }

    @TrigItMethod
    static void checkMerge() {
        if (!TrigIt.hasClass("FieldMapper")) {
            TrigIt.getMethod(simpleName()).setProtected();
        }
    }
}
"""

FIELD_MAPPER = """package demo;

public abstract class FieldMapper {
    protected abstract void parse();
}
"""


def trigit(*argv) -> tuple[int, str]:
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def banner(text: str) -> None:
    print("\n" + "=" * 72 + f"\n{text}\n" + "=" * 72)


def main_demo() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp) / "project"
        root.mkdir()
        (root / "Mapper.java").write_text(MAPPER)
        (root / "FieldMapper.java").write_text(FIELD_MAPPER)

        banner("Step 1: both classes present, ask what would happen")
        code, text = trigit("check", root)
        print(text.rstrip())
        print(f"exit code {code} (0 means no trigger holds)")

        banner("Step 2: the merge lands, FieldMapper.java disappears")
        (root / "FieldMapper.java").unlink()
        patch = Path(tmp) / "due.patch"
        code, text = trigit("run", root, "--mode", "patch", "--patch-out", patch)
        print(text.rstrip())
        print(f"exit code {code} (1 means at least one trigger holds)")

        banner("Step 3: the patch, ready for review")
        print(patch.read_text())


if __name__ == "__main__":
    main_demo()
