"""Unified-diff rendering of edit sets."""
from __future__ import annotations

import difflib
from dataclasses import dataclass, field

from .edits import Edit, check_overlaps, materialize

NO_NEWLINE = "\\ No newline at end of file\n"


@dataclass(frozen=True)
class Patch:
    text: str
    files: tuple[str, ...] = ()
    hunks: int = 0
    per_file: dict = field(default_factory=dict, compare=False)

    @property
    def summary(self) -> str:
        return f"{len(self.files)} file(s), {self.hunks} hunk(s)"


def unified_diff(path: str, before: str, after: str, context: int = 3) -> str:
    a = before.splitlines(keepends=True)
    b = after.splitlines(keepends=True)
    out = []
    for line in difflib.unified_diff(a, b, f"a/{path}", f"b/{path}", n=context):
        if line.endswith("\n"):
            out.append(line)
        else:
            out.append(line + "\n" + NO_NEWLINE)
    return "".join(out)


def render_patch(edits, originals: dict[str, str]) -> Patch:
    """Render edits against the original sources as one multi-file diff.

    Paths use ``a/`` and ``b/`` prefixes and files appear in sorted order.
    """
    edits = list(edits)
    check_overlaps(edits)
    by_file: dict[str, list[Edit]] = {}
    for e in edits:
        by_file.setdefault(e.file, []).append(e)
    chunks = []
    touched = []
    per_file = {}
    hunks = 0
    for path in sorted(by_file):
        before = originals[path]
        after = materialize(before, by_file[path])
        diff = unified_diff(path, before, after)
        if not diff:
            continue
        chunks.append(diff)
        touched.append(path)
        per_file[path] = diff
        hunks += sum(1 for line in diff.splitlines() if line.startswith("@@"))
    return Patch("".join(chunks), tuple(touched), hunks, per_file)
