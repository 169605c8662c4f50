"""Token counts for the structure, trigger and action parts of each unit."""
from __future__ import annotations

from dataclasses import dataclass

from .frontend import Kind, TrigItUnit
from .syntax.parser import if_parts

IGNORED_PUNCT = frozenset(". , ( ) { } ;".split())
ROOT = "TrigIt"


@dataclass(frozen=True)
class TokenComplexity:
    unit: str
    class_name: str
    structure: int
    trigger: int
    action: int

    @property
    def total(self) -> int:
        return self.structure + self.trigger + self.action


def counted(tokens, indices) -> set[int]:
    """Indices that count: not bare punctuation and not the API root identifier."""
    return {i for i in indices
            if tokens[i].text not in IGNORED_PUNCT and tokens[i].text != ROOT and tokens[i].kind != "eof"}


def unit_complexity(unit: TrigItUnit, files) -> TokenComplexity:
    tokens = files[unit.file].tokens
    method = counted(tokens, unit.method.token_indices())
    stmt = unit.method.body.children[0]
    if unit.kind is Kind.TRIGGER:
        trigger = counted(tokens, stmt.children[0].token_indices())
        action = 0
        for site in unit.guard_sites:
            site_tokens = files[site.file].tokens
            cond = if_parts(site.node)[0]
            action += len(counted(site_tokens, [site.node.first_token()] + cond.token_indices()))
        return TokenComplexity(unit.name, unit.class_name, len(method - trigger), len(trigger), action)
    cond, then, _ = if_parts(stmt)
    trigger = counted(tokens, cond.token_indices())
    inner = then.children if then.kind == "Block" else [then]
    action = set()
    for s in inner:
        action |= counted(tokens, s.token_indices())
    return TokenComplexity(unit.name, unit.class_name, len(method - trigger - action), len(trigger),
                           len(action))


def complexity_table(units, files) -> list[TokenComplexity]:
    return [unit_complexity(u, files) for u in units]


def format_complexity(rows: list[TokenComplexity]) -> str:
    header = f"{'Class':<28} {'Unit':<20} {'Total':>5} {'Trigger':>7} {'Action':>6} {'Structure':>9}"
    lines = [header]
    for r in rows:
        simple = r.class_name.rsplit(".", 1)[-1]
        lines.append(f"{simple:<28} {r.unit:<20} {r.total:>5} {r.trigger:>7} {r.action:>6} {r.structure:>9}")
    if rows:
        n = len(rows)
        avg = [sum(getattr(r, k) for r in rows) / n for k in ("total", "trigger", "action", "structure")]
        lines.append(f"{'Avg.':<28} {'':<20} {avg[0]:>5.1f} {avg[1]:>7.1f} {avg[2]:>6.1f} {avg[3]:>9.1f}")
    return "\n".join(lines)
