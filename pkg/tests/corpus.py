"""Random programs in the supported subset, with a manifest of what was generated."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from trigit.engine import Edit, Origin

TYPES = ["int", "boolean", "String", "long", "List<String>", "Map<String, List<Integer>>", "String[]",
         "Object"]
NAMES = ["alpha", "beta", "gamma", "delta", "count", "value", "items", "flag", "size", "cache"]
STRINGS = ['"plain"', '"with \\"quotes\\""', '"tab\\tnewline\\n"', '""', '"TODO inside string"',
           "'c'", "'\\n'"]
NUMBERS = ["0", "1", "42", "3.5", "100L", "2.0f"]
COMMENTS = ["// note", "// TODO: revisit once the cache is stable", "/* inline */", "/** doc\n * more\n */",
            "/* multi\n   line */"]


@dataclass
class MemberSpec:
    kind: str  # method | field | static | class
    name: str
    annotated: bool = False


@dataclass
class ClassSpec:
    name: str
    qualified: str
    members: list[MemberSpec] = field(default_factory=list)
    nested: list["ClassSpec"] = field(default_factory=list)

    def all_classes(self):
        yield self
        for n in self.nested:
            yield from n.all_classes()


@dataclass
class GeneratedFile:
    path: str
    source: str
    classes: list[ClassSpec]

    def class_count(self) -> int:
        return sum(1 for c in self.classes for _ in c.all_classes())


class Generator:
    def __init__(self, seed: int, comments: bool = True, trigit: bool = True):
        self.rng = random.Random(seed)
        self.comments = comments
        self.trigit = trigit
        self.counter = 0

    def fresh(self, stem: str) -> str:
        self.counter += 1
        return f"{stem}{self.counter}"

    def ws(self) -> str:
        r = self.rng.random()
        if self.comments and r < 0.15:
            return " " + self.rng.choice(COMMENTS) + "\n"
        return self.rng.choice([" ", " ", "  ", "\t", "\n    "])

    def comment_line(self, indent: str) -> str:
        if self.comments and self.rng.random() < 0.4:
            return indent + self.rng.choice(COMMENTS) + "\n"
        return ""

    # -- expressions ------------------------------------------------------------------

    def expr(self, depth: int = 0) -> str:
        rng = self.rng
        if depth > 2:
            return self.atom()
        r = rng.random()
        if r < 0.3:
            return self.atom()
        if r < 0.5:
            return self.chain(depth)
        if r < 0.6:
            return "!" + self.expr(depth + 1)
        if r < 0.7:
            return f"({self.expr(depth + 1)})"
        op = rng.choice(["&&", "||", "==", "!=", "<", ">=", "+", "-", "*", "%"])
        return f"{self.expr(depth + 1)}{self.ws()}{op} {self.expr(depth + 1)}"

    def atom(self) -> str:
        rng = self.rng
        return rng.choice([rng.choice(STRINGS), rng.choice(NUMBERS), "true", "false", "null",
                           rng.choice(NAMES), "this", "-" + rng.choice(NUMBERS)])

    def args(self, depth: int) -> str:
        n = self.rng.randint(0, 2)
        return "(" + ", ".join(self.expr(depth + 1) for _ in range(n)) + ")"

    def chain(self, depth: int) -> str:
        rng = self.rng
        head = rng.choice([rng.choice(NAMES) + self.args(depth), "this", rng.choice(NAMES),
                           "Helper"])
        out = head
        for _ in range(rng.randint(1, 3)):
            out += "." + rng.choice(NAMES)
            if rng.random() < 0.7:
                out += self.args(depth)
        return out

    # -- statements ---------------------------------------------------------------------

    def stmt(self, indent: str, depth: int = 0) -> str:
        rng = self.rng
        r = rng.random()
        pre = self.comment_line(indent)
        if depth < 2 and r < 0.2:
            s = f"{indent}if ({self.expr()}) {self.block(indent, depth + 1)}"
            if rng.random() < 0.5:
                s += f" else {self.block(indent, depth + 1)}"
            return pre + s + "\n"
        if depth < 2 and r < 0.3:
            return pre + f"{indent}if ({self.expr()})\n{self.stmt(indent + '    ', depth + 1)}"
        if r < 0.45:
            return pre + f"{indent}{rng.choice(TYPES)} {self.fresh('v')} = {self.expr()};\n"
        if r < 0.55:
            return pre + f"{indent}{rng.choice(TYPES)} {self.fresh('v')};\n"
        if r < 0.65:
            return pre + f"{indent}{rng.choice(NAMES)} = {self.expr()};\n"
        if r < 0.72:
            return pre + f"{indent}this.{rng.choice(NAMES)} = {self.expr()};\n"
        if r < 0.8:
            return pre + f"{indent}return {self.expr()};\n"
        return pre + f"{indent}{self.chain(0)};\n"

    def block(self, indent: str, depth: int) -> str:
        inner = indent + "    "
        body = "".join(self.stmt(inner, depth) for _ in range(self.rng.randint(0, 3)))
        return "{\n" + body + indent + "}"

    # -- declarations ------------------------------------------------------------------

    def modifiers(self, allow_static: bool = True) -> str:
        rng = self.rng
        mods = []
        if rng.random() < 0.7:
            mods.append(rng.choice(["public", "protected", "private"]))
        if allow_static and rng.random() < 0.3:
            mods.append("static")
        if rng.random() < 0.3:
            mods.append("final")
        return "".join(m + " " for m in mods)

    def field_decl(self, indent: str, spec: ClassSpec) -> str:
        name = self.fresh("f")
        spec.members.append(MemberSpec("field", name))
        init = f" = {self.expr()}" if self.rng.random() < 0.5 else ""
        return f"{indent}{self.modifiers()}{self.rng.choice(TYPES)} {name}{init};\n"

    def method_decl(self, indent: str, spec: ClassSpec) -> str:
        rng = self.rng
        name = self.fresh("m")
        annos = ""
        if rng.random() < 0.3:
            annos += indent + rng.choice(["@Override", "@Deprecated", '@SuppressWarnings("unchecked")']) + "\n"
        spec.members.append(MemberSpec("method", name))
        rtype = rng.choice(TYPES + ["void"])
        params = ", ".join(f"{rng.choice(TYPES)} p{i}" for i in range(rng.randint(0, 3)))
        throws = " throws IOException, IllegalStateException" if rng.random() < 0.15 else ""
        if rng.random() < 0.1:
            return f"{annos}{indent}abstract {rtype} {name}({params}){throws};\n"
        return f"{annos}{indent}{self.modifiers()}{rtype} {name}({params}){throws} {self.block(indent, 0)}\n"

    def trigit_method(self, indent: str, spec: ClassSpec) -> str:
        name = self.fresh("trig")
        spec.members.append(MemberSpec("method", name, annotated=True))
        if self.rng.random() < 0.5:
            body = f'{indent}    return TrigIt.hasClass("{self.rng.choice(NAMES)}");\n'
            return f"{indent}@TrigItMethod\n{indent}boolean {name}() {{\n{body}{indent}}}\n"
        body = (f'{indent}    if (TrigIt.hasClass("X")) {{\n{indent}        '
                f'TrigIt.getMethod({self.rng.choice(NAMES)}()).setPrivate();\n{indent}    }}\n')
        return f"{indent}@TrigItMethod\n{indent}public static void {name}() {{\n{body}{indent}}}\n"

    def static_block(self, indent: str, spec: ClassSpec) -> str:
        spec.members.append(MemberSpec("static", "<static>"))
        return f"{indent}static {self.block(indent, 0)}\n"

    def class_decl(self, indent: str, name: str, qualified: str, depth: int = 0) -> tuple[str, ClassSpec]:
        rng = self.rng
        spec = ClassSpec(name, qualified)
        head = self.modifiers(allow_static=depth > 0)
        ext = f" extends Base{rng.randint(1, 9)}" if rng.random() < 0.3 else ""
        impl = " implements Runnable, Comparable<String>" if rng.random() < 0.2 else ""
        anno = f"{indent}@Generated\n" if rng.random() < 0.1 else ""
        body = ""
        inner = indent + "    "
        for _ in range(rng.randint(1, 6)):
            body += self.comment_line(inner)
            r = rng.random()
            if r < 0.3:
                body += self.field_decl(inner, spec)
            elif r < 0.6:
                body += self.method_decl(inner, spec)
            elif r < 0.7:
                body += self.static_block(inner, spec)
            elif r < 0.8 and depth < 2:
                nested_name = self.fresh("N")
                text, nspec = self.class_decl(inner, nested_name, f"{qualified}.{nested_name}", depth + 1)
                spec.members.append(MemberSpec("class", nested_name))
                spec.nested.append(nspec)
                body += text
            elif self.trigit:
                body += self.trigit_method(inner, spec)
            else:
                body += self.method_decl(inner, spec)
        return f"{anno}{indent}{head}class {name}{ext}{impl} {{\n{body}{indent}}}\n", spec

    def compilation_unit(self, path: str, package: str | None, class_names: list[str]) -> GeneratedFile:
        out = self.comment_line("")
        if package:
            out += f"package {package};\n\n"
        for imp in self.rng.sample(["java.util.List", "java.util.Map", "java.io.IOException",
                                    "static org.junit.Assert.assertEquals", "java.util.*"],
                                   self.rng.randint(0, 3)):
            if imp.endswith(".*"):
                out += f"import {imp[:-2]}.*;\n"
            else:
                out += f"import {imp};\n"
        specs = []
        for name in class_names:
            qualified = f"{package}.{name}" if package else name
            text, spec = self.class_decl("", name, qualified)
            out += "\n" + text
            specs.append(spec)
        if self.comments and self.rng.random() < 0.3:
            out += "// trailing comment"
            if self.rng.random() < 0.5:
                out += "\n"
        return GeneratedFile(path, out, specs)


def generate_file(seed: int, **kw) -> GeneratedFile:
    g = Generator(seed, **kw)
    n = g.rng.randint(1, 2)
    return g.compilation_unit(f"gen/F{seed}.java", f"gen.p{seed}", [f"C{seed}x{k}" for k in range(n)])


def generate_class(seed: int) -> tuple[str, ClassSpec]:
    g = Generator(seed)
    return g.class_decl("", f"K{seed}", f"K{seed}")


def write_corpus(root: Path, files: int, seed: int = 0, trigit: bool = False) -> list[GeneratedFile]:
    out = []
    for i in range(files):
        gf = generate_file(seed * 100_000 + i, trigit=trigit)
        dest = root / gf.path
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(gf.source, encoding="utf-8")
        out.append(gf)
    return out


def trigit_units_source(count: int, classes: list[str]) -> str:
    """One class holding ``count`` trigger units that query the given classes."""
    body = ""
    for i in range(count):
        a, b = classes[i % len(classes)], classes[(i * 7 + 3) % len(classes)]
        body += (f"    @TrigItMethod\n    boolean unit{i}() {{\n"
                 f'        return TrigIt.hasClass("{a}") && (TrigIt.getClasses().count() > {i} '
                 f'|| !TrigIt.hasClass("{b}Gone"));\n    }}\n\n')
        body += f"    void site{i}() {{\n        if (unit{i}()) work();\n    }}\n\n"
    return f"package gen.units;\n\npublic class Units {{\n{body}}}\n"


def guard_source(negated: bool, has_else: bool) -> str:
    cond = "!t()" if negated else "t()"
    other = " else {\n            elseStmt();\n        }" if has_else else ""
    return ("class G {\n    void f() {\n        before();\n"
            f"        if ({cond}) {{\n            thenStmt();\n        }}{other}\n"
            "        after();\n    }\n\n"
            "    @TrigItMethod\n    boolean t() { return TrigIt.hasClass(\"G\"); }\n}\n")


def edit(file, start, end, text="", origin=Origin.EXPLICIT_ACTION):
    return Edit(file, start, end, text, origin, "u", 1, 1)


def random_edits(rng: random.Random, path: str, text: str, n: int) -> list[Edit]:
    points = sorted(rng.sample(range(len(text) + 1), min(2 * n, len(text) + 1)))
    out = []
    for a, b in zip(points[::2], points[1::2]):
        repl = rng.choice(["", "X", "new line\n", "\n", "  indented();\n", "tail"])
        out.append(edit(path, a, b, repl))
    return out
