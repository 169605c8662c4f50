"""Immutable project-wide model of classes, members and build configs."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .buildconfig import BUILD_CONFIG_NAMES, BuildConfigModel, ConfigError, parse_build_config
from .syntax import LexError, Node, ParseError, Span, Token, parse_compilation_unit, tokenize

log = logging.getLogger(__name__)

TRIGIT_ANNOTATION = "TrigItMethod"


@dataclass(frozen=True)
class Modifiers:
    visibility: str  # public | protected | private | package
    is_static: bool = False
    is_final: bool = False
    is_abstract: bool = False
    span: Span | None = None

    @classmethod
    def from_node(cls, node: Node | None) -> "Modifiers":
        mods = node.attrs.get("mods", ()) if node is not None else ()
        vis = next((m for m in mods if m in ("public", "protected", "private")), "package")
        return cls(vis, "static" in mods, "final" in mods, "abstract" in mods,
                   node.span if node is not None else None)

    def is_public(self):
        return self.visibility == "public"

    def is_protected(self):
        return self.visibility == "protected"

    def is_private(self):
        return self.visibility == "private"


@dataclass(frozen=True)
class FieldModel:
    name: str
    modifiers: Modifiers
    type_text: str
    annotations: tuple[str, ...]
    span: Span


@dataclass(frozen=True)
class MethodModel:
    name: str
    modifiers: Modifiers
    type_text: str
    annotations: tuple[str, ...]
    span: Span
    parameter_count: int = 0
    is_constructor: bool = False

    @property
    def is_trigit_method(self) -> bool:
        return TRIGIT_ANNOTATION in self.annotations


@dataclass(frozen=True)
class ClassModel:
    name: str
    qualified_name: str
    modifiers: Modifiers
    fields: tuple[FieldModel, ...]
    methods: tuple[MethodModel, ...]
    path: str
    span: Span

    def get_method(self, name: str) -> MethodModel | None:
        return next((m for m in self.methods if m.name == name), None)

    def get_field(self, name: str) -> FieldModel | None:
        return next((f for f in self.fields if f.name == name), None)


@dataclass(frozen=True)
class JavaFileModel:
    path: str
    classes: tuple[str, ...]  # qualified names

    @property
    def name(self) -> str:
        return self.path


@dataclass(frozen=True)
class ClassSelector:
    name: str


@dataclass(frozen=True)
class MethodSelector:
    class_name: str
    name: str


@dataclass(frozen=True)
class FieldSelector:
    class_name: str
    name: str


@dataclass(frozen=True)
class ProjectModel:
    java_files: tuple[JavaFileModel, ...] = ()
    classes: tuple[ClassModel, ...] = ()
    build_configs: tuple[BuildConfigModel, ...] = ()
    ambiguous_names: frozenset[str] = frozenset()

    def find_class(self, name: str) -> ClassModel | None:
        """Resolve a simple (or qualified) class name; first in path order wins."""
        for c in self.classes:
            if c.qualified_name == name:
                return c
        for c in self.classes:
            if c.name == name:
                if name in self.ambiguous_names:
                    log.warning("ambiguous class name %r resolved to %s", name, c.qualified_name)
                return c
        return None

    def lookup(self, selector):
        if isinstance(selector, ClassSelector):
            return self.find_class(selector.name)
        cls = self.find_class(selector.class_name)
        if cls is None:
            return None
        if isinstance(selector, MethodSelector):
            return cls.get_method(selector.name)
        if isinstance(selector, FieldSelector):
            return cls.get_field(selector.name)
        raise TypeError(f"unsupported selector {selector!r}")


@dataclass
class SourceFile:
    path: str  # relative, forward slashes
    text: str
    tokens: list[Token]
    ast: Node | None


@dataclass
class LoadedProject:
    """Everything the later phases need: the model plus per-file syntax."""

    root: Path
    model: ProjectModel
    files: dict[str, SourceFile] = field(default_factory=dict)
    errors: list[Exception] = field(default_factory=list)
    other_files: list[str] = field(default_factory=list)


class ProjectLoadError(Exception):
    def __init__(self, errors: list[Exception]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


def _modifiers_of(node: Node) -> Modifiers:
    return Modifiers.from_node(node.modifiers)


def _class_models(cls: Node, prefix: str, path: str, out: list[ClassModel]) -> None:
    qname = f"{prefix}.{cls.name}" if prefix else cls.name
    fields = []
    methods = []
    nested = []
    for m in cls.members:
        if m.kind == "FieldDecl":
            t = m.typeref("field")
            fields.append(FieldModel(m.name, _modifiers_of(m), t.attrs["text"],
                                     tuple(m.annotations), m.span))
        elif m.kind == "MethodDecl":
            t = m.typeref("return")
            methods.append(MethodModel(m.name, _modifiers_of(m), t.attrs["text"] if t else "",
                                       tuple(m.annotations), m.span, len(m.params),
                                       bool(m.attrs.get("constructor"))))
        elif m.kind == "ClassDecl":
            nested.append(m)
    out.append(ClassModel(cls.name, qname, _modifiers_of(cls), tuple(fields), tuple(methods),
                          path, cls.span))
    for n in nested:
        _class_models(n, qname, path, out)


def model_from_asts(asts: Iterable[tuple[str, Node]],
                    build_configs: Iterable[BuildConfigModel] = ()) -> ProjectModel:
    files = []
    classes: list[ClassModel] = []
    for path, ast in sorted(asts, key=lambda pa: pa[0]):
        pkg = ast.child("PackageDecl")
        prefix = pkg.name if pkg is not None else ""
        start = len(classes)
        for cls in ast.children_of("ClassDecl"):
            _class_models(cls, prefix, path, classes)
        files.append(JavaFileModel(path, tuple(c.qualified_name for c in classes[start:])))
    seen: dict[str, str] = {}
    for c in classes:
        if c.qualified_name in seen:
            raise ProjectLoadError([ValueError(
                f"duplicate class {c.qualified_name} in {seen[c.qualified_name]} and {c.path}")])
        seen[c.qualified_name] = c.path
    counts: dict[str, int] = {}
    for c in classes:
        counts[c.name] = counts.get(c.name, 0) + 1
    ambiguous = frozenset(n for n, k in counts.items() if k > 1)
    return ProjectModel(tuple(files), tuple(classes),
                        tuple(sorted(build_configs, key=lambda b: b.path)), ambiguous)


def _walk_sources(root: Path):
    java, configs, other = [], [], []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(d for d in dirnames if not d.startswith("."))
        for fn in sorted(filenames):
            full = Path(dirpath) / fn
            rel = full.relative_to(root).as_posix()
            if fn.endswith(".java"):
                java.append(rel)
            elif fn in BUILD_CONFIG_NAMES:
                configs.append(rel)
            else:
                other.append(rel)
    return sorted(java), sorted(configs), sorted(other)


def load_project(root, strict: bool = True) -> LoadedProject:
    """Parse every ``.java`` file and build config under ``root``.

    In strict mode any lex/parse/config error raises :class:`ProjectLoadError`
    carrying the full list; in lenient mode failing files are skipped and the
    errors are kept on the result.
    """
    root = Path(root)
    if not root.is_dir():
        raise OSError(f"source root {root} is not a directory")
    java, config_paths, other = _walk_sources(root)
    files: dict[str, SourceFile] = {}
    errors: list[Exception] = []
    for rel in java:
        text = (root / rel).read_text(encoding="utf-8")
        try:
            tokens = tokenize(text, rel)
        except LexError as exc:
            errors.append(exc)
            files[rel] = SourceFile(rel, text, [], None)
            continue
        try:
            ast = parse_compilation_unit(tokens)
        except ParseError as exc:
            errors.append(exc)
            ast = None
        files[rel] = SourceFile(rel, text, tokens, ast)
    configs = []
    for rel in config_paths:
        try:
            configs.append(parse_build_config(root / rel, rel))
        except ConfigError as exc:
            errors.append(exc)
    if errors and strict:
        raise ProjectLoadError(errors)
    model = model_from_asts(((p, f.ast) for p, f in files.items() if f.ast is not None), configs)
    return LoadedProject(root, model, files, errors, other + config_paths)


def build_project_model(source_root, strict: bool = True) -> ProjectModel:
    return load_project(source_root, strict).model


def lookup(model: ProjectModel, selector):
    return model.lookup(selector)
