"""Java version extraction from ``pom.xml`` and ``trigit.properties``."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path

BUILD_CONFIG_NAMES = ("pom.xml", "trigit.properties")

# Highest priority first.
VERSION_KEYS = ("maven.compiler.source", "source", "java.version")

MIN_MAJOR, MAX_MAJOR = 5, 13

_XML_ENTITIES = {"&lt;": "<", "&gt;": ">", "&amp;": "&", "&quot;": '"', "&apos;": "'"}


class ConfigError(Exception):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)
        self.reason = reason


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class JavaVersion:
    major: int
    source_text: str

    @classmethod
    def parse(cls, text: str) -> "JavaVersion":
        """Normalize ``"1.N"`` and ``"N"`` to the same major version."""
        s = text.strip()
        m = re.fullmatch(r"1\.(\d+)(?:[._][0-9_.]*)?", s) or re.fullmatch(r"(\d+)(?:\.[0-9.]*)?", s)
        if m is None:
            raise ValueError(f"unrecognized Java version {text!r}")
        major = int(m.group(1))
        if not MIN_MAJOR <= major <= MAX_MAJOR:
            raise ValueError(f"Java version {text!r} outside {MIN_MAJOR}..{MAX_MAJOR}")
        return cls(major, s)

    @classmethod
    def constant(cls, major: int) -> "JavaVersion":
        return cls(major, f"1.{major}" if major < 9 else str(major))

    def greater_equal_than(self, other: "JavaVersion") -> bool:
        return compare_java_versions(self, other) in (Ordering.EQUAL, Ordering.GREATER)

    def __str__(self):
        return self.source_text


JAVA_CONSTANTS = {f"JAVA{n}": JavaVersion.constant(n) for n in range(MIN_MAJOR, MAX_MAJOR + 1)}


def compare_java_versions(a: JavaVersion, b: JavaVersion) -> Ordering:
    if a.major < b.major:
        return Ordering.LESS
    if a.major > b.major:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class BuildConfigModel:
    path: str
    java_version: JavaVersion
    version_location: tuple[str, int]

    @property
    def name(self) -> str:
        return self.path


def _mask_xml_comments(text: str) -> str:
    # Keep newlines so line numbers survive.
    return re.sub(r"<!--.*?-->", lambda m: re.sub(r"[^\n]", " ", m.group()), text, flags=re.S)


def _line_of(text: str, offset: int) -> int:
    return text.count("\n", 0, offset) + 1


def _read_pom(text: str) -> dict[str, tuple[str, int]]:
    found: dict[str, tuple[str, int]] = {}
    scrubbed = _mask_xml_comments(text)
    for key in VERSION_KEYS:
        m = re.search(r"<%s>\s*(.*?)\s*</%s>" % (re.escape(key), re.escape(key)), scrubbed, re.S)
        if m:
            value = m.group(1)
            for ent, ch in _XML_ENTITIES.items():
                value = value.replace(ent, ch)
            found[key] = (value, _line_of(scrubbed, m.start(1)))
    return found


def _read_properties(text: str) -> dict[str, tuple[str, int]]:
    found: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("#", "!")):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            key, sep, value = stripped.partition(":")
        if sep and key.strip() == "java.version":
            found["java.version"] = (value.strip(), lineno)
    return found


def parse_build_config(path, rel_path: str | None = None) -> BuildConfigModel:
    """Read the project's Java version from a build configuration file.

    Key priority is ``maven.compiler.source`` > ``source`` > ``java.version``;
    the recorded location is the line the chosen value was read from.
    """
    path = Path(path)
    rel = rel_path or path.name
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(rel, f"cannot read: {exc}") from exc
    if path.name == "pom.xml":
        found = _read_pom(text)
    elif path.name == "trigit.properties":
        found = _read_properties(text)
    else:
        raise ConfigError(rel, "not a recognized build configuration file")
    for key in VERSION_KEYS:
        if key in found:
            value, line = found[key]
            try:
                version = JavaVersion.parse(value)
            except ValueError as exc:
                raise ConfigError(rel, str(exc)) from None
            return BuildConfigModel(rel, version, (rel, line))
    raise ConfigError(rel, "no Java version key found")
