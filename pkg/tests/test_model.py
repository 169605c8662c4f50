import re
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import generate_file, write_corpus
from trigit.buildconfig import ConfigError, JavaVersion, Ordering, compare_java_versions, parse_build_config
from trigit.model import (ClassSelector, FieldSelector, MethodSelector, ProjectLoadError, build_project_model,
                          load_project, lookup)
from trigit.syntax import parse_source

FIXTURES = Path(__file__).parent / "fixtures"


def test_empty_directory(tmp_path):
    m = build_project_model(tmp_path)
    assert (len(m.java_files), len(m.classes), len(m.build_configs)) == (0, 0, 0)


def test_missing_root_is_io_error(tmp_path):
    with pytest.raises(OSError):
        build_project_model(tmp_path / "absent")


def test_fig3_single_file_model(fixture_copy):
    root = fixture_copy("fig3", drop=["FieldMapper.java"])
    m = build_project_model(root)
    assert [c.name for c in m.classes] == ["Mapper"]
    assert [x.name for x in m.classes[0].methods] == ["simpleName", "checkMerge"]
    assert m.classes[0].methods[1].is_trigit_method
    assert not m.classes[0].methods[0].is_trigit_method


def test_lookup_examples():
    m = build_project_model(FIXTURES / "fig3")
    assert lookup(m, ClassSelector("Mapper")) is not None
    assert lookup(m, FieldSelector("Mapper", "zzz")) is None
    method = lookup(m, MethodSelector("Mapper", "simpleName"))
    assert method.modifiers.visibility == "public" and method.modifiers.is_final
    assert method.parameter_count == 0 and method.type_text == "String"


def test_field_and_modifier_model():
    m = build_project_model(FIXTURES / "fig3")
    f = lookup(m, FieldSelector("Mapper", "simpleName"))
    assert f.modifiers.visibility == "private" and f.modifiers.is_final and f.type_text == "String"
    fm = m.find_class("FieldMapper")
    assert fm.modifiers.is_abstract and fm.methods[0].modifiers.visibility == "protected"


def test_package_private_visibility():
    toks, ast = parse_source("class A { int x; void f() {} }")
    from trigit.model import model_from_asts
    m = model_from_asts([("A.java", ast)])
    assert m.classes[0].fields[0].modifiers.visibility == "package"
    assert m.classes[0].methods[0].modifiers.visibility == "package"


def test_nested_classes_flattened(tmp_path):
    (tmp_path / "O.java").write_text("package p;\nclass Outer { class Inner { class Deep {} } }\n")
    m = build_project_model(tmp_path)
    assert [c.qualified_name for c in m.classes] == ["p.Outer", "p.Outer.Inner", "p.Outer.Inner.Deep"]
    assert m.find_class("Deep").qualified_name == "p.Outer.Inner.Deep"


def test_ambiguous_simple_name_resolves_by_path(tmp_path, caplog):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    (tmp_path / "a" / "X.java").write_text("package a;\nclass X {}\n")
    (tmp_path / "b" / "X.java").write_text("package b;\nclass X {}\n")
    m = build_project_model(tmp_path)
    assert m.find_class("X").qualified_name == "a.X"
    assert "X" in m.ambiguous_names
    assert any("ambiguous" in r.message for r in caplog.records)


def test_duplicate_qualified_names_rejected(tmp_path):
    (tmp_path / "A.java").write_text("class X {}\n")
    (tmp_path / "B.java").write_text("class X {}\n")
    with pytest.raises(ProjectLoadError):
        build_project_model(tmp_path)


def test_strict_and_lenient_parse_errors(tmp_path):
    (tmp_path / "Good.java").write_text("class Good {}\n")
    (tmp_path / "Bad.java").write_text("class Bad { for }\n")
    with pytest.raises(ProjectLoadError) as exc:
        load_project(tmp_path)
    assert len(exc.value.errors) == 1
    project = load_project(tmp_path, strict=False)
    assert [c.name for c in project.model.classes] == ["Good"]
    assert len(project.errors) == 1


def test_generated_corpus_class_count(tmp_path):
    files = write_corpus(tmp_path, 100, seed=3)
    m = build_project_model(tmp_path)
    assert len(m.java_files) == 100
    assert len(m.classes) == sum(f.class_count() for f in files)


@pytest.mark.parametrize("seed", range(20))
def test_model_count_matches_ast_traversal(seed):
    gf = generate_file(seed)
    _, ast = parse_source(gf.source, gf.path)
    from trigit.model import model_from_asts
    m = model_from_asts([(gf.path, ast)])
    assert len(m.classes) == sum(1 for n in ast.walk() if n.kind == "ClassDecl")
    # declaration order of methods follows the AST
    for cls in m.classes:
        decl = next(n for n in ast.walk() if n.kind == "ClassDecl" and n.name == cls.name)
        assert [x.name for x in cls.methods] == [x.name for x in decl.members if x.kind == "MethodDecl"]


# -- build configuration ------------------------------------------------------------------

def test_properties_version(tmp_path):
    p = tmp_path / "trigit.properties"
    p.write_text("java.version=1.7\n")
    cfg = parse_build_config(p, "trigit.properties")
    assert cfg.java_version.major == 7 and cfg.version_location == ("trigit.properties", 1)


def test_pom_version(tmp_path):
    p = tmp_path / "pom.xml"
    p.write_text("<project>\n  <properties>\n    <maven.compiler.source>1.6</maven.compiler.source>\n"
                 "  </properties>\n</project>\n")
    cfg = parse_build_config(p, "pom.xml")
    assert cfg.java_version.major == 6 and cfg.version_location == ("pom.xml", 3)


def test_pom_key_priority_over_document_order(tmp_path):
    lines = ["<project>"] + ["  <!-- filler -->"] * 10
    lines.append("  <properties><maven.compiler.source>9</maven.compiler.source></properties>")  # line 12
    lines += ["  <x/>"] * 27
    lines.append("  <build><source>1.8</source></build>")  # line 40
    lines.append("</project>")
    p = tmp_path / "pom.xml"
    p.write_text("\n".join(lines) + "\n")
    cfg = parse_build_config(p, "pom.xml")
    assert cfg.java_version.major == 9 and cfg.version_location[1] == 12


def test_pom_comment_is_not_read(tmp_path):
    p = tmp_path / "pom.xml"
    p.write_text("<project>\n<!-- <source>1.5</source> -->\n<source>1.8</source>\n</project>\n")
    cfg = parse_build_config(p, "pom.xml")
    assert cfg.java_version.major == 8 and cfg.version_location[1] == 3


@pytest.mark.parametrize("text", ["name=x\n", "java.version=banana\n", "java.version=1.4\n"])
def test_config_errors(tmp_path, text):
    p = tmp_path / "trigit.properties"
    p.write_text(text)
    with pytest.raises(ConfigError):
        parse_build_config(p)


def test_properties_comments_skipped(tmp_path):
    p = tmp_path / "trigit.properties"
    p.write_text("# java.version=1.5\n! note\njava.version = 11\n")
    cfg = parse_build_config(p, "trigit.properties")
    assert cfg.java_version.major == 11 and cfg.version_location[1] == 3


def test_compare_examples():
    v = JavaVersion.parse
    assert compare_java_versions(v("1.6"), v("1.6")) is Ordering.EQUAL
    assert compare_java_versions(v("1.7"), JavaVersion.constant(6)) is Ordering.GREATER
    assert v("1.7").greater_equal_than(JavaVersion.constant(6))
    assert compare_java_versions(v("9"), v("1.8")) is Ordering.GREATER
    assert not v("1.5").greater_equal_than(v("1.6"))


@given(st.integers(min_value=5, max_value=13))
def test_version_normalization(n):
    assert JavaVersion.parse(f"1.{n}").major == JavaVersion.parse(str(n)).major == n


def test_version_text_preserved():
    assert JavaVersion.parse("1.6").source_text == "1.6"
    assert str(JavaVersion.constant(6)) == "1.6" and str(JavaVersion.constant(9)) == "9"


def test_fig2_config_in_model():
    m = build_project_model(FIXTURES / "fig2")
    assert len(m.build_configs) == 1
    cfg = m.build_configs[0]
    assert re.fullmatch(r"trigit\.properties", cfg.path) or cfg.path.endswith("trigit.properties")
    assert cfg.java_version.major == 7
