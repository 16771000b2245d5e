import pytest
from hypothesis import given

from cpsphere.model import (Centering, ModelParseError, ModelValidationError, SphereModel,
                            load_model, save_model, validate)

from conftest import models

TWO = """centering: centered
worlds: a b
val p: b
spheres a: {a} {a b}
spheres b: {b}
"""


def test_load_and_lookup():
    m = load_model(TWO)
    assert m.worlds == ("a", "b")
    assert m.spheres("a") == [frozenset({"a"}), frozenset({"a", "b"})]
    assert m.names(m.atom_mask("p")) == {"b"}
    assert m.names(m.reach(0)) == {"a", "b"}


def test_save_roundtrip(nixon, nixon_weak):
    for m in (nixon, nixon_weak):
        assert load_model(save_model(m)) == m


@given(models())
def test_generated_models_valid_and_roundtrip(m):
    assert validate(m) == []
    assert load_model(save_model(m)) == m


@pytest.mark.parametrize("text, line", [
    ("centering: centered\nworlds: a\nfoo: a\n", 3),
    ("centering: round\n", 1),
    ("worlds: a a\n", 1),
    ("centering: centered\nworlds: a\nspheres a: {a} junk\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ModelParseError) as e:
        load_model(text)
    assert e.value.line == line


def test_missing_system():
    with pytest.raises(ModelParseError):
        load_model("centering: centered\nworlds: a b\nspheres a: {a}\n")


def test_centering_violation():
    text = TWO.replace("spheres a: {a} {a b}", "spheres a: {a b}")
    with pytest.raises(ModelValidationError) as e:
        load_model(text)
    assert [v.kind for v in e.value.violations] == ["centering"]


def test_nesting_violation():
    m = SphereModel.build("ab", {}, {"a": [["a"], ["b"]], "b": [["b"]]}, "weak")
    kinds = {v.kind for v in validate(m)}
    assert "nesting" in kinds


def test_weak_model_fails_centered_check(nixon_weak):
    assert validate(nixon_weak) == []
    bad = validate(nixon_weak, Centering.CENTERED)
    assert bad and bad[0].kind == "centering" and bad[0].world == "x"
