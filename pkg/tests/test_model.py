import pytest

from toffa import ModelError, parse_model, serialize_model, validate_model
from toffa.dsl import model_to_dict

from conftest import fixture_text

MINIMAL = """
model "Tiny"
feature r "Root" root
feature a "A" mandatory of r
group g1 xor of a { b "B", c "C" }
"""


def test_parse_minimal():
    m = parse_model(MINIMAL)
    assert m.name == "Tiny"
    assert [f.id for f in m.features] == ["r", "a", "b", "c"]
    assert m.feature("b").group == "g1"
    assert m.is_variable("b") and not m.is_variable("a")


def test_roundtrip_minimal():
    m = parse_model(MINIMAL)
    assert parse_model(serialize_model(m)) == m


@pytest.mark.parametrize(
    "name", ["gridstix.toffa", "gridstix_reconfig.toffa", "gridstix_prose.toffa"]
)
def test_roundtrip_fixtures(name):
    m = parse_model(fixture_text(name))
    assert parse_model(serialize_model(m)) == m


def test_missing_model_line():
    with pytest.raises(ModelError):
        parse_model('feature r "Root" root\n')


def test_syntax_error_carries_line():
    with pytest.raises(ModelError) as e:
        parse_model('model "X"\nfeature r "Root" root\nbogus line here\n')
    assert e.value.line == 3


def test_duplicate_id_rejected():
    with pytest.raises(ModelError, match="duplicate id"):
        parse_model('model "X"\nfeature r "Root" root\nfeature r "Again" mandatory of r\n')


def test_dangling_parent_rejected():
    with pytest.raises(ModelError, match="dangling"):
        parse_model('model "X"\nfeature r "Root" root\nfeature a "A" mandatory of nope\n')


def test_two_roots_rejected():
    with pytest.raises(ModelError, match="exactly one root"):
        parse_model('model "X"\nfeature r "Root" root\nfeature s "Other" root\n')


def test_group_needs_two_members():
    with pytest.raises(ModelError):
        parse_model('model "X"\nfeature r "Root" root\ngroup g xor of r { a "A" }\n')


def test_duplicate_rule_rejected():
    src = (
        'model "X"\nfeature r "Root" root\nfeature a "A" optional of r\n'
        'contextgroup cg "G" or\ncontext c1 "C" in cg\n'
        "rule c1 requires a\nrule c1 excludes a\n"
    )
    with pytest.raises(ModelError, match="duplicate adaptation rule"):
        parse_model(src)


def test_transition_to_unknown_state():
    src = (
        'model "X"\nfeature r "Root" root\n'
        'contextgroup cg "G" or\ncontext c1 "C" in cg\n'
        "ccf k1 { c1 }\ntransition k1 -> k2\n"
    )
    with pytest.raises(ModelError, match="dangling"):
        parse_model(src)


def test_validate_clean_fixture(gridstix):
    assert validate_model(gridstix) == []


def test_validate_hardgoal_on_mandatory():
    src = (
        'model "X"\nfeature r "Root" root\nfeature a "A" mandatory of r\n'
        'goal g "G"\nhardgoal h of g or binds a\n'
    )
    diags = validate_model(parse_model(src))
    assert [d.code for d in diags] == ["hardgoal-binding"]
    assert diags[0].severity == "error"


def test_validate_parent_child_rule_warning():
    src = (
        'model "X"\nfeature r "Root" root\nfeature a "A" optional of r\n'
        'feature b "B" optional of a\n'
        'contextgroup cg "G" or\ncontext c1 "C" in cg\n'
        "rule c1 requires a\nrule c1 excludes b\n"
    )
    diags = validate_model(parse_model(src))
    assert [d.code for d in diags] == ["parent-child-rule"]
    assert diags[0].severity == "warning"
    assert set(diags[0].subjects) == {"c1", "a", "b"}


def test_model_to_dict_shape(gridstix):
    d = model_to_dict(gridstix)
    assert d["name"] == "GridStix"
    assert len(d["features"]) == 11
    assert len(d["cks"]["states"]) == 6
    variable = [f["id"] for f in d["features"] if f["variable"]]
    assert variable == ["f2", "f3", "f5", "f6", "f8", "f9"]
