import pytest

from toffa import (
    CombinatorialLimitError,
    check_cks,
    detect_interleaving_faults,
    enumerate_ccfs,
    model_ccfs,
    parse_model,
    reachable_ccfs,
    resolve_ccf,
)


def ctx_model(groups: str) -> "Model":  # noqa: F821
    return parse_model(f'model "X"\nfeature r "Root" root\n{groups}')


def test_enumeration_order_two_xor_groups(gridstix):
    ccfs = enumerate_ccfs(gridstix)
    assert [(c.id, c.members) for c in ccfs] == [
        ("ccf1", ("c3", "c7")),
        ("ccf2", ("c4", "c7")),
        ("ccf3", ("c5", "c7")),
        ("ccf4", ("c3", "c8")),
        ("ccf5", ("c4", "c8")),
        ("ccf6", ("c5", "c8")),
    ]


def test_or_group_nonempty_subsets():
    m = ctx_model('contextgroup g "G" or\ncontext a "A" in g\ncontext b "B" in g\n')
    assert [c.members for c in enumerate_ccfs(m)] == [("a",), ("b",), ("a", "b")]


def test_optional_group_includes_empty():
    m = ctx_model('contextgroup g "G" optional\ncontext a "A" in g\ncontext b "B" in g\n')
    assert [c.members for c in enumerate_ccfs(m)] == [(), ("a",), ("b",), ("a", "b")]


def test_count_formula_mixed_relations():
    m = ctx_model(
        'contextgroup g1 "G1" xor\ncontext a "A" in g1\ncontext b "B" in g1\n'
        'contextgroup g2 "G2" or\ncontext c "C" in g2\ncontext d "D" in g2\ncontext e "E" in g2\n'
        'contextgroup g3 "G3" optional\ncontext f "F" in g3\n'
    )
    # 2 * (2^3 - 1) * 2^1
    assert len(enumerate_ccfs(m)) == 28
    assert len({c.member_set for c in enumerate_ccfs(m)}) == 28


def test_cap_enforced():
    decls = []
    for i in range(18):
        decls.append(f'contextgroup g{i} "G{i}" optional')
        decls.append(f'context x{i} "X{i}" in g{i}')
    m = ctx_model("\n".join(decls) + "\n")
    with pytest.raises(CombinatorialLimitError):
        enumerate_ccfs(m)


def test_interleaving_conflicts(gridstix):
    conflicts = detect_interleaving_faults(gridstix, resolve_ccf(gridstix, "ccf1"))
    assert [(c.feature, c.requiring, c.excluding) for c in conflicts] == [
        ("f3", ("c7",), ("c3",)),
        ("f9", ("c7",), ("c3",)),
    ]


def test_no_conflicts_on_consistent_ccf(gridstix):
    # Normal river + high battery only excludes, never requires-and-excludes
    assert detect_interleaving_faults(gridstix, resolve_ccf(gridstix, "ccf2")) != []
    m = parse_model(
        'model "X"\nfeature r "Root" root\nfeature a "A" optional of r\n'
        'contextgroup g "G" xor\ncontext c1 "C1" in g\ncontext c2 "C2" in g\n'
        "rule c1 requires a\nrule c2 excludes a\n"
    )
    for ccf in enumerate_ccfs(m):
        assert detect_interleaving_faults(m, ccf) == []


def test_check_cks_clean(gridstix):
    assert check_cks(gridstix) == []


def test_check_cks_invalid_state():
    m = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'contextgroup g "G" xor\ncontext a "A" in g\ncontext b "B" in g\n'
        "ccf k1 { a, b }\n"
    )
    diags = check_cks(m)
    assert any(d.code == "invalid-ccf" and d.severity == "error" for d in diags)


def test_check_cks_unreachable_and_missing():
    m = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'contextgroup g "G" xor\ncontext a "A" in g\ncontext b "B" in g\n'
        "ccf k1 { a }\nccf k2 { b }\ninitial k1\n"
    )
    codes = [d.code for d in check_cks(m)]
    assert "unreachable-state" in codes  # k2 has no inbound transition
    assert "ccf-not-in-cks" not in codes


def test_reachability(gridstix):
    assert reachable_ccfs(gridstix, "ccf1") == {f"ccf{i}" for i in range(1, 7)}
    with pytest.raises(KeyError):
        reachable_ccfs(gridstix, "ccf9")


def test_model_ccfs_prefers_declared(gridstix):
    assert [c.id for c in model_ccfs(gridstix)] == [f"ccf{i}" for i in range(1, 7)]
    bare = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'contextgroup g "G" xor\ncontext a "A" in g\ncontext b "B" in g\n'
    )
    assert [c.id for c in model_ccfs(bare)] == ["ccf1", "ccf2"]
