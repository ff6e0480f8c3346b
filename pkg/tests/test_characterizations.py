import json

import pytest

from liftgroups.characterizations import (DIAGRAMS, check_diagram, checker, normal_closure_morphisms,
                                          overall_pass, verify_universe)
from liftgroups.errors import ArityMismatch
from liftgroups.groups import Alternating, Symmetric, build_group, normal_closure
from liftgroups.oracles import is_solvable, is_subnormal, primes_up_to
from liftgroups.parsing import Parser


def test_sweep_small_universe_agrees(u8):
    verdicts = verify_universe(u8)
    assert overall_pass(verdicts)
    assert {v.diagram for v in verdicts} == set(DIAGRAMS)
    assert all(v.error is None for v in verdicts)


def test_parallel_sweep_matches_serial(u8):
    a = [v.to_dict() for v in verify_universe(u8, ["k_normal_closure", "l_subnormal"], jobs=1)]
    b = [v.to_dict() for v in verify_universe(u8, ["k_normal_closure", "l_subnormal"], jobs=3)]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_named_examples(u16):
    p = Parser(u16)
    assert check_diagram("a_surjective", p.morphism("S3->>C2:sign"), u16).via_lifting
    assert not check_diagram("a_surjective", p.morphism("C2>->S3"), u16).via_lifting
    assert check_diagram("b_injective", p.morphism("C2>->S3"), u16).via_lifting
    assert not check_diagram("c_abelian", p.group("S3"), u16).via_lifting
    assert check_diagram("c_abelian", p.group("C2xC4"), u16).via_lifting
    a5 = build_group(Alternating(5))
    d = check_diagram("d_perfect", a5, u16)
    assert d.via_lifting and d.agree
    e = check_diagram("e_solvable", a5, u16)
    assert not e.via_lifting and e.agree and e.counterexample is not None
    assert check_diagram("e_solvable", build_group(Symmetric(4)), u16).via_lifting


def test_d_forms_consistent(u16):
    for gid in range(len(u16.groups)):
        v = check_diagram("d_perfect", gid, u16)
        assert set(v.details["forms"].values()) == {v.via_lifting}
    v = check_diagram("d_perfect", build_group(Alternating(5)), u16)
    assert set(v.details["forms"].values()) == {True}


@pytest.mark.parametrize("diagram", ["e_solvable", "g_pgroup", "k_normal_closure", "l_subnormal",
                                     "m_nilpotent"])
def test_exact_witness_alone_is_sufficient(u16, diagram):
    c = checker(u16)
    for subject in c.subjects(diagram):
        v = check_diagram(diagram, subject, u16, witnesses="exact")
        assert v.via_lifting == v.via_oracle, (diagram, v.subject)


@pytest.mark.parametrize("diagram", ["g_pgroup", "k_normal_closure", "l_subnormal"])
def test_universe_witnesses_alone_agree_at_16(u16, diagram):
    # at this size the universe classes already separate every subject
    c = checker(u16)
    for subject in c.subjects(diagram):
        v = check_diagram(diagram, subject, u16, witnesses="universe")
        assert v.via_lifting == v.via_oracle, (diagram, v.subject)


def test_larger_universe_only_removes_passes(u8, u16):
    for g in u8.groups:
        for p in primes_up_to(8):
            small = check_diagram("g_pgroup", (g, p), u8, witnesses="universe").via_lifting
            large = check_diagram("g_pgroup", (g, p), u16, witnesses="universe").via_lifting
            assert small or not large


def test_subnormal_counterexample_left_is_normal_closure(u16):
    c = checker(u16)
    failing = 0
    for mid in c.subjects("l_subnormal"):
        v = check_diagram("l_subnormal", mid, u16)
        if not v.via_oracle:
            failing += 1
            f = v.counterexample.f
            assert normal_closure(f.target, f.gen_images).is_whole
            assert v.details["witness_normal_closure"]
    assert failing > 0


def test_normal_closure_morphisms(u8):
    ids = normal_closure_morphisms(u8)
    for mid, m in enumerate(u8.morphisms):
        if m.target is u8.trivial:
            assert mid in ids


def test_feit_thompson_report(u16):
    v = check_diagram("i_feit_thompson", None, u16)
    assert v.details["status"] == "corroborated"
    assert v.details["odd_order_groups"] == sum(1 for g in u16.groups if g.order % 2)
    assert all(is_solvable(g) for g in u16.groups if g.order % 2)


def test_subject_type_errors(u8):
    with pytest.raises(ArityMismatch):
        check_diagram("c_abelian", (0, 2), u8)
    with pytest.raises(ArityMismatch):
        check_diagram("f_coprime", 3, u8)
    with pytest.raises(ArityMismatch):
        check_diagram("z_unknown", 0, u8)


def test_verdicts_serialize(u8):
    for v in verify_universe(u8, ["l_subnormal", "f_coprime"]):
        d = v.to_dict()
        json.dumps(d)
        if not v.via_lifting and v.counterexample is not None:
            assert set(d["counterexample"]) == {"f", "g", "i", "j"}


def test_non_injective_is_not_subnormal(u8):
    p = Parser(u8)
    v = check_diagram("l_subnormal", p.morphism("C4->>C2"), u8)
    assert not v.via_lifting and not v.via_oracle
    inc = p.morphism("C2>->D4")
    v = check_diagram("l_subnormal", inc, u8)
    assert v.via_lifting == is_subnormal(inc.image(), inc.target)
