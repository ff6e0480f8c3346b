import pytest

from liftgroups.errors import ParseError
from liftgroups.groups import Cyclic, FiniteGroup, Metacyclic, build_group, is_isomorphic
from liftgroups.homs import classify_hom, count_homs
from liftgroups.parsing import Parser, parse_presentation, parse_spec, parse_spec_list
from liftgroups.presented import F2, TRIVIAL, Z, PresentedGroup


@pytest.mark.parametrize("text,order", [("C5", 5), ("S4", 24), ("A5", 60), ("D4", 8), ("Q8", 8),
                                        ("V4", 4), ("Dic3", 12), ("M(7,3,2)", 21), ("C2xC2xC2", 8),
                                        ("(C2xC3)xC2", 12), ("D4xC2", 16)])
def test_finite_groups(text, order):
    g = Parser().group(text)
    assert isinstance(g, FiniteGroup) and g.order == order


def test_presented_groups():
    p = Parser()
    assert p.group("Z") is Z and p.group("F2") is F2 and p.group("0") is TRIVIAL
    zp = p.group("Z/5")
    assert isinstance(zp, PresentedGroup) and zp.relators == ((1,) * 5,)


def test_presentation_syntax():
    g = parse_presentation("<a,b | a^2, b^3, (ab)^2>")
    assert g.arity == 2 and g.relators == ((1, 1), (2, 2, 2), (1, 2, 1, 2))
    h = parse_presentation("<x,y | [x,y], x^-2 = y>")
    assert h.relators == ((1, 2, -1, -2), (-1, -1, -2))
    assert count_homs(parse_presentation("<a|>"), build_group(Cyclic(4))) == 4
    for bad in ("<a,a|a>", "<a|b^2>", "a,b|a", "<a|(a>"):
        with pytest.raises(ParseError):
            parse_presentation(bad)


def test_memo_returns_same_object():
    p = Parser()
    assert p.group("S3") is p.group(" S3 ")
    ident = p.morphism("S3->S3")
    assert ident.source is ident.target


def test_morphism_forms():
    p = Parser()
    inc = p.morphism("C3>->S3")
    assert classify_hom(inc)["injective"]
    quo = p.morphism("S4->>S3")
    assert classify_hom(quo)["surjective"] and len(quo.kernel()) == 4
    sign = p.morphism("S4->>C2:sign")
    assert len(sign.kernel()) == 12
    diag = p.morphism("diag:C3")
    assert diag.target.order == 9 and classify_hom(diag)["injective"]
    assert p.morphism("F2->Z2ab").label == "abelianization"
    assert p.morphism("0->S3").source is TRIVIAL
    assert p.morphism("S3->0").target.order == 1
    assert p.morphism("Z->C4:1").gen_images == (1,)
    assert p.morphism("C4->C2:triv").is_trivial
    assert p.morphism("<a,b|a^2,b^3,(ab)^2>->S3:5").source.arity == 2


@pytest.mark.parametrize("bad", ["C0", "S1", "Q9", "C2xZ", ""])
def test_group_parse_errors(bad):
    with pytest.raises(ParseError):
        Parser().group(bad)


@pytest.mark.parametrize("bad", ["C3->S3", "C4>->C2", "S3->>C3", "C2->C4:99", "C3->>C3:sign", "S3"])
def test_morphism_parse_errors(bad):
    with pytest.raises(ParseError):
        Parser().morphism(bad)


def test_universe_names(u8):
    p = Parser(u8)
    assert p.group("g3") is u8.groups[3]
    assert p.group(u8.groups[5].name) is not None


def test_spec_parser():
    assert parse_spec("M(7,3,2)") == Metacyclic(7, 3, 2)
    assert parse_spec("C2xC3").order == 6
    specs = parse_spec_list("C4, S3, M(3,4,2), D4xC2")
    assert [s.name for s in specs] == ["C4", "S3", "M(3,4,2)", "D4xC2"]
    assert is_isomorphic(build_group(specs[2]), Parser().group("Dic3"))
    with pytest.raises(ParseError):
        parse_spec("Z")
