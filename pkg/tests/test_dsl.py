import pytest
from hypothesis import given

from vdwtif.dsl import ParseError, parse, parse_set, unparse
from vdwtif.epset import EMPTY, NAT, complement, finite, interval, res, shift_left

from conftest import epsets


def test_examples():
    s = parse_set("res(0,3) << 1")
    assert [n for n in range(1, 21) if s.member(n)] == [2, 5, 8, 11, 14, 17, 20]
    assert parse_set("!N") == EMPTY
    both = parse_set("res(0,2) & res(0,3)")
    assert both == res(0, 6)
    assert [n for n in range(1, 61) if both.member(n)] == list(range(6, 61, 6))


def test_atoms():
    assert parse_set("N") == NAT
    assert parse_set("set{5,1,3}") == finite([1, 3, 5])
    assert parse_set("interval(2,4)") == interval(2, 4)
    assert parse_set("ep(a=2;w=01;per=10)") == complement(finite([1])) - finite([4]) - res(0, 2) | finite([2])


def test_precedence_and_associativity():
    # equal precedence, left to right
    assert parse_set("N \\ res(0,2) | res(0,2)") == NAT
    assert parse_set("N \\ (res(0,2) | res(0,2))") == res(1, 2)
    # ! and << bind tighter than binary operators
    assert parse_set("!res(0,2) & N") == res(1, 2)
    assert parse_set("!res(0,2) << 1") == complement(shift_left(res(0, 2), 1))
    assert parse_set("res(0,3) << 1 << 1") == shift_left(res(0, 3), 2)
    assert parse_set(" ( res(1,2) )   <<  1 ") == res(0, 2)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("res(0,0)", 7),
        ("res(0,3", 7),
        ("set{}", 4),
        ("N |", 3),
        ("N N", 2),
        ("res(1,2) << x", 12),
        ("", 0),
        ("foo", 0),
    ],
)
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos


def test_semantic_errors():
    with pytest.raises(ParseError):
        parse("interval(5,3)")
    with pytest.raises(ParseError):
        parse("set{0,1}")
    with pytest.raises(ValueError):
        parse_set("ep(a=3;w=01;per=1)")


@given(epsets())
def test_ep_round_trip(s):
    assert parse_set(s.to_text()) == s
    assert unparse(parse(s.to_text())) == s.to_text()


def test_unparse_round_trip():
    for text in (
        "res(0,3) << 1",
        "!N",
        "N \\ (res(0,2) | set{1,2})",
        "(!res(0,2)) << 2 & interval(1,9)",
        "!(res(0,2) & res(0,3)) << 1",
    ):
        node = parse(text)
        assert parse(unparse(node)) == node
        assert parse_set(unparse(node)) == parse_set(text)
