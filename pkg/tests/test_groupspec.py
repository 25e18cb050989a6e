import pytest

from fusionring.groupspec import Atom, SpecParseError, parse_spec


def test_simple_atoms():
    assert parse_spec("S3").factors == (Atom("S", n=3),)
    assert parse_spec("Q8").factors == (Atom("Q8", n=8),)
    assert [a.family for a in parse_spec("C2xD4xQ8").factors] == ["C", "D", "Q8"]


def test_perm_atom():
    plan = parse_spec("perm:4:(0,1);(1,2,3)")
    (atom,) = plan.factors
    assert atom.family == "perm" and atom.degree == 4
    assert atom.cycles == ((0, 1), (1, 2, 3))


@pytest.mark.parametrize("text,pos", [
    ("", 0),
    ("C2x", 3),
    ("X5", 0),
    ("C", 1),
    ("C0", 1),
    ("perm:3:(0,3)", 10),
    ("perm:3:(0,0)", 10),
    ("perm:3:(0)", 9),
    ("S3 junk", 2),
])
def test_errors_carry_position(text, pos):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.position == pos


def test_out_of_range_integer():
    with pytest.raises(SpecParseError):
        parse_spec("C100001")
