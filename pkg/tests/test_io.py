import pytest
from hypothesis import given, settings

from gentlequiver import FIXTURE_NAMES, fixture, parse, serialize
from gentlequiver.io import ParseError, dump, load

from conftest import branched_quivers


def test_single_arrow():
    A = parse("vertex 1\nvertex 2\narrow a: 1 -> 2\n")
    assert (A.num_vertices, A.num_arrows, len(A.relations)) == (2, 1, 0)


def test_comments_and_blank_lines():
    A = parse("# header\nquiver q\n\nvertex x   # trailing\nvertex y\narrow f: x -> y\n")
    assert A.name == "q" and A.num_arrows == 1


def test_non_composable_names_both_arrows():
    text = "vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 3 -> 1\nrelation a b\n"
    with pytest.raises(ParseError, match=r"a b.*not composable") as e:
        parse(text)
    assert e.value.line == 6


@pytest.mark.parametrize("text, line, pattern", [
    ("vertex 1\nvertex 1\n", 2, "duplicate vertex"),
    ("vertex 1\narrow a: 1 -> 2\n", 2, "undeclared vertex"),
    ("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n", 4, "duplicate arrow"),
    ("vertex 1\nrelation a b\n", 2, "unknown arrow"),
    ("vertex 1\nedge a\n", 2, "unknown keyword"),
    ("vertex 1\narrow a 1 2\n", 2, "expected 'arrow"),
])
def test_errors_have_locations(text, line, pattern):
    with pytest.raises(ParseError, match=pattern) as e:
        parse(text, source="f.quiver")
    assert e.value.line == line
    assert str(e.value).startswith(f"f.quiver:{line}:")


@given(branched_quivers())
@settings(max_examples=30, deadline=None)
def test_roundtrip(mA):
    _, A = mA
    text = serialize(A)
    assert parse(text) == A
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_roundtrip(name):
    A = fixture(name)
    assert serialize(parse(serialize(A))) == serialize(A)


def test_load_uses_stem(tmp_path):
    A = fixture("ex7_8_A").with_name("")
    path = tmp_path / "mine.quiver"
    dump(A, path)
    assert load(path).name == "mine"
