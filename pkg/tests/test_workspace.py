import pytest

from artinlab.workspace import WorkspaceError, check_workspace, parse_workspace

from conftest import CORPUS_NAMES, corpus, corpus_path

A2_TEXT = """\
field: GF(2)
vertices: 1 2
arrows:
  a: 1 -> 2
relations:
U: regular
"""


def test_aba_file_parses():
    ws = corpus("aba_gf2")
    assert ws.vertices == ["1", "2", "3"]
    assert len(ws.arrows) == 3
    assert ws.algebra().dim == 11


def test_empty_relations_give_hereditary_algebra():
    ws = parse_workspace(A2_TEXT)
    assert ws.relations == []
    A = check_workspace(ws)
    assert A.dim == 3


def test_malformed_arrow_reports_line():
    text = A2_TEXT.replace("a: 1 -> 2", "a: 1 ->")
    with pytest.raises(WorkspaceError) as err:
        parse_workspace(text)
    assert err.value.line == 4
    assert str(err.value).startswith("line 4:")


@pytest.mark.parametrize(
    "text, line",
    [
        (A2_TEXT + "colour: blue\n", 7),
        (A2_TEXT.replace("GF(2)", "GF(4)"), 1),
        (A2_TEXT + "field: Q\n", 7),
        (A2_TEXT.replace("relations:\n", "relations:\n  a*b\n"), 6),
    ],
)
def test_rejected_inputs(text, line):
    with pytest.raises(WorkspaceError) as err:
        parse_workspace(text)
    assert err.value.line == line


def test_module_shape_checked():
    text = A2_TEXT.replace("U: regular", "module M:\n  dim: 1 1\n  arrow a: 1 0\nU: regular")
    with pytest.raises(WorkspaceError):
        parse_workspace(text)


def test_non_admissible_relations_surface():
    text = """\
field: GF(2)
nilpotency: 3
vertices: 1
arrows:
  x: 1 -> 1
relations:
U: regular
"""
    ws = parse_workspace(text)
    with pytest.raises(WorkspaceError, match="not admissible"):
        check_workspace(ws)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_round_trip(name):
    with open(corpus_path(name), encoding="utf-8") as fh:
        ws = parse_workspace(fh.read())
    again = parse_workspace(ws.serialize())
    assert again == ws
    assert again.serialize() == ws.serialize()


def test_coefficients_in_relations():
    text = """\
field: Q
vertices: 1 2
arrows:
  a: 1 -> 2
  b: 1 -> 2
  x: 2 -> 2
relations:
  x*a - 1/2*x*b
  x*x
U: regular
"""
    ws = parse_workspace(text)
    assert parse_workspace(ws.serialize()) == ws
    assert check_workspace(ws).dim == 2 + 2 + 1 + 1
