import re
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import FIXTURES, e1_framework, fixture
from periodic_rigidity import (
    GainGraph,
    OrbitFramework,
    ParseError,
    ProjectionError,
    Torus,
    fundamental_cycles,
    generic_rank,
    is_infinitesimally_rigid,
    net_gain,
    periodic_equivalent,
    rank_graded_sparsity_check,
)
from periodic_rigidity.cli import main
from periodic_rigidity.graph import bfs_tree
from periodic_rigidity.orbitfile import OrbitGraphDocument, from_framework, parse, write
from periodic_rigidity.svg import render_svg

CORPUS = sorted(p.name for p in FIXTURES.glob("*.orbit"))


def _classes(svg):
    return {c: len(re.findall(f'class="{c}"', svg)) for c in ("cell", "joint", "bar", "arrow")}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# parsing


def test_minimal_document():
    doc = parse("d 2\nvertices 1\n")
    assert doc.d == 2 and doc.n == 1 and doc.edges == ()
    assert doc.graph.num_edges == 0


def test_e1_fixture_parses():
    doc = fixture("e1.orbit")
    assert doc.n == 4 and len(doc.edges) == 6
    assert doc.framework().positions == e1_framework().positions
    assert doc.graph == e1_framework().graph


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("d 2\nvertices 2\nedge 0 1 0 0 1\n", 3, 10, "dimension mismatch"),
        ("d 2\nvertices 2\nedge 0 5 0 0\n", 3, 8, "out of range"),
        ("d 2\nvertices 2\nlattice 1 2\nlattice 2 4\n", 3, None, "singular"),
        ("d 2\nvertices 1\npos 0 0.5 0\n", 3, 7, "float mode"),
        ("d 2\nvertices 1\nbogus 1\n", 3, 1, "unknown record"),
        ("d 2\nd 3\n", 2, 1, "duplicate"),
        ("vertices 1\n", None, None, "missing 'd'"),
        ("d 2\nvertices 2\npos 0 0 0\n", None, None, "positions missing"),
        ("d 2\nvertices 1\n  edge 0 x 0 0\n", 3, 10, "integer"),
    ],
)
def test_parse_errors(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert fragment in str(info.value)
    assert info.value.line == line
    assert info.value.column == column


def test_float_mode_accepts_decimals():
    doc = parse("d 2\nvertices 1\npos 0 0.5 1/4\n", float_mode=True)
    assert doc.positions == ((0.5, 0.25),)


def test_comments_and_blank_lines():
    doc = parse("# header\n\nd 1 # trailing\nvertices 2\nedge 1 0 3\n")
    assert doc.edges[0] == (1, 0, (3,))


@pytest.mark.parametrize("name", CORPUS)
def test_fixture_round_trip(name):
    text = (FIXTURES / name).read_text()
    doc = parse(text)
    canonical = write(doc)
    assert parse(canonical) == doc
    assert write(parse(canonical)) == canonical


@settings(max_examples=80, deadline=None)
@given(
    d=st.integers(1, 3),
    n=st.integers(1, 5),
    data=st.data(),
)
def test_write_parse_identity(d, n, data):
    edges = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.tuples(*[st.integers(-9, 9)] * d)),
        max_size=8,
    ))
    fr = st.fractions(min_value=-5, max_value=5, max_denominator=50)
    positions = data.draw(st.none() | st.tuples(*[st.tuples(*[fr] * d)] * n))
    lattice = data.draw(st.none() | st.just(tuple(tuple(Fraction(int(i == j) * (i + 2)) for j in range(d)) for i in range(d))))
    name = data.draw(st.none() | st.from_regex(r"[a-z][a-z0-9-]{0,8}", fullmatch=True))
    doc = OrbitGraphDocument(d, n, GainGraph(d, n, edges).edges, lattice, positions, name)
    assert parse(write(doc)) == doc


def test_from_framework_keeps_lattice():
    Fw = OrbitFramework(e1_framework().graph, Torus([[2, 0], [1, 1]]), e1_framework().positions)
    doc = parse(write(from_framework(Fw, name="sheared")))
    assert doc.framework() == Fw


# ---------------------------------------------------------------------------
# analyze


def test_analyze_e1(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "e1.orbit", "--machine")
    assert code == 0
    assert "rank=6\n" in out and "target=6\n" in out and "rigid=yes\n" in out


def test_analyze_e1_minus_edge(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "e1-minus-edge.orbit", "--machine")
    assert code == 1
    assert "flex_dim=1\n" in out and "rigid=no\n" in out


def test_analyze_double_bananas(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "double-bananas.orbit", "--machine", "--no-timing")
    assert code == 1
    for key in ("maxwell", "gain_tightness", "rank_graded"):
        assert re.search(rf"^count\.{key}=pass", out, re.M)
    assert "generically_rigid=no\n" in out


@pytest.mark.parametrize("name", CORPUS)
def test_exit_code_agrees_with_rigidity(capsys, name):
    doc = fixture(name)
    code, _, _ = run(capsys, "analyze", FIXTURES / name)
    if doc.has_positions:
        expected = is_infinitesimally_rigid(doc.framework())
    else:
        expected = generic_rank(doc.graph) == doc.d * doc.n - doc.d
    assert code == (0 if expected else 1)


def test_analyze_gates_skip(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "double-bananas.orbit", "--gates", "4,24", "--machine")
    assert "count.gain_tightness=skipped: gate\n" in out
    assert "count.rank_graded=skipped: gate\n" in out
    code, out, _ = run(capsys, "analyze", FIXTURES / "double-bananas.orbit", "--gates", "12,10", "--machine")
    assert "count.rank_graded=skipped: gate\n" in out
    assert "count.gain_tightness=pass" in out


def test_analyze_is_deterministic(capsys):
    args = ("analyze", FIXTURES / "triangle-parallel.orbit", "--seed", "5", "--no-timing")
    first = run(capsys, *args)
    assert run(capsys, *args) == first


def test_usage_and_parse_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "analyze")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "analyze", tmp_path / "missing.orbit")[0] == 2
    bad = tmp_path / "bad.orbit"
    bad.write_text("d 2\nvertices 2\nedge 0 1 0 0 1\n")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 3" in err
    assert run(capsys, "analyze", FIXTURES / "e1.orbit", "--gates", "x")[0] == 2


def test_degenerate_override(capsys, tmp_path):
    p = tmp_path / "clash.orbit"
    p.write_text("d 2\nvertices 2\npos 0 0 0\npos 1 1 0\nedge 0 1 0 0\nedge 0 1 0 1\n")
    assert run(capsys, "analyze", p)[0] == 2
    code, out, _ = run(capsys, "analyze", p, "--allow-degenerate", "--machine")
    assert code in (0, 1) and "rank=" in out


# ---------------------------------------------------------------------------
# tgain


def _table(out):
    return {int(v): tuple(int(x) for x in z.split()) for v, z in re.findall(r"^#\s+(\d+): (.*)$", out, re.M)}


def test_tgain_on_tree_zeroes_gains(capsys):
    code, out, _ = run(capsys, "tgain", FIXTURES / "path.orbit")
    assert code == 0
    doc = parse(out)
    assert all(e.gain == (0, 0) for e in doc.edges)


def test_tgain_parallel_triangle_potentials(capsys):
    code, out, _ = run(capsys, "tgain", FIXTURES / "triangle-parallel.orbit", "--root", "2", "--tree", "0,3")
    assert code == 0
    assert _table(out) == {2: (0, 0), 0: (1, -1), 1: (2, 1)}
    assert [e.gain for e in parse(out).edges] == [(0, 0), (2, 2), (2, 2), (0, 0)]


def test_tgain_twice_keeps_cycle_gains(capsys, tmp_path):
    src = fixture("e1.orbit")
    _, once, _ = run(capsys, "tgain", FIXTURES / "e1.orbit", "--root", "2")
    p = tmp_path / "once.orbit"
    p.write_text(once)
    _, twice, _ = run(capsys, "tgain", p, "--root", "1")
    g, h = src.graph, parse(twice).graph
    assert periodic_equivalent(g, h)
    for c in fundamental_cycles(g, bfs_tree(g)):
        assert net_gain(g, c) == net_gain(h, c)


def test_tgain_shifts_positions(capsys):
    _, out, _ = run(capsys, "tgain", FIXTURES / "e1.orbit")
    doc = parse(out)
    assert is_infinitesimally_rigid(doc.framework())
    assert doc.positions[2] == (Fraction(-2, 5), Fraction(4, 5))


def test_tgain_rejects_bad_tree(capsys):
    assert run(capsys, "tgain", FIXTURES / "e1.orbit", "--tree", "0,1")[0] == 2


# ---------------------------------------------------------------------------
# gen-gains


def test_gen_gains_examples(capsys, tmp_path):
    p = tmp_path / "path.orbit"
    p.write_text("d 1\nvertices 3\nedge 0 1 0\nedge 2 1 4\n")
    code, out, _ = run(capsys, "gen-gains", p)
    assert code == 0 and [e.gain for e in parse(out).edges] == [(1,), (1,)]

    code, out, _ = run(capsys, "gen-gains", FIXTURES / "e1.orbit")
    h = parse(out).graph
    assert code == 0 and generic_rank(h) == 6

    code, out, _ = run(capsys, "gen-gains", FIXTURES / "double-bananas.orbit")
    h = parse(out).graph
    assert code == 0 and generic_rank(h) == 21 and rank_graded_sparsity_check(h)


def test_gen_gains_change_dimension_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-gains", FIXTURES / "path.orbit", "--d", "1")
    doc = parse(out)
    assert code == 0 and doc.d == 1 and doc.positions is None
    code, _, err = run(capsys, "gen-gains", FIXTURES / "e1-minus-edge.orbit")
    assert code == 1 and "spanning trees" in err


# ---------------------------------------------------------------------------
# svg


def test_svg_empty_graph_is_cell_only():
    Fw = OrbitFramework(GainGraph(2, 0, []), Torus.unit(2), [])
    assert _classes(render_svg(Fw)) == {"cell": 1, "joint": 0, "bar": 0, "arrow": 0}


def test_svg_zigzag_window(capsys):
    code, out, _ = run(capsys, "svg", FIXTURES / "zigzag.orbit", "--window=-1..1,-1..1")
    assert code == 0
    assert _classes(out) == {"cell": 9, "joint": 18, "bar": 15, "arrow": 0}


def test_svg_flex_overlay(capsys):
    code, out, _ = run(capsys, "svg", FIXTURES / "e1-minus-edge.orbit", "--flex-overlay")
    assert code == 0
    assert _classes(out) == {"cell": 1, "joint": 4, "bar": 5, "arrow": 4}


def test_svg_is_deterministic(capsys, tmp_path):
    out = tmp_path / "a.svg"
    run(capsys, "svg", FIXTURES / "e1.orbit", "--window=0..1", "-o", out)
    first = out.read_text()
    run(capsys, "svg", FIXTURES / "e1.orbit", "--window=0..1", "-o", out)
    assert out.read_text() == first and first.startswith("<?xml")


def test_svg_high_dimension_needs_projection():
    g = GainGraph(4, 1, [(0, 0, (1, 0, 0, 0))])
    Fw = OrbitFramework(g, Torus.unit(4), [(0, 0, 0, 0)])
    with pytest.raises(ProjectionError):
        render_svg(Fw)
    assert _classes(render_svg(Fw, project=True))["bar"] == 1


def test_svg_window_errors(capsys):
    assert run(capsys, "svg", FIXTURES / "zigzag.orbit", "--window=0..1,0..1,0..1")[0] == 2
    assert run(capsys, "svg", FIXTURES / "triangle-parallel.orbit")[0] == 2  # no positions
    assert run(capsys, "svg", FIXTURES / "zigzag.orbit", "--window=oops")[0] == 2
