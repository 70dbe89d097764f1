import json
from importlib import resources

import pytest

from orbigroupoid.cli import main
from orbigroupoid.errors import BadTable, GgxSyntaxError, UnresolvedName
from orbigroupoid.fixtures import c4refl, hex6
from orbigroupoid.ggx import (
    build_ggraph,
    doc_from_ggraph,
    parse_ggx,
    parse_group,
    print_ggx,
)


def fixture_text(name):
    return (resources.files("orbigroupoid") / "data" / f"{name}.ggx").read_text()


@pytest.mark.parametrize("name", ["c4refl", "hex6", "z4"])
def test_roundtrip_fixture_files(name):
    doc = parse_ggx(fixture_text(name))
    assert parse_ggx(print_ggx(doc)) == doc


def test_golden_files_match_programmatic_fixtures():
    for name, build in (("c4refl", c4refl), ("hex6", hex6)):
        X = build_ggraph(parse_ggx(fixture_text(name)))
        Y = build()
        assert X.graph.dart_sources == Y.graph.dart_sources
        assert X.graph.involution == Y.graph.involution
        assert X.vertex_action == Y.vertex_action
        assert X.dart_action == Y.dart_action


def test_empty_sections_are_valid():
    doc = parse_ggx("[group]\norder 1\nmul 0 0 = 0\n[vertices]\n[darts]\n[action]\n")
    X = build_ggraph(doc)
    assert X.graph.vertex_count == 0


def test_unknown_vertex_in_dart():
    text = "[group]\norder 1\nmul 0 0 = 0\n[vertices]\nA\n[darts]\nd: A -> B\n"
    with pytest.raises(UnresolvedName) as exc:
        parse_ggx(text)
    assert exc.value.name == "B"


def test_syntax_error_reports_line():
    text = "[group]\norder 2\nmul 0 0 0\n"
    with pytest.raises(GgxSyntaxError) as exc:
        parse_ggx(text)
    assert exc.value.line == 3


def test_incomplete_table_rejected():
    text = "[group]\norder 2\nmul 0 0 = 0\n"
    with pytest.raises(BadTable):
        parse_ggx(text)


def test_incomplete_action_rejected():
    text = fixture_text("c4refl").replace("t: W -> W\n", "")
    with pytest.raises(BadTable):
        build_ggraph(parse_ggx(text))


def test_generator_closure_mode():
    text = """
[group]
generators
s = (0 1)
c = (0 1 2)
[vertices]
[darts]
[action]
"""
    G = parse_group(parse_ggx(text))
    assert G.order == 6


def test_action_completed_from_generators(tmp_path):
    # Z/4 rotating a 4-cycle, action given only for the generator
    text = """
[group]
order 4
mul 0 0 = 0
mul 0 1 = 1
mul 0 2 = 2
mul 0 3 = 3
mul 1 0 = 1
mul 1 1 = 2
mul 1 2 = 3
mul 1 3 = 0
mul 2 0 = 2
mul 2 1 = 3
mul 2 2 = 0
mul 2 3 = 1
mul 3 0 = 3
mul 3 1 = 0
mul 3 2 = 1
mul 3 3 = 2
[vertices]
a
b
c
d
[darts]
e0: a -> b
e1: b -> c
e2: c -> d
e3: d -> a
[action]
g1: a -> b
g1: b -> c
g1: c -> d
g1: d -> a
g1: e0 -> e1
g1: e1 -> e2
g1: e2 -> e3
g1: e3 -> e0
"""
    X = build_ggraph(parse_ggx(text))
    assert X.group.order == 4
    assert X.vertex_action[2] == (2, 3, 0, 1)


def test_doc_from_ggraph_roundtrip_quotient():
    from orbigroupoid.ggraph import quotient_graph
    from orbigroupoid.groups import full_subgroup
    X = hex6()
    qr = quotient_graph(X, full_subgroup(X.group))
    doc = doc_from_ggraph(qr.space)
    Y = build_ggraph(doc)
    assert Y.graph.vertex_count == 3
    assert Y.group.order == 1


# -- command line ----------------------------------------------------------------

def test_cli_skeleton_text(capsys):
    assert main(["skeleton", "--fixture", "c4refl"]) == 0
    out = capsys.readouterr().out
    assert "3 isomorphism classes" in out
    assert "torsor rank 1" in out


def test_cli_skeleton_json_lines(capsys):
    assert main(["skeleton", "--fixture", "c4refl", "--format", "json-lines"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert all(r["kind"] == "hom" for r in records)
    assert all(list(r)[:4] == ["kind", "source", "target", "alpha"] for r in records)
    free_to_fixed = [r for r in records
                     if r["source"] == "C0" and r["target"] in ("C1", "C2")]
    assert [r.get("rank") for r in free_to_fixed] == [1, 1]
    between_fixed = [r for r in records
                     if r["source"] == "C1" and r["target"] == "C2"]
    assert between_fixed[0].get("empty") is True


def test_cli_move_quotient_writes_triangle(tmp_path, capsys):
    out = tmp_path / "tri.ggx"
    manifest = tmp_path / "manifest.json"
    assert main(["move", "--fixture", "hex6", "--move", "quotient:N=full",
                 "--out", str(out), "--manifest", str(manifest)]) == 0
    Y = build_ggraph(parse_ggx(out.read_text()))
    assert Y.graph.vertex_count == 3 and Y.group.order == 1
    data = json.loads(manifest.read_text())
    assert len(data["objects"]) == 6
    images = data["generator_images"]
    assert any(len(e["image"]["path"]) == 6 for e in images)  # winding doubled
    assert any(len(e["image"]["path"]) == 3 for e in images)  # twist to winding 1


def test_cli_move_induce_from_file(tmp_path):
    src = tmp_path / "c4refl.ggx"
    src.write_text(fixture_text("c4refl"))
    zfile = tmp_path / "z4.ggx"
    zfile.write_text(fixture_text("z4"))
    out = tmp_path / "induced.ggx"
    assert main(["move", str(src), "--move",
                 f"induce:G={zfile};via=e->g0,t->g2", "--out", str(out)]) == 0
    Y = build_ggraph(parse_ggx(out.read_text()))
    assert Y.graph.vertex_count == 8
    assert Y.group.order == 4


def test_cli_check_exit_codes(tmp_path, capsys):
    # Equivalent -> 0
    assert main(["check", "--fixture", "hex6", "--move", "quotient:N=full"]) == 0
    # certified and generic induction agree -> 0
    assert main(["check", "--fixture", "ind-z4"]) == 0
    assert main(["check", "--fixture", "ind-z4", "--strategy", "generic",
                 "--max-word-length", "8"]) == 0
    # NotEquivalent -> 1 with a kernel element report
    code = main(["check", "--fixture", "c4refl", "--move", "collapse"])
    out = capsys.readouterr().out
    assert code == 1
    assert "KernelElement" in out
    # Unknown -> 2
    assert main(["check", "--fixture", "hex6", "--move", "quotient:N=full",
                 "--strategy", "generic"]) == 2
    # precondition failure -> 3
    assert main(["check", "--fixture", "c4refl", "--move", "quotient:N=full"]) == 3


def test_cli_emit_witness(tmp_path, capsys):
    path = tmp_path / "witness.json"
    assert main(["check", "--fixture", "hex6", "--move", "quotient:N=full",
                 "--emit-witness", str(path)]) == 0
    witness = json.loads(path.read_text())
    assert witness["object_lifts"]
    gens = witness["aut_surjectivity"]
    # the winding-doubling images are recorded as re-checkable expressions
    assert any(len(e["generator"]["path"]) == 3 and len(e["preimage"]["path"]) == 3
               for e in gens)
    assert witness["aut_injectivity"][0]["certificate"] == "unique-lifting"


def test_cli_skeleton_hex6_single_class(capsys):
    assert main(["skeleton", "--fixture", "hex6"]) == 0
    assert "1 isomorphism classes" in capsys.readouterr().out


def test_cli_move_not_free_gives_hint(tmp_path, capsys):
    out = tmp_path / "never.ggx"
    code = main(["move", "--fixture", "c4refl", "--move", "quotient:N=full",
                 "--out", str(out)])
    err = capsys.readouterr().err
    assert code == 1
    assert "NotFree" in err and "vertex E" in err
    assert "hint" in err
    assert not out.exists()


def test_cli_subdivide(tmp_path):
    out = tmp_path / "sub.ggx"
    assert main(["subdivide", "--fixture", "c4refl", "--out", str(out)]) == 0
    Y = build_ggraph(parse_ggx(out.read_text()))
    assert Y.graph.vertex_count == 8


def test_cli_validate(capsys):
    assert main(["validate", "--fixture", "hex6"]) == 0
    assert "valid" in capsys.readouterr().out


def test_cli_error_reporting(tmp_path, capsys):
    bad = tmp_path / "bad.ggx"
    bad.write_text("[group]\norder 2\nmul 0 0 = 0\n")
    assert main(["validate", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "BadTable" in err
