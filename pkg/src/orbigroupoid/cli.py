"""Command-line surface: skeleton reports, Morita moves, equivalence checks.

Exit codes for ``check``: 0 Equivalent, 1 NotEquivalent, 2 Unknown, 3 error.
Other commands exit 0 on success, 1 on error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .equivalence import (
    CERTIFIED,
    GENERIC,
    Equivalent,
    NotEquivalent,
    SearchBounds,
    Unknown,
    weak_equivalence,
)
from .errors import OrbigroupoidError
from .ggraph import GGraph, barycentric_subdivision
from .ggx import build_ggraph, doc_from_ggraph, parse_ggx, parse_group, print_ggx
from .groups import generated_subgroup, full_subgroup
from .morita import (
    InducedFunctor,
    collapse_map,
    induced_functor,
    induction_move,
    quotient_move,
)
from .pi import PiArrow, PiCategory, PiObject


def _load_space(args) -> GGraph:
    if args.fixture:
        if args.fixture == "c4refl":
            return fixtures.c4refl()
        if args.fixture == "hex6":
            return fixtures.hex6()
        if args.fixture == "ind-z4":
            # the induced 8-vertex Z/4-space; move/check treat the fixture as
            # source space + embedding instead (see _resolve_functor)
            from .ggraph import induced_graph
            sc = fixtures.ind_z4()
            return induced_graph(sc.source, sc.embedding).space
        raise OrbigroupoidError(f"unknown fixture {args.fixture!r}; "
                                f"choose from {fixtures.FIXTURE_NAMES}")
    if not args.file:
        raise OrbigroupoidError("give a .ggx file or --fixture NAME")
    return build_ggraph(parse_ggx(Path(args.file).read_text(encoding="utf-8")))


def _source_space(args) -> GGraph:
    if args.fixture == "ind-z4":
        return fixtures.ind_z4().source
    return _load_space(args)


def _parse_move_spec(spec: str):
    if spec == "collapse":
        return ("collapse",)
    if spec.startswith("quotient:"):
        body = spec[len("quotient:"):]
        if not body.startswith("N="):
            raise OrbigroupoidError("quotient move spec is 'quotient:N=full' or "
                                    "'quotient:N=name1,name2'")
        return ("quotient", body[2:])
    if spec == "induce:fixture":
        return ("induce-fixture",)
    if spec.startswith("induce:"):
        body = spec[len("induce:"):]
        parts = dict(p.split("=", 1) for p in body.split(";") if "=" in p)
        if "G" not in parts or "via" not in parts:
            raise OrbigroupoidError("induction move spec is "
                                    "'induce:G=FILE;via=a->b,c->d'")
        return ("induce", parts["G"], parts["via"])
    raise OrbigroupoidError(f"unknown move spec {spec!r}")


def _resolve_functor(args) -> InducedFunctor:
    spec = args.move
    if args.fixture == "ind-z4" and spec in (None, "induce:fixture"):
        sc = fixtures.ind_z4()
        return induction_move(sc.source, sc.embedding).functor
    if spec is None:
        raise OrbigroupoidError("this command needs --move (or --fixture ind-z4)")
    X = _source_space(args)
    parsed = _parse_move_spec(spec)
    if parsed[0] == "collapse":
        # the standard negative control: the underlying graph with the trivial
        # group, constantly mapped to a point
        from .ggraph import trivial_action_ggraph
        return induced_functor(collapse_map(trivial_action_ggraph(X.graph)))
    if parsed[0] == "quotient":
        return quotient_move(X, _subgroup_from_names(X, parsed[1])).functor
    if parsed[0] == "induce-fixture":
        raise OrbigroupoidError("induce:fixture is only available with --fixture ind-z4")
    _, gfile, via = parsed
    G = parse_group(parse_ggx(Path(gfile).read_text(encoding="utf-8")))
    g_names = {n: i for i, n in enumerate(G.labels)}
    l_names = {n: i for i, n in enumerate(X.group.labels)}
    mapping = [None] * X.group.order
    for pair in via.split(","):
        if "->" not in pair:
            raise OrbigroupoidError("embedding entries look like 'srcname->dstname'")
        a, b = (s.strip() for s in pair.split("->", 1))
        if a not in l_names:
            raise OrbigroupoidError(f"unknown source element {a!r}")
        if b not in g_names:
            raise OrbigroupoidError(f"unknown target element {b!r}")
        mapping[l_names[a]] = g_names[b]
    if any(v is None for v in mapping):
        missing = [X.group.label(i) for i, v in enumerate(mapping) if v is None]
        raise OrbigroupoidError("embedding must map every source element; missing "
                                + ", ".join(missing))
    from .groups import embedding_hom
    return induction_move(X, embedding_hom(X.group, G, mapping)).functor


def _subgroup_from_names(X: GGraph, names: str):
    if names == "full":
        return full_subgroup(X.group)
    lookup = {n: i for i, n in enumerate(X.group.labels)}
    gens = []
    for name in names.split(","):
        name = name.strip()
        if name not in lookup:
            raise OrbigroupoidError(f"unknown group element {name!r}")
        gens.append(lookup[name])
    return generated_subgroup(X.group, gens)


# -- descriptions -------------------------------------------------------------

def describe_object(cat: PiCategory, o: PiObject) -> dict:
    return {
        "subgroup": [cat.group.label(g) for g in o.subgroup.elements],
        "vertex": cat.space.graph.vertex_label(o.vertex),
    }


def describe_arrow(cat: PiCategory, f: PiArrow) -> dict:
    return {
        "source": describe_object(cat, f.source),
        "target": describe_object(cat, f.target),
        "alpha": f.alpha.label(),
        "path": [cat.space.graph.dart_label(d) for d in f.path.darts],
    }


def _witness_json(F: InducedFunctor, witness) -> dict:
    src, tgt = F.source, F.target
    return {
        "object_lifts": [
            {
                "target": describe_object(tgt, l.target_representative),
                "source": describe_object(src, l.source_object),
                "connecting": describe_arrow(tgt, l.connecting),
            }
            for l in witness.object_lifts
        ],
        "aut_surjectivity": [
            {
                "object": describe_object(src, e.obj),
                "generator": describe_arrow(tgt, e.generator),
                "preimage": describe_arrow(src, e.preimage),
            }
            for e in witness.aut_surjectivity
        ],
        "aut_injectivity": [
            {
                "object": describe_object(src, e.obj),
                "certificate": e.certificate,
            }
            for e in witness.aut_injectivity
        ],
    }


def _counterexample_json(F: InducedFunctor, ce) -> dict:
    from .equivalence import KernelElement, MissedArrow, MissedObject
    if isinstance(ce, MissedObject):
        return {"kind": "MissedObject",
                "target_object": describe_object(F.target, ce.target_object)}
    if isinstance(ce, MissedArrow):
        return {"kind": "MissedArrow",
                "source_pair": [describe_object(F.source, ce.source_object),
                                describe_object(F.source, ce.source_target)],
                "arrow": describe_arrow(F.target, ce.arrow),
                "reason": ce.reason}
    if isinstance(ce, KernelElement):
        return {"kind": "KernelElement",
                "arrow": describe_arrow(F.source, ce.arrow)}
    return {"kind": type(ce).__name__}


# -- commands ------------------------------------------------------------------

def cmd_skeleton(args) -> int:
    X = _load_space(args)
    cat = PiCategory(X)
    sk = cat.skeleton()
    if args.format == "json-lines":
        for i in range(len(sk.classes)):
            for j in range(len(sk.classes)):
                for alpha, rank in sk.hom_summary[(i, j)]:
                    record = {"kind": "hom", "source": f"C{i}", "target": f"C{j}",
                              "alpha": alpha.label()}
                    if rank is None:
                        record["empty"] = True
                    else:
                        record["rank"] = rank
                    print(json.dumps(record))
        return 0
    print(f"{len(sk.classes)} isomorphism classes")
    for i, cls in enumerate(sk.classes):
        rep = cls.representative
        print(f"C{i}: representative (G/{rep.subgroup.label()}, "
              f"{X.graph.vertex_label(rep.vertex)}), {len(cls.members)} objects")
        aut = cat.aut_group(rep)
        gens = [f"{g.alpha.label()} with path length {len(g.path.darts)}"
                for g in aut.generators]
        print(f"  aut: {len(aut.admissible)} coset torsor(s) over a rank-"
              f"{aut.basis.rank} free group; generators: "
              + ("; ".join(gens) if gens else "none (trivial)"))
    for i in range(len(sk.classes)):
        for j in range(len(sk.classes)):
            parts = sk.hom_summary[(i, j)]
            if not parts:
                print(f"hom C{i} -> C{j}: no orbit arrows")
                continue
            desc = ", ".join(
                f"{alpha.label()}: " + ("empty" if rank is None else f"torsor rank {rank}")
                for alpha, rank in parts)
            print(f"hom C{i} -> C{j}: {desc}")
    return 0


def cmd_move(args) -> int:
    F = _resolve_functor(args)
    if args.move and args.move == "collapse":
        raise OrbigroupoidError("collapse is a check-only control, not a move")
    out = Path(args.out)
    out.write_text(print_ggx(doc_from_ggraph(F.target.space)), encoding="utf-8")
    print(f"wrote {out}")
    if args.manifest:
        manifest = {
            "objects": [
                {
                    "source": describe_object(F.source, o),
                    "target": describe_object(F.target, F.apply_object(o)),
                }
                for o in F.source.objects()
            ],
            "generator_images": [],
        }
        for cls in F.source.skeleton().classes:
            rep = cls.representative
            aut = F.source.aut_group(rep)
            for g in aut.generators:
                manifest["generator_images"].append({
                    "object": describe_object(F.source, rep),
                    "generator": describe_arrow(F.source, g),
                    "image": describe_arrow(F.target, F.apply_arrow(g)),
                })
        Path(args.manifest).write_text(json.dumps(manifest, indent=2),
                                       encoding="utf-8")
        print(f"wrote {args.manifest}")
    return 0


def cmd_check(args) -> int:
    F = _resolve_functor(args)
    from .morita import GeneralMap
    if args.strategy is None:
        # certified needs move provenance; plain equivariant maps get generic
        strategy = GENERIC if isinstance(F.provenance, GeneralMap) else CERTIFIED
    else:
        strategy = CERTIFIED if args.strategy == "certified" else GENERIC
    bounds = SearchBounds(args.max_word_length)
    verdict = weak_equivalence(F, strategy, bounds)
    if isinstance(verdict, Equivalent):
        print("verdict: Equivalent")
        if args.emit_witness:
            Path(args.emit_witness).write_text(
                json.dumps(_witness_json(F, verdict.witness), indent=2),
                encoding="utf-8")
            print(f"wrote witness {args.emit_witness}")
        return 0
    if isinstance(verdict, NotEquivalent):
        print("verdict: NotEquivalent")
        print(json.dumps(_counterexample_json(F, verdict.counterexample), indent=2))
        return 1
    assert isinstance(verdict, Unknown)
    print(f"verdict: Unknown (word length bound {bounds.word_length})")
    print(f"reason: {verdict.reason}")
    return 2


def cmd_subdivide(args) -> int:
    X = _load_space(args)
    Y = barycentric_subdivision(X)
    Path(args.out).write_text(print_ggx(doc_from_ggraph(Y)), encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def cmd_validate(args) -> int:
    X = _load_space(args)
    print(f"valid: group order {X.group.order}, {X.graph.vertex_count} vertices, "
          f"{X.graph.dart_count // 2} edges")
    return 0


def _add_input(p):
    p.add_argument("file", nargs="?", help=".ggx input file")
    p.add_argument("--fixture", choices=fixtures.FIXTURE_NAMES,
                   help="use a built-in fixture instead of a file")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="orbigroupoid",
        description="equivariant fundamental categories of finite group actions "
                    "on graphs: skeletons, Morita moves, equivalence certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("skeleton", help="isomorphism classes and hom shapes")
    _add_input(p)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(fn=cmd_skeleton)

    p = sub.add_parser("move", help="apply a Morita move, write the result")
    _add_input(p)
    p.add_argument("--move", help="quotient:N=full | quotient:N=a,b | "
                                  "induce:G=FILE;via=a->b,... | induce:fixture")
    p.add_argument("--out", required=True, help="output .ggx path")
    p.add_argument("--manifest", help="write a functor manifest (JSON) here")
    p.set_defaults(fn=cmd_move)

    p = sub.add_parser("check", help="certify whether the induced functor is a "
                                     "weak equivalence (exit 0/1/2)")
    _add_input(p)
    p.add_argument("--move", help="move spec as for 'move', or 'collapse'")
    p.add_argument("--strategy", choices=("certified", "generic"),
                   default=None,
                   help="default: certified for moves, generic otherwise")
    p.add_argument("--max-word-length", type=int, default=8)
    p.add_argument("--emit-witness", help="dump the re-checkable certificate here")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("subdivide", help="barycentric subdivision (removes edge "
                                         "inversions)")
    _add_input(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_subdivide)

    p = sub.add_parser("validate", help="parse and validate a G-graph")
    _add_input(p)
    p.set_defaults(fn=cmd_validate)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except OrbigroupoidError as exc:
        print(f"error {type(exc).__name__}: {exc}", file=sys.stderr)
        from .errors import NotFree, NotNormal
        if isinstance(exc, NotFree):
            print("hint: quotient moves need a subgroup with no fixed vertices "
                  "or darts; inspect stabilizers with 'skeleton'", file=sys.stderr)
        if isinstance(exc, NotNormal):
            print("hint: quotient moves need a normal subgroup; try the "
                  "induction move instead", file=sys.stderr)
        return 3 if args.command == "check" else 1


if __name__ == "__main__":
    sys.exit(main())
