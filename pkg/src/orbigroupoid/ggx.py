"""The .ggx file format: line-oriented descriptions of G-graphs.

Sections are introduced by ``[group]``, ``[vertices]``, ``[darts]``,
``[action]``; ``#`` starts a comment. The group is either a full
multiplication table (``order N`` plus ``mul i j = k`` rows, with optional
``name i = ident`` aliases) or ``generators`` followed by permutation words
in cycle notation, which the parser closes into a table. Dart lines
``name: src -> dst`` auto-create the reverse dart ``name~``; action lines
``g: v -> w`` / ``g: d -> d'`` may cover just a generating set and are
completed by composition. All names are ASCII identifiers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BadTable, GgxSyntaxError, UnresolvedName
from .ggraph import GGraph, serre_graph, validate_ggraph
from .groups import FiniteGroup, group_from_table

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_SECTIONS = ("group", "vertices", "darts", "action")


@dataclass(frozen=True)
class GgxDocument:
    group_mode: str                                # "table" | "generators"
    order: int                                     # 0 in generators mode
    table: tuple[tuple[int, ...], ...]             # () in generators mode
    element_names: tuple[str, ...]                 # per element (table mode)
    generator_perms: tuple[tuple[str, tuple[int, ...]], ...]
    vertices: tuple[str, ...]
    darts: tuple[tuple[str, str, str], ...]        # (name, src, dst)
    action: tuple[tuple[str, str, str], ...]       # (element, from, to), file order


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        yield lineno, line


def _expect_ident(name: str, lineno: int, what: str) -> str:
    if not _IDENT.match(name):
        raise GgxSyntaxError(lineno, 1, f"ASCII identifier for {what}, got {name!r}")
    return name


def _parse_cycles(text: str, lineno: int) -> tuple[int, ...]:
    """Cycle notation like (0 1)(2 3) over points 0..max; fixed points implied."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)|\s", "", text):
        raise GgxSyntaxError(lineno, 1, "permutation in cycle notation, e.g. (0 1)(2 3)")
    moved = []
    for cyc in cycles:
        pts = [int(p) for p in cyc.split()]
        if len(pts) < 2 or len(set(pts)) != len(pts):
            raise GgxSyntaxError(lineno, 1, "cycles of at least two distinct points")
        moved.append(pts)
    degree = max(p for cyc in moved for p in cyc) + 1
    perm = list(range(degree))
    for cyc in moved:
        for i, p in enumerate(cyc):
            perm[p] = cyc[(i + 1) % len(cyc)]
    return tuple(perm)


def parse_ggx(text: str) -> GgxDocument:
    section = None
    order = None
    mul_rows: dict[tuple[int, int], int] = {}
    names: dict[int, str] = {}
    gen_mode = False
    gen_perms: list[tuple[str, tuple[int, ...]]] = []
    vertices: list[str] = []
    darts: list[tuple[str, str, str]] = []
    action: list[tuple[str, str, str]] = []

    for lineno, line in _tokenize(text):
        stripped = line.strip()
        m = re.match(r"\[(\w+)\]$", stripped)
        if m:
            if m.group(1) not in _SECTIONS:
                raise GgxSyntaxError(lineno, 1, f"one of the sections {_SECTIONS}")
            section = m.group(1)
            continue
        if section is None:
            raise GgxSyntaxError(lineno, 1, "a section header like [group]")
        if section == "group":
            if stripped == "generators":
                gen_mode = True
                continue
            m = re.match(r"order\s+(\d+)$", stripped)
            if m:
                order = int(m.group(1))
                continue
            m = re.match(r"mul\s+(\d+)\s+(\d+)\s*=\s*(\d+)$", stripped)
            if m:
                i, j, k = (int(x) for x in m.groups())
                mul_rows[(i, j)] = k
                continue
            m = re.match(r"name\s+(\d+)\s*=\s*(\S+)$", stripped)
            if m:
                idx = int(m.group(1))
                names[idx] = _expect_ident(m.group(2), lineno, "element name")
                continue
            m = re.match(r"(\S+)\s*=\s*(.+)$", stripped)
            if m and gen_mode:
                name = _expect_ident(m.group(1), lineno, "generator name")
                gen_perms.append((name, _parse_cycles(m.group(2), lineno)))
                continue
            raise GgxSyntaxError(lineno, 1,
                                 "'order N', 'mul i j = k', 'name i = ident', or 'generators'")
        elif section == "vertices":
            vertices.append(_expect_ident(stripped, lineno, "vertex name"))
        elif section == "darts":
            m = re.match(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", stripped)
            if not m:
                raise GgxSyntaxError(lineno, 1, "'name: src -> dst'")
            name = _expect_ident(m.group(1), lineno, "dart name")
            darts.append((name, m.group(2), m.group(3)))
        elif section == "action":
            m = re.match(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", stripped)
            if not m:
                raise GgxSyntaxError(lineno, 1, "'element: from -> to'")
            action.append((m.group(1), m.group(2), m.group(3)))

    if gen_mode:
        if order is not None or mul_rows:
            raise BadTable("a [group] section is either a table or generators, not both")
        doc = GgxDocument("generators", 0, (), (), tuple(gen_perms),
                          tuple(vertices), tuple(darts), tuple(action))
        _resolve(doc)  # validate references early
        return doc

    if order is None:
        raise BadTable("[group] needs 'order N' (or 'generators')")
    table = []
    for i in range(order):
        row = []
        for j in range(order):
            if (i, j) not in mul_rows:
                raise BadTable(f"missing multiplication row 'mul {i} {j} = ...'")
            row.append(mul_rows[(i, j)])
        table.append(tuple(row))
    if len(mul_rows) != order * order:
        raise BadTable("multiplication rows outside the declared order")
    elem_names = []
    for i in range(order):
        elem_names.append(names.get(i, f"g{i}"))
    if len(set(elem_names)) != order:
        raise BadTable("element names must be distinct")
    doc = GgxDocument("table", order, tuple(table), tuple(elem_names), (),
                      tuple(vertices), tuple(darts), tuple(action))
    _resolve(doc)
    return doc


def print_ggx(doc: GgxDocument) -> str:
    out = ["[group]"]
    if doc.group_mode == "table":
        out.append(f"order {doc.order}")
        for i, name in enumerate(doc.element_names):
            if name != f"g{i}":
                out.append(f"name {i} = {name}")
        for i in range(doc.order):
            for j in range(doc.order):
                out.append(f"mul {i} {j} = {doc.table[i][j]}")
    else:
        out.append("generators")
        for name, perm in doc.generator_perms:
            cycles = _perm_to_cycles(perm)
            out.append(f"{name} = {cycles}")
    out.append("")
    out.append("[vertices]")
    out.extend(doc.vertices)
    out.append("")
    out.append("[darts]")
    for name, src, dst in doc.darts:
        out.append(f"{name}: {src} -> {dst}")
    out.append("")
    out.append("[action]")
    for g, a, b in doc.action:
        out.append(f"{g}: {a} -> {b}")
    return "\n".join(out) + "\n"


def _perm_to_cycles(perm) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p) for p in cyc) + ")")
    return "".join(parts) or "()"


def _close_permutations(gen_perms):
    """Close generator permutations into a group; identity first, the rest in
    lexicographic order. Returns (table, element names, name -> index)."""
    if not gen_perms:
        raise BadTable("generators mode needs at least one generator")
    degree = max(len(p) for _, p in gen_perms)
    def pad(p):
        return tuple(p) + tuple(range(len(p), degree))
    gens = [(name, pad(p)) for name, p in gen_perms]
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for _, q in gens:
                pq = tuple(p[q[i]] for i in range(degree))
                if pq not in elements:
                    elements.add(pq)
                    new.append(pq)
        frontier = new
    ordered = [identity] + sorted(elements - {identity})
    index = {p: i for i, p in enumerate(ordered)}
    table = [
        [index[tuple(p[q[i]] for i in range(degree))] for q in ordered]
        for p in ordered
    ]
    names = {}
    for name, p in gens:
        names[name] = index[p]
    elem_names = []
    used = {}
    for i, p in enumerate(ordered):
        label = next((n for n, idx in names.items() if idx == i), f"g{i}")
        elem_names.append(label)
        used[label] = i
    return table, elem_names, used


class _Resolved:
    def __init__(self):
        self.group: FiniteGroup | None = None
        self.name_to_element: dict[str, int] = {}
        self.vertex_index: dict[str, int] = {}
        self.dart_index: dict[str, int] = {}
        self.graph = None


def _resolve(doc: GgxDocument) -> _Resolved:
    res = _Resolved()
    if doc.group_mode == "table":
        group = group_from_table(doc.order, doc.table, doc.element_names)
        res.name_to_element = {n: i for i, n in enumerate(group.labels)}
    else:
        table, elem_names, _ = _close_permutations(doc.generator_perms)
        group = group_from_table(len(table), table, elem_names)
        res.name_to_element = {n: i for i, n in enumerate(group.labels)}
    res.group = group

    for name in doc.vertices:
        if name in res.vertex_index:
            raise BadTable(f"duplicate vertex name {name!r}")
        res.vertex_index[name] = len(res.vertex_index)
    sources = []
    invol = []
    dart_labels = []
    for name, src, dst in doc.darts:
        if src not in res.vertex_index:
            raise UnresolvedName(src)
        if dst not in res.vertex_index:
            raise UnresolvedName(dst)
        if name in res.dart_index or name + "~" in res.dart_index:
            raise BadTable(f"duplicate dart name {name!r}")
        d = len(sources)
        res.dart_index[name] = d
        res.dart_index[name + "~"] = d + 1
        sources.extend((res.vertex_index[src], res.vertex_index[dst]))
        invol.extend((d + 1, d))
        dart_labels.extend((name, name + "~"))
    res.graph = serre_graph(len(res.vertex_index), sources, invol,
                            tuple(doc.vertices), tuple(dart_labels))

    for g, a, b in doc.action:
        if g not in res.name_to_element:
            raise UnresolvedName(g)
        in_v = a in res.vertex_index
        in_d = a in res.dart_index
        if not in_v and not in_d:
            raise UnresolvedName(a)
        if in_v and b not in res.vertex_index:
            raise UnresolvedName(b)
        if in_d and b not in res.dart_index:
            raise UnresolvedName(b)
    return res


def build_ggraph(doc: GgxDocument) -> GGraph:
    """Resolve a document into a validated G-graph.

    Action rows may cover only a generating set; remaining elements are
    completed by composition. Incomplete rows raise BadTable.
    """
    res = _resolve(doc)
    group = res.group
    graph = res.graph
    nv, nd = graph.vertex_count, graph.dart_count
    partial_v: dict[int, dict[int, int]] = {}
    partial_d: dict[int, dict[int, int]] = {}
    for g, a, b in doc.action:
        gi = res.name_to_element[g]
        if a in res.vertex_index:
            partial_v.setdefault(gi, {})[res.vertex_index[a]] = res.vertex_index[b]
        else:
            da, db = res.dart_index[a], res.dart_index[b]
            row = partial_d.setdefault(gi, {})
            row[da] = db
            row[graph.involution[da]] = graph.involution[db]

    rows_v: dict[int, tuple[int, ...]] = {0: tuple(range(nv))}
    rows_d: dict[int, tuple[int, ...]] = {0: tuple(range(nd))}
    for gi in set(partial_v) | set(partial_d):
        if gi == 0:
            continue
        vrow = partial_v.get(gi, {})
        drow = partial_d.get(gi, {})
        if len(vrow) != nv:
            raise BadTable(f"action of {group.label(gi)} does not cover every vertex")
        if len(drow) != nd:
            raise BadTable(f"action of {group.label(gi)} does not cover every edge")
        rows_v[gi] = tuple(vrow[v] for v in range(nv))
        rows_d[gi] = tuple(drow[d] for d in range(nd))

    # complete by composition: rows for products of described elements
    changed = True
    while changed:
        changed = False
        for a in list(rows_v):
            for b in list(rows_v):
                c = group.table[a][b]
                if c not in rows_v:
                    rows_v[c] = tuple(rows_v[a][rows_v[b][v]] for v in range(nv))
                    rows_d[c] = tuple(rows_d[a][rows_d[b][d]] for d in range(nd))
                    changed = True
    if len(rows_v) != group.order:
        missing = [group.label(g) for g in group.elements() if g not in rows_v]
        raise BadTable("action rows do not generate the whole group; missing "
                       + ", ".join(missing))
    va = tuple(rows_v[g] for g in group.elements())
    da = tuple(rows_d[g] for g in group.elements())
    return validate_ggraph(group, graph, va, da)


def parse_group(doc: GgxDocument) -> FiniteGroup:
    """Just the group of a document (used when a file only supplies [group])."""
    return _resolve(doc).group


_SAFE = re.compile(r"[^A-Za-z0-9_]")


def _safe_names(labels, prefix):
    out = []
    used = set()
    for i, lab in enumerate(labels):
        cand = _SAFE.sub("_", lab)
        if not cand or not _IDENT.match(cand) or cand in used:
            cand = f"{prefix}{i}"
        while cand in used:
            cand += "_"
        used.add(cand)
        out.append(cand)
    return out


def doc_from_ggraph(X: GGraph) -> GgxDocument:
    """Serialize a validated G-graph back to a document (labels sanitized)."""
    g = X.graph
    elem_names = _safe_names([X.group.label(i) for i in X.group.elements()], "g")
    vert_names = _safe_names([g.vertex_label(v) for v in range(g.vertex_count)], "v")
    pair_names = []
    pair_of = {}
    for d in range(g.dart_count):
        e = g.involution[d]
        if d < e:
            pair_of[d] = (len(pair_names), False)
            pair_of[e] = (len(pair_names), True)
            pair_names.append(f"d{len(pair_names)}")
    darts = []
    for d in range(g.dart_count):
        e = g.involution[d]
        if d < e:
            i, _ = pair_of[d]
            darts.append((pair_names[i], vert_names[g.dart_sources[d]],
                          vert_names[g.dart_sources[e]]))
    action = []
    for gi in X.group.elements():
        if gi == 0:
            continue
        for v in range(g.vertex_count):
            action.append((elem_names[gi], vert_names[v],
                           vert_names[X.vertex_action[gi][v]]))
        for d in range(g.dart_count):
            e = g.involution[d]
            if d < e:
                img = X.dart_action[gi][d]
                i, _ = pair_of[d]
                j, rev = pair_of[img]
                action.append((elem_names[gi], pair_names[i],
                               pair_names[j] + ("~" if rev else "")))
    return GgxDocument("table", X.group.order, X.group.table, tuple(elem_names),
                       (), tuple(vert_names), tuple(darts), tuple(action))
