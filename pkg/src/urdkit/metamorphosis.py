"""Transformations that reassemble uniform parallel classes.

* two 4-cycle classes -> two 4-path classes + a perfect matching;
* a perfect matching + a 4-cycle class -> two 4-path classes;
* three 4-cycle classes -> four 4-path classes (composition of the two);
* two triangle classes -> three 3-path classes (exact search);
* experimental probe: k-1 k-cycle classes -> k k-path classes.

The 4-cycle transforms pick one edge per cycle by solving a parity system
over GF(2). With a boolean variable per edge, every cycle contributes an
equation x_a + x_b + x_c + x_d = 1 over its four edges (a C-equation), and
every vertex — or every matching edge — contributes the same form over the
four cycle-edges incident with it (V- respectively M-equations). The
system is always consistent for valid inputs; complementing whole cycles
turns any solution into a basic one with exactly one chosen edge per
cycle, which then also has exactly one chosen edge per V/M-equation. The
chosen edges form the extracted matching (or the pairing that chains
matching edges into paths), and every cycle minus its chosen edge is a
path.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .gf2 import Gf2System, gf2_solve, normalize_to_basic
from .model import (
    Block,
    Edge,
    ParallelClass,
    UrdError,
    block,
    block_edge_list,
)
from .search import SearchBudget, SearchTimeoutError, find_resolution


class MetamorphosisError(UrdError):
    """Inputs do not satisfy a transform's preconditions, or an internal
    guarantee failed."""


@dataclass(frozen=True)
class MetaInput:
    """Validated input bundle for the GF(2) system builder."""

    v: int
    mode: str  # "two-c4" | "matching-c4"
    classes: tuple[ParallelClass, ...]


def _ambient_order(classes: tuple[ParallelClass, ...]) -> int:
    verts = sorted({x for pc in classes for x in pc.covered()})
    if not verts or verts != list(range(len(verts))):
        raise MetamorphosisError(f"classes do not cover a range 0..v-1: {verts[:8]}...")
    return len(verts)


def _require_class(pc: ParallelClass, kind: str, v: int) -> None:
    if pc.kind != kind:
        raise MetamorphosisError(f"expected a {kind} class, got {pc.kind}")
    cov = pc.covered()
    if len(cov) != v or set(cov) != set(range(v)):
        raise MetamorphosisError(f"{kind} class is not spanning on 0..{v - 1}")


def _require_edge_disjoint(classes: tuple[ParallelClass, ...]) -> None:
    seen: set[Edge] = set()
    for pc in classes:
        for e in pc.edge_list():
            if e in seen:
                raise MetamorphosisError(f"classes share edge {e}")
            seen.add(e)


def build_system(inp: MetaInput) -> tuple[Gf2System, tuple[Edge, ...]]:
    """The parity system for a transform, plus the variable -> edge map.

    two-c4: one variable per edge of both classes (2v variables), a
    C-equation per cycle and a V-equation per vertex except the last (the
    omitted one is the sum of the others). matching-c4: one variable per
    cycle edge (v variables), a C-equation per cycle and an M-equation per
    matching edge over the four cycle-edges incident with its endpoints;
    when the matching edge is a diagonal of a cycle the two equations
    coincide. All right-hand sides are 1.
    """
    v = inp.v
    if inp.mode == "two-c4":
        if len(inp.classes) != 2:
            raise MetamorphosisError("two-c4 needs exactly two classes")
        for pc in inp.classes:
            _require_class(pc, "c4", v)
        _require_edge_disjoint(inp.classes)
        cycles = [b for pc in inp.classes for b in pc.blocks]
    elif inp.mode == "matching-c4":
        if len(inp.classes) != 2:
            raise MetamorphosisError("matching-c4 needs a matching and a c4 class")
        f, a = inp.classes
        _require_class(f, "k2", v)
        _require_class(a, "c4", v)
        _require_edge_disjoint(inp.classes)
        cycles = list(a.blocks)
    else:
        raise MetamorphosisError(f"unknown system mode {inp.mode!r}")

    edge_order: list[Edge] = []
    var_of: dict[Edge, int] = {}
    for b in cycles:
        for e in block_edge_list(b):
            var_of[e] = len(edge_order)
            edge_order.append(e)

    rows: list[tuple[list[int], int]] = []
    c_blocks: list[list[int]] = []
    for b in cycles:
        support = [var_of[e] for e in block_edge_list(b)]
        rows.append((support, 1))
        c_blocks.append(support)

    if inp.mode == "two-c4":
        incident: list[list[int]] = [[] for _ in range(v)]
        for e, i in var_of.items():
            incident[e[0]].append(i)
            incident[e[1]].append(i)
        for u in range(v - 1):  # the last vertex's equation is implied
            assert len(incident[u]) == 4
            rows.append((incident[u], 1))
    else:
        incident = [[] for _ in range(v)]
        for e, i in var_of.items():
            incident[e[0]].append(i)
            incident[e[1]].append(i)
        for mb in inp.classes[0].blocks:
            p, q = mb.vertices
            support = incident[p] + incident[q]
            assert len(support) == 4 and len(set(support)) == 4
            rows.append((support, 1))

    system = Gf2System.build(len(edge_order), rows, c_blocks)
    return system, tuple(edge_order)


def _basic_selection(system: Gf2System, edge_order: tuple[Edge, ...]) -> set[Edge]:
    sol = gf2_solve(system)
    if sol is None:
        raise MetamorphosisError(
            "parity system inconsistent; inputs are not valid disjoint classes")
    xi = normalize_to_basic(system, sol)
    return {edge_order[i] for i, bit in enumerate(xi.bits) if bit}


def _cycle_minus_edge(b: Block, removed: Edge) -> Block:
    """The path left when one edge is deleted from a 4-cycle, traversed
    from the removed edge's smaller endpoint the long way round."""
    vs = b.vertices
    k = len(vs)
    for i in range(k):
        pair = (vs[i], vs[(i + 1) % k])
        if tuple(sorted(pair)) == removed:
            path = [vs[(i + 1 + j) % k] for j in range(k)]
            return block("p" + str(k), path)
    raise MetamorphosisError(f"edge {removed} not on cycle {vs}")


def meta_two_c4(a: ParallelClass, b: ParallelClass
                ) -> tuple[ParallelClass, ParallelClass, ParallelClass]:
    """Split two edge-disjoint spanning 4-cycle classes into two 4-path
    classes and one perfect matching with the same edge union."""
    v = _ambient_order((a, b))
    if v % 4:
        raise MetamorphosisError(f"need 4 | v, got v={v}")
    system, edge_order = build_system(MetaInput(v, "two-c4", (a, b)))
    selected = _basic_selection(system, edge_order)

    deg = Counter()
    for e in selected:
        deg[e[0]] += 1
        deg[e[1]] += 1
    if any(deg[u] != 1 for u in range(v)):
        raise MetamorphosisError("selected edges do not form a perfect matching")

    path_classes = []
    for pc in (a, b):
        paths = []
        for cyc in pc.blocks:
            chosen = [e for e in block_edge_list(cyc) if e in selected]
            if len(chosen) != 1:
                raise MetamorphosisError(f"cycle {cyc.vertices} lost {len(chosen)} edges")
            paths.append(_cycle_minus_edge(cyc, chosen[0]))
        path_classes.append(ParallelClass("p4", tuple(paths)))
    matching = ParallelClass.of("k2", sorted(selected))
    return path_classes[0], path_classes[1], matching


def meta_matching_c4(f: ParallelClass, a: ParallelClass
                     ) -> tuple[ParallelClass, ParallelClass]:
    """Reassemble a perfect matching and an edge-disjoint spanning 4-cycle
    class into two 4-path classes with the same edge union."""
    v = _ambient_order((f, a))
    if v % 4:
        raise MetamorphosisError(f"need 4 | v, got v={v}")
    system, edge_order = build_system(MetaInput(v, "matching-c4", (f, a)))
    selected = _basic_selection(system, edge_order)

    partner = {}
    for mb in f.blocks:
        p, q = mb.vertices
        partner[p] = q
        partner[q] = p
    used_matching: set[Edge] = set()
    chained = []
    for s, t in sorted(selected):
        quad = (partner[s], s, t, partner[t])
        for end in (s, t):
            me = tuple(sorted((end, partner[end])))
            if me in used_matching:
                raise MetamorphosisError(
                    f"matching edge {me} chained twice; selection is not a pairing")
            used_matching.add(me)
        chained.append(block("p4", quad))
    if len(used_matching) != v // 2:
        raise MetamorphosisError("selection left matching edges unchained")

    trimmed = []
    for cyc in a.blocks:
        chosen = [e for e in block_edge_list(cyc) if e in selected]
        if len(chosen) != 1:
            raise MetamorphosisError(f"cycle {cyc.vertices} lost {len(chosen)} edges")
        trimmed.append(_cycle_minus_edge(cyc, chosen[0]))
    return ParallelClass("p4", tuple(chained)), ParallelClass("p4", tuple(trimmed))


def meta_three_c4(a: ParallelClass, b: ParallelClass, c: ParallelClass
                  ) -> tuple[ParallelClass, ParallelClass, ParallelClass, ParallelClass]:
    """Turn three pairwise edge-disjoint spanning 4-cycle classes into four
    4-path classes: split the first two, then chain the third with the
    matching that fell out."""
    _require_edge_disjoint((a, b, c))
    p1, p2, matching = meta_two_c4(a, b)
    p3, p4 = meta_matching_c4(matching, c)
    return p1, p2, p3, p4


def _connected_components(v: int, edges: set[Edge]) -> list[list[int]]:
    neighbours: list[list[int]] = [[] for _ in range(v)]
    for p, q in edges:
        neighbours[p].append(q)
        neighbours[q].append(p)
    seen = [False] * v
    comps = []
    for start in range(v):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for y in neighbours[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def meta_two_k3(a: ParallelClass, b: ParallelClass,
                budget: SearchBudget | None = None
                ) -> tuple[ParallelClass, ParallelClass, ParallelClass]:
    """Split two edge-disjoint spanning triangle classes into three
    3-path classes with the same edge union (exact backtracking search;
    a decomposition always exists for valid inputs).

    Paths cannot straddle connected components of the union graph and each
    output class covers every component, so the search factors over the
    components, which keeps large orders fast.
    """
    v = _ambient_order((a, b))
    _require_class(a, "k3", v)
    _require_class(b, "k3", v)
    _require_edge_disjoint((a, b))
    union = a.edges() | b.edges()
    budget = budget or SearchBudget(time_limit=60.0)
    out_blocks: tuple[list[Block], ...] = ([], [], [])
    for comp in _connected_components(v, union):
        index = {x: i for i, x in enumerate(comp)}
        sub_edges = [(index[p], index[q]) for p, q in union if p in index]
        sub = find_resolution(len(comp), [("p3", 3)], edges=sub_edges, budget=budget)
        if sub is None:
            raise MetamorphosisError(
                "internal error: no 3-path split found for two triangle classes")
        for j, pc in enumerate(sub):
            for blk in pc.blocks:
                out_blocks[j].append(block("p3", tuple(comp[i] for i in blk.vertices)))
    p1, p2, p3 = (ParallelClass("p3", tuple(sorted(blocks))) for blocks in out_blocks)
    return p1, p2, p3


@dataclass(frozen=True)
class ConjectureOutcome:
    """Result of the cycle-to-path probe.

    status is 'solved' (classes found), 'exhausted' (the whole space was
    searched without a solution — a counterexample report), or 'timeout'
    (budget ran out; inconclusive).
    """

    status: str
    classes: tuple[ParallelClass, ...] | None = None


def meta_cycles_conjecture(k: int, classes: tuple[ParallelClass, ...],
                           budget: SearchBudget | None = None) -> ConjectureOutcome:
    """Probe whether k-1 edge-disjoint spanning k-cycle classes split into
    k k-path classes.

    k=3 (triangle classes, kind k3) and k=4 route through the dedicated
    transforms; other k run an exact-cover style search, for which no
    fast method is known.
    """
    if k < 3:
        raise MetamorphosisError(f"need k >= 3, got k={k}")
    classes = tuple(classes)
    if len(classes) != k - 1:
        raise MetamorphosisError(f"need {k - 1} classes, got {len(classes)}")
    if k == 3:
        try:
            return ConjectureOutcome("solved", meta_two_k3(classes[0], classes[1], budget))
        except SearchTimeoutError:
            return ConjectureOutcome("timeout")
    if k == 4:
        return ConjectureOutcome("solved", meta_three_c4(*classes))
    v = _ambient_order(classes)
    kind = f"c{k}"
    for pc in classes:
        _require_class(pc, kind, v)
    _require_edge_disjoint(classes)
    union = set()
    for pc in classes:
        union |= pc.edges()
    try:
        found = find_resolution(v, [(f"p{k}", k)], edges=union,
                                budget=budget or SearchBudget(time_limit=300.0))
    except SearchTimeoutError:
        return ConjectureOutcome("timeout")
    if found is None:
        return ConjectureOutcome("exhausted")
    return ConjectureOutcome("solved", tuple(found))
