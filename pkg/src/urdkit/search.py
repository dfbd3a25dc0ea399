"""Backtracking construction of uniform parallel classes.

One engine covers witness search for profile feasibility, matching plus
triangle systems, and path-class searches over restricted edge sets. The
state is an adjacency bitmask per vertex for the edges still available.

Branching and symmetry breaking:

* classes are built kind by kind, in the order the caller lists them
  (same-kind classes must be contiguous);
* within a class the block containing the lowest uncovered vertex is
  chosen next, candidates tried in ascending canonical order, so the first
  solution found is deterministic;
* classes of the same kind are required to be lexicographically
  increasing, which removes their permutation symmetry;
* when searching the complete graph, the first class of the first kind is
  pinned to the canonical factor on consecutive vertex ranges — any
  solution can be relabeled onto it, so existence is preserved while the
  whole vertex-relabeling symmetry disappears.

Between classes, per-vertex degree bounds prune: a triangle or cycle class
takes exactly 2 edges at every vertex, a matching exactly 1, a path class
1 or 2, so the remaining degree of every vertex must fit the classes still
to be built.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    Block,
    Edge,
    InvalidOrderError,
    ParallelClass,
    UrdError,
    block_edge_list,
    complete_graph_edge_set,
    edge,
    kind_arity,
    kind_edge_count,
)


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a backtracking run. None disables a limit.

    The seed is recorded for reproducibility bookkeeping; the engine
    itself is deterministic and does not consume it.
    """

    time_limit: float | None = 60.0
    node_limit: int | None = None
    seed: int = 0


class SearchTimeoutError(UrdError):
    """A search exceeded its time or node budget."""


def canonical_factor(kind: str, v: int) -> ParallelClass:
    """The lexicographically smallest spanning class of a kind on K_v."""
    a = kind_arity(kind)
    if v % a:
        raise InvalidOrderError(f"{kind} classes need {a} | v, got v={v}")
    return ParallelClass(
        kind, tuple(Block(kind, tuple(range(i, i + a))) for i in range(0, v, a)))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# Per-vertex degree a single class of a kind consumes (min, max).
def _degree_range(kind: str) -> tuple[int, int]:
    if kind == "k2":
        return (1, 1)
    if kind == "k3" or kind[0] == "c":
        return (2, 2)
    return (1, 2)  # paths: endpoints take 1, inner vertices 2


class _Engine:
    def __init__(self, v: int, kind_seq: list[str], adj: list[int],
                 budget: SearchBudget | None):
        self.v = v
        self.kind_seq = kind_seq
        self.adj = adj
        self.full_mask = (1 << v) - 1
        self.classes: list[ParallelClass] = []
        self.nodes = 0
        self.node_limit = budget.node_limit if budget else None
        self.deadline = None
        if budget and budget.time_limit is not None:
            self.deadline = time.monotonic() + budget.time_limit
        # Suffix sums of per-class degree contributions, indexed by the
        # number of classes already committed. Exact kinds (matchings,
        # triangles, cycles) consume a fixed degree everywhere; path
        # classes consume 1 at endpoints and 2 at inner vertices.
        n = len(kind_seq)
        self.suffix_min = [0] * (n + 1)
        self.suffix_max = [0] * (n + 1)
        self.suffix_exact = [0] * (n + 1)
        self.suffix_flex = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            lo, hi = _degree_range(kind_seq[i])
            self.suffix_min[i] = self.suffix_min[i + 1] + lo
            self.suffix_max[i] = self.suffix_max[i + 1] + hi
            flex = lo != hi
            self.suffix_exact[i] = self.suffix_exact[i + 1] + (0 if flex else lo)
            self.suffix_flex[i] = self.suffix_flex[i + 1] + (1 if flex else 0)

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchTimeoutError(f"node limit {self.node_limit} exceeded")
        if self.deadline is not None and (self.nodes & 1023) == 0:
            if time.monotonic() > self.deadline:
                raise SearchTimeoutError("time budget exceeded")

    def degrees_ok(self, committed: int) -> bool:
        lo = self.suffix_min[committed]
        hi = self.suffix_max[committed]
        for u in range(self.v):
            d = self.adj[u].bit_count()
            if d < lo or d > hi:
                return False
        return True

    def remove_class(self, blocks: Iterable[Block]) -> list[Edge]:
        removed = []
        for b in blocks:
            for a, c in block_edge_list(b):
                self.adj[a] &= ~(1 << c)
                self.adj[c] &= ~(1 << a)
                removed.append((a, c))
        return removed

    def restore(self, removed: list[Edge]) -> None:
        for a, c in removed:
            self.adj[a] |= 1 << c
            self.adj[c] |= 1 << a

    # -- candidate blocks containing the lowest uncovered vertex u --------
    # u is smaller than every other uncovered vertex, which is what makes
    # the canonical tuples below come out in canonical form directly.

    def candidates(self, kind: str, u: int, unc: int,
                   need: list[int] | None = None,
                   flex: int = 0) -> list[tuple[int, ...]]:
        adj = self.adj
        au = adj[u] & unc
        out: list[tuple[int, ...]] = []
        if kind == "k2":
            out = [(u, w) for w in _bits(au)]
        elif kind == "k3":
            ns = list(_bits(au))
            for i, a in enumerate(ns):
                ab = adj[a]
                for b in ns[i + 1:]:
                    if ab >> b & 1:
                        out.append((u, a, b))
        elif kind == "p3":
            ns = list(_bits(au))
            for i, a in enumerate(ns):        # u centre: a-u-b
                for b in ns[i + 1:]:
                    out.append((a, u, b))
            ubit = 1 << u
            for c in ns:                      # u endpoint: u-c-w
                for w in _bits(adj[c] & unc & ~ubit):
                    out.append((u, c, w))
        elif kind == "c4":
            ns = list(_bits(au))
            ubit = 1 << u
            for i, a in enumerate(ns):
                for c in ns[i + 1:]:
                    for b in _bits(adj[a] & adj[c] & unc & ~ubit):
                        out.append((u, a, b, c))
        elif kind == "p4":
            ubit = 1 << u
            for a in _bits(au):               # u endpoint: u-a-b-c
                abit = 1 << a
                for b in _bits(adj[a] & unc & ~ubit):
                    for c in _bits(adj[b] & unc & ~ubit & ~abit & ~(1 << b)):
                        out.append((u, a, b, c))
            ns = list(_bits(au))
            for a in ns:                      # u second: a-u-b-c
                abit = 1 << a
                for b in ns:
                    if b == a:
                        continue
                    for c in _bits(adj[b] & unc & ~ubit & ~abit & ~(1 << b)):
                        out.append((a, u, b, c) if a < c else (c, b, u, a))
        else:
            out = self._generic_candidates(kind, u, unc)
        if need is not None:
            out = [t for t in out
                   if need[t[0]] < flex and need[t[-1]] < flex
                   and all(need[x] > 0 for x in t[1:-1])]
        out.sort()
        return out

    def _generic_candidates(self, kind: str, u: int, unc: int) -> list[tuple[int, ...]]:
        k = kind_arity(kind)
        adj = self.adj
        found: set[tuple[int, ...]] = set()
        if kind[0] == "c":
            # u is the minimum of any candidate block, so the canonical
            # form starts at u; enumerate walks of length k returning to u.
            def walk(seq: list[int], used: int) -> None:
                if len(seq) == k:
                    if adj[seq[-1]] >> u & 1:
                        fwd = tuple(seq)
                        rev = (u,) + tuple(seq[:0:-1])
                        found.add(fwd if fwd[1] < rev[1] else rev)
                    return
                for w in _bits(adj[seq[-1]] & unc & ~used):
                    seq.append(w)
                    walk(seq, used | (1 << w))
                    seq.pop()

            walk([u], 1 << u)
        else:
            # Paths through u: grow from [u] at both ends, dedupe by
            # canonical form.
            def grow(seq: list[int], used: int) -> None:
                if len(seq) == k:
                    tup = tuple(seq) if seq[0] < seq[-1] else tuple(seq[::-1])
                    found.add(tup)
                    return
                for w in _bits(adj[seq[0]] & unc & ~used):
                    grow([w] + seq, used | (1 << w))
                for w in _bits(adj[seq[-1]] & unc & ~used):
                    grow(seq + [w], used | (1 << w))

            grow([u], 1 << u)
        return sorted(found)

    # -- class and resolution search --------------------------------------

    def solve_from(self, ci: int) -> bool:
        if ci == len(self.kind_seq):
            return True
        kind = self.kind_seq[ci]
        bound: tuple[Block, ...] | None = None
        if ci > 0 and self.kind_seq[ci - 1] == kind:
            bound = self.classes[ci - 1].blocks
        # For kinds whose canonical tuples start at the lowest uncovered
        # vertex, blocks are generated in sorted order, so the lex bound
        # can prune block by block; path classes are compared when done.
        ordered_build = kind in ("k2", "k3") or kind[0] == "c"

        need: list[int] | None = None
        flex = 0
        if kind[0] == "p":
            # Degree arithmetic forces how often each vertex must still be
            # an inner path vertex: with F flexible (path) classes left and
            # exact kinds consuming E at every vertex, a vertex of
            # remaining degree d is inner in exactly d - E - F of the F
            # path classes. A vertex with used-up inner budget must be an
            # endpoint now, one with full budget an inner vertex;
            # candidates violating that are pruned.
            flex = self.suffix_flex[ci]
            exact = self.suffix_exact[ci]
            need = [self.adj[u].bit_count() - exact - flex for u in range(self.v)]

        # Forward check: a vertex still to be covered by this class needs
        # at least one available uncovered neighbour (two when it can only
        # be an inner path vertex, or the kind pins its degree at 2).
        exact_two = kind == "k3" or kind[0] == "c"

        def viable(unc: int) -> bool:
            adj = self.adj
            m = unc
            while m:
                low = m & -m
                y = low.bit_length() - 1
                m ^= low
                avail = (adj[y] & unc).bit_count()
                if avail < 2:
                    if exact_two or avail < 1:
                        return False
                    if need is not None and need[y] >= flex:
                        return False
            return True

        def place(unc: int, blocks: list[Block], still_equal: bool) -> bool:
            self.tick()
            if unc == 0:
                cls_blocks = tuple(blocks) if ordered_build else tuple(sorted(blocks))
                if bound is not None:
                    if ordered_build:
                        if still_equal:
                            return False  # equal classes share edges: impossible
                    elif cls_blocks <= bound:
                        return False
                pc = ParallelClass(kind, cls_blocks)
                removed = self.remove_class(cls_blocks)
                self.classes.append(pc)
                if self.degrees_ok(ci + 1) and self.solve_from(ci + 1):
                    return True
                self.classes.pop()
                self.restore(removed)
                return False
            u = (unc & -unc).bit_length() - 1
            j = len(blocks)
            for tup in self.candidates(kind, u, unc, need, flex):
                nxt_equal = False
                if bound is not None and ordered_build and still_equal:
                    bt = bound[j].vertices
                    if tup < bt:
                        continue
                    nxt_equal = tup == bt
                blk = Block(kind, tup)
                blocks.append(blk)
                cov = 0
                for x in tup:
                    cov |= 1 << x
                rest = unc & ~cov
                if viable(rest) and place(rest, blocks, nxt_equal):
                    return True
                blocks.pop()
            return False

        return place(self.full_mask, [], bound is not None)


def find_resolution(v: int,
                    kinds: Sequence[tuple[str, int]],
                    *,
                    edges: Iterable[Edge] | None = None,
                    budget: SearchBudget | None = None,
                    fix_first: bool | None = None) -> list[ParallelClass] | None:
    """Partition an edge set into the requested parallel classes.

    kinds lists (kind, count) pairs; classes are built in that order and
    same-kind entries must be contiguous. edges defaults to the complete
    graph on 0..v-1; the classes must consume the edge set exactly.
    Returns the deterministic first solution, or None when the search
    space is exhausted. Raises SearchTimeoutError when the budget runs
    out, which is a different outcome than exhaustion.

    fix_first pins the first class to the canonical factor; it defaults to
    on for complete-graph searches (sound: relabel any solution onto it)
    and off for restricted edge sets.
    """
    if v < 2 or v > 62:
        raise InvalidOrderError(f"supported orders are 2..62, got {v}")
    kind_counts = [(k, int(c)) for k, c in kinds if c]
    for k, c in kind_counts:
        kind_arity(k)
        if c < 0:
            raise UrdError(f"negative class count for {k}")
    seen_kinds = [k for k, _ in kind_counts]
    if len(set(seen_kinds)) != len(seen_kinds):
        raise UrdError("same-kind entries must be contiguous in kinds")

    full = edges is None
    if fix_first is None:
        fix_first = full
    pool = complete_graph_edge_set(v) if full else {edge(a, b) for a, b in edges}
    for a, b in pool:
        if b >= v:
            raise UrdError(f"edge ({a}, {b}) outside order {v}")

    for k, _ in kind_counts:
        if v % kind_arity(k):
            return None
    need = sum((v // kind_arity(k)) * kind_edge_count(k) * c for k, c in kind_counts)
    if need != len(pool):
        return None
    kind_seq = [k for k, c in kind_counts for _ in range(c)]
    if not kind_seq:
        return []

    adj = [0] * v
    for a, b in pool:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    engine = _Engine(v, kind_seq, adj, budget)

    start = 0
    if fix_first:
        first = canonical_factor(kind_seq[0], v)
        engine.remove_class(first.blocks)
        engine.classes.append(first)
        start = 1
        if not engine.degrees_ok(1):
            return None
    if engine.solve_from(start):
        return list(engine.classes)
    return None
