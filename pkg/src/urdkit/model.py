"""Core data model: vertices, edges, blocks, parallel classes, decompositions.

Vertices are the integers 0..v-1 for an ambient order v. An edge is a pair
(u, w) with u < w. A block is a single copy of a matching edge (k2), a
triangle (k3), a path on k vertices (p3, p4, ...), or a cycle on k vertices
(c4, c5, ...), stored as a tuple of distinct vertices in canonical form so
that equal subgraphs compare equal:

* k2/k3 tuples are sorted ascending;
* paths start at their smaller endpoint;
* cycles are rotated so the smallest vertex comes first and reflected so
  its smaller neighbour comes second.

Everything here is immutable and purely functional; the heavier semantic
checks (spanning, edge-disjointness, completeness) live in the verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class UrdError(Exception):
    """Base class for all errors raised by this package."""


class MalformedBlockError(UrdError, ValueError):
    """A block has the wrong arity, a repeated vertex, or an unknown kind."""


class InvalidOrderError(UrdError, ValueError):
    """The requested order v is outside the operation's domain."""


Edge = tuple[int, int]

# Profile families and the canonical order their class counts are listed in.
FAMILIES: dict[str, tuple[str, ...]] = {
    "k2p3k3": ("k2", "p3", "k3"),
    "k2p4c4": ("k2", "p4", "c4"),
    "p4c4": ("p4", "c4"),
}


def edge(u: int, w: int) -> Edge:
    """Canonical edge: the pair sorted ascending. Loops are rejected."""
    if u == w or u < 0 or w < 0:
        raise MalformedBlockError(f"bad edge ({u}, {w})")
    return (u, w) if u < w else (w, u)


def complete_graph_edge_set(v: int) -> set[Edge]:
    """All v(v-1)/2 canonical edges on the vertices 0..v-1."""
    if v < 2:
        raise InvalidOrderError(f"complete graph needs v >= 2, got v={v}")
    return set(combinations(range(v), 2))


def kind_arity(kind: str) -> int:
    """Number of vertices in a block of the given kind."""
    if kind == "k2":
        return 2
    if kind == "k3":
        return 3
    if len(kind) >= 2 and kind[0] in "pc" and kind[1:].isdigit():
        k = int(kind[1:])
        if kind[0] == "p" and k >= 3:
            return k
        if kind[0] == "c" and k >= 4:
            return k
        if kind == "c3":
            raise MalformedBlockError("3-cycles are triangles; use kind 'k3'")
    raise MalformedBlockError(f"unknown block kind {kind!r}")


def kind_edge_count(kind: str) -> int:
    """Number of edges in a block of the given kind."""
    k = kind_arity(kind)
    if kind == "k2":
        return 1
    if kind == "k3":
        return 3
    return k - 1 if kind[0] == "p" else k


@dataclass(frozen=True, order=True)
class Block:
    """One block, as (kind, canonical vertex tuple).

    Construct through :func:`block` to get validation and canonicalization;
    the bare constructor is for code that already holds canonical tuples.
    """

    kind: str
    vertices: tuple[int, ...]

    def relabel(self, perm: Sequence[int]) -> "Block":
        return block(self.kind, tuple(perm[x] for x in self.vertices))


def block(kind: str, vertices: Iterable[int]) -> Block:
    """Validate a vertex tuple and return the canonical block."""
    vs = tuple(int(x) for x in vertices)
    arity = kind_arity(kind)
    if len(vs) != arity:
        raise MalformedBlockError(
            f"kind {kind} needs {arity} vertices, got {len(vs)}")
    if len(set(vs)) != len(vs):
        raise MalformedBlockError(f"repeated vertex in block {vs}")
    if min(vs) < 0:
        raise MalformedBlockError(f"negative vertex in block {vs}")
    if kind in ("k2", "k3"):
        vs = tuple(sorted(vs))
    elif kind[0] == "p":
        if vs[-1] < vs[0]:
            vs = vs[::-1]
    else:  # cycle: min vertex first, then the smaller of its two neighbours
        i = vs.index(min(vs))
        fwd = vs[i:] + vs[:i]
        rev = (fwd[0],) + fwd[1:][::-1]
        vs = fwd if fwd[1] < rev[1] else rev
    return Block(kind, vs)


def canonicalize_block(b: Block) -> Block:
    """Canonical representative of b; idempotent."""
    return block(b.kind, b.vertices)


def block_edge_list(b: Block) -> list[Edge]:
    """Edges of a block in deterministic traversal order."""
    vs = b.vertices
    if b.kind == "k2":
        return [edge(vs[0], vs[1])]
    if b.kind == "k3":
        return [edge(vs[0], vs[1]), edge(vs[1], vs[2]), edge(vs[0], vs[2])]
    edges = [edge(a, c) for a, c in zip(vs, vs[1:])]
    if b.kind[0] == "c":
        edges.append(edge(vs[0], vs[-1]))
    return edges


def block_edges(b: Block) -> set[Edge]:
    """Edge set of a block."""
    return set(block_edge_list(b))


@dataclass(frozen=True, order=True)
class ParallelClass:
    """A set of blocks of one kind, stored as a sorted tuple.

    Vertex-disjointness and spanning are not enforced here so that the
    verifier can report on defective classes; construction code always
    produces well-formed ones.
    """

    kind: str
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        kind_arity(self.kind)
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @classmethod
    def of(cls, kind: str, vertex_tuples: Iterable[Iterable[int]]) -> "ParallelClass":
        return cls(kind, tuple(block(kind, t) for t in vertex_tuples))

    def edge_list(self) -> list[Edge]:
        return [e for b in self.blocks for e in block_edge_list(b)]

    def edges(self) -> set[Edge]:
        return set(self.edge_list())

    def covered(self) -> list[int]:
        """All vertices of all blocks, with multiplicity."""
        return [x for b in self.blocks for x in b.vertices]

    def is_spanning(self, v: int) -> bool:
        cov = self.covered()
        return len(cov) == v and set(cov) == set(range(v))

    def relabel(self, perm: Sequence[int]) -> "ParallelClass":
        return ParallelClass(self.kind, tuple(b.relabel(perm) for b in self.blocks))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """An ordered list of parallel classes on the vertex set 0..v-1.

    Equality treats the classes as a multiset; serialization preserves the
    list order.
    """

    v: int
    classes: tuple[ParallelClass, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))

    def sorted_classes(self) -> tuple[ParallelClass, ...]:
        return tuple(sorted(self.classes))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.v == other.v and self.sorted_classes() == other.sorted_classes()

    def __hash__(self) -> int:
        return hash((self.v, self.sorted_classes()))

    def edges(self) -> list[Edge]:
        """Edges of all classes, with multiplicity."""
        return [e for c in self.classes for e in c.edge_list()]

    def relabel(self, perm: Sequence[int]) -> "Decomposition":
        return Decomposition(self.v, tuple(c.relabel(perm) for c in self.classes))


@dataclass(frozen=True)
class Profile:
    """Class counts for one family, in the family's canonical kind order."""

    family: str
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise UrdError(f"unknown family {self.family!r}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        kinds = FAMILIES[self.family]
        if len(self.counts) != len(kinds):
            raise UrdError(
                f"family {self.family} needs {len(kinds)} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise UrdError(f"negative count in profile {self.counts}")

    def kinds(self) -> tuple[str, ...]:
        return FAMILIES[self.family]

    def is_complex(self) -> bool:
        return all(c > 0 for c in self.counts)
