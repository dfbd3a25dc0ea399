"""Ground-truth building blocks.

* round-robin 1-factorizations of K_v;
* the doubling construction that turns a 1-factorization of K_{v/2} into
  4-cycle classes of K_v plus one perfect matching;
* searched systems of m perfect matchings and (v-1-m)/2 triangle classes
  that together decompose K_v;
* a small catalog of explicitly transcribed designs, shipped as data files
  in the package text format.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from importlib import resources

from .io import parse_urd
from .model import (
    Decomposition,
    InvalidOrderError,
    ParallelClass,
    Profile,
    UrdError,
)
from .search import SearchBudget, find_resolution


class KnownNonexistentError(UrdError):
    """The requested design is known not to exist."""


class ConstructionError(UrdError):
    """A construction failed internally (search exhausted unexpectedly)."""


def one_factorization(v: int) -> list[ParallelClass]:
    """Partition E(K_v) into v-1 perfect matchings (round-robin schedule).

    Vertex v-1 stays fixed; the others rotate. Exists iff v is even.
    """
    if v < 2 or v % 2:
        raise InvalidOrderError(f"1-factorization needs even v >= 2, got {v}")
    if v == 2:
        return [ParallelClass.of("k2", [(0, 1)])]
    n = v - 1
    rounds = []
    for r in range(n):
        pairs = [(r, v - 1)]
        for i in range(1, v // 2):
            pairs.append(((r - i) % n, (r + i) % n))
        rounds.append(ParallelClass.of("k2", pairs))
    return rounds


def c4_blowup(v: int) -> tuple[list[ParallelClass], ParallelClass]:
    """4-cycle classes of K_v from a 1-factorization of K_{v/2}.

    Each vertex a of K_{v/2} becomes the non-adjacent pair {2a, 2a+1}; a
    matching edge {a, b} becomes the 4-cycle (2a, 2b, 2a+1, 2b+1). The
    v/2 - 1 matchings give that many spanning C4 classes, and the missing
    within-pair edges {2a, 2a+1} form one perfect matching; together they
    partition E(K_v). Needs 4 | v.
    """
    if v % 4 or v < 8:
        raise InvalidOrderError(f"doubling needs v >= 8 with 4 | v, got {v}")
    classes = []
    for matching in one_factorization(v // 2):
        cycles = []
        for b in matching.blocks:
            a, c = b.vertices
            cycles.append((2 * a, 2 * c, 2 * a + 1, 2 * c + 1))
        classes.append(ParallelClass.of("c4", cycles))
    leftover = ParallelClass.of("k2", [(2 * a, 2 * a + 1) for a in range(v // 2)])
    return classes, leftover


_mt_cache: dict[tuple[int, int], tuple[tuple[ParallelClass, ...], tuple[ParallelClass, ...]]] = {}
_mt_lock = threading.Lock()


def matching_triangle_system(
        v: int, m: int,
        budget: SearchBudget | None = None,
) -> tuple[list[ParallelClass], list[ParallelClass]]:
    """m perfect matchings and (v-1-m)/2 triangle classes decomposing K_v.

    Searched by backtracking, triangle classes first, then matchings from
    the leftover graph; the first triangle class is pinned to the
    canonical factor. Needs 6 | v, v >= 12, m odd with 1 <= m <= v-3.
    The orders v=6 (any m) and (v, m) = (12, 1) are known not to exist.
    Results are cached per (v, m).
    """
    if v == 6:
        raise KnownNonexistentError(
            "no matching+triangle system exists at order 6")
    if v < 12 or v % 6:
        raise InvalidOrderError(f"need 6 | v and v >= 12, got v={v}")
    if m % 2 == 0 or not 1 <= m <= v - 3:
        raise UrdError(f"need odd m with 1 <= m <= {v - 3}, got m={m}")
    if (v, m) == (12, 1):
        raise KnownNonexistentError(
            "one matching plus five triangle classes at order 12 does not exist")
    with _mt_lock:
        hit = _mt_cache.get((v, m))
    if hit is not None:
        return list(hit[0]), list(hit[1])
    t = (v - 1 - m) // 2
    classes = find_resolution(v, [("k3", t), ("k2", m)],
                              budget=budget or SearchBudget(time_limit=60.0))
    if classes is None:
        raise ConstructionError(
            f"search exhausted for v={v}, m={m}; such systems should exist")
    triangles = tuple(c for c in classes if c.kind == "k3")
    matchings = tuple(c for c in classes if c.kind == "k2")
    assert len(matchings) == m and len(triangles) == t
    with _mt_lock:
        _mt_cache[(v, m)] = (matchings, triangles)
    return list(matchings), list(triangles)


@dataclass(frozen=True)
class CatalogEntry:
    v: int
    profile: Profile
    decomposition: Decomposition
    source: str


_CATALOG_FILES = {
    (6, "k2p3k3", (3, 0, 1)): "urd_6_k2p3k3_3_0_1.urd",
    (12, "k2p3k3", (1, 3, 3)): "urd_12_k2p3k3_1_3_3.urd",
}
_catalog_cache: dict[str, Decomposition] = {}


def _load_catalog_file(name: str) -> Decomposition:
    if name not in _catalog_cache:
        text = resources.files("urdkit").joinpath("data", name).read_text("utf-8")
        _catalog_cache[name] = parse_urd(text).decomposition
    return _catalog_cache[name]


def catalog_lookup(v: int, profile: Profile) -> Decomposition | None:
    """The transcribed small-order design for (v, profile), or None."""
    name = _CATALOG_FILES.get((v, profile.family, profile.counts))
    if name is None:
        return None
    return _load_catalog_file(name)


def catalog_entries() -> list[CatalogEntry]:
    out = []
    for (v, family, counts), name in sorted(_CATALOG_FILES.items()):
        out.append(CatalogEntry(v, Profile(family, counts),
                                _load_catalog_file(name), name))
    return out
