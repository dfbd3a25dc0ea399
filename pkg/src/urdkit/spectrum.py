"""Admissible class-count profiles and witness constructions.

Edge counting pins down the admissible profiles. A matching class carries
v/2 edges, a 3-path class 2v/3, a 4-path class 3v/4, and a triangle or
4-cycle class v, so a decomposition of K_v into (m, p, t) classes of
{k2, p3, k3} forces 3m + 4p + 6t = 3v - 3, one into (m, p, c) classes of
{k2, p4, c4} forces 2m + 3p + 4c = 2v - 2, and one into (p, c) classes of
{p4, c4} forces 3p + 4c = 2v - 2. The parity consequences (m odd in the
first family, p even with p mod 4 coupled to m's parity in the second,
p = 2 + 4x in the third) all follow from those equations.

Witnesses come from the construction pipelines below; an exhaustive
backtracking oracle decides feasibility outright at small orders,
including the tuples the enumerators exclude as known-nonexistent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .constructions import (
    KnownNonexistentError,
    c4_blowup,
    catalog_lookup,
    matching_triangle_system,
    one_factorization,
)
from .metamorphosis import meta_matching_c4, meta_three_c4, meta_two_c4, meta_two_k3
from .model import FAMILIES, Decomposition, ParallelClass, Profile, UrdError
from .search import SearchBudget, SearchTimeoutError, find_resolution
from .verifier import verify


class InadmissibleProfileError(UrdError, ValueError):
    """The requested profile fails the family's arithmetic conditions."""


# Known-nonexistent single matching + all-triangle tuples at small orders.
_EXCLUSIONS = {
    ("k2p3k3", 6): {(1, 0, 2)},
    ("k2p3k3", 12): {(1, 0, 5)},
}


@dataclass(frozen=True)
class AdmissibleSet:
    v: int
    family: str
    tuples: frozenset[tuple[int, ...]]
    complex_only: bool
    diagnostic: str = ""


def _k2p3k3_equation(v: int) -> list[tuple[int, int, int]]:
    target = 3 * v - 3
    out = []
    for m in range(target // 3 + 1):
        for p in range((target - 3 * m) // 4 + 1):
            rem = target - 3 * m - 4 * p
            if rem >= 0 and rem % 6 == 0:
                out.append((m, p, rem // 6))
    return out


def _k2p4c4_equation(v: int) -> list[tuple[int, int, int]]:
    target = 2 * v - 2
    out = []
    for m in range(target // 2 + 1):
        for p in range((target - 2 * m) // 3 + 1):
            rem = target - 2 * m - 3 * p
            if rem >= 0 and rem % 4 == 0:
                out.append((m, p, rem // 4))
    return out


def _p4c4_equation(v: int) -> list[tuple[int, int]]:
    target = 2 * v - 2
    out = []
    for p in range(target // 3 + 1):
        rem = target - 3 * p
        if rem >= 0 and rem % 4 == 0:
            out.append((p, rem // 4))
    return out


def admissible_k2p3k3(v: int, complex_only: bool = True) -> AdmissibleSet:
    """Admissible (m, p, t) for matchings + 3-paths + triangles on K_v.

    Requires 6 | v. The equation forces m odd and 3 | p; the tuples
    (1,0,2) at v=6 and (1,0,5) at v=12 are excluded as known-nonexistent.
    With complex_only, all three counts must be positive, which also needs
    v >= 12.
    """
    if v < 2 or v % 6:
        return AdmissibleSet(v, "k2p3k3", frozenset(), complex_only,
                             f"order {v} is not a positive multiple of 6")
    tuples = set(_k2p3k3_equation(v))
    for m, p, t in tuples:
        assert m % 2 == 1 and p % 3 == 0  # forced by the equation
    tuples -= _EXCLUSIONS.get(("k2p3k3", v), set())
    if complex_only:
        if v < 12:
            return AdmissibleSet(v, "k2p3k3", frozenset(), True,
                                 f"no complex decomposition exists below order 12")
        tuples = {tup for tup in tuples if all(c > 0 for c in tup)}
    return AdmissibleSet(v, "k2p3k3", frozenset(tuples), complex_only)


def admissible_k2p4c4(v: int, complex_only: bool = True) -> AdmissibleSet:
    """Admissible (m, p, c) for matchings + 4-paths + 4-cycles on K_v.

    Requires 4 | v. The equation forces p even, and m even exactly when
    p = 2 (mod 4). With complex_only, all counts positive (needs v >= 8).
    """
    if v < 2 or v % 4:
        return AdmissibleSet(v, "k2p4c4", frozenset(), complex_only,
                             f"order {v} is not a positive multiple of 4")
    tuples = set(_k2p4c4_equation(v))
    for m, p, c in tuples:
        assert p % 2 == 0
        assert (p % 4 == 2) == (m % 2 == 0)  # parity coupling, forced
    if complex_only:
        if v < 8:
            return AdmissibleSet(v, "k2p4c4", frozenset(), True,
                                 f"no complex decomposition exists below order 8")
        tuples = {tup for tup in tuples if all(c > 0 for c in tup)}
    return AdmissibleSet(v, "k2p4c4", frozenset(tuples), complex_only)


def admissible_p4c4(v: int) -> AdmissibleSet:
    """Admissible (p, c), both positive, for 4-paths + 4-cycles on K_v.

    Requires 4 | v; the equation forces p = 2 + 4x.
    """
    if v < 2 or v % 4:
        return AdmissibleSet(v, "p4c4", frozenset(), True,
                             f"order {v} is not a positive multiple of 4")
    tuples = {(p, c) for p, c in _p4c4_equation(v) if p >= 1 and c >= 1}
    for p, c in tuples:
        assert p % 4 == 2  # forced by the equation mod 4
    return AdmissibleSet(v, "p4c4", frozenset(tuples), True)


def split_c4_class(pc: ParallelClass) -> tuple[ParallelClass, ParallelClass]:
    """Two spanning edge-disjoint matchings from a 4-cycle class: opposite
    edges of each cycle go to the same matching."""
    if pc.kind != "c4":
        raise UrdError(f"expected a c4 class, got {pc.kind}")
    m1, m2 = [], []
    for b in pc.blocks:
        w, x, y, z = b.vertices
        m1 += [(w, x), (y, z)]
        m2 += [(x, y), (w, z)]
    return ParallelClass.of("k2", m1), ParallelClass.of("k2", m2)


def _checked(d: Decomposition, profile: Profile) -> Decomposition:
    report = verify(d, profile)
    if not report.ok:
        raise UrdError(
            f"internal error: constructed decomposition fails verification:\n{report.render()}")
    return d


def construct_k2p3k3(v: int, m: int, p: int, t: int,
                     budget: SearchBudget | None = None) -> Decomposition:
    """A verified decomposition of K_v into m matchings, p 3-path classes
    and t triangle classes.

    Routes: the full matching case is the round-robin 1-factorization;
    order 12 with m=1 starts from the catalog design; everything else
    takes a matching+triangle system and converts pairs of triangle
    classes into triples of 3-path classes.
    """
    profile = Profile("k2p3k3", (m, p, t))
    if profile.is_complex() and v < 12:
        raise KnownNonexistentError(
            f"no complex matching/3-path/triangle decomposition exists at order {v}")
    if (v, (m, p, t)) in ((6, (1, 0, 2)), (12, (1, 0, 5))):
        raise KnownNonexistentError(
            f"profile {(m, p, t)} at order {v} is known not to exist")
    adm = admissible_k2p3k3(v, complex_only=False)
    if (m, p, t) not in adm.tuples:
        raise InadmissibleProfileError(
            adm.diagnostic or f"profile {(m, p, t)} is not admissible at order {v}")

    x = p // 3
    classes: list[ParallelClass]
    if m == v - 1:
        classes = list(one_factorization(v))
    elif v == 6:
        if (m, p, t) == (3, 0, 1):
            classes = list(catalog_lookup(6, profile).classes)
        else:
            found = find_resolution(v, [("k2", m), ("p3", p)],
                                    budget=budget or SearchBudget(time_limit=60.0))
            if found is None:
                raise UrdError("internal error: order-6 witness search exhausted")
            classes = found
    elif v == 12 and m == 1:
        base = catalog_lookup(12, Profile("k2p3k3", (1, 3, 3)))
        matchings = [c for c in base.classes if c.kind == "k2"]
        paths = [c for c in base.classes if c.kind == "p3"]
        triangles = [c for c in base.classes if c.kind == "k3"]
        for _ in range(x - 1):  # each conversion eats 2 triangle classes
            paths += list(meta_two_k3(triangles[0], triangles[1], budget))
            triangles = triangles[2:]
        classes = matchings + paths + triangles
    else:
        matchings, triangles = matching_triangle_system(v, m, budget)
        paths: list[ParallelClass] = []
        for _ in range(x):
            paths += list(meta_two_k3(triangles[0], triangles[1], budget))
            triangles = triangles[2:]
        classes = matchings + paths + triangles
    d = Decomposition(v, tuple(classes))
    return _checked(d, profile)


def construct_k2p4c4(v: int, m: int, p: int, c: int) -> Decomposition:
    """A verified decomposition of K_v into m matchings, p 4-path classes
    and c 4-cycle classes.

    Starts from the doubling construction (one matching + v/2 - 1 cycle
    classes). With p = 2x, an even x converts x/2 triples of cycle classes
    into paths; an odd x converts (x-1)/2 triples plus one pair, whose
    byproduct matching supplies the even m. Surplus cycle classes are
    split into matching pairs; exactly c cycle classes are kept.
    """
    profile = Profile("k2p4c4", (m, p, c))
    if v < 8:
        raise InadmissibleProfileError(
            f"the construction pipeline starts at order 8, got v={v}")
    adm = admissible_k2p4c4(v, complex_only=False)
    if (m, p, c) not in adm.tuples:
        raise InadmissibleProfileError(
            adm.diagnostic or f"profile {(m, p, c)} is not admissible at order {v}")
    if m == 0:
        d = construct_p4c4(v, p, c)
        return _checked(Decomposition(v, d.classes), profile)

    x = p // 2
    cycle_classes, base_matching = c4_blowup(v)
    matchings = [base_matching]
    paths: list[ParallelClass] = []
    idx = 0
    triples = x // 2 if x % 2 == 0 else (x - 1) // 2
    for _ in range(triples):
        paths += list(meta_three_c4(*cycle_classes[idx:idx + 3]))
        idx += 3
    if x % 2 == 1:
        q1, q2, extra = meta_two_c4(cycle_classes[idx], cycle_classes[idx + 1])
        paths += [q1, q2]
        matchings.append(extra)
        idx += 2
    kept = cycle_classes[idx:idx + c]
    surplus = cycle_classes[idx + c:]
    if len(kept) != c or len(matchings) + 2 * len(surplus) != m:
        raise UrdError(f"internal error: class budget broken for {(m, p, c)} at v={v}")
    for pc in surplus:
        matchings += list(split_c4_class(pc))
    d = Decomposition(v, tuple(matchings + paths + kept))
    return _checked(d, profile)


def construct_p4c4(v: int, p: int, c: int) -> Decomposition:
    """A verified decomposition of K_v into p 4-path classes and c 4-cycle
    classes.

    From the doubling construction, the matching and one cycle class chain
    into two path classes; with p = 2 + 4x, a further x triples of cycle
    classes convert to paths and the rest are kept.
    """
    profile = Profile("p4c4", (p, c))
    if v < 8:
        raise InadmissibleProfileError(
            f"the construction pipeline starts at order 8, got v={v}")
    adm = admissible_p4c4(v)
    if (p, c) not in adm.tuples:
        raise InadmissibleProfileError(
            adm.diagnostic or f"profile {(p, c)} is not admissible at order {v}")
    x = (p - 2) // 4
    cycle_classes, base_matching = c4_blowup(v)
    p1, p2 = meta_matching_c4(base_matching, cycle_classes[0])
    paths = [p1, p2]
    idx = 1
    for _ in range(x):
        paths += list(meta_three_c4(*cycle_classes[idx:idx + 3]))
        idx += 3
    kept = cycle_classes[idx:]
    if len(kept) != c:
        raise UrdError(f"internal error: class budget broken for {(p, c)} at v={v}")
    d = Decomposition(v, tuple(paths + kept))
    return _checked(d, profile)


def construct(v: int, profile: Profile,
              budget: SearchBudget | None = None) -> Decomposition:
    """Dispatch to the family pipeline for the given profile."""
    if profile.family == "k2p3k3":
        return construct_k2p3k3(v, *profile.counts, budget=budget)
    if profile.family == "k2p4c4":
        return construct_k2p4c4(v, *profile.counts)
    return construct_p4c4(v, *profile.counts)


# Class build order for the exhaustive search: exact-degree kinds first
# (cycles and triangles pin vertex degrees, then matchings), path classes
# last, when their per-vertex inner budgets are exact and prune hardest.
_SEARCH_ORDER = {
    "k2p3k3": (("k3", 2), ("k2", 0), ("p3", 1)),
    "k2p4c4": (("c4", 2), ("k2", 0), ("p4", 1)),
    "p4c4": (("c4", 1), ("p4", 0)),
}


@dataclass(frozen=True)
class ExhaustiveResult:
    """Feasibility of every equation-satisfying tuple, decided by search.

    Tuples left undecided when the budget runs out are listed separately;
    complete is True only when nothing was left undecided.
    """

    v: int
    family: str
    feasible: frozenset[tuple[int, ...]]
    infeasible: frozenset[tuple[int, ...]]
    undecided: frozenset[tuple[int, ...]]
    witnesses: dict[tuple[int, ...], Decomposition] = field(default_factory=dict)
    diagnostic: str = ""

    @property
    def complete(self) -> bool:
        return not self.undecided

    def admissible_set(self) -> AdmissibleSet:
        return AdmissibleSet(self.v, self.family, self.feasible, False, self.diagnostic)


def exhaustive_spectrum(v: int, family: str,
                        budget: SearchBudget | None = None) -> ExhaustiveResult:
    """Decide existence for every equation-satisfying tuple by exhaustive
    backtracking with symmetry breaking (first class pinned, same-kind
    classes ordered). Supported up to v = 12; the search space explodes
    beyond that."""
    if family not in FAMILIES:
        raise UrdError(f"unknown family {family!r}")
    if v > 12:
        raise UrdError(f"exhaustive search is supported for v <= 12, got {v}")
    divisor = 6 if family == "k2p3k3" else 4
    if v < 2 or v % divisor:
        return ExhaustiveResult(v, family, frozenset(), frozenset(), frozenset(),
                                diagnostic=f"order {v} is not a positive multiple of {divisor}")
    if family == "k2p3k3":
        tuples = _k2p3k3_equation(v)
    elif family == "k2p4c4":
        tuples = _k2p4c4_equation(v)
    else:
        tuples = _p4c4_equation(v)

    budget = budget or SearchBudget(time_limit=60.0)
    deadline = (time.monotonic() + budget.time_limit
                if budget.time_limit is not None else None)
    order = _SEARCH_ORDER[family]
    fam_kinds = FAMILIES[family]
    feasible, infeasible, undecided = set(), set(), set()
    witnesses: dict[tuple[int, ...], Decomposition] = {}
    for tup in sorted(tuples):
        remaining = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                undecided.add(tup)
                continue
        kinds = [(kind, tup[pos]) for kind, pos in order]
        try:
            found = find_resolution(
                v, kinds,
                budget=SearchBudget(time_limit=remaining, node_limit=budget.node_limit))
        except SearchTimeoutError:
            undecided.add(tup)
            continue
        if found is None:
            infeasible.add(tup)
        else:
            feasible.add(tup)
            by_kind = {k: [c for c in found if c.kind == k] for k in fam_kinds}
            ordered = [c for k in fam_kinds for c in by_kind[k]]
            witnesses[tup] = Decomposition(v, tuple(ordered))
    return ExhaustiveResult(v, family, frozenset(feasible), frozenset(infeasible),
                            frozenset(undecided), witnesses)
