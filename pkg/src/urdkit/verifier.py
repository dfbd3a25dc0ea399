"""Independent validation of classes and decompositions.

Everything is recomputed from the block tuples using only the core model,
so the checks do not share logic with the construction pipelines they
police. Reports collect every violation instead of failing fast; that is
what makes them useful as search diagnostics.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .model import (
    FAMILIES,
    Decomposition,
    MalformedBlockError,
    ParallelClass,
    Profile,
    UrdError,
    block_edge_list,
    canonicalize_block,
    kind_arity,
    kind_edge_count,
)

BAD_BLOCK_SHAPE = "BadBlockShape"
REPEATED_VERTEX_IN_CLASS = "RepeatedVertexInClass"
NOT_SPANNING = "NotSpanning"
EDGE_REUSE = "EdgeReuse"
INCOMPLETE_COVER = "IncompleteCover"
PROFILE_MISMATCH = "ProfileMismatch"
WRONG_ORDER = "WrongOrder"


@dataclass
class VerificationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, detail: str) -> None:
        self.violations.append((code, detail))

    def render(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{code}\t{detail}" for code, detail in self.violations)


def _check_class(pc: ParallelClass, v: int, where: str, report: VerificationReport) -> bool:
    """Class-level checks; returns True when the blocks are shape-clean."""
    clean = True
    try:
        kind_arity(pc.kind)
    except MalformedBlockError as exc:
        report.add(BAD_BLOCK_SHAPE, f"{where}{exc}")
        return False
    for b in pc.blocks:
        if b.kind != pc.kind:
            report.add(BAD_BLOCK_SHAPE,
                       f"{where}block {b.vertices} has kind {b.kind} in a {pc.kind} class")
            clean = False
            continue
        try:
            if canonicalize_block(b) != b:
                report.add(BAD_BLOCK_SHAPE,
                           f"{where}block {b.vertices} is not in canonical form")
                clean = False
        except MalformedBlockError as exc:
            report.add(BAD_BLOCK_SHAPE, f"{where}{exc}")
            clean = False
            continue
        bad = [x for x in b.vertices if x < 0 or x >= v]
        if bad:
            report.add(WRONG_ORDER,
                       f"{where}vertex {bad[0]} outside 0..{v - 1}")
            clean = False
    counts = Counter(x for b in pc.blocks for x in b.vertices if 0 <= x < v)
    for x, n in sorted(counts.items()):
        if n > 1:
            report.add(REPEATED_VERTEX_IN_CLASS,
                       f"{where}vertex {x} covered {n} times")
    missing = [x for x in range(v) if counts[x] == 0]
    if missing:
        report.add(NOT_SPANNING, f"{where}vertices {missing} uncovered")
    return clean


def verify_class(pc: ParallelClass, v: int) -> VerificationReport:
    """Check one parallel class: uniform kind, valid blocks, exact cover of 0..v-1."""
    report = VerificationReport()
    if v < 2:
        report.add(WRONG_ORDER, f"order v={v} too small")
        return report
    _check_class(pc, v, "", report)
    return report


def verify(d: Decomposition, expected: Profile | None = None) -> VerificationReport:
    """Check a decomposition and, optionally, its class-count profile.

    Violations: per-class problems, edge reuse across classes, incomplete
    cover of the complete graph, and profile mismatches.
    """
    report = VerificationReport()
    if d.v < 2:
        report.add(WRONG_ORDER, f"order v={d.v} too small")
        return report
    clean_classes = []
    for i, pc in enumerate(d.classes):
        clean = _check_class(pc, d.v, f"class {i}: ", report)
        clean_classes.append(clean)

    seen: set[tuple[int, int]] = set()
    for i, pc in enumerate(d.classes):
        if not clean_classes[i]:
            continue
        for b in pc.blocks:
            for e in block_edge_list(b):
                if e in seen:
                    report.add(EDGE_REUSE, f"class {i}: edge {e} already used")
                else:
                    seen.add(e)
    total = d.v * (d.v - 1) // 2
    if len(seen) != total:
        report.add(INCOMPLETE_COVER,
                   f"{len(seen)} of {total} edges covered")
    elif all(clean_classes) and not any(c == EDGE_REUSE for c, _ in report.violations):
        # Per-class edge counts must add up to the size of the complete
        # graph; implied by the structural checks above, kept as a guard.
        weighted = sum((d.v // kind_arity(pc.kind)) * kind_edge_count(pc.kind)
                       for pc in d.classes)
        assert weighted == total, "class edge counts inconsistent with cover"

    if expected is not None:
        fam_kinds = FAMILIES[expected.family]
        counts = Counter(pc.kind for pc in d.classes)
        foreign = sorted(set(counts) - set(fam_kinds))
        if foreign:
            report.add(PROFILE_MISMATCH,
                       f"kinds {foreign} not in family {expected.family}")
        actual = tuple(counts.get(k, 0) for k in fam_kinds)
        if actual != expected.counts:
            report.add(PROFILE_MISMATCH,
                       f"class counts {actual} != expected {expected.counts}")
    return report


def profile_of(d: Decomposition, family: str | None = None) -> Profile:
    """Count classes by kind in a family's canonical order.

    The decomposition must pass the structural checks. When no family is
    given, the smallest family containing the kinds present is used; a
    decomposition of matchings alone is reported in the k2p3k3 family when
    6 | v, else in k2p4c4.
    """
    report = verify(d)
    if not report.ok:
        raise UrdError(f"cannot profile an invalid decomposition:\n{report.render()}")
    kinds_present = {pc.kind for pc in d.classes}
    if family is None:
        fits = [fam for fam in ("p4c4", "k2p3k3", "k2p4c4")
                if kinds_present <= set(FAMILIES[fam])]
        if not fits:
            raise UrdError(f"kinds {sorted(kinds_present)} do not fit a known family")
        if kinds_present <= {"k2"}:
            # matchings alone fit several families; pick by divisibility
            if d.v % 6 == 0:
                family = "k2p3k3"
            elif d.v % 4 == 0:
                family = "k2p4c4"
            else:
                family = fits[0]
        else:
            family = fits[0]
    else:
        if family not in FAMILIES:
            raise UrdError(f"unknown family {family!r}")
        if not kinds_present <= set(FAMILIES[family]):
            raise UrdError(
                f"kinds {sorted(kinds_present)} do not fit family {family}")
    counts = Counter(pc.kind for pc in d.classes)
    return Profile(family, tuple(counts.get(k, 0) for k in FAMILIES[family]))
