"""Dense linear algebra over GF(2).

Rows are stored as integer bitmasks (one bit per variable) together with a
right-hand-side bit, so row operations are single XORs on arbitrary-width
machine integers. Solving is Gaussian elimination with a fixed pivot rule
(lowest-index pivot column, first available row), which makes every
downstream construction reproducible byte for byte. Free variables are set
to 0; any particular solution works because basic-form normalization fixes
the structure afterwards.

A system may carry "c-blocks": disjoint groups of variable indices (the
edge sets of the cycles the system was built from). Normalization flips
whole blocks until every block holds exactly one 1; disjointness makes a
single pass sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import UrdError


class Gf2Error(UrdError):
    pass


class NotASolutionError(Gf2Error):
    """The supplied bits do not satisfy the system."""


class NormalizationImpossibleError(Gf2Error):
    """A c-block cannot be brought to a single 1 by whole-block complement."""


@dataclass(frozen=True)
class Gf2System:
    n_vars: int
    rows: tuple[tuple[int, int], ...]  # (support bitmask, rhs bit)
    c_blocks: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def build(cls,
              n_vars: int,
              rows: Iterable[tuple[Iterable[int], int]],
              c_blocks: Iterable[Iterable[int]] = ()) -> "Gf2System":
        """Assemble a system from (support index set, rhs) pairs."""
        packed = []
        for support, rhs in rows:
            mask = 0
            for i in support:
                if not 0 <= i < n_vars:
                    raise Gf2Error(f"variable index {i} outside 0..{n_vars - 1}")
                mask |= 1 << i
            if rhs not in (0, 1):
                raise Gf2Error(f"rhs must be 0 or 1, got {rhs}")
            packed.append((mask, rhs))
        blocks = []
        seen = 0
        for blk in c_blocks:
            tup = tuple(blk)
            mask = 0
            for i in tup:
                if not 0 <= i < n_vars:
                    raise Gf2Error(f"c-block index {i} outside 0..{n_vars - 1}")
                mask |= 1 << i
            if mask & seen:
                raise Gf2Error("c-blocks are not pairwise disjoint")
            seen |= mask
            blocks.append(tup)
        return cls(n_vars, tuple(packed), tuple(blocks))

    def check(self, bits: tuple[int, ...]) -> bool:
        """Do the bits satisfy every row?"""
        mask = 0
        for i, b in enumerate(bits):
            if b:
                mask |= 1 << i
        return all((mask & support).bit_count() & 1 == rhs
                   for support, rhs in self.rows)


@dataclass(frozen=True)
class Gf2Solution:
    bits: tuple[int, ...]
    basic: bool = False


def gf2_solve(system: Gf2System) -> Gf2Solution | None:
    """One solution of the system, or None when it is inconsistent."""
    rows = [[support, rhs] for support, rhs in system.rows]
    m = len(rows)
    pivots: list[tuple[int, int]] = []  # (row index, column)
    r = 0
    for col in range(system.n_vars):
        if r == m:
            break
        bit = 1 << col
        piv = next((i for i in range(r, m) if rows[i][0] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pmask, prhs = rows[r]
        for i in range(m):
            if i != r and rows[i][0] & bit:
                rows[i][0] ^= pmask
                rows[i][1] ^= prhs
        pivots.append((r, col))
        r += 1
    for i in range(r, m):
        if rows[i][0] == 0 and rows[i][1] == 1:
            return None
    bits = [0] * system.n_vars
    for ri, col in pivots:
        bits[col] = rows[ri][1]  # free variables are 0
    return Gf2Solution(tuple(bits), basic=False)


def normalize_to_basic(system: Gf2System, sol: Gf2Solution) -> Gf2Solution:
    """Flip whole c-blocks until each holds exactly one 1.

    The input must satisfy the system; the output still does (each row
    meets each block in an even number of variables when the system was
    built from parallel classes). A block whose count of ones cannot reach
    1 by complementing all of its bits is reported as impossible, which
    signals a system that was not built from a valid instance. Idempotent.
    """
    if len(sol.bits) != system.n_vars:
        raise Gf2Error(f"solution has {len(sol.bits)} bits, system has {system.n_vars} vars")
    if not system.check(sol.bits):
        raise NotASolutionError("bits do not satisfy the system")
    bits = list(sol.bits)
    for blk in system.c_blocks:
        cnt = sum(bits[i] for i in blk)
        if cnt == 1:
            continue
        if len(blk) - cnt == 1:
            for i in blk:
                bits[i] ^= 1
        else:
            raise NormalizationImpossibleError(
                f"c-block {blk} holds {cnt} ones; whole-block complement cannot reach 1")
    out = Gf2Solution(tuple(bits), basic=True)
    if not system.check(out.bits):
        raise NormalizationImpossibleError(
            "block flips broke a row; the system was not built from disjoint classes")
    return out
