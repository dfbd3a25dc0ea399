"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as the
criteria complete. Every tolerance (sets, budgets, runtimes) is pinned
here.
"""

import random
import time
from contextlib import contextmanager

import pytest

from urdkit.cli import main
from urdkit.constructions import KnownNonexistentError, c4_blowup
from urdkit.gf2 import Gf2System, gf2_solve, normalize_to_basic
from urdkit.metamorphosis import (
    MetaInput,
    build_system,
    meta_cycles_conjecture,
    meta_matching_c4,
    meta_three_c4,
    meta_two_c4,
)
from urdkit.model import Profile
from urdkit.search import SearchBudget, find_resolution
from urdkit.spectrum import (
    admissible_k2p3k3,
    admissible_k2p4c4,
    admissible_p4c4,
    construct_k2p3k3,
    construct_k2p4c4,
    construct_p4c4,
)
from urdkit.verifier import verify


@contextmanager
def criterion(number, description):
    t0 = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({description}): FAIL")
        raise
    print(f"criterion {number} ({description}): PASS in {time.monotonic() - t0:.1f}s")


def test_criterion_1_order_6_exhaustive_spectrum(capsys):
    with criterion(1, "order-6 spectrum, exhaustively decided"):
        t0 = time.monotonic()
        code = main(["spectrum", "--family", "k2p3k3", "--v", "6",
                     "--all", "--exhaustive"])
        out = capsys.readouterr().out
        elapsed = time.monotonic() - t0
        assert code == 0
        rows = {}
        for line in out.strip().splitlines()[1:]:
            parts = line.split("\t")
            rows[(int(parts[2]), int(parts[3]), int(parts[4]))] = parts[5]
        feasible = {t for t, s in rows.items() if s == "yes"}
        assert feasible == {(5, 0, 0), (3, 0, 1), (1, 3, 0)}
        assert rows[(1, 0, 2)] == "no"
        assert elapsed < 60.0
    print(capsys.readouterr().out, end="")


def test_criterion_2_order_12_constructive_spectrum():
    published = [(11, 0, 0), (9, 0, 1), (7, 3, 0), (7, 0, 2), (5, 0, 3), (5, 3, 1),
                 (3, 6, 0), (3, 3, 2), (3, 0, 4), (1, 6, 1), (1, 3, 3)]
    with criterion(2, "order-12 witnesses for all 11 feasible profiles"):
        t0 = time.monotonic()
        for tup in published:
            d = construct_k2p3k3(12, *tup, budget=SearchBudget(time_limit=60))
            assert verify(d, Profile("k2p3k3", tup)).ok, tup
        with pytest.raises(KnownNonexistentError):
            construct_k2p3k3(12, 1, 0, 5)
        # (3, 0, 2) is a misprint for (3, 0, 4): it fails the edge count
        assert 3 * 3 + 4 * 0 + 6 * 2 == 21 != 3 * 12 - 3
        assert (3, 0, 2) not in admissible_k2p3k3(12, complex_only=False).tuples
        assert (3, 0, 4) in admissible_k2p3k3(12, complex_only=False).tuples
        assert time.monotonic() - t0 < 300.0


def test_criterion_3_k2p4c4_round_trip():
    with criterion(3, "matching/4-path/4-cycle round trip at v=8..20"):
        assert admissible_k2p4c4(8).tuples == {(2, 2, 1)}
        for v in (8, 12, 16, 20):
            t0 = time.monotonic()
            tuples = sorted(admissible_k2p4c4(v).tuples)
            assert tuples
            for m, p, c in tuples:
                d = construct_k2p4c4(v, m, p, c)
                assert verify(d, Profile("k2p4c4", (m, p, c))).ok, (v, m, p, c)
            assert time.monotonic() - t0 < 10.0, f"v={v} too slow"


def test_criterion_4_p4c4_round_trip():
    with criterion(4, "4-path/4-cycle round trip at v=8..20"):
        assert admissible_p4c4(8).tuples == {(2, 2)}
        assert admissible_p4c4(12).tuples == {(2, 4), (6, 1)}
        for v in (8, 12, 16, 20):
            t0 = time.monotonic()
            tuples = sorted(admissible_p4c4(v).tuples)
            assert tuples
            for p, c in tuples:
                d = construct_p4c4(v, p, c)
                assert verify(d, Profile("p4c4", (p, c))).ok, (v, p, c)
            assert time.monotonic() - t0 < 10.0, f"v={v} too slow"


def test_criterion_5_k2p3k3_round_trip():
    with criterion(5, "matching/3-path/triangle round trip at v=12 and v=18"):
        for tup in sorted(admissible_k2p3k3(12).tuples):
            d = construct_k2p3k3(12, *tup)
            assert verify(d, Profile("k2p3k3", tup)).ok, tup
        for m, p, t in sorted(admissible_k2p3k3(18).tuples):
            if m in (9, 11):
                d = construct_k2p3k3(18, m, p, t, budget=SearchBudget(time_limit=60))
                assert verify(d, Profile("k2p3k3", (m, p, t))).ok, (m, p, t)


def test_criterion_6_metamorphosis_property_suite():
    with criterion(6, "900 seeded metamorphosis runs at v=8,16,24"):
        t0 = time.monotonic()
        runs = 0
        for v in (8, 16, 24):
            rng = random.Random(6_000 + v)
            base_classes, base_matching = c4_blowup(v)
            for _ in range(100):
                perm = list(range(v))
                rng.shuffle(perm)
                classes = [c.relabel(perm) for c in base_classes]
                matching = base_matching.relabel(perm)

                p1, p2, m = meta_two_c4(classes[0], classes[1])
                _check_meta(v, [p1, p2, m], [classes[0], classes[1]],
                            kinds=["k2", "p4", "p4"])
                q1, q2 = meta_matching_c4(matching, classes[2])
                _check_meta(v, [q1, q2], [matching, classes[2]],
                            kinds=["p4", "p4"])
                quad = meta_three_c4(classes[0], classes[1], classes[2])
                _check_meta(v, list(quad), list(classes[:3]),
                            kinds=["p4", "p4", "p4", "p4"])
                runs += 3
        elapsed = time.monotonic() - t0
        assert runs == 900
        assert elapsed < 60.0, f"{elapsed:.1f}s for 900 runs"


def _check_meta(v, outputs, inputs, kinds):
    assert sorted(pc.kind for pc in outputs) == sorted(kinds)
    union_in, union_out = set(), set()
    for pc in inputs:
        for e in pc.edge_list():
            assert e not in union_in
            union_in.add(e)
    for pc in outputs:
        assert pc.is_spanning(v)
        for e in pc.edge_list():
            assert e not in union_out
            union_out.add(e)
    assert union_in == union_out


def test_criterion_7_gf2_oracle_equivalence():
    with criterion(7, "GF(2) solver vs brute force; basic-form normalization"):
        rng = random.Random(77_0001)
        for _ in range(200):
            n = rng.randint(1, 16)
            rows = [(rng.sample(range(n), rng.randint(1, n)), rng.randint(0, 1))
                    for _ in range(rng.randint(1, 12))]
            system = Gf2System.build(n, rows)
            oracle = None
            for a in range(1 << n):
                if all((a & mask).bit_count() & 1 == rhs for mask, rhs in system.rows):
                    oracle = a
                    break
            got = gf2_solve(system)
            assert (got is None) == (oracle is None)
            if got is not None:
                assert system.check(got.bits)
        for v in (8, 12, 16):
            classes, f = c4_blowup(v)
            for inp in (MetaInput(v, "two-c4", (classes[0], classes[1])),
                        MetaInput(v, "matching-c4", (f, classes[0]))):
                system, _ = build_system(inp)
                xi = normalize_to_basic(system, gf2_solve(system))
                for blk in system.c_blocks:
                    assert sum(xi.bits[i] for i in blk) == 1


def test_criterion_8_nonexistence_guards(capsys):
    with criterion(8, "known-nonexistent requests fail cleanly with exit 1"):
        complex_at_6 = ["1 3 1", "3 3 1", "1 6 2"]
        for profile in complex_at_6:
            code = main(["construct", "--family", "k2p3k3", "--v", "6",
                         "--profile", profile])
            assert code == 1
        code = main(["construct", "--family", "k2p3k3", "--v", "6", "--profile", "1 0 2"])
        assert code == 1
        code = main(["construct", "--family", "k2p3k3", "--v", "12", "--profile", "1 0 5"])
        assert code == 1
        code = main(["search", "--matching-triangles", "--v", "12", "--m", "1"])
        assert code == 1
        err = capsys.readouterr().err
        assert "Traceback" not in err
    print(capsys.readouterr().out, end="")


def test_criterion_9_cycle_probe_order_10():
    with criterion(9, "5-cycle probe at order 10 terminates and reports"):
        pieces = find_resolution(10, [("c5", 4), ("k2", 1)],
                                 budget=SearchBudget(time_limit=240))
        assert pieces is not None
        c5_classes = tuple(pc for pc in pieces if pc.kind == "c5")
        assert len(c5_classes) == 4
        t0 = time.monotonic()
        outcome = meta_cycles_conjecture(5, c5_classes,
                                         budget=SearchBudget(time_limit=300))
        elapsed = time.monotonic() - t0
        assert elapsed < 310.0
        assert outcome.status in ("solved", "exhausted", "timeout")
        print(f"  probe outcome: {outcome.status} in {elapsed:.1f}s")
        if outcome.status == "solved":
            # no general claim; just that the produced classes are valid
            union = set()
            for pc in outcome.classes:
                assert pc.is_spanning(10)
                for e in pc.edge_list():
                    assert e not in union
                    union.add(e)
            assert len(union) == 40
