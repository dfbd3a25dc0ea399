import pytest

from urdkit.constructions import (
    KnownNonexistentError,
    c4_blowup,
    catalog_entries,
    catalog_lookup,
    matching_triangle_system,
    one_factorization,
)
from urdkit.model import (
    Decomposition,
    InvalidOrderError,
    Profile,
    UrdError,
    complete_graph_edge_set,
)
from urdkit.search import SearchBudget
from urdkit.verifier import profile_of, verify


def test_one_factorization_smallest():
    classes = one_factorization(2)
    assert len(classes) == 1
    assert [b.vertices for b in classes[0].blocks] == [(0, 1)]


@pytest.mark.parametrize("v", [2, 6, 8, 12, 20])
def test_one_factorization_partitions(v):
    classes = one_factorization(v)
    assert len(classes) == v - 1
    union = set()
    for pc in classes:
        assert pc.is_spanning(v)
        for e in pc.edge_list():
            assert e not in union
            union.add(e)
    assert union == complete_graph_edge_set(v)


def test_one_factorization_profiles():
    assert profile_of(Decomposition(6, tuple(one_factorization(6)))) == \
        Profile("k2p3k3", (5, 0, 0))
    assert profile_of(Decomposition(12, tuple(one_factorization(12)))) == \
        Profile("k2p3k3", (11, 0, 0))


def test_one_factorization_rejects_odd():
    with pytest.raises(InvalidOrderError):
        one_factorization(7)


@pytest.mark.parametrize("v,classes_expected,total", [(8, 3, 28), (12, 5, 66)])
def test_c4_blowup_counts(v, classes_expected, total):
    classes, f = c4_blowup(v)
    assert len(classes) == classes_expected
    assert classes_expected * v + v // 2 == total == v * (v - 1) // 2
    d = Decomposition(v, tuple(classes + [f]))
    assert verify(d).ok


def test_c4_blowup_matching_is_doubled_pairs():
    _, f = c4_blowup(12)
    assert [b.vertices for b in f.blocks] == [(2 * a, 2 * a + 1) for a in range(6)]


def test_c4_blowup_16_profile():
    classes, f = c4_blowup(16)
    d = Decomposition(16, tuple(classes + [f]))
    assert verify(d, Profile("k2p4c4", (1, 0, 7))).ok


def test_c4_blowup_rejects_bad_order():
    with pytest.raises(InvalidOrderError):
        c4_blowup(10)
    with pytest.raises(InvalidOrderError):
        c4_blowup(4)


@pytest.mark.parametrize("m", [3, 9])
def test_matching_triangle_system_order_12(m):
    matchings, triangles = matching_triangle_system(12, m)
    assert len(matchings) == m
    assert len(triangles) == (11 - m) // 2
    d = Decomposition(12, tuple(matchings + triangles))
    assert verify(d, Profile("k2p3k3", (m, 0, len(triangles)))).ok


def test_matching_triangle_system_cache_returns_copies():
    a = matching_triangle_system(12, 5)
    b = matching_triangle_system(12, 5)
    assert a == b
    b[0].pop()
    assert matching_triangle_system(12, 5) == a


def test_matching_triangle_known_nonexistent():
    with pytest.raises(KnownNonexistentError):
        matching_triangle_system(12, 1)
    with pytest.raises(KnownNonexistentError):
        matching_triangle_system(6, 1)
    with pytest.raises(KnownNonexistentError):
        matching_triangle_system(6, 3)


def test_matching_triangle_parameter_checks():
    with pytest.raises(InvalidOrderError):
        matching_triangle_system(14, 1)
    with pytest.raises(UrdError):
        matching_triangle_system(12, 2)
    with pytest.raises(UrdError):
        matching_triangle_system(12, 11)  # t would be 0


def test_matching_triangle_order_18():
    matchings, triangles = matching_triangle_system(18, 11, budget=SearchBudget(time_limit=60))
    d = Decomposition(18, tuple(matchings + triangles))
    assert verify(d, Profile("k2p3k3", (11, 0, 3))).ok


def test_catalog_lookup():
    d = catalog_lookup(6, Profile("k2p3k3", (3, 0, 1)))
    assert d is not None and len(d.classes) == 4
    assert verify(d, Profile("k2p3k3", (3, 0, 1))).ok
    d = catalog_lookup(12, Profile("k2p3k3", (1, 3, 3)))
    assert d is not None and len(d.classes) == 7
    assert catalog_lookup(6, Profile("k2p3k3", (1, 0, 2))) is None
    assert catalog_lookup(6, Profile("k2p3k3", (1, 3, 0))) is None
    assert catalog_lookup(8, Profile("k2p4c4", (2, 2, 1))) is None


def test_catalog_entries_all_verify():
    entries = catalog_entries()
    assert len(entries) == 2
    for entry in entries:
        assert verify(entry.decomposition, entry.profile).ok


def test_catalog_files_are_bit_exact():
    from importlib import resources

    from urdkit.io import parse_urd, serialize_urd
    for entry in catalog_entries():
        raw = resources.files("urdkit").joinpath("data", entry.source).read_text("utf-8")
        doc = parse_urd(raw)
        assert serialize_urd(doc.decomposition, family=doc.family,
                             profile=doc.profile) == raw
