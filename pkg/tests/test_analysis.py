import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from unirank.analysis import (BEYOND, century_bins, century_distribution,
                              country_distribution, overlap_curve, per_edition_century_matrix,
                              rank_plane)
from unirank.errors import InputError, UnresolvedEntityError
from unirank.extract import EditionRanking, Entity, EntityCatalog, RankedEntry
from unirank.merge import GlobalRanking

YEARS = {"oxford": 1096, "bologna": 1088, "tartu": 1632, "paris": 1150, "harvard": 1636,
         "mit": 1861, "eth": 1855, "tokyo": 1877, "warwick": 1965, "new": 2005,
         "heidelberg": 1386, "uppsala": 1477}
COUNTRY = {"oxford": "UK", "bologna": "IT", "tartu": "EE", "paris": "FR", "harvard": "US",
           "mit": "US", "eth": "CH", "tokyo": "JP", "warwick": "UK", "new": "US",
           "heidelberg": "DE", "uppsala": "SE"}
CATALOG = EntityCatalog([Entity(c, c.title(), COUNTRY[c], "EN", y) for c, y in YEARS.items()])
IDS = sorted(YEARS)


def test_overlap_examples():
    a = ["x", "y", "z"]
    assert [p.eta for p in overlap_curve(a, a).points] == [1.0, 1.0, 1.0]
    assert [p.eta for p in overlap_curve(a, ["p", "q", "r"]).points] == [0.0, 0.0, 0.0]
    c = overlap_curve(["a", "b", "c", "d"], ["b", "a", "d", "e"], 4)
    assert [p.common for p in c.points] == [0, 2, 2, 3]
    assert c.eta(4) == 0.75


def test_overlap_errors():
    with pytest.raises(InputError):
        overlap_curve(["a", "a"], ["b", "c"])
    with pytest.raises(InputError):
        overlap_curve(["a"], ["b", "c"], 2)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(IDS), unique=True), st.lists(st.sampled_from(IDS), unique=True))
def test_overlap_against_set_intersection(a, b):
    c = overlap_curve(a, b)
    assert len(c.points) == min(len(a), len(b))
    prev = 0
    for p in c.points:
        assert p.common == len(set(a[:p.j]) & set(b[:p.j]))
        assert p.eta == p.common / p.j and 0 <= p.eta <= 1
        assert p.common - prev in (0, 1, 2)
        prev = p.common
    assert overlap_curve(b, a).points == c.points


def global_of(ids):
    return GlobalRanking.from_ordered_ids(ids)


def test_rank_plane_examples():
    pts = rank_plane(global_of(["oxford", "mit"]), global_of(["oxford", "tartu"]), 10)
    as_tuples = [(p.canonical_id, p.k, p.k_star) for p in pts]
    assert as_tuples == [("oxford", 1, 1), ("mit", 2, BEYOND), ("tartu", BEYOND, 2)]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from(IDS), unique=True), st.lists(st.sampled_from(IDS), unique=True),
       st.integers(1, 12))
def test_rank_plane_against_join(a, b, top):
    pts = rank_plane(global_of(a), global_of(b), top)
    ids = [p.canonical_id for p in pts]
    assert len(ids) == len(set(ids))
    ref = {}
    for cid in set(a[:top]) | set(b[:top]):
        ref[cid] = (a.index(cid) + 1 if cid in a[:top] else None,
                    b.index(cid) + 1 if cid in b[:top] else None)
    assert {p.canonical_id: (p.k, p.k_star) for p in pts} == ref


def test_century_examples():
    d = century_distribution(["tartu"], CATALOG)
    assert d.counts[17] == 1 and d.total == 1
    assert list(d.counts) == list(range(11, 22))
    d = century_distribution(["oxford", "bologna"], CATALOG)
    assert d.counts[11] == 2


def test_century_bins_widen():
    assert century_bins([10, 15]) == list(range(10, 22))
    assert century_bins([]) == list(range(11, 22))


def brute_histogram(ids):
    out = {}
    for cid in ids:
        c = -(-YEARS[cid] // 100)
        out[c] = out.get(c, 0) + 1
    return out


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from(IDS), max_size=40), st.integers(1, 24))
def test_century_distribution_against_histogram(ids, editions):
    d = century_distribution(ids, CATALOG, editions)
    assert {c: n for c, n in d.counts.items() if n} == brute_histogram(ids)
    assert sum(d.counts.values()) == d.total == len(ids)
    assert all(d.per_edition[c] == d.counts[c] / editions for c in d.counts)
    shuffled = ids[:]
    random.Random(0).shuffle(shuffled)
    assert century_distribution(shuffled, CATALOG, editions) == d


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from(IDS), max_size=40), st.sampled_from([None, 12, 17, 19, 20]))
def test_country_distribution_against_grouping(ids, before):
    got = country_distribution(ids, CATALOG, before)
    ref = {}
    for cid in ids:
        if before is None or math.ceil(YEARS[cid] / 100) < before:
            ref[COUNTRY[cid]] = ref.get(COUNTRY[cid], 0) + 1
    assert got == ref
    assert all(v > 0 for v in got.values())
    assert list(got) == sorted(ref, key=lambda cc: (-ref[cc], cc))
    full = country_distribution(ids, CATALOG)
    assert all(got[cc] <= full[cc] for cc in got)


def test_country_distribution_empty_and_unresolved():
    assert country_distribution([], CATALOG) == {}
    with pytest.raises(UnresolvedEntityError):
        country_distribution(["ghost"], CATALOG)
    with pytest.raises(UnresolvedEntityError):
        century_distribution(["ghost"], CATALOG)


def edition(code, ids):
    return EditionRanking(code, "pagerank", tuple(RankedEntry(c, r, c, r, r)
                                                 for r, c in enumerate(ids, 1)))


def test_century_matrix():
    m = per_edition_century_matrix([edition("EN", ["mit", "eth", "tokyo"])], CATALOG)
    nonzero = [(m.editions[i], m.centuries[j]) for i, j in zip(*m.counts.nonzero())]
    assert nonzero == [("EN", 19)]
    assert m.cell("EN", 19) == 3


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.sampled_from(IDS), unique=True, max_size=10), min_size=1,
                max_size=4))
def test_century_matrix_against_brute_force(lists):
    codes = ["FR", "DE", "EN", "RU"][:len(lists)]
    m = per_edition_century_matrix([edition(c, ids) for c, ids in zip(codes, lists)], CATALOG)
    assert list(m.editions) == sorted(codes)
    for code, ids in zip(codes, lists):
        hist = brute_histogram(ids)
        for cent in m.centuries:
            assert m.cell(code, cent) == hist.get(cent, 0)
        assert m.counts[m.editions.index(code)].sum() == len(ids) <= 10
