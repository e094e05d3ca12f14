"""Overlap curves, rank-plane joins, and geography/century distributions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .extract import EditionRanking, EntityCatalog
from .merge import GlobalRanking

FIRST_CENTURY = 11
LAST_CENTURY = 21

# marks a missing coordinate in rank_plane output
BEYOND = None


@dataclass(frozen=True)
class OverlapPoint:
    j: int
    common: int
    eta: float


@dataclass(frozen=True)
class OverlapCurve:
    names: tuple[str, str]
    points: tuple[OverlapPoint, ...]

    def eta(self, j: int) -> float:
        return self.points[j - 1].eta


def overlap_curve(a: Sequence[str], b: Sequence[str], J: int | None = None,
                  names: tuple[str, str] = ("a", "b")) -> OverlapCurve:
    """Fraction of shared items among the first j of each list, for j = 1..J."""
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        raise InputError("overlap lists must not repeat items")
    limit = min(len(a), len(b))
    J = limit if J is None else J
    if not 0 <= J <= limit:
        raise InputError(f"J={J} exceeds the shorter list ({limit})")
    seen_a: set[str] = set()
    seen_b: set[str] = set()
    common = 0
    points = []
    for j in range(1, J + 1):
        x, y = a[j - 1], b[j - 1]
        seen_a.add(x)
        if x in seen_b:
            common += 1
        seen_b.add(y)
        if y in seen_a:
            common += 1
        points.append(OverlapPoint(j, common, common / j))
    return OverlapCurve(names, tuple(points))


@dataclass(frozen=True)
class PlanePoint:
    canonical_id: str
    k: int | None
    k_star: int | None


def rank_plane(pr_global: GlobalRanking, cr_global: GlobalRanking,
               top: int) -> list[PlanePoint]:
    """Join two global rankings over the union of their top slices.

    A coordinate outside the other ranking's top ``top`` is BEYOND. Sorted
    by K (BEYOND last), then K*, then id.
    """
    k = {e.canonical_id: e.global_rank for e in pr_global.entries[:top]}
    ks = {e.canonical_id: e.global_rank for e in cr_global.entries[:top]}
    points = [PlanePoint(cid, k.get(cid), ks.get(cid)) for cid in set(k) | set(ks)]
    inf = float("inf")
    points.sort(key=lambda p: (inf if p.k is None else p.k,
                               inf if p.k_star is None else p.k_star, p.canonical_id))
    return points


def century_bins(values: Iterable[int]) -> list[int]:
    vals = list(values)
    lo = min([FIRST_CENTURY, *vals])
    hi = max([LAST_CENTURY, *vals])
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class CenturyDistribution:
    counts: dict[int, int]
    per_edition: dict[int, float]
    editions: int
    total: int = 0


def _years(entities: Sequence[str], catalog: EntityCatalog) -> list[int]:
    ents = catalog.require(entities)
    for ent in ents:
        if ent.foundation_year is None:
            raise InputError(f"{ent.canonical_id} has no foundation year")
    return [ent.foundation_century for ent in ents]


def century_distribution(entities: Sequence[str], catalog: EntityCatalog,
                         editions: int = 1) -> CenturyDistribution:
    """Histogram of foundation centuries; the per-edition view divides by ``editions``.

    Bins always cover centuries 11..21 and widen if an entity falls outside.
    """
    if editions < 1:
        raise InputError("editions must be at least 1")
    centuries = _years(entities, catalog)
    c = Counter(centuries)
    counts = {cent: c.get(cent, 0) for cent in century_bins(centuries)}
    return CenturyDistribution(counts, {k: v / editions for k, v in counts.items()}, editions,
                               len(centuries))


def country_distribution(entities: Sequence[str], catalog: EntityCatalog,
                         filter_before_century: int | None = None) -> dict[str, int]:
    """Count per country, largest first, ties alphabetical; zero counts omitted."""
    c: Counter[str] = Counter()
    for ent in catalog.require(entities):
        if filter_before_century is None or ent.foundation_century < filter_before_century:
            c[ent.country] += 1
    return {cc: c[cc] for cc in sorted(c, key=lambda cc: (-c[cc], cc))}


@dataclass(frozen=True)
class CenturyMatrix:
    editions: tuple[str, ...]
    centuries: tuple[int, ...]
    counts: np.ndarray  # editions x centuries

    def cell(self, edition: str, century: int) -> int:
        return int(self.counts[self.editions.index(edition), self.centuries.index(century)])


def per_edition_century_matrix(rankings: Sequence[EditionRanking],
                               catalog: EntityCatalog) -> CenturyMatrix:
    rows = sorted(rankings, key=lambda r: r.edition)
    per_row = [_years(r.ids(), catalog) for r in rows]
    cents = century_bins(c for row in per_row for c in row)
    counts = np.zeros((len(rows), len(cents)), dtype=np.int64)
    for i, row in enumerate(per_row):
        for cent in row:
            counts[i, cent - cents[0]] += 1
    return CenturyMatrix(tuple(r.edition for r in rows), tuple(cents), counts)
