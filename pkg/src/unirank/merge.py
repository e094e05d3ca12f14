"""Merge per-edition top lists into one global ranking and score countries.

An entity listed at position R in an edition's top-T list collects T+1-R
points from it, and nothing from editions where it is absent. All scores are
integers.
"""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError, UnresolvedEntityError
from .extract import EditionRanking, EntityCatalog


@dataclass(frozen=True)
class GlobalEntry:
    canonical_id: str
    theta: int
    appearances: int
    global_rank: int


@dataclass(frozen=True)
class GlobalRanking:
    algorithm: str
    entries: tuple[GlobalEntry, ...]
    editions_used: tuple[str, ...] = ()
    top: int = 100

    def ids(self) -> list[str]:
        return [e.canonical_id for e in self.entries]

    def rank_of(self) -> dict[str, int]:
        return {e.canonical_id: e.global_rank for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_ordered_ids(cls, ids: Sequence[str], name: str = "reference",
                         top: int | None = None) -> GlobalRanking:
        """Wrap an external ordered list (e.g. ARWU) so country scoring can use it."""
        if len(set(ids)) != len(ids):
            raise InputError(f"{name}: repeated ids in reference ranking")
        top = len(ids) if top is None else top
        entries = tuple(GlobalEntry(cid, max(top + 1 - r, 0), 1, r)
                        for r, cid in enumerate(ids, 1))
        return cls(name, entries, (), top)


def merge_editions(rankings: Sequence[EditionRanking]) -> GlobalRanking:
    """Score-merge edition lists for one algorithm.

    Sorted by score descending, then appearances descending, then id.
    """
    rankings = list(rankings)
    if not rankings:
        raise InputError("no edition rankings to merge")
    codes = [r.edition for r in rankings]
    dup = sorted(c for c, n in Counter(codes).items() if n > 1)
    if dup:
        raise InputError(f"duplicate edition codes: {dup}")
    algos = {r.algorithm for r in rankings}
    if len(algos) > 1:
        raise InputError(f"rankings mix algorithms: {sorted(algos)}")
    tops = {r.top for r in rankings}
    if len(tops) > 1:
        raise InputError(f"rankings use different list lengths: {sorted(tops)}")
    top = tops.pop()

    theta: dict[str, int] = defaultdict(int)
    seen: dict[str, int] = defaultdict(int)
    for r in rankings:
        for e in r.entries:
            theta[e.canonical_id] += top + 1 - e.rank
            seen[e.canonical_id] += 1
    ordered = sorted(theta, key=lambda cid: (-theta[cid], -seen[cid], cid))
    entries = tuple(GlobalEntry(cid, theta[cid], seen[cid], k)
                    for k, cid in enumerate(ordered, 1))
    return GlobalRanking(algos.pop(), entries, tuple(sorted(codes)), top)


@dataclass(frozen=True)
class CountryScore:
    country: str
    theta_c: int
    count: int
    rank: int


def _country_of(ids: Iterable[str], catalog: EntityCatalog) -> list[str]:
    return [e.country for e in catalog.require(ids)]


def country_scores(ranking: GlobalRanking, catalog: EntityCatalog,
                   top: int = 100) -> list[CountryScore]:
    """Country score over the first ``top`` global entries: sum of (top+1 - rank)."""
    head = ranking.entries[:top]
    countries = _country_of((e.canonical_id for e in head), catalog)
    theta: dict[str, int] = defaultdict(int)
    count: dict[str, int] = defaultdict(int)
    for e, cc in zip(head, countries):
        theta[cc] += top + 1 - e.global_rank
        count[cc] += 1
    ordered = sorted(theta, key=lambda cc: (-theta[cc], -count[cc], cc))
    return [CountryScore(cc, theta[cc], count[cc], k) for k, cc in enumerate(ordered, 1)]


def per_capita_scores(scores: Sequence[CountryScore],
                      population: Mapping[str, float]) -> list[tuple[str, float]]:
    """Universities per 10 million inhabitants, highest first."""
    missing = [s.country for s in scores if s.country not in population]
    if missing:
        raise InputError(f"no population figure for: {', '.join(missing)}")
    out = []
    for s in scores:
        pop = population[s.country]
        if not pop > 0:
            raise InputError(f"population of {s.country} must be positive, got {pop}")
        out.append((s.country, s.count / (pop / 1e7)))
    out.sort(key=lambda item: (-item[1], item[0]))
    return out


def per_edition_average_counts(rankings: Sequence[EditionRanking],
                               catalog: EntityCatalog) -> dict[str, float]:
    """Mean number of a country's universities per edition list.

    Covers every country in the catalog (absent ones score 0.0); ordered by
    value descending then country code. See ``reportable`` for the display cut.
    """
    rankings = list(rankings)
    if not rankings:
        return {}
    totals: Counter[str] = Counter({e.country: 0 for e in catalog})
    for r in rankings:
        totals.update(_country_of(r.ids(), catalog))
    n = len(rankings)
    ordered = sorted(totals, key=lambda cc: (-totals[cc], cc))
    return {cc: totals[cc] / n for cc in ordered}


def reportable(averages: Mapping[str, float], threshold: float = 1.0) -> dict[str, float]:
    """Drop countries averaging under one university per edition."""
    return {cc: v for cc, v in averages.items() if v >= threshold}


def load_population(path) -> dict[str, float]:
    """CSV with header ``cc,population``."""
    out = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), 2):
            try:
                out[row["cc"].strip()] = float(row["population"])
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise InputError(f"{path}:{lineno}: expected 'cc,population', got {row}") \
                    from exc
    return out


def load_reference_ranking(path) -> list[str]:
    """Ordered canonical ids, one per line (``#`` comments allowed)."""
    ids = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                ids.append(line)
    return ids


def write_global_csv(ranking: GlobalRanking, catalog: EntityCatalog, path) -> None:
    missing = [e.canonical_id for e in ranking.entries if e.canonical_id not in catalog]
    if missing:
        raise UnresolvedEntityError("global ranking holds entities missing from the catalog:",
                                    missing)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rank", "canonical_id", "display_name", "theta", "appearances", "country",
                    "language", "foundation_year"])
        for e in ranking.entries:
            ent = catalog[e.canonical_id]
            w.writerow([e.global_rank, e.canonical_id, ent.display_name, e.theta,
                        e.appearances, ent.country, ent.language, ent.foundation_year])


def write_country_csv(scores: Sequence[CountryScore], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rank", "cc", "theta_c", "count"])
        for s in scores:
            w.writerow([s.rank, s.country, s.theta_c, s.count])


def write_per_capita_csv(rows: Sequence[tuple[str, float]], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cc", "per_10M"])
        for cc, v in rows:
            w.writerow([cc, repr(v)])
