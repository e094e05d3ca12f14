"""Assemble figure data bundles and summary tables from pipeline results."""

from __future__ import annotations

import csv
from typing import Mapping, Sequence

from . import analysis, cultures
from .codes import roman
from .extract import EditionRanking, EntityCatalog
from .merge import (GlobalRanking, country_scores, per_capita_scores,
                    per_edition_average_counts, reportable)
from .rank import CHEIRANK, PAGERANK, TWO_D_RANK

GLOBAL_NAMES = {PAGERANK: "WPRWU", CHEIRANK: "WCRWU", TWO_D_RANK: "W2RWU"}
REFERENCE = "ARWU"
PLANE_TOP = 1000
TABLE_ROWS = 10


def _curve(c: analysis.OverlapCurve) -> dict:
    return {"names": list(c.names),
            "j": [p.j for p in c.points],
            "common": [p.common for p in c.points],
            "eta": [p.eta for p in c.points]}


def overlap_pairs(globals_: Mapping[str, GlobalRanking], reference: Sequence[str] | None,
                  editions: Mapping[str, Sequence[EditionRanking]],
                  top: int) -> dict[str, list[analysis.OverlapCurve]]:
    """Overlap curves grouped as in figures 1 and 2."""
    lists: dict[str, list[str]] = {GLOBAL_NAMES[a]: g.ids()[:top] for a, g in globals_.items()}
    out: dict[str, list[analysis.OverlapCurve]] = {"fig1": [], "fig2": []}

    def add(key, a, b, name_a, name_b):
        J = min(len(a), len(b), top)
        out[key].append(analysis.overlap_curve(a, b, J, (name_a, name_b)))

    if reference is not None:
        ref = list(reference)[:top]
        if "WPRWU" in lists:
            add("fig1", lists["WPRWU"], ref, "WPRWU", REFERENCE)
        for r in sorted(editions.get(PAGERANK, ()), key=lambda r: r.edition):
            add("fig1", r.ids(), ref, f"{r.edition}-{GLOBAL_NAMES[PAGERANK]}", REFERENCE)
        if "W2RWU" in lists:
            add("fig2", lists["W2RWU"], ref, "W2RWU", REFERENCE)
    for a, b in (("W2RWU", "WPRWU"), ("W2RWU", "WCRWU"), ("WPRWU", "WCRWU")):
        if a in lists and b in lists:
            add("fig2", lists[a], lists[b], a, b)
    return {k: v for k, v in out.items() if v}


def _countries(d: Mapping[str, int]) -> list[dict]:
    return [{"cc": cc, "count": n} for cc, n in d.items()]


def _centuries(dist: analysis.CenturyDistribution) -> dict:
    return {"century": list(dist.counts),
            "label": [roman(c) for c in dist.counts],
            "N_f": list(dist.counts.values()),
            "N_fe": list(dist.per_edition.values()),
            "total": dist.total}


def _matrix(m: analysis.CenturyMatrix) -> dict:
    return {"editions": list(m.editions), "centuries": list(m.centuries),
            "labels": [roman(c) for c in m.centuries], "counts": m.counts.tolist()}


def build_figures(globals_: Mapping[str, GlobalRanking],
                  editions: Mapping[str, Sequence[EditionRanking]],
                  catalog: EntityCatalog, top: int, *, reference: Sequence[str] | None = None,
                  population: Mapping[str, float] | None = None,
                  alpha: float = 0.85) -> dict:
    """Data behind every figure, keyed fig1..fig17; absent inputs drop their keys."""
    figs: dict = {}
    ref = list(reference)[:top] if reference is not None else None
    names = {a: GLOBAL_NAMES[a] for a in globals_}
    for key, curves in overlap_pairs(globals_, reference, editions, top).items():
        figs[key] = {"curves": [_curve(c) for c in curves]}

    if PAGERANK in globals_ and CHEIRANK in globals_:
        ref_rank = {cid: r for r, cid in enumerate(ref or (), 1)}
        plane = analysis.rank_plane(globals_[PAGERANK], globals_[CHEIRANK], PLANE_TOP)
        figs["fig3"] = {"axes": ["K_U", "K*_U"], "beyond": "null",
                        "points": [{"id": p.canonical_id, "K": p.k, "K_star": p.k_star,
                                    REFERENCE.lower(): ref_rank.get(p.canonical_id)}
                                   for p in plane]}

    fig4 = {}
    for panel, alg in (("A", PAGERANK), ("B", TWO_D_RANK)):
        if alg in globals_:
            fig4[panel] = {"ranking": names[alg], "countries": _countries(
                analysis.country_distribution(globals_[alg].ids()[:top], catalog))}
    if ref is not None:
        fig4["C"] = {"ranking": REFERENCE,
                     "countries": _countries(analysis.country_distribution(ref, catalog))}
    if editions.get(PAGERANK):
        avg = per_edition_average_counts(editions[PAGERANK], catalog)
        fig4["D"] = {"editions": len(editions[PAGERANK]),
                     "countries": [{"cc": cc, "average": v}
                                   for cc, v in reportable(avg).items()]}
    if fig4:
        figs["fig4"] = fig4

    for key, alg in (("fig5", PAGERANK), ("fig6", CHEIRANK)):
        if alg in globals_:
            d = analysis.country_distribution(globals_[alg].ids(), catalog)
            figs[key] = {"ranking": names[alg], "total": len(globals_[alg]),
                         "countries": _countries(d)}

    fig7 = {}
    if PAGERANK in globals_:
        fig7["A"] = {"ranking": names[PAGERANK], "countries": _countries(
            analysis.country_distribution(globals_[PAGERANK].ids()[:top], catalog))}
    if ref is not None:
        fig7["B"] = {"ranking": REFERENCE,
                     "countries": _countries(analysis.country_distribution(ref, catalog))}
    if fig7:
        figs["fig7"] = fig7

    if population is not None:
        fig8 = {}
        if PAGERANK in globals_:
            s = country_scores(globals_[PAGERANK], catalog, top)
            fig8[names[PAGERANK]] = [{"cc": cc, "per_10M": v}
                                     for cc, v in per_capita_scores(s, population)]
        if ref is not None:
            s = country_scores(GlobalRanking.from_ordered_ids(ref, REFERENCE, top), catalog, top)
            fig8[REFERENCE] = [{"cc": cc, "per_10M": v}
                               for cc, v in per_capita_scores(s, population)]
        if fig8:
            figs["fig8"] = fig8

    if PAGERANK in globals_:
        ids = globals_[PAGERANK].ids()
        for key, before in (("fig9", 20), ("fig10", 19)):
            d = analysis.country_distribution(ids, catalog, before)
            figs[key] = {"founded_before_century": before, "total": sum(d.values()),
                         "countries": _countries(d)}
        n_ed = max(1, len(editions.get(PAGERANK, ())))
        figs["fig11"] = _centuries(analysis.century_distribution(ids, catalog, n_ed))

    fig12 = {}
    for panel, alg in (("A", PAGERANK), ("B", TWO_D_RANK)):
        if alg in globals_:
            fig12[panel] = {"ranking": names[alg], **_centuries(
                analysis.century_distribution(globals_[alg].ids()[:top], catalog))}
    if ref is not None:
        fig12["C"] = {"ranking": REFERENCE,
                      **_centuries(analysis.century_distribution(ref, catalog))}
    if fig12:
        figs["fig12"] = fig12

    for key, alg in (("fig13", PAGERANK), ("fig14", CHEIRANK)):
        if editions.get(alg):
            figs[key] = _matrix(analysis.per_edition_century_matrix(editions[alg], catalog))

    fig17 = {}
    for key, panel, alg in (("fig15", "A", PAGERANK), ("fig16", "B", CHEIRANK)):
        if editions.get(alg):
            net = cultures.build_culture_network(editions[alg], catalog)
            ranks = cultures.rank_cultures(net, alpha)
            figs[key] = {"nodes": list(net.nodes), "weights": net.weights.tolist(),
                         "pagerank": ranks.pagerank.probabilities.tolist(),
                         "cheirank": ranks.cheirank.probabilities.tolist()}
            fig17[panel] = [{"culture": c, "K": k, "K_star": ks} for c, k, ks in ranks.plane]
    if fig17:
        figs["fig17"] = fig17
    return dict(sorted(figs.items(), key=lambda kv: int(kv[0][3:])))


def _write(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_top_table(ranking: GlobalRanking, catalog: EntityCatalog, path,
                    rows: int = TABLE_ROWS) -> None:
    """Top entries with score and appearances (the layout of the top-10 tables)."""
    _write(path, ["rank", "name", "theta", "appearances"],
           [[e.global_rank, catalog[e.canonical_id].display_name, e.theta, e.appearances]
            for e in ranking.entries[:rows]])


def write_reference_table(reference: Sequence[str], globals_: Mapping[str, GlobalRanking],
                          catalog: EntityCatalog, path, rows: int = TABLE_ROWS) -> None:
    """Reference top entries with the rank shift (reference rank - global rank)."""
    algs = [a for a in (PAGERANK, CHEIRANK, TWO_D_RANK) if a in globals_]
    ranks = {a: globals_[a].rank_of() for a in algs}
    out = []
    for r, cid in enumerate(list(reference)[:rows], 1):
        row = [r, catalog[cid].display_name]
        for a in algs:
            k = ranks[a].get(cid)
            row.append("" if k is None else f"{r - k:+d}" if r != k else "0")
        out.append(row)
    _write(path, ["rank", REFERENCE, *(GLOBAL_NAMES[a] for a in algs)], out)


def write_country_table(left: Sequence, right: Sequence | None, path,
                        rows: int = TABLE_ROWS, names=("WPRWU", REFERENCE)) -> None:
    """Side-by-side country scores, as in the top-10 country comparison."""
    header = [f"{names[0]}_rank", f"{names[0]}_cc", f"{names[0]}_theta_c", f"{names[0]}_count"]
    if right is not None:
        header += [f"{names[1]}_rank", f"{names[1]}_cc", f"{names[1]}_theta_c",
                   f"{names[1]}_count"]
    out = []
    for i in range(rows):
        row = []
        for side in (left, right) if right is not None else (left,):
            if i < len(side):
                s = side[i]
                row += [s.rank, s.country, s.theta_c, s.count]
            else:
                row += ["", "", "", ""]
        if any(v != "" for v in row):
            out.append(row)
    _write(path, header, out)


def overlap_report(curves: Mapping[str, list[analysis.OverlapCurve]]) -> list[dict]:
    """eta at j=10 and at the last j for every computed curve."""
    out = []
    for key in sorted(curves):
        for c in curves[key]:
            last = c.points[-1] if c.points else None
            out.append({"figure": key, "a": c.names[0], "b": c.names[1],
                        "J": last.j if last else 0,
                        "eta_J": last.eta if last else None,
                        "eta_10": c.eta(10) if len(c.points) >= 10 else None})
    return out
