"""Second-level network of cultures built from the edition top lists.

Node i is a language (24 editions plus WR). The weight ``N[i, j]`` counts the
universities of language i that appear in edition j's list, i.e. links from
j to i. Own-language entries are not counted, so the diagonal is zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import CULTURES, EDITIONS
from .errors import InputError
from .extract import EditionRanking, EntityCatalog
from .gmatrix import DEFAULT_ALPHA, GoogleOperator
from .rank import CHEIRANK, PAGERANK, RankConfig, RankResult, power_iterate


@dataclass(frozen=True, eq=False)
class CultureNetwork:
    nodes: tuple[str, ...]
    weights: np.ndarray  # weights[i, j]: universities of culture i in edition j's list
    editions: tuple[str, ...] = ()

    def weight(self, culture: str, edition: str) -> int:
        return int(self.weights[self.nodes.index(culture), self.nodes.index(edition)])


def build_culture_network(rankings: Sequence[EditionRanking],
                          catalog: EntityCatalog) -> CultureNetwork:
    nodes = CULTURES
    pos = {c: i for i, c in enumerate(nodes)}
    w = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
    seen = set()
    for r in rankings:
        if r.edition not in EDITIONS:
            raise InputError(f"{r.edition} is not one of the {len(EDITIONS)} edition codes")
        if r.edition in seen:
            raise InputError(f"duplicate edition {r.edition}")
        seen.add(r.edition)
        j = pos[r.edition]
        for ent in catalog.require(r.ids()):
            w[pos[ent.language], j] += 1
    np.fill_diagonal(w, 0)
    return CultureNetwork(nodes, w, tuple(sorted(seen)))


@dataclass(frozen=True)
class CultureRanks:
    pagerank: RankResult
    cheirank: RankResult
    plane: tuple[tuple[str, int, int], ...]  # (culture, K, K*) in node order


def rank_cultures(net: CultureNetwork, alpha: float = DEFAULT_ALPHA, *,
                  binary: bool = False, tolerance: float = 1e-14) -> CultureRanks:
    """PageRank and CheiRank of the culture network.

    Transitions are proportional to the counts unless ``binary`` is set, in
    which case every nonzero count is one link.
    """
    config = RankConfig(alpha=alpha, tolerance=tolerance)
    w = net.weights.astype(np.float64)
    pr = power_iterate(GoogleOperator.from_weights(w, alpha, binary=binary), config, PAGERANK)
    cr = power_iterate(GoogleOperator.from_weights(w.T, alpha, binary=binary), config,
                       CHEIRANK)
    plane = tuple((c, int(pr.index[i]), int(cr.index[i])) for i, c in enumerate(net.nodes))
    return CultureRanks(pr, cr, plane)


def write_culture_matrix(net: CultureNetwork, path) -> None:
    """CSV: one row per culture i, one column per culture j, cell N[i, j]."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["culture", *net.nodes])
        for i, c in enumerate(net.nodes):
            w.writerow([c, *net.weights[i].tolist()])


def write_culture_edges(net: CultureNetwork, path) -> None:
    """Weighted edge list ``src_culture dst_culture weight`` (link j -> i)."""
    with open(path, "w", encoding="utf-8") as fh:
        for j, src in enumerate(net.nodes):
            for i, dst in enumerate(net.nodes):
                if net.weights[i, j]:
                    fh.write(f"{src} {dst} {int(net.weights[i, j])}\n")


def write_culture_ranks(ranks: CultureRanks, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["culture", "K", "K_star", "pagerank", "cheirank"])
        for i, (c, k, ks) in enumerate(ranks.plane):
            w.writerow([c, k, ks, repr(float(ranks.pagerank.probabilities[i])),
                        repr(float(ranks.cheirank.probabilities[i]))])
