"""PageRank, CheiRank and 2DRank by power iteration."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, DimensionError, ParseError, ValidationError
from .gmatrix import DEFAULT_ALPHA, GoogleOperator, check_probability_vector
from .graph import DirectedGraph, reverse

# iteration target the original study reports; below float64 accumulation
# error for large graphs, so runs asking for it end on stagnation
STRICT_TOLERANCE = 1e-17

STAGNATION_WINDOW = 50

PAGERANK = "pagerank"
CHEIRANK = "cheirank"
TWO_D_RANK = "2drank"
ALGORITHMS = (PAGERANK, CHEIRANK, TWO_D_RANK)


@dataclass(frozen=True)
class RankConfig:
    alpha: float = DEFAULT_ALPHA
    tolerance: float = 1e-12
    max_iterations: int = 10000
    start: str = "uniform"  # uniform | basis | supplied
    start_node: int = 0
    start_vector: np.ndarray | None = field(default=None, repr=False, compare=False)
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.tolerance > 0:
            raise ValidationError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be at least 1")
        if self.start not in ("uniform", "basis", "supplied"):
            raise ValidationError(f"unknown start policy {self.start!r}")
        if self.start == "supplied" and self.start_vector is None:
            raise ValidationError("start='supplied' needs start_vector")

    def initial_vector(self, n: int) -> np.ndarray:
        if self.start == "uniform":
            return np.full(n, 1.0 / n)
        if self.start == "basis":
            if not 0 <= self.start_node < n:
                raise DimensionError(f"start node {self.start_node} outside 0..{n - 1}")
            p = np.zeros(n)
            p[self.start_node] = 1.0
            return p
        return check_probability_vector(self.start_vector, n).copy()


# values this close (relative) count as tied; absorbs the last-bit noise that
# makes mathematically equal probabilities differ between summation orders
TIE_RTOL = 1e-11


def rank_order(values: np.ndarray, tie_rtol: float = TIE_RTOL) -> np.ndarray:
    """Node ids by descending value, ties by ascending id.

    Neighbouring sorted values within ``tie_rtol`` of each other are chained
    into one tie group.
    """
    ids = np.arange(values.size)
    order = np.lexsort((ids, -values))
    if tie_rtol <= 0 or values.size < 2:
        return order
    v = values[order]
    gaps = v[:-1] - v[1:]
    new_group = np.concatenate(([True], gaps > tie_rtol * np.abs(v[:-1])))
    group = np.empty(values.size, dtype=np.int64)
    group[order] = np.cumsum(new_group)
    return np.lexsort((ids, group))


def index_from_order(order: np.ndarray) -> np.ndarray:
    index = np.empty(order.size, dtype=np.int64)
    index[order] = np.arange(1, order.size + 1)
    return index


@dataclass(frozen=True, eq=False)
class RankResult:
    probabilities: np.ndarray
    order: np.ndarray
    index: np.ndarray  # 1-based rank K (or K*) of each node
    iterations: int = 0
    residual: float = 0.0
    stagnated: bool = False
    algorithm: str = PAGERANK
    alpha: float = DEFAULT_ALPHA
    tolerance: float = 0.0
    # L1 change after each iteration
    history: tuple[float, ...] = field(default=(), repr=False)

    @classmethod
    def from_probabilities(cls, p: np.ndarray, **kw) -> RankResult:
        p = np.asarray(p, dtype=np.float64)
        order = rank_order(p)
        return cls(p, order, index_from_order(order), **kw)

    @property
    def size(self) -> int:
        return self.probabilities.size


@dataclass(frozen=True, eq=False)
class TwoDRankResult:
    k2_index: np.ndarray
    order: np.ndarray
    algorithm: str = TWO_D_RANK

    @property
    def size(self) -> int:
        return self.k2_index.size


def power_iterate(op: GoogleOperator, config: RankConfig, algorithm: str = PAGERANK) -> RankResult:
    """Iterate ``p <- G p`` until the L1 change drops to the tolerance.

    Raises ConvergenceError if ``max_iterations`` pass first. If the residual
    stops improving for ``STAGNATION_WINDOW`` iterations, returns early with
    ``stagnated=True``.
    """
    p = config.initial_vector(op.size)
    best = math.inf
    since_best = 0
    residual = math.inf
    history = []

    def done(t, stagnated=False):
        return RankResult.from_probabilities(p, iterations=t, residual=residual,
                                             stagnated=stagnated, algorithm=algorithm,
                                             alpha=op.alpha, tolerance=config.tolerance,
                                             history=tuple(history))

    for t in range(1, config.max_iterations + 1):
        q = op.step(p)
        residual = float(np.abs(q - p).sum())
        history.append(residual)
        p = q
        if residual <= config.tolerance:
            return done(t)
        if residual < best:
            best, since_best = residual, 0
        else:
            since_best += 1
            if since_best >= STAGNATION_WINDOW:
                return done(t, stagnated=True)
    raise ConvergenceError(f"{algorithm} did not reach tolerance {config.tolerance:g} in "
                           f"{config.max_iterations} iterations (residual {residual:.3e})",
                           residual, config.max_iterations, p)


def pagerank(graph: DirectedGraph, config: RankConfig | None = None) -> RankResult:
    config = config or RankConfig()
    op = GoogleOperator.from_graph(graph, config.alpha, workers=config.workers)
    return power_iterate(op, config, PAGERANK)


def cheirank(graph: DirectedGraph, config: RankConfig | None = None) -> RankResult:
    return replace(pagerank(reverse(graph), config), algorithm=CHEIRANK)


def two_d_rank(pr: RankResult, cr: RankResult) -> TwoDRankResult:
    """Combine PageRank and CheiRank indices into ``K2 = max(K, K*)``.

    Order is by K2, then K + K*, then node id.
    """
    if pr.index.shape != cr.index.shape:
        raise DimensionError(f"rank results cover {pr.index.size} and {cr.index.size} nodes")
    k, ks = pr.index, cr.index
    k2 = np.maximum(k, ks)
    order = np.lexsort((np.arange(k2.size), k + ks, k2))
    return TwoDRankResult(k2, order)


# --- persistence -----------------------------------------------------------

MAGIC = b"UNIRANK\x00"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIQddQ")


def save_rank(result: RankResult, path) -> None:
    """Binary vector file: header then N little-endian float64 values."""
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, result.size, result.alpha,
                          result.tolerance, result.iterations)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(result.probabilities.astype("<f8").tobytes())


def load_rank(path, algorithm: str = PAGERANK) -> RankResult:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise ParseError("truncated rank file header", path=path)
    magic, version, n, alpha, tol, iterations = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ParseError("not a rank vector file (bad magic)", path=path)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported rank file version {version}", path=path)
    body = data[_HEADER.size:]
    if len(body) != 8 * n:
        raise ParseError(f"expected {n} float64 values, found {len(body) / 8:g}", path=path)
    p = np.frombuffer(body, dtype="<f8").astype(np.float64)
    return RankResult.from_probabilities(p, iterations=iterations, alpha=alpha,
                                         tolerance=tol, algorithm=algorithm)


def write_rank_table(result: RankResult | TwoDRankResult, path) -> None:
    """Sidecar text: ``id<TAB>rank<TAB>probability`` in rank order.

    For 2DRank the third column is omitted.
    """
    with open(path, "w", encoding="utf-8") as fh:
        if isinstance(result, TwoDRankResult):
            for node in result.order.tolist():
                fh.write(f"{node}\t{int(result.k2_index[node])}\n")
        else:
            p = result.probabilities
            for node in result.order.tolist():
                fh.write(f"{node}\t{int(result.index[node])}\t{float(p[node])!r}\n")


def read_rank_table(path) -> dict[int, tuple[int, float | None]]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 2 or 3 tab-separated fields", lineno, path)
            out[int(parts[0])] = (int(parts[1]), float(parts[2]) if len(parts) == 3 else None)
    return out
