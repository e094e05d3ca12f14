"""Matrix-free Google operator ``G = alpha*S + (1 - alpha)/N``.

``S`` is never built densely. Column ``j`` of ``S`` is ``A[:, j] / k_out(j)``
for nodes with outgoing links; dangling columns are uniform ``1/N`` and are
handled by folding their total probability into one scalar per application.
The operator over the reversed graph is the dual ``G*``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DimensionError, DomainError
from .graph import DirectedGraph, dangling_nodes, reverse

DEFAULT_ALPHA = 0.85

# rows per block when the product is split across workers; fixed so results
# never depend on the worker count
BLOCK_ROWS = 1 << 16


@dataclass(frozen=True, eq=False)
class GoogleOperator:
    transition: sp.csr_matrix
    dangling: np.ndarray
    alpha: float = DEFAULT_ALPHA
    reversed: bool = False
    workers: int = 1
    _blocks: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie strictly inside (0, 1), got {self.alpha}")
        n = self.transition.shape[0]
        if n > BLOCK_ROWS:
            for start in range(0, n, BLOCK_ROWS):
                self._blocks.append((start, min(n, start + BLOCK_ROWS)))

    @property
    def size(self) -> int:
        return self.transition.shape[0]

    @classmethod
    def from_graph(cls, graph: DirectedGraph, alpha: float = DEFAULT_ALPHA, *,
                   reversed: bool = False, workers: int = 1) -> GoogleOperator:
        g = reverse(graph) if reversed else graph
        n = g.node_count
        k_out = g.out_degree
        inv = np.zeros(n, dtype=np.float64)
        nz = k_out > 0
        inv[nz] = 1.0 / k_out[nz]
        # row i lists the sources j linking to i, i.e. the in-adjacency
        data = inv[g.in_indices]
        t = sp.csr_matrix((data, g.in_indices.astype(np.int64), g.in_indptr), shape=(n, n))
        return cls(t, dangling_nodes(g), alpha, reversed, workers)

    @classmethod
    def from_weights(cls, weights, alpha: float = DEFAULT_ALPHA, *,
                     binary: bool = False) -> GoogleOperator:
        """Operator for a weighted network, ``weights[i, j]`` being the weight of j -> i.

        Columns are normalized to sum to one; all-zero columns are dangling.
        """
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionError(f"weight matrix must be square, got shape {w.shape}")
        if (w < 0).any():
            raise DomainError("weights must be non-negative")
        if binary:
            w = (w > 0).astype(np.float64)
        col = w.sum(axis=0)
        s = np.zeros_like(w)
        nz = col > 0
        s[:, nz] = w[:, nz] / col[nz]
        return cls(sp.csr_matrix(s), np.flatnonzero(~nz), alpha)

    def _product(self, p: np.ndarray) -> np.ndarray:
        if not self._blocks or self.workers <= 1:
            return self.transition @ p
        out = np.empty_like(p)

        def run(block):
            a, b = block
            out[a:b] = self.transition[a:b] @ p

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            list(pool.map(run, self._blocks))
        return out

    def step(self, p: np.ndarray) -> np.ndarray:
        """One application without input validation (hot path)."""
        n = self.size
        d = math.fsum(p[self.dangling]) if self.dangling.size else 0.0
        q = self._product(p)
        q *= self.alpha
        q += (self.alpha * d + (1.0 - self.alpha)) / n
        total = math.fsum(q)
        if total != 1.0:
            q /= total
        return q


def check_probability_vector(p, n: int, tol: float = 1e-12) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (n,):
        raise DimensionError(f"expected a vector of length {n}, got shape {p.shape}")
    if (p < 0).any():
        raise DomainError("probability vector has negative entries")
    if not np.isfinite(p).all():
        raise DomainError("probability vector has non-finite entries")
    if abs(math.fsum(p) - 1.0) > tol:
        raise DomainError(f"probability vector sums to {math.fsum(p)!r}, not 1")
    return p


def apply(op: GoogleOperator, p) -> np.ndarray:
    """``G @ p`` for a probability vector ``p``."""
    return op.step(check_probability_vector(p, op.size))


def column_sums_check(op: GoogleOperator, trials: int, seed: int = 0, tol: float = 1e-10) -> bool:
    """Apply ``op`` to random and basis vectors and confirm every output sums to one."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    n = op.size
    vectors = []
    for _ in range(trials):
        v = rng.random(n)
        vectors.append(v / math.fsum(v))
    for k in rng.choice(n, size=min(trials, n), replace=False):
        e = np.zeros(n)
        e[k] = 1.0
        vectors.append(e)
    return all(abs(math.fsum(apply(op, v)) - 1.0) <= tol for v in vectors)
