"""Immutable compressed adjacency for one edition's link network.

Edge direction: an input line ``src dst`` means article ``src`` links to
article ``dst``. The out-adjacency of ``src`` therefore contains ``dst``.
Self-loops are dropped and duplicate pairs collapsed at construction, so
``link_count`` always describes the cleaned graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CapacityError, ParseError

ID_DTYPES = {32: np.int32, 64: np.int64}


@dataclass(frozen=True)
class LoadOptions:
    id_width: int = 32
    # largest node count accepted; defaults to what the id width can address
    max_nodes: int | None = None

    def __post_init__(self):
        if self.id_width not in ID_DTYPES:
            raise ValueError(f"id_width must be 32 or 64, got {self.id_width}")

    @property
    def dtype(self):
        return ID_DTYPES[self.id_width]

    @property
    def capacity(self) -> int:
        limit = int(np.iinfo(self.dtype).max)
        return limit if self.max_nodes is None else min(limit, self.max_nodes)


@dataclass(frozen=True)
class LoadReport:
    data_lines: int = 0
    comment_lines: int = 0
    duplicates_dropped: int = 0
    self_loops_dropped: int = 0


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _csr(rows: np.ndarray, cols: np.ndarray, n: int, dtype) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays for pairs already sorted by (row, col)."""
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return _freeze(indptr), _freeze(cols.astype(dtype, copy=True))


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    node_count: int
    link_count: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    node_labels: dict[int, str] | None = field(default=None, repr=False)

    @classmethod
    def from_edges(cls, src, dst, node_count: int | None = None, *,
                   labels: dict[int, str] | None = None,
                   options: LoadOptions | None = None) -> tuple[DirectedGraph, LoadReport]:
        """Build a cleaned graph from parallel source/target id arrays."""
        options = options or LoadOptions()
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have the same length")
        if src.size and (src.min() < 0 or dst.min() < 0):
            raise ValueError("node ids must be non-negative")
        top = int(max(src.max(), dst.max())) + 1 if src.size else 0
        n = top if node_count is None else int(node_count)
        if n < 1:
            n = 1
        if top > n:
            raise ValueError(f"node id {top - 1} outside declared node count {n}")
        if n > options.capacity:
            raise CapacityError(f"{n} nodes exceed the {options.id_width}-bit id capacity "
                                f"({options.capacity})")

        loops = src == dst
        n_loops = int(loops.sum())
        if n_loops:
            src, dst = src[~loops], dst[~loops]
        keys = np.unique(src * n + dst)
        n_dups = int(src.size - keys.size)
        s, d = np.divmod(keys, n)

        out_indptr, out_indices = _csr(s, d, n, options.dtype)
        by_target = np.lexsort((s, d))
        in_indptr, in_indices = _csr(d[by_target], s[by_target], n, options.dtype)
        graph = cls(n, int(keys.size), out_indptr, out_indices, in_indptr, in_indices,
                    dict(labels) if labels is not None else None)
        return graph, LoadReport(data_lines=int(src.size + n_loops),
                                 duplicates_dropped=n_dups, self_loops_dropped=n_loops)

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    @property
    def in_degree(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def successors(self, j: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[j]:self.out_indptr[j + 1]]

    def predecessors(self, i: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[i]:self.in_indptr[i + 1]]

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """(src, dst) arrays in (src, dst) lexicographic order."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.out_degree)
        return src, self.out_indices.astype(np.int64)

    def title(self, node: int) -> str | None:
        return None if self.node_labels is None else self.node_labels.get(node)

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (self.node_count == other.node_count
                and self.link_count == other.link_count
                and np.array_equal(self.out_indptr, other.out_indptr)
                and np.array_equal(self.out_indices, other.out_indices)
                and np.array_equal(self.in_indptr, other.in_indptr)
                and np.array_equal(self.in_indices, other.in_indices)
                and self.node_labels == other.node_labels)

    __hash__ = None


def reverse(graph: DirectedGraph) -> DirectedGraph:
    """The same network with every link inverted; shares the index arrays."""
    return DirectedGraph(graph.node_count, graph.link_count,
                         graph.in_indptr, graph.in_indices,
                         graph.out_indptr, graph.out_indices,
                         graph.node_labels)


def dangling_nodes(graph: DirectedGraph) -> np.ndarray:
    return np.flatnonzero(graph.out_degree == 0)


def read_edge_file(path, options: LoadOptions | None = None):
    """Parse an edge-list file into raw arrays.

    Returns ``(src, dst, declared_n, data_lines, comment_lines)``.
    """
    options = options or LoadOptions()
    capacity = options.capacity
    src: list[int] = []
    dst: list[int] = []
    declared = None
    comments = 0
    seen_data = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments += 1
                continue
            parts = line.split()
            if parts[0] == "N" and not seen_data and declared is None:
                if len(parts) != 2 or not (parts[1].isascii() and parts[1].isdigit()):
                    raise ParseError(f"bad node count directive {line!r}", lineno, path)
                declared = int(parts[1])
                if declared > capacity:
                    raise CapacityError(f"{path}:{lineno}: declared node count {declared} "
                                        f"exceeds capacity {capacity}")
                continue
            if len(parts) != 2 or not all(p.isascii() and p.isdigit() for p in parts):
                raise ParseError(f"expected 'src dst', got {line!r}", lineno, path)
            a, b = int(parts[0]), int(parts[1])
            if a >= capacity or b >= capacity:
                raise CapacityError(f"{path}:{lineno}: node id {max(a, b)} exceeds "
                                    f"capacity {capacity}")
            if declared is not None and (a >= declared or b >= declared):
                raise ParseError(f"node id {max(a, b)} outside declared count {declared}",
                                 lineno, path)
            seen_data = True
            src.append(a)
            dst.append(b)
    return (np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64),
            declared, len(src), comments)


def load_labels(path) -> dict[int, str]:
    """Read an ``id<TAB>title`` sidecar file."""
    labels: dict[int, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            node, sep, title = line.partition("\t")
            if not sep or not node.strip().isdigit():
                raise ParseError(f"expected 'id<TAB>title', got {line!r}", lineno, path)
            labels[int(node)] = title
    return labels


def load_edge_list(path, options: LoadOptions | None = None,
                   labels_path=None) -> tuple[DirectedGraph, LoadReport]:
    options = options or LoadOptions()
    src, dst, declared, n_data, n_comments = read_edge_file(path, options)
    labels = load_labels(labels_path) if labels_path is not None else None
    graph, report = DirectedGraph.from_edges(src, dst, declared, labels=labels, options=options)
    return graph, LoadReport(data_lines=n_data, comment_lines=n_comments,
                             duplicates_dropped=report.duplicates_dropped,
                             self_loops_dropped=report.self_loops_dropped)


def write_edge_list(graph: DirectedGraph, path: Path | str, header: bool = True) -> None:
    src, dst = graph.edges()
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"N {graph.node_count}\n")
        for a, b in zip(src.tolist(), dst.tolist()):
            fh.write(f"{a} {b}\n")
