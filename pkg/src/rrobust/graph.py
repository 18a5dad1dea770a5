"""Immutable directed graphs stored as in-neighbor lists.

Vertices are the integers ``0..n-1``. An edge ``a -> b`` makes ``a`` an
in-neighbor of ``b``; the edge-list file format writes it as the line ``a b``.
(Under the ``(u, v)`` pair convention where the pair denotes the edge from
``v`` to ``u``, the pair ``(u, v)`` corresponds to the file line ``v u``.)
"""

from __future__ import annotations

import io
from typing import Iterable, Optional, TextIO, Union

import numpy as np
import scipy.sparse as sp

# Graphs up to this many vertices keep a dense in-adjacency matrix for the
# batched partition kernels; larger ones use CSR.
DENSE_LIMIT = 2048


class GraphParseError(ValueError):
    """Base class for edge-list parse failures."""


class MalformedLineError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class EdgeCountError(GraphParseError):
    pass


class Digraph:
    """A simple digraph with sorted in-neighbor arrays (CSR layout).

    ``indptr[v]:indptr[v+1]`` slices ``indices`` to give the in-neighbors of
    ``v`` in ascending order. Instances are read-only.
    """

    __slots__ = ("n", "m", "indptr", "indices", "_in_matrix")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.m = int(self.indices.size)
        self._in_matrix = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        """Build from ``(source, destination)`` pairs.

        Raises the same errors as the parser for bad ids, self-loops and
        duplicates.
        """
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        return cls._from_array(n, arr)

    @classmethod
    def _from_array(cls, n: int, arr: np.ndarray) -> "Digraph":
        src, dst = arr[:, 0], arr[:, 1]
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise VertexRangeError(f"vertex id out of range 0..{n - 1}")
        if np.any(src == dst):
            v = int(src[src == dst][0])
            raise SelfLoopError(f"self-loop at vertex {v}")
        order = np.lexsort((src, dst))
        src, dst = src[order], dst[order]
        if src.size > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                i = int(np.argmax(dup))
                raise DuplicateEdgeError(f"duplicate edge {src[i]} -> {dst[i]}")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dst, minlength=n), out=indptr[1:])
        return cls(n, indptr, src)

    def in_neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array of ``(source, destination)``,
        sorted by source then destination."""
        dst = np.repeat(np.arange(self.n, dtype=np.int64), self.in_degrees())
        arr = np.column_stack([self.indices, dst])
        return arr[np.lexsort((arr[:, 1], arr[:, 0]))]

    def in_matrix(self):
        """In-adjacency ``M`` with ``M[v, u] = 1`` iff ``u -> v``.

        Dense ``float64`` for small graphs, CSR otherwise; either way ``M @ X``
        gives per-vertex in-neighbor counts over the columns of ``X``.
        """
        if self._in_matrix is None:
            data = np.ones(self.m, dtype=np.float64)
            mat = sp.csr_matrix((data, self.indices, self.indptr),
                                shape=(self.n, self.n))
            if self.n <= DENSE_LIMIT:
                mat = mat.toarray()
            self._in_matrix = mat
        return self._in_matrix

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} not in 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes(), self.indptr.tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


def parse_edge_list(source: Union[str, TextIO]) -> Digraph:
    """Parse the ``n m`` header plus ``a b`` edge lines format.

    Lines starting with ``#`` and blank lines are skipped.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLineError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise MalformedLineError(f"line {lineno}: negative header value")
            header = (a, b)
            continue
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise VertexRangeError(f"line {lineno}: vertex id out of range 0..{header[0] - 1}")
        if a == b:
            raise SelfLoopError(f"line {lineno}: self-loop at vertex {a}")
        edges.append((a, b))
    if header is None:
        raise MalformedLineError("missing 'n m' header line")
    n, m = header
    if len(edges) != m:
        raise EdgeCountError(f"header declares {m} edges, found {len(edges)}")
    return Digraph.from_edges(n, edges)


def write_edge_list(g: Digraph) -> str:
    """Canonical text form: header then edges in ascending ``(a, b)`` order."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{a} {b}" for a, b in g.edges().tolist())
    return "\n".join(lines)


def read_graph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def save_graph(g: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_edge_list(g) + "\n")


def in_degree(g: Digraph, v: int) -> int:
    g._check(v)
    return int(g.indptr[v + 1] - g.indptr[v])


def min_in_degree(g: Digraph) -> tuple[int, int]:
    """Smallest-id vertex of minimum in-degree, and that degree."""
    if g.n == 0:
        raise ValueError("empty graph has no minimum in-degree")
    deg = g.in_degrees()
    v = int(np.argmin(deg))
    return v, int(deg[v])


def _as_mask(g: Digraph, s) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    ids = np.fromiter(s, dtype=np.int64) if not isinstance(s, np.ndarray) else s.astype(np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= g.n):
        raise IndexError("vertex set contains an invalid id")
    mask[ids] = True
    return mask


def outside_count(g: Digraph, v: int, s) -> int:
    """Number of in-neighbors of ``v`` that are not in ``s``."""
    nbrs = g.in_neighbors(v)
    return int(nbrs.size - np.count_nonzero(_as_mask(g, s)[nbrs]))


def _outside_counts(g: Digraph, mask: np.ndarray) -> np.ndarray:
    # |N(v) \ S| for every v, one pass over the edges
    deg = g.in_degrees()
    dst = np.repeat(np.arange(g.n), deg)
    inside = np.bincount(dst, weights=mask[g.indices], minlength=g.n)
    return deg - inside.astype(np.int64)


def reach_index(g: Digraph, s) -> int:
    """Largest ``r`` for which ``s`` is r-reachable."""
    mask = _as_mask(g, s)
    if not mask.any():
        raise ValueError("reach_index needs a nonempty set")
    return int(_outside_counts(g, mask)[mask].max())


def is_r_reachable(g: Digraph, s, r: int) -> bool:
    """True iff some vertex of ``s`` has at least ``r`` in-neighbors outside ``s``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    mask = _as_mask(g, s)
    if not mask.any():
        raise ValueError("r-reachability is defined for nonempty sets only")
    for u in np.flatnonzero(mask):
        nbrs = g.indices[g.indptr[u]:g.indptr[u + 1]]
        if nbrs.size - np.count_nonzero(mask[nbrs]) >= r:
            return True
    return False


def exam_degree(g: Digraph, r: int, delta_cap: int) -> Optional[int]:
    """Return a minimum in-degree vertex if ``d_min <= 2r + delta_cap``, else None.

    When a vertex ``v`` is returned, ``({v}, V - {v})`` is a partition where
    ``{v}`` has only ``d_min <= 2r + delta_cap`` outside in-neighbors and every
    vertex of ``V - {v}`` has at most one (namely ``v``). Since ``r >= 1``
    forces ``2r + delta_cap >= 2``, neither side reaches ``2r + delta_cap + 1``,
    and the complement side is not even 2-reachable.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if delta_cap < 0:
        raise ValueError("delta_cap must be non-negative")
    if g.n < 2:
        raise ValueError("need at least two vertices")
    v, dmin = min_in_degree(g)
    return v if dmin <= 2 * r + delta_cap else None
