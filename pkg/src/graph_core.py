"""
Graph Core Module
Immutable simple graphs, structural invariants, quotients, covers and graph6.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components, shortest_path

from src.errors import (IndexOutOfRange, InvalidBipartition, InvalidParameter, InvalidPartition,
                        LoopEdge, MalformedEncoding, TooLarge)

logger = logging.getLogger(__name__)

GRAPH6_HEADER = '>>graph6<<'
GRAPH6_MAX_ORDER = 258047

Edge = Tuple[int, int]


class Graph:
    """Finite simple undirected graph on vertices 0..n-1."""

    __slots__ = ('_n', '_adj', '_adjsets', '_edges', '_matrix')

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        self._n = n
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self._adjsets = tuple(frozenset(nbrs) for nbrs in self._adj)
        self._edges = tuple((u, v) for u in range(n) for v in self._adj[u] if u < v)
        self._matrix = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> Tuple[Edge, ...]:
        """Edges as (u, v) with u < v, sorted."""
        return self._edges

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def adjacency_matrix(self) -> np.ndarray:
        """Read-only 0/1 adjacency matrix (cached)."""
        if self._matrix is None:
            matrix = np.zeros((self._n, self._n), dtype=np.int8)
            if self._edges:
                us, vs = np.array(self._edges, dtype=np.int64).T
                matrix[us, vs] = 1
                matrix[vs, us] = 1
            matrix.setflags(write=False)
            self._matrix = matrix
        return self._matrix

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """The graph with vertex v renamed perm[v]."""
        if len(perm) != self._n:
            raise IndexOutOfRange(f"relabelling has {len(perm)} points, graph has {self._n}")
        return build_graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self._edges)
        return graph

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={len(self._edges)})"


@dataclass(frozen=True)
class Partition:
    """Ordered list of disjoint vertex blocks covering 0..n-1."""

    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> 'Partition':
        return cls(tuple(tuple(sorted(block)) for block in blocks))

    @classmethod
    def singletons(cls, n: int) -> 'Partition':
        return cls(tuple((v,) for v in range(n)))

    def block_index(self, n: int) -> List[int]:
        """Validate against n vertices and return the block number of each vertex."""
        owner = [-1] * n
        for index, block in enumerate(self.blocks):
            if not block:
                raise InvalidPartition(f"block {index} is empty")
            for v in block:
                if not 0 <= v < n:
                    raise InvalidPartition(f"vertex {v} in block {index} is outside 0..{n - 1}")
                if owner[v] != -1:
                    raise InvalidPartition(f"vertex {v} lies in blocks {owner[v]} and {index}")
                owner[v] = index
        missing = [v for v in range(n) if owner[v] == -1]
        if missing:
            raise InvalidPartition(f"vertices {missing[:5]} are not covered by any block")
        return owner

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class StructuralSummary:
    connected: bool
    bipartition: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    girth: Optional[int]
    diameter: Optional[int]
    regular_valency: Optional[int]
    degree_sequence: Tuple[int, ...]

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None

    def to_dict(self) -> Dict:
        return {
            'connected': self.connected,
            'bipartite': self.bipartite,
            'girth': self.girth,
            'diameter': self.diameter,
            'regular_valency': self.regular_valency,
            'degree_sequence': list(self.degree_sequence),
        }


def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a simple graph, dropping duplicate edges."""
    if n < 0:
        raise IndexOutOfRange(f"vertex count must be non-negative, got {n}")
    adjacency = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) leaves vertex range 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        adjacency[u].add(v)
        adjacency[v].add(u)
    return Graph(n, adjacency)


def empty_graph(n: int) -> Graph:
    return Graph(n, [()] * n)


def _validate_halves(g: Graph, halves) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    left, right = (tuple(sorted(half)) for half in halves)
    side = [-1] * g.n
    for label, half in enumerate((left, right)):
        for v in half:
            if not 0 <= v < g.n or side[v] != -1:
                raise InvalidBipartition(f"vertex {v} is out of range or repeated in the halves")
            side[v] = label
    if -1 in side:
        raise InvalidBipartition(f"halves miss vertex {side.index(-1)}")
    for u, v in g.edges():
        if side[u] == side[v]:
            raise InvalidBipartition(f"edge ({u}, {v}) lies inside one half")
    return left, right


def complement(g: Graph, mode: str = 'plain', halves=None) -> Graph:
    """Plain complement, or the bipartite complement across the given halves."""
    if mode == 'plain':
        return Graph(g.n, [set(range(g.n)) - set(g.neighbors(v)) - {v} for v in range(g.n)])
    if mode != 'bipartite':
        raise InvalidParameter(f"unknown complement mode {mode!r}")
    if halves is None:
        halves = bipartition(g)
        if halves is None:
            raise InvalidBipartition("graph is not bipartite and no halves were given")
    left, right = _validate_halves(g, halves)
    edges = [(u, v) for u in left for v in right if not g.has_edge(u, v)]
    return build_graph(g.n, edges)


def bipartite_complement(g: Graph, halves=None) -> Graph:
    return complement(g, 'bipartite', halves)


def standard_double_cover(g: Graph) -> Graph:
    """Vertex (v, i) is numbered 2v + i, matching the Z2 voltage cover layout."""
    edges = []
    for u, v in g.edges():
        edges.append((2 * u, 2 * v + 1))
        edges.append((2 * u + 1, 2 * v))
    return build_graph(2 * g.n, edges)


def quotient(g: Graph, p: Partition) -> Graph:
    owner = p.block_index(g.n)
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v]))
             for u, v in g.edges() if owner[u] != owner[v]}
    return build_graph(len(p), edges)


def is_cover(g: Graph, p: Partition) -> bool:
    owner = p.block_index(g.n)
    adjacent_blocks = [set() for _ in range(len(p))]
    for u, v in g.edges():
        if owner[u] == owner[v]:
            return False
        adjacent_blocks[owner[u]].add(owner[v])
        adjacent_blocks[owner[v]].add(owner[u])
    for x in range(g.n):
        seen = [owner[y] for y in g.neighbors(x)]
        if len(seen) != len(set(seen)) or set(seen) != adjacent_blocks[owner[x]]:
            return False
    return True


def bipartition(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """BFS two-colouring, each component's least vertex on the first side."""
    colour = [-1] * g.n
    matrix = _sparse(g) if g.n else None
    for start in range(g.n):
        if colour[start] != -1:
            continue
        order, parent = breadth_first_order(matrix, start, directed=False, return_predecessors=True)
        colour[start] = 0
        for v in order[1:].tolist():
            colour[v] = 1 - colour[int(parent[v])]
    if any(colour[u] == colour[v] for u, v in g.edges()):
        return None
    left = tuple(v for v in range(g.n) if colour[v] == 0)
    right = tuple(v for v in range(g.n) if colour[v] == 1)
    return left, right


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, None for forests."""
    best = None
    for source in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def _sparse(g: Graph) -> csr_matrix:
    return csr_matrix(g.adjacency_matrix().astype(np.float64))


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; unreachable pairs are inf."""
    if g.n == 0:
        return np.zeros((0, 0))
    return shortest_path(_sparse(g), method='D', directed=False, unweighted=True)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    count, _ = connected_components(_sparse(g), directed=False)
    return count == 1


def structural_summary(g: Graph) -> StructuralSummary:
    """Diameter is None when disconnected and 0 for a single vertex."""
    degrees = g.degrees()
    connected = is_connected(g)
    diameter = None
    if connected:
        diameter = int(distance_matrix(g).max())
    valency = degrees[0] if degrees and all(d == degrees[0] for d in degrees) else None
    return StructuralSummary(
        connected=connected,
        bipartition=bipartition(g),
        girth=girth(g),
        diameter=diameter,
        regular_valency=valency,
        degree_sequence=tuple(sorted(degrees, reverse=True)),
    )


def strongly_regular_parameters(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    """(n, k, lambda, mu) from common-neighbour counts, None if not strongly regular."""
    degrees = g.degrees()
    if g.n < 2 or len(set(degrees)) != 1:
        return None
    a = g.adjacency_matrix().astype(np.int64)
    common = a @ a
    off_diagonal = ~np.eye(g.n, dtype=bool)
    adjacent = (a == 1)
    non_adjacent = (a == 0) & off_diagonal
    if not adjacent.any() or not non_adjacent.any():
        return None
    lambdas = np.unique(common[adjacent])
    mus = np.unique(common[non_adjacent])
    if len(lambdas) != 1 or len(mus) != 1:
        return None
    return g.n, degrees[0], int(lambdas[0]), int(mus[0])


def intersection_array(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(b_0..b_{D-1}), (c_1..c_D) for a distance-regular graph, else None."""
    if not is_connected(g):
        return None
    dist = distance_matrix(g).astype(np.int64)
    a = g.adjacency_matrix().astype(np.int64)
    diameter = int(dist.max())
    layers = [(dist == i).astype(np.int64) for i in range(diameter + 1)]
    b_values, c_values = [], []
    for i in range(diameter + 1):
        at_i = dist == i
        if i < diameter:
            forward = np.unique((layers[i + 1] @ a)[at_i])
            if len(forward) != 1:
                return None
            b_values.append(int(forward[0]))
        if i > 0:
            backward = np.unique((layers[i - 1] @ a)[at_i])
            if len(backward) != 1:
                return None
            c_values.append(int(backward[0]))
    return tuple(b_values), tuple(c_values)


def _encode_order(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= GRAPH6_MAX_ORDER:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise TooLarge(f"graph6 supports at most {GRAPH6_MAX_ORDER} vertices, got {n}")


def _upper_triangle_bits(matrix: np.ndarray) -> np.ndarray:
    # column-major upper triangle: x(0,1), x(0,2), x(1,2), x(0,3), ...
    rows, cols = np.tril_indices(matrix.shape[0], -1)
    return matrix[cols, rows].astype(np.uint8)


def _pack_graph6(bits: np.ndarray) -> bytes:
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    if len(bits) == 0:
        return b''
    chunks = bits.reshape(-1, 6).astype(np.int64) @ np.array([32, 16, 8, 4, 2, 1])
    return bytes((chunks + 63).tolist())


def to_graph6(g: Graph) -> str:
    header = _encode_order(g.n)
    return (header + _pack_graph6(_upper_triangle_bits(g.adjacency_matrix()))).decode('ascii')


def _graph6_bytes(text) -> bytes:
    if isinstance(text, str):
        for index, char in enumerate(text):
            if ord(char) > 126:
                raise MalformedEncoding(f"invalid graph6 character {char!r}", index)
        return text.encode('ascii')
    return bytes(text)


def from_graph6(text) -> Graph:
    raw = _graph6_bytes(text)
    base = 0
    if raw.startswith(GRAPH6_HEADER.encode('ascii')):
        base = len(GRAPH6_HEADER)
    data = raw[base:].rstrip(b'\r\n')
    if not data:
        raise MalformedEncoding("empty graph6 string", base)
    for index, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise MalformedEncoding(f"invalid graph6 character {chr(byte)!r}", base + index)
    if data[0] == 126:
        if len(data) > 1 and data[1] == 126:
            raise TooLarge(f"graph6 orders above {GRAPH6_MAX_ORDER} are not supported")
        if len(data) < 4:
            raise MalformedEncoding("truncated vertex count", base + len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        start = 4
    else:
        n = data[0] - 63
        start = 1
    bit_count = n * (n - 1) // 2
    expected = (bit_count + 5) // 6
    payload = data[start:]
    if len(payload) != expected:
        raise MalformedEncoding(
            f"expected {expected} data bytes for {n} vertices, found {len(payload)}",
            base + start + min(len(payload), expected))
    if expected == 0:
        return empty_graph(n)
    values = np.frombuffer(payload, dtype=np.uint8).astype(np.int64) - 63
    bits = ((values[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    if bits[bit_count:].any():
        raise MalformedEncoding("non-zero padding bits", base + start + expected - 1)
    rows, cols = np.tril_indices(n, -1)
    chosen = bits[:bit_count] == 1
    return build_graph(n, zip(cols[chosen].tolist(), rows[chosen].tolist()))


def to_dot(g: Graph, name: str = 'G') -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
