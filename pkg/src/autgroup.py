"""
Automorphism Search Module
Automorphism groups, canonical forms and isomorphism by partition refinement,
individualization and backtracking.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.graph_core import Graph, _upper_triangle_bits, to_graph6
from src.groups import Perm, PermGroup

logger = logging.getLogger(__name__)

Cells = List[np.ndarray]
Trace = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class CanonicalForm:
    labeling: Perm
    graph6: str


class _Orbits:
    """Union-find over points, merged along permutations."""

    def __init__(self, n: int, gens: Sequence[Perm] = ()):
        self.parent = list(range(n))
        for g in gens:
            self.merge(g)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def merge(self, g: Perm) -> None:
        for x, y in enumerate(g.images):
            rx, ry = self.find(x), self.find(y)
            if rx != ry:
                self.parent[max(rx, ry)] = min(rx, ry)


def _fixes(g: Perm, points: Sequence[int]) -> bool:
    return all(g[p] == p for p in points)


class _Refiner:
    """Equitable refinement of ordered partitions of one graph."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.adjacency_matrix()
        self.adj_float = self.adj.astype(np.float64)

    def initial(self) -> Cells:
        degrees = self.adj.sum(axis=1)
        return [np.flatnonzero(degrees == d) for d in np.unique(degrees)]

    def refine(self, cells: Cells) -> Tuple[Cells, Trace]:
        n = self.n
        while True:
            c = len(cells)
            membership = np.zeros((n, c))
            for index, cell in enumerate(cells):
                membership[cell, index] = 1.0
            counts = np.rint(self.adj_float @ membership).astype(np.int64)
            if c == n:
                break
            split: Cells = []
            for cell in cells:
                if len(cell) == 1:
                    split.append(cell)
                    continue
                keys, inverse = np.unique(counts[cell], axis=0, return_inverse=True)
                if len(keys) == 1:
                    split.append(cell)
                    continue
                inverse = inverse.reshape(-1)
                split.extend(cell[inverse == k] for k in range(len(keys)))
            if len(split) == c:
                break
            cells = split
        reps = [int(cell[0]) for cell in cells]
        trace = (tuple(len(cell) for cell in cells), tuple(counts[reps].ravel().tolist()))
        return cells, trace

    @staticmethod
    def individualize(cells: Cells, index: int, v: int) -> Cells:
        cell = cells[index]
        if len(cell) == 1:
            return cells
        return cells[:index] + [np.array([v]), cell[cell != v]] + cells[index + 1:]

    @staticmethod
    def target(cells: Cells) -> int:
        best, best_size = -1, None
        for index, cell in enumerate(cells):
            if len(cell) > 1 and (best_size is None or len(cell) < best_size):
                best, best_size = index, len(cell)
        return best

    @staticmethod
    def cell_of(cells: Cells, v: int) -> int:
        for index, cell in enumerate(cells):
            if v in cell:
                return index
        raise ValueError(f"vertex {v} is in no cell")

    def is_automorphism(self, images: np.ndarray) -> bool:
        return np.array_equal(self.adj[np.ix_(images, images)], self.adj)


def is_automorphism(g: Graph, perm: Perm) -> bool:
    if perm.degree != g.n:
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


class _FirstPathSearch:
    """Stabilizer chain along the first path of the search tree."""

    def __init__(self, g: Graph, base_prefix: Sequence[int]):
        self.ref = _Refiner(g)
        self.n = g.n
        cells, trace = self.ref.refine(self.ref.initial())
        self.path = []
        level = 0
        while len(cells) < self.n:
            if level < len(base_prefix):
                v = int(base_prefix[level])
                index = self.ref.cell_of(cells, v)
            else:
                index = self.ref.target(cells)
                v = int(cells[index].min())
            self.path.append((cells, trace, index, v))
            cells, trace = self.ref.refine(self.ref.individualize(cells, index, v))
            level += 1
        self.traces = [step[1] for step in self.path] + [trace]
        self.base = [step[3] for step in self.path]
        self.first_leaf = np.array([int(cell[0]) for cell in cells])
        self.gens: List[Perm] = []

    def run(self) -> PermGroup:
        for k in reversed(range(len(self.path))):
            cells, _, index, v = self.path[k]
            orbits = _Orbits(self.n, [g for g in self.gens if _fixes(g, self.base[:k])])
            rejected: List[int] = []
            for w in sorted(cells[index].tolist()):
                if orbits.find(w) == orbits.find(v):
                    continue
                if any(orbits.find(w) == orbits.find(x) for x in rejected):
                    continue
                gamma = self._equivalent(k, w)
                if gamma is None:
                    rejected.append(w)
                else:
                    self.gens.append(gamma)
                    orbits.merge(gamma)
        group = PermGroup.from_chain(self.gens, self.n, self.base)
        logger.debug(f"automorphism search: {len(self.gens)} generators, order {group.order()}")
        return group

    def _equivalent(self, k: int, w: int) -> Optional[Perm]:
        cells, _, index, _ = self.path[k]
        child, trace = self.ref.refine(self.ref.individualize(cells, index, w))
        return self._descend(k + 1, child, trace, self.base[:k] + [w])

    def _descend(self, level: int, cells: Cells, trace: Trace, prefix: List[int]) -> Optional[Perm]:
        if trace != self.traces[level]:
            return None
        if level == len(self.path):
            leaf = np.array([int(cell[0]) for cell in cells])
            images = np.empty(self.n, dtype=np.int64)
            images[self.first_leaf] = leaf
            if self.ref.is_automorphism(images):
                return Perm(images.tolist())
            return None
        index = self.path[level][2]
        orbits = _Orbits(self.n, [g for g in self.gens if _fixes(g, prefix)])
        tried: List[int] = []
        for u in sorted(cells[index].tolist()):
            if any(orbits.find(u) == orbits.find(x) for x in tried):
                continue
            tried.append(u)
            child, child_trace = self.ref.refine(self.ref.individualize(cells, index, u))
            found = self._descend(level + 1, child, child_trace, prefix + [u])
            if found is not None:
                return found
        return None


def automorphism_group(g: Graph, base_prefix: Sequence[int] = ()) -> PermGroup:
    """Full automorphism group; its base starts with base_prefix where refinement allows."""
    if g.n == 0:
        return PermGroup([], degree=0)
    return _FirstPathSearch(g, base_prefix).run()


class _CanonicalSearch:
    """Least (trace sequence, graph6 bits) leaf, pruned by known automorphisms."""

    def __init__(self, g: Graph, gens: Sequence[Perm]):
        self.ref = _Refiner(g)
        self.n = g.n
        self.gens = list(gens)
        self.best_traces = None
        self.best_cert = None
        self.best_leaf = None

    def run(self) -> np.ndarray:
        cells, trace = self.ref.refine(self.ref.initial())
        self._visit(cells, [trace], [])
        return self.best_leaf

    def _visit(self, cells: Cells, traces: List[Trace], prefix: List[int]) -> None:
        if self.best_traces is not None and traces > self.best_traces[:len(traces)]:
            return
        if len(cells) == self.n:
            leaf = np.array([int(cell[0]) for cell in cells])
            cert = np.packbits(_upper_triangle_bits(self.ref.adj[np.ix_(leaf, leaf)])).tobytes()
            key = (traces, cert)
            if self.best_traces is None or key < (self.best_traces, self.best_cert):
                self.best_traces, self.best_cert, self.best_leaf = traces, cert, leaf
            elif key == (self.best_traces, self.best_cert):
                images = np.empty(self.n, dtype=np.int64)
                images[self.best_leaf] = leaf
                self.gens.append(Perm(images.tolist()))
            return
        index = self.ref.target(cells)
        tried: List[int] = []
        for u in sorted(cells[index].tolist()):
            orbits = _Orbits(self.n, [g for g in self.gens if _fixes(g, prefix)])
            if any(orbits.find(u) == orbits.find(x) for x in tried):
                continue
            tried.append(u)
            child, trace = self.ref.refine(self.ref.individualize(cells, index, u))
            self._visit(child, traces + [trace], prefix + [u])


def canonical_form(g: Graph, aut: Optional[PermGroup] = None) -> CanonicalForm:
    if g.n == 0:
        return CanonicalForm(Perm.identity(0), to_graph6(g))
    if aut is None:
        aut = automorphism_group(g)
    leaf = _CanonicalSearch(g, aut.generators).run()
    labeling = [0] * g.n
    for position, v in enumerate(leaf.tolist()):
        labeling[v] = position
    perm = Perm(labeling)
    return CanonicalForm(perm, to_graph6(g.relabel(perm)))


def are_isomorphic(a: Graph, b: Graph) -> Optional[Perm]:
    """An isomorphism a -> b as a vertex map, or None."""
    if a.n != b.n or a.edge_count != b.edge_count:
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None
    ca, cb = canonical_form(a), canonical_form(b)
    if ca.graph6 != cb.graph6:
        return None
    mapping = ca.labeling * cb.labeling.inverse()
    if not all(b.has_edge(mapping[u], mapping[v]) for u, v in a.edges()):
        raise RuntimeError("canonical forms agree but the derived map is not an isomorphism")
    return mapping
