"""
Voltage Cover Module
Voltage assignments over table groups and their derived regular covers.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from src.errors import (DisconnectedBase, InvalidParameter, MissingEdgeVoltage, NotASpanningTree,
                        NotAWalk, VoltageAntisymmetryError)
from src.graph_core import Graph, Partition, build_graph
from src.groups import GroupTable

logger = logging.getLogger(__name__)

Element = Union[int, str]
Arc = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class VoltageAssignment:
    """Voltages stored on each edge (u, v) with u < v; the reverse arc carries the inverse."""

    base: Graph
    group: GroupTable
    voltages: Tuple[int, ...]
    _edge_index: Dict[Arc, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_edge_index', {e: i for i, e in enumerate(self.base.edges())})

    def arc_voltage(self, u: int, v: int) -> int:
        if u < v:
            index = self._edge_index.get((u, v))
            if index is not None:
                return self.voltages[index]
        else:
            index = self._edge_index.get((v, u))
            if index is not None:
                return self.group.inv(self.voltages[index])
        raise NotAWalk(f"({u}, {v}) is not an arc of the base graph")

    def is_trivial(self) -> bool:
        return all(x == self.group.identity for x in self.voltages)

    def to_text(self) -> str:
        """One "u v element" line per edge, least endpoint first."""
        return ''.join(f"{u} {v} {self.group.name(x)}\n"
                       for (u, v), x in zip(self.base.edges(), self.voltages))


def make_voltage(base: Graph, group: GroupTable, assignment: Mapping[Arc, Element]) -> VoltageAssignment:
    values: Dict[Arc, int] = {}
    for (u, v), element in assignment.items():
        if not (0 <= u < base.n and 0 <= v < base.n) or not base.has_edge(u, v):
            raise InvalidParameter(f"voltage given on ({u}, {v}), which is not an edge of the base")
        x = group.evaluate(element)
        oriented = x if u < v else group.inv(x)
        key = (min(u, v), max(u, v))
        if key in values and values[key] != oriented:
            raise VoltageAntisymmetryError(f"edge {key} has inconsistent voltages on its two arcs")
        values[key] = oriented
    missing = [e for e in base.edges() if e not in values]
    if missing:
        raise MissingEdgeVoltage(f"no voltage on edges {missing[:5]}")
    return VoltageAssignment(base, group, tuple(values[e] for e in base.edges()))


def voltage_from_rule(base: Graph, group: GroupTable,
                      rule: Callable[[int, int], Optional[Element]]) -> VoltageAssignment:
    """Assignment from a rule defined on arcs; arcs the rule defines in both
    directions must carry mutually inverse voltages."""
    assignment: Dict[Arc, Element] = {}
    for u, v in base.edges():
        forward, backward = rule(u, v), rule(v, u)
        if forward is None and backward is None:
            raise MissingEdgeVoltage(f"rule gives no voltage on edge ({u}, {v})")
        if forward is not None and backward is not None:
            x, y = group.evaluate(forward), group.evaluate(backward)
            if group.inv(x) != y:
                raise VoltageAntisymmetryError(
                    f"arc ({u}, {v}) has voltage {group.name(x)} but ({v}, {u}) has {group.name(y)}")
        if forward is not None:
            assignment[(u, v)] = forward
        else:
            assignment[(v, u)] = backward
    return make_voltage(base, group, assignment)


def from_text(base: Graph, group: GroupTable, text: str) -> VoltageAssignment:
    assignment = {}
    for line in text.splitlines():
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        u, v, element = line.split(maxsplit=2)
        assignment[(int(u), int(v))] = element
    return make_voltage(base, group, assignment)


def cover(va: VoltageAssignment) -> Tuple[Graph, Partition]:
    """Derived cover; vertex (v, g) is numbered v * |group| + g."""
    m = va.group.m
    table = va.group.table
    g_index = np.arange(m)
    edges = []
    for (u, v), x in zip(va.base.edges(), va.voltages):
        targets = table[:, x]
        edges.extend(zip((u * m + g_index).tolist(), (v * m + targets).tolist()))
    graph = build_graph(va.base.n * m, edges)
    fibres = Partition(tuple(tuple(range(v * m, (v + 1) * m)) for v in range(va.base.n)))
    return graph, fibres


def walk_voltage(va: VoltageAssignment, walk: Sequence[int]) -> int:
    result = va.group.identity
    for u, v in zip(walk, walk[1:]):
        if not (0 <= u < va.base.n and 0 <= v < va.base.n) or not va.base.has_edge(u, v):
            raise NotAWalk(f"{u} and {v} are not adjacent in the base graph")
        result = va.group.mul(result, va.arc_voltage(u, v))
    return result


def bfs_tree(base: Graph, root: int = 0) -> List[Arc]:
    """Breadth-first spanning tree edges as (parent, child)."""
    if base.n == 0:
        return []
    return [(int(u), int(w)) for u, w in nx.bfs_edges(base.to_networkx(), root)]


def _potentials(va: VoltageAssignment, tree: Iterable[Arc], root: int = 0) -> List[int]:
    """Voltage of the tree path from root to each vertex."""
    if va.base.n == 0:
        return []
    tree_graph = nx.Graph()
    tree_graph.add_nodes_from(range(va.base.n))
    tree_graph.add_edges_from(tree)
    potential: List[Optional[int]] = [None] * va.base.n
    potential[root] = va.group.identity
    for u, w in nx.bfs_edges(tree_graph, root):
        potential[w] = va.group.mul(potential[u], va.arc_voltage(u, w))
    return potential


def cover_connected(va: VoltageAssignment) -> bool:
    """True iff the fundamental-cycle voltages generate the whole group."""
    tree = bfs_tree(va.base) if va.base.n else []
    if va.base.n == 0 or len(tree) != va.base.n - 1:
        raise DisconnectedBase("the base graph must be connected")
    tree_edges = {(min(u, v), max(u, v)) for u, v in tree}
    potential = _potentials(va, tree)
    group = va.group
    cycle_voltages = [
        group.mul(group.mul(potential[u], va.arc_voltage(u, v)), group.inv(potential[v]))
        for u, v in va.base.edges() if (u, v) not in tree_edges]
    return len(group.subgroup_closure(cycle_voltages)) == group.m


def reduce_voltage(va: VoltageAssignment, tree: Iterable[Arc]) -> VoltageAssignment:
    """Gauge-equivalent assignment that is trivial on the given spanning tree."""
    tree = [(int(u), int(v)) for u, v in tree]
    n = va.base.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if len(tree) != max(n - 1, 0):
        raise NotASpanningTree(f"a spanning tree on {n} vertices has {n - 1} edges, got {len(tree)}")
    for u, v in tree:
        if not (0 <= u < n and 0 <= v < n) or not va.base.has_edge(u, v):
            raise NotASpanningTree(f"({u}, {v}) is not an edge of the base graph")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotASpanningTree(f"edge ({u}, {v}) closes a cycle")
        parent[ru] = rv
    potential = _potentials(va, tree)
    group = va.group
    reduced = tuple(
        group.mul(group.mul(potential[u], va.arc_voltage(u, v)), group.inv(potential[v]))
        for u, v in va.base.edges())
    return VoltageAssignment(va.base, group, reduced)


def conjugate_voltage(va: VoltageAssignment, k: int) -> VoltageAssignment:
    """Every voltage x replaced by k^-1 x k."""
    group = va.group
    k_inv = group.inv(k)
    return VoltageAssignment(va.base, group,
                             tuple(group.mul(group.mul(k_inv, x), k) for x in va.voltages))
