"""
Symmetry Predicates Module
Vertex-, arc- and 2-arc-transitivity checks, s-arc counts and certified
bicirculant / circulant witness search.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

from config.atlas_config import get_default_budget, get_probe_size
from src.autgroup import automorphism_group, is_automorphism
from src.errors import InvalidParameter
from src.graph_core import Graph
from src.groups import Perm, PermGroup

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of a witness search; `budget_used` counts group elements examined."""

    verdict: Verdict
    witness: Optional[Perm] = None
    budget_used: int = 0

    def to_dict(self) -> Dict:
        return {
            'verdict': self.verdict.value,
            'witness': str(self.witness) if self.witness is not None else None,
            'cycle_type': list(self.witness.cycle_type()) if self.witness is not None else None,
            'search_budget_used': self.budget_used,
        }


@dataclass(frozen=True)
class TransitivityProfile:
    vertex: bool
    arc: bool
    two_arc: bool

    def to_dict(self) -> Dict:
        return {'vertex': self.vertex, 'arc': self.arc, 'two_arc': self.two_arc}


def count_s_arcs(g: Graph, s: int) -> int:
    """Ordered s-arcs for s in 0, 1, 2."""
    degrees = g.degrees()
    if s == 0:
        return g.n
    if s == 1:
        return sum(degrees)
    if s == 2:
        return sum(d * (d - 1) for d in degrees)
    raise InvalidParameter(f"s-arc counts are supported for s <= 2, got {s}")


def seed_arc(g: Graph) -> Optional[Tuple[int, int]]:
    for u in range(g.n):
        if g.neighbors(u):
            return (u, g.neighbors(u)[0])
    return None


def seed_two_arc(g: Graph) -> Optional[Tuple[int, int, int]]:
    """Lexicographically least 2-arc (u, v, w), u != w."""
    for u in range(g.n):
        for v in g.neighbors(u):
            for w in g.neighbors(v):
                if w != u:
                    return (u, v, w)
    return None


def transitivity_profile(g: Graph, aut: PermGroup) -> TransitivityProfile:
    if g.n == 0:
        return TransitivityProfile(False, False, False)
    vertex = aut.tuple_orbit_length([0]) == g.n
    arc = False
    two_arc = False
    first_arc = seed_arc(g)
    if vertex and first_arc is not None:
        arc = aut.tuple_orbit_length(first_arc) == count_s_arcs(g, 1)
    first_two_arc = seed_two_arc(g)
    if arc and first_two_arc is not None:
        two_arc = aut.tuple_orbit_length(first_two_arc) == count_s_arcs(g, 2)
    return TransitivityProfile(vertex, arc, two_arc)


def is_bicirculant_element(g: Graph, perm: Perm) -> bool:
    """Automorphism with exactly two cycles of one length n >= 2."""
    if perm.degree != g.n:
        return False
    ct = perm.cycle_type()
    return len(ct) == 2 and ct[0] == ct[1] >= 2 and is_automorphism(g, perm)


def is_circulant_element(g: Graph, perm: Perm) -> bool:
    if perm.degree != g.n or g.n == 0:
        return False
    return perm.cycle_type() == (g.n,) and is_automorphism(g, perm)


def _bicirculant_candidate(x: Perm) -> Optional[Perm]:
    ct = x.cycle_type()
    if len(ct) == 2 and ct[0] == ct[1] >= 2:
        return x
    # the square of a full cycle of even length splits into two equal cycles
    if len(ct) == 1 and ct[0] % 2 == 0 and ct[0] >= 4:
        return x * x
    return None


def _circulant_candidate(x: Perm) -> Optional[Perm]:
    return x if len(x.cycle_type()) == 1 else None


def _search(g: Graph, budget: int, hints: Iterable[Optional[Perm]], aut: Optional[PermGroup],
            candidate: Callable[[Perm], Optional[Perm]],
            accept: Callable[[Graph, Perm], bool], kind: str) -> WitnessResult:
    used = 0
    for hint in hints:
        if hint is None:
            continue
        used += 1
        if accept(g, hint):
            return WitnessResult(Verdict.YES, hint, used)
        logger.warning(f"⚠️ supplied {kind} witness {hint} failed verification")

    def examine(x: Perm) -> Optional[Perm]:
        y = candidate(x)
        return y if y is not None and accept(g, y) else None

    if aut is None:
        aut = automorphism_group(g)
    order = aut.order()
    rng = Random(0)
    if order <= budget:
        for _ in range(min(get_probe_size(), order)):
            used += 1
            found = examine(aut.random_element(rng))
            if found is not None:
                return WitnessResult(Verdict.YES, found, used)
        for x in aut.elements():
            used += 1
            found = examine(x)
            if found is not None:
                return WitnessResult(Verdict.YES, found, used)
        logger.info(f"no {kind} element among all {order} automorphisms")
        return WitnessResult(Verdict.NO, None, used)
    logger.info(f"|Aut| = {order} exceeds budget {budget}; sampling at random")
    for _ in range(budget):
        used += 1
        found = examine(aut.random_element(rng))
        if found is not None:
            return WitnessResult(Verdict.YES, found, used)
    logger.warning(f"⏳ {kind} search undecided after {used} samples")
    return WitnessResult(Verdict.UNKNOWN, None, used)


def bicirculant_witness(g: Graph, budget: Optional[int] = None, hints: Sequence[Optional[Perm]] = (),
                        aut: Optional[PermGroup] = None) -> WitnessResult:
    """Search for an automorphism with two cycles of length |V|/2.

    Supplied hints are verified first. When |Aut| fits in the budget a seeded
    random probe precedes the exhaustive scan, so a "no" is always exhaustive;
    larger groups are only sampled and may end undecided.

    Args:
        g: Graph to test
        budget: Maximum number of group elements to enumerate (config default if None)
        hints: Candidate permutations, e.g. a constructor's rotation
        aut: Precomputed automorphism group of g

    Returns:
        WitnessResult with the verified witness when found
    """
    budget = get_default_budget() if budget is None else budget
    if budget <= 0:
        raise InvalidParameter(f"budget must be positive, got {budget}")
    if g.n < 4 or g.n % 2:
        return WitnessResult(Verdict.NO)
    return _search(g, budget, hints, aut, _bicirculant_candidate, is_bicirculant_element, 'bicirculant')


def circulant_witness(g: Graph, budget: Optional[int] = None, hints: Sequence[Optional[Perm]] = (),
                      aut: Optional[PermGroup] = None) -> WitnessResult:
    """Search for an automorphism that is a single |V|-cycle."""
    budget = get_default_budget() if budget is None else budget
    if budget <= 0:
        raise InvalidParameter(f"budget must be positive, got {budget}")
    if g.n == 0:
        return WitnessResult(Verdict.NO)
    return _search(g, budget, hints, aut, _circulant_candidate, is_circulant_element, 'circulant')
