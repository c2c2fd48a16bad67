"""
Census Classification Module
Census generation, instance verification and classification of input graphs
against the list of connected 2-arc-transitive bicirculants.
"""

import logging
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from config.atlas_config import get_default_budget
from src.autgroup import automorphism_group, canonical_form
from src.errors import InvalidParameter
from src.families import (Family, FamilyInstance, build_family, cayley, clebsch, complete,
                          complete_bipartite, cube_family, cycle, family_label, knn_minus_matching,
                          petersen, petersen_complement)
from src.gf import is_prime_power
from src.graph_core import Graph, complement, structural_summary
from src.groups import concrete_group
from src.predicates import (TransitivityProfile, Verdict, WitnessResult, bicirculant_witness,
                            seed_two_arc, transitivity_profile)

logger = logging.getLogger(__name__)

ARC_TRANSITIVE_GP = ((4, 1), (5, 2), (8, 3), (10, 2), (10, 3), (12, 5), (24, 5))

# family labels known to name the same graph
EXPECTED_IDENTITIES: Tuple[frozenset, ...] = (
    frozenset({'C_4', 'K_{2,2}'}),
    frozenset({'C_6', 'K_{3,3}-3K_2', 'Gamma(2,2,1)'}),
    frozenset({'GP(4,1)', 'K_{4,4}-4K_2'}),
    frozenset({'GP(8,3)', 'X1(4,3)', 'K_4^4'}),
)


class Reason(str, Enum):
    DISCONNECTED = 'disconnected'
    NOT_2_ARC_TRANSITIVE = 'not_2_arc_transitive'
    NOT_BICIRCULANT_PROVEN = 'not_bicirculant_proven'
    UNDECIDED_BUDGET = 'undecided_budget'


@dataclass
class CensusEntry:
    family_id: str
    params: Tuple
    label: str
    canonical_key: str
    order: int
    valency: Optional[int]
    girth: Optional[int]
    diameter: Optional[int]
    bipartite: bool
    aut_order: int
    connected: bool
    vertex_transitive: bool
    arc_transitive: bool
    two_arc_transitive: bool
    bicirculant: str
    witness: Optional[str]
    witness_cycle_type: Optional[Tuple[int, ...]]
    search_budget_used: int
    provenance: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.connected and self.two_arc_transitive and self.bicirculant == Verdict.YES.value

    def to_dict(self) -> Dict:
        return {
            'family_id': self.family_id,
            'params': list(self.params),
            'label': self.label,
            'canonical_key': self.canonical_key,
            'order': self.order,
            'valency': self.valency,
            'girth': self.girth,
            'diameter': self.diameter,
            'bipartite': self.bipartite,
            'aut_order': self.aut_order,
            'connected': self.connected,
            'vertex_transitive': self.vertex_transitive,
            'arc_transitive': self.arc_transitive,
            'two_arc_transitive': self.two_arc_transitive,
            'bicirculant': self.bicirculant,
            'witness': self.witness,
            'witness_cycle_type': list(self.witness_cycle_type) if self.witness_cycle_type else None,
            'search_budget_used': self.search_budget_used,
            'provenance': list(self.provenance),
        }


@dataclass
class ClassificationReport:
    verdict: str
    reason: Optional[Reason] = None
    entry: Optional[CensusEntry] = None
    canonical_key: Optional[str] = None
    profile: Optional[TransitivityProfile] = None
    witness: Optional[WitnessResult] = None

    def to_dict(self) -> Dict:
        return {
            'verdict': self.verdict,
            'reason': self.reason.value if self.reason else None,
            'canonical_key': self.canonical_key,
            'transitivity': self.profile.to_dict() if self.profile else None,
            'bicirculant': self.witness.to_dict() if self.witness else None,
            'match': self.entry.to_dict() if self.entry else None,
        }


@dataclass(frozen=True)
class DuplicateIdentity:
    canonical_key: str
    labels: Tuple[str, ...]
    expected: bool


def verify_instance(fi: FamilyInstance, budget: Optional[int] = None) -> CensusEntry:
    """
    Run every predicate on a family instance and record the outcomes.

    Args:
        fi: Constructed family instance
        budget: Element budget for the bicirculant search

    Returns:
        CensusEntry whose flags come from actual predicate runs
    """
    g = fi.graph
    budget = get_default_budget() if budget is None else budget
    summary = structural_summary(g)
    aut = automorphism_group(g, base_prefix=seed_two_arc(g) or ())
    profile = transitivity_profile(g, aut)
    result = bicirculant_witness(g, budget, hints=[fi.witness], aut=aut)
    key = canonical_form(g, aut).graph6
    logger.info(f"verified {fi.label}: |V|={g.n}, |Aut|={aut.order()}, "
                f"2-arc={profile.two_arc}, bicirculant={result.verdict.value}")
    return CensusEntry(
        family_id=fi.family_id.value,
        params=tuple(fi.params),
        label=fi.label,
        canonical_key=key,
        order=g.n,
        valency=summary.regular_valency,
        girth=summary.girth,
        diameter=summary.diameter,
        bipartite=summary.bipartite,
        aut_order=aut.order(),
        connected=summary.connected,
        vertex_transitive=profile.vertex,
        arc_transitive=profile.arc,
        two_arc_transitive=profile.two_arc,
        bicirculant=result.verdict.value,
        witness=str(result.witness) if result.witness is not None else None,
        witness_cycle_type=result.witness.cycle_type() if result.witness is not None else None,
        search_budget_used=result.budget_used,
        provenance=[fi.label],
    )


def _divisors(n: int) -> List[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def census_parameters(max_vertices: int) -> List[Tuple[Family, Tuple]]:
    """Every (family, params) of the classification list with at most max_vertices vertices.

    Bounds per family, with v the number of vertices:
    C_2n, K_2n: v = 2n; K_n,n and K_n,n - nK_2: v = 2n;
    B, B'(PG(d-1,q)): v = 2(q^d-1)/(q-1), d >= 3;
    X1(4,q): v = 4(q+1); K_{q+1}^{2d}, AT_D, AT_Q: v = 2d(q+1);
    Gamma(d,q,r): v = 2r(q^d-1)/(q-1).
    """
    if max_vertices < 4:
        raise InvalidParameter(f"census needs max_vertices >= 4, got {max_vertices}")
    m = max_vertices
    params: List[Tuple[Family, Tuple]] = []
    params += [(Family.CYCLE, (v,)) for v in range(4, m + 1, 2)]
    params += [(Family.COMPLETE, (v,)) for v in range(4, m + 1, 2)]
    params += [(Family.KMN, (n, n)) for n in range(2, m // 2 + 1)]
    params += [(Family.KNN_MINUS, (n,)) for n in range(3, m // 2 + 1)]

    prime_powers = [q for q in range(2, m) if is_prime_power(q)]
    for q in prime_powers:
        d = 3
        while 2 * (q ** d - 1) // (q - 1) <= m:
            params += [(Family.PG, (d, q)), (Family.PG_PRIME, (d, q))]
            d += 1
    if m >= 22:
        params += [(Family.H11, ()), (Family.H11_PRIME, ())]

    params += [(Family.GP, (n, r)) for n, r in ARC_TRANSITIVE_GP if 2 * n <= m]
    if m >= 16:
        params.append((Family.FOLDED_CUBE, (5,)))

    for q in prime_powers:
        if q % 4 == 3 and 4 * (q + 1) <= m:
            params.append((Family.X1, (q,)))
    for q in prime_powers:
        if q % 2 == 0:
            continue
        half = (q - 1) // 2
        for d in _divisors(q - 1):
            if 2 * d * (q + 1) > m:
                continue
            if d >= 2:
                params.append((Family.KQ2D, (q, d)))
            if d >= 4 and half % d != 0:
                params.append((Family.ATQ, (q, d)))
            if d >= 2 and half % d == 0:
                params.append((Family.ATD, (q, d)))

    sporadic_orders = ((Family.ATD46, 24), (Family.ATQ412, 48), (Family.ATD56, 30),
                       (Family.X2_3, 30), (Family.X3_2, 28))
    params += [(family, ()) for family, order in sporadic_orders if order <= m]

    for q in prime_powers:
        d = 2
        while 2 * (q ** d - 1) // (q - 1) <= m:
            for r in _divisors(q - 1):
                if 2 * r * (q ** d - 1) // (q - 1) <= m:
                    params.append((Family.GDD, (d, q, r)))
            d += 1
    return params


def _verify_params(task: Tuple[Family, Tuple, int]) -> CensusEntry:
    family, params, budget = task
    return verify_instance(build_family(family, params), budget)


def _merge(entries: Iterable[CensusEntry]) -> List[CensusEntry]:
    merged: "OrderedDict[str, CensusEntry]" = OrderedDict()
    for entry in entries:
        kept = merged.get(entry.canonical_key)
        if kept is None:
            merged[entry.canonical_key] = replace(entry, provenance=list(entry.provenance))
        else:
            kept.provenance.extend(label for label in entry.provenance if label not in kept.provenance)
    return sorted(merged.values(), key=lambda e: (e.order, e.valency or 0, e.canonical_key))


def census(max_vertices: int, budget: Optional[int] = None, workers: int = 1,
           progress: bool = False) -> List[CensusEntry]:
    """
    Build, verify and deduplicate every census instance up to max_vertices.

    Args:
        max_vertices: Largest order included
        budget: Element budget for bicirculant searches
        workers: Worker processes for verification (1 runs in-process)
        progress: Show a progress bar

    Returns:
        Entries sorted by (order, valency, canonical key), one per isomorphism class
    """
    budget = get_default_budget() if budget is None else budget
    tasks = [(family, params, budget) for family, params in census_parameters(max_vertices)]
    logger.info(f"🔎 census up to {max_vertices} vertices: {len(tasks)} instances")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(_verify_params, tasks), total=len(tasks),
                                desc='census', disable=not progress))
    else:
        results = [_verify_params(task) for task in tqdm(tasks, desc='census', disable=not progress)]
    entries = _merge(results)
    for entry in entries:
        if not entry.verified:
            logger.error(f"❌ census instance {entry.label} failed verification: "
                         f"connected={entry.connected}, 2-arc={entry.two_arc_transitive}, "
                         f"bicirculant={entry.bicirculant}")
    _check_expected_identities(entries)
    logger.info(f"✅ census complete: {len(entries)} isomorphism classes")
    return entries


def duplicate_identities(entries: Sequence[CensusEntry]) -> List[DuplicateIdentity]:
    duplicates = []
    for entry in entries:
        if len(entry.provenance) < 2:
            continue
        labels = tuple(entry.provenance)
        expected = any(set(labels) <= group for group in EXPECTED_IDENTITIES)
        duplicates.append(DuplicateIdentity(entry.canonical_key, labels, expected))
    return duplicates


def _check_expected_identities(entries: Sequence[CensusEntry]) -> None:
    owner = {label: entry.canonical_key for entry in entries for label in entry.provenance}
    for group in EXPECTED_IDENTITIES:
        keys = {owner[label] for label in group if label in owner}
        if len(keys) > 1:
            logger.error(f"❌ expected identity {sorted(group)} split across {len(keys)} classes")
    for duplicate in duplicate_identities(entries):
        if not duplicate.expected:
            logger.info(f"🔁 unlisted identity: {' = '.join(duplicate.labels)}")


def census_frame(entries: Sequence[CensusEntry]) -> pd.DataFrame:
    """Census entries as a table, one row per isomorphism class."""
    rows = []
    for entry in entries:
        row = entry.to_dict()
        row['params'] = ' '.join(str(p) for p in entry.params)
        row['provenance'] = '; '.join(entry.provenance)
        row['witness_cycle_type'] = (' '.join(str(c) for c in entry.witness_cycle_type)
                                     if entry.witness_cycle_type else None)
        rows.append(row)
    columns = list(CensusEntry.__dataclass_fields__)
    return pd.DataFrame(rows, columns=columns)


def _instances_of_order(n: int, valency: Optional[int]) -> List[FamilyInstance]:
    if n < 4:
        return []
    instances = []
    for family, params in census_parameters(n):
        fi = build_family(family, params)
        if fi.graph.n != n:
            continue
        degrees = set(fi.graph.degrees())
        if valency is not None and degrees != {valency}:
            continue
        instances.append(fi)
    return instances


def classify(g: Graph, budget: Optional[int] = None) -> ClassificationReport:
    """
    Classify a graph against the census of its order.

    Rejections are checked in order: connectivity, 2-arc-transitivity, then
    the bicirculant search. A certified graph matching no census instance of
    its order and valency is reported as an anomaly.
    """
    budget = get_default_budget() if budget is None else budget
    summary = structural_summary(g)
    if not summary.connected:
        return ClassificationReport('rejected', Reason.DISCONNECTED)
    aut = automorphism_group(g, base_prefix=seed_two_arc(g) or ())
    profile = transitivity_profile(g, aut)
    key = canonical_form(g, aut).graph6
    if not profile.two_arc:
        return ClassificationReport('rejected', Reason.NOT_2_ARC_TRANSITIVE, canonical_key=key,
                                    profile=profile)
    witness = bicirculant_witness(g, budget, aut=aut)
    if witness.verdict is Verdict.NO:
        return ClassificationReport('rejected', Reason.NOT_BICIRCULANT_PROVEN, canonical_key=key,
                                    profile=profile, witness=witness)
    if witness.verdict is Verdict.UNKNOWN:
        return ClassificationReport('rejected', Reason.UNDECIDED_BUDGET, canonical_key=key,
                                    profile=profile, witness=witness)

    matches = [fi for fi in _instances_of_order(g.n, summary.regular_valency)
               if canonical_form(fi.graph).graph6 == key]
    if not matches:
        logger.error(f"❗ certified 2-arc-transitive bicirculant on {g.n} vertices matches no census instance")
        return ClassificationReport('theorem_anomaly', canonical_key=key, profile=profile, witness=witness)
    entry = _merge(verify_instance(fi, budget) for fi in matches)[0]
    return ClassificationReport('census_match', entry=entry, canonical_key=key, profile=profile,
                                witness=witness)


def circulant_census(n: int) -> List[FamilyInstance]:
    """Connected 2-arc-transitive circulants of order n, one per isomorphism class."""
    if n < 3:
        return []
    candidates = [complete(n), cycle(n)]
    if n % 2 == 0 and n >= 4:
        m = n // 2
        candidates.append(complete_bipartite(m, m))
        if m % 2 == 1 and m >= 3:
            candidates.append(knn_minus_matching(m))
    distinct: "OrderedDict[str, FamilyInstance]" = OrderedDict()
    for fi in candidates:
        distinct.setdefault(canonical_form(fi.graph).graph6, fi)
    return list(distinct.values())


def brute_force_circulant_keys(n: int) -> List[str]:
    """Canonical keys of all connected 2-arc-transitive circulants on Z_n, by exhaustion."""
    group = concrete_group('cyclic', n)
    steps = range(1, n // 2 + 1)
    keys = set()
    for size in range(1, len(steps) + 1):
        for chosen in combinations(steps, size):
            connection = sorted({s for c in chosen for s in (c, n - c)})
            g = cayley(group, connection).graph
            if not structural_summary(g).connected:
                continue
            aut = automorphism_group(g, base_prefix=seed_two_arc(g) or ())
            if transitivity_profile(g, aut).two_arc:
                keys.add(canonical_form(g, aut).graph6)
    return sorted(keys)


def quasiprimitive_bicirculants(max_complete: int = 10) -> List[Tuple[str, Graph]]:
    """Arc-transitive bicirculants with a quasiprimitive automorphism group."""
    graphs: List[Tuple[str, Graph]] = [(family_label(Family.COMPLETE, (v,)), complete(v).graph)
                                       for v in range(4, max_complete + 1, 2)]
    rook = cube_family(2, 4).graph
    folded = cube_family(5, 2, folded=True).graph
    graphs += [
        ('Petersen', petersen().graph),
        ('complement of Petersen', petersen_complement()),
        ('H(2,4)', rook),
        ('complement of H(2,4)', complement(rook)),
        ('folded 5-cube', folded),
        ('Clebsch', clebsch()),
    ]
    return graphs
