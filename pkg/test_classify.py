#!/usr/bin/env python3
"""
Census, verification and classification tests.
"""

import pytest

import src.classify as classify_module
from src.autgroup import canonical_form, is_automorphism
from src.classify import (EXPECTED_IDENTITIES, Reason, brute_force_circulant_keys, census,
                          census_frame, census_parameters, circulant_census, classify,
                          duplicate_identities, quasiprimitive_bicirculants, verify_instance)
from src.errors import InvalidParameter
from src.families import (Family, build_family, complete, cube_family, cycle, generalized_petersen,
                          multipartite, petersen_complement, sporadic, x1_cover)
from src.graph_core import build_graph, from_graph6, girth, to_graph6
from src.groups import Perm
from src.predicates import Verdict, WitnessResult, bicirculant_witness


def labels_of(entries):
    return {label for entry in entries for label in entry.provenance}


def test_verify_x1_cover():
    entry = verify_instance(x1_cover(7))
    assert entry.two_arc_transitive and entry.connected
    assert entry.bicirculant == 'yes'
    assert entry.witness_cycle_type == (16, 16)
    assert entry.verified


def test_verify_x2_sporadic():
    entry = verify_instance(sporadic('X2_3'))
    assert entry.bicirculant == 'yes'
    assert entry.witness_cycle_type == (15, 15)
    assert entry.two_arc_transitive


def test_verify_records_failures():
    entry = verify_instance(multipartite(3, 2))
    assert entry.arc_transitive and not entry.two_arc_transitive
    assert not entry.verified
    assert entry.girth == 3


def test_entry_key_is_canonical_form():
    fi = generalized_petersen(8, 3)
    entry = verify_instance(fi)
    assert entry.canonical_key == canonical_form(fi.graph).graph6
    assert entry.aut_order == 96
    data = entry.to_dict()
    assert data['label'] == 'GP(8,3)'
    assert data['params'] == [8, 3]
    assert Perm.parse(data['witness'], 16).cycle_type() == (8, 8)


def test_census_of_order_four():
    entries = census(4)
    assert [e.order for e in entries] == [4, 4]
    c4, k4 = entries
    assert set(c4.provenance) == {'C_4', 'K_{2,2}'}
    assert k4.provenance == ['K_4']
    assert all(e.verified for e in entries)


def test_census_of_order_six():
    entries = census(6)
    assert len(entries) == 5
    six_cycle = next(e for e in entries if 'C_6' in e.provenance)
    assert set(six_cycle.provenance) == {'C_6', 'K_{3,3}-3K_2', 'Gamma(2,2,1)'}
    assert all(d.expected for d in duplicate_identities(entries))


def test_census_records_moebius_kantor_identity():
    entries = census(16)
    keys = [e.canonical_key for e in entries]
    assert len(keys) == len(set(keys))
    mk = next(e for e in entries if 'GP(8,3)' in e.provenance)
    assert {'X1(4,3)', 'K_4^4'} <= set(mk.provenance)
    # Gamma(2,3,2) lands here too; cubic symmetric graphs on 16 vertices are unique
    assert 'Gamma(2,3,2)' in mk.provenance
    duplicate = next(d for d in duplicate_identities(entries) if d.canonical_key == mk.canonical_key)
    assert not duplicate.expected
    assert all(e.verified for e in entries)
    assert [(e.order, e.valency) for e in entries] == sorted((e.order, e.valency) for e in entries)


def test_census_parameters():
    with pytest.raises(InvalidParameter):
        census_parameters(3)
    params = census_parameters(48)
    assert (Family.KQ2D, (7, 3)) in params
    assert (Family.ATD, (5, 2)) in params
    assert (Family.ATQ, (5, 4)) in params
    assert (Family.X1, (7,)) in params
    assert (Family.GDD, (2, 3, 2)) in params
    assert (Family.GDD, (3, 2, 1)) in params
    assert (Family.ATD, (5, 4)) not in params
    assert (Family.ATQ412, ()) in params
    for family, values in census_parameters(30):
        assert build_family(family, values).graph.n <= 30


def test_expected_identities_are_labels():
    assert all(len(group) >= 2 for group in EXPECTED_IDENTITIES)


def test_census_frame():
    entries = census(6)
    frame = census_frame(entries)
    assert len(frame) == 5
    assert list(frame.columns[:3]) == ['family_id', 'params', 'label']
    assert frame['canonical_key'].is_unique
    assert frame['two_arc_transitive'].all()


def test_classify_desargues():
    report = classify(generalized_petersen(10, 3).graph)
    assert report.verdict == 'census_match'
    assert 'GP(10,3)' in report.entry.provenance
    assert report.entry.canonical_key == report.canonical_key


def test_classify_complete_graph():
    report = classify(complete(6).graph)
    assert report.verdict == 'census_match'
    assert report.entry.label == 'K_6'


@pytest.mark.parametrize('g', [cube_family(2, 4).graph, petersen_complement(), multipartite(3, 2).graph],
                         ids=['H(2,4)', 'complement of Petersen', 'K_{3[2]}'])
def test_classify_rejects_girth_three_graphs(g):
    report = classify(g)
    assert report.verdict == 'rejected'
    assert report.reason is Reason.NOT_2_ARC_TRANSITIVE
    assert report.profile.arc


def test_classify_disconnected():
    two_triangles = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    report = classify(two_triangles)
    assert report.reason is Reason.DISCONNECTED
    assert classify(build_graph(0, [])).reason is Reason.DISCONNECTED


def test_classify_odd_cycle_is_not_bicirculant():
    report = classify(cycle(5).graph)
    assert report.reason is Reason.NOT_BICIRCULANT_PROVEN
    assert report.witness.verdict is Verdict.NO


def test_classify_undecided_budget(monkeypatch):
    monkeypatch.setattr(classify_module, 'bicirculant_witness',
                        lambda g, budget, aut=None: WitnessResult(Verdict.UNKNOWN, None, budget))
    report = classify(generalized_petersen(5, 2).graph, budget=7)
    assert report.reason is Reason.UNDECIDED_BUDGET
    assert report.to_dict()['bicirculant']['search_budget_used'] == 7


def test_classify_reports_anomaly(monkeypatch):
    monkeypatch.setattr(classify_module, '_instances_of_order', lambda n, valency: [])
    report = classify(generalized_petersen(5, 2).graph)
    assert report.verdict == 'theorem_anomaly'
    assert report.to_dict()['match'] is None


@pytest.mark.parametrize('n', range(3, 13))
def test_circulant_census_matches_exhaustion(n):
    listed = sorted(canonical_form(fi.graph).graph6 for fi in circulant_census(n))
    assert listed == brute_force_circulant_keys(n)


def test_quasiprimitive_bicirculants():
    graphs = quasiprimitive_bicirculants(max_complete=8)
    assert len(graphs) == 9
    for label, g in graphs:
        verdict = bicirculant_witness(g, 10_000)
        assert verdict.verdict is Verdict.YES, label
        assert is_automorphism(g, verdict.witness)


def test_quasiprimitive_two_arc_iff_complete_or_triangle_free():
    for label, g in quasiprimitive_bicirculants(max_complete=8):
        report = classify(g)
        complete_graph = g.edge_count == g.n * (g.n - 1) // 2
        two_arc = report.verdict == 'census_match'
        assert two_arc == (complete_graph or girth(g) >= 4), label


ACCEPTANCE_INSTANCES = [
    ('cycle', (8,)), ('complete', (6,)), ('kmn', (4, 4)), ('knn-minus', (5,)),
    ('gp', (5, 2)), ('gp', (10, 2)), ('gp', (10, 3)), ('gp', (8, 3)), ('gp', (12, 5)), ('gp', (24, 5)),
    ('folded-cube', (5,)), ('pg', (3, 2)), ('pg-prime', (3, 2)), ('h11', ()), ('h11-prime', ()),
    ('x1', (3,)), ('x1', (7,)), ('kq2d', (7, 3)), ('atd', (5, 2)), ('atq', (5, 4)),
    ('sporadic:atd46', ()), ('sporadic:atq412', ()), ('sporadic:atd56', ()), ('sporadic:x2_3', ()),
    ('sporadic:x3_2', ()), ('gdd', (2, 3, 1)), ('gdd', (2, 3, 2)), ('gdd', (3, 2, 1)),
]


@pytest.mark.slow
@pytest.mark.parametrize('family, params', ACCEPTANCE_INSTANCES, ids=lambda v: str(v))
def test_listed_instances_are_certified(family, params):
    fi = build_family(family, params)
    entry = verify_instance(fi)
    assert entry.connected and entry.two_arc_transitive
    assert entry.bicirculant == 'yes'
    witness = Perm.parse(entry.witness, fi.graph.n)
    assert is_automorphism(fi.graph, witness)
    assert witness.cycle_type() == (fi.graph.n // 2, fi.graph.n // 2)


@pytest.mark.slow
def test_census_twenty():
    entries = census(20)
    labels = labels_of(entries)
    assert {'GP(5,2)', 'GP(10,3)', 'GP(10,2)', 'folded 5-cube', 'Gamma(3,2,1)'} <= labels
    assert {f'C_{v}' for v in range(4, 21, 2)} <= labels
    assert {f'K_{v}' for v in range(4, 21, 2)} <= labels
    assert {f'K_{{{n},{n}}}' for n in range(2, 11)} <= labels
    assert {f'K_{{{n},{n}}}-{n}K_2' for n in range(3, 11)} <= labels
    assert all(e.verified for e in entries)


@pytest.mark.slow
def test_census_round_trip_through_graph6():
    entries = census(64, workers=2)
    keys = [e.canonical_key for e in entries]
    assert len(keys) == len(set(keys))
    for entry in entries:
        assert entry.verified, entry.label
        fi = build_family(entry.family_id, entry.params)
        report = classify(from_graph6(to_graph6(fi.graph)))
        assert report.verdict == 'census_match', entry.label
        assert report.entry.canonical_key == entry.canonical_key


def test_quaternion_covers_of_order_four_are_listed_as_x1():
    params = census_parameters(48)
    assert (Family.X1, (3,)) in params and (Family.X1, (7,)) in params
    assert all(values[1] >= 4 for family, values in params if family is Family.ATQ)
