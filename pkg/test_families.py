#!/usr/bin/env python3
"""
Family constructor tests: sizes, valencies, witnesses and identities.
"""

from math import gcd

import pytest

from src.autgroup import are_isomorphic, is_automorphism
from src.errors import IdentityInConnection, InvalidParameter, NotInverseClosed
from src.families import (Family, at_cover, bi_cayley_cyclic, build_family, cayley, clebsch, complete,
                          complete_bipartite, cube_family, cycle, elementary, gdd_incidence,
                          generalized_petersen, hadamard11, heawood, knn_minus_matching,
                          matching_cover, multipartite, paley_bipartite, projective_incidence,
                          sporadic, x1_cover)
from src.gf import make_field
from src.graph_core import bipartite_complement, girth, structural_summary
from src.groups import concrete_group


def assert_valid_witness(fi):
    if fi.witness is None:
        return
    ct = fi.witness.cycle_type()
    assert len(ct) == 2 and ct[0] == ct[1] >= 2
    assert is_automorphism(fi.graph, fi.witness)


def regular(fi, valency):
    return set(fi.graph.degrees()) == {valency}


@pytest.mark.parametrize('fi', [
    cycle(8), complete(6), complete_bipartite(4, 4), knn_minus_matching(5), generalized_petersen(5, 2),
    generalized_petersen(24, 5), projective_incidence(3, 2, 'B'), projective_incidence(3, 3, 'Bprime'),
    hadamard11('B'), hadamard11('Bprime'), paley_bipartite(11, 5), paley_bipartite(13, 4, 'G2_p_r'),
    gdd_incidence(2, 3, 2), gdd_incidence(3, 2, 1), bi_cayley_cyclic(24, [0, 1, 3, 11, 20]),
    sporadic('X3_2'), cayley(concrete_group('cyclic', 8), [1, 7]),
], ids=lambda fi: fi.label)
def test_witnesses_are_bicirculant_automorphisms(fi):
    assert fi.witness is not None
    assert_valid_witness(fi)


def test_elementary_families():
    fi = elementary('knn_minus_matching', 5)
    assert fi.graph.n == 10 and regular(fi, 4) and girth(fi.graph) == 4
    c8 = elementary('cycle', 8)
    assert regular(c8, 2) and girth(c8.graph) == 8
    octahedron = elementary('multipartite', 3, 2)
    assert octahedron.graph.n == 6 and regular(octahedron, 4) and girth(octahedron.graph) == 3
    assert complete(2).witness is None
    assert cycle(5).witness is None
    with pytest.raises(InvalidParameter):
        elementary('cycle', 2)
    with pytest.raises(InvalidParameter):
        elementary('wheel', 5)
    with pytest.raises(InvalidParameter):
        multipartite(1, 3)


def test_generalized_petersen():
    p = generalized_petersen(5, 2)
    assert p.graph.n == 10 and regular(p, 3) and girth(p.graph) == 5
    assert structural_summary(generalized_petersen(10, 3).graph).bipartite
    with pytest.raises(InvalidParameter):
        generalized_petersen(6, 3)
    with pytest.raises(InvalidParameter):
        generalized_petersen(2, 1)


def test_generalized_petersen_step_inverse_identity():
    # r r' = +-1 mod n gives isomorphic graphs
    for n, r, s in ((12, 5, 5), (13, 2, 6), (13, 3, 4)):
        assert (r * s) % n in (1, n - 1)
        assert are_isomorphic(generalized_petersen(n, r).graph, generalized_petersen(n, s).graph) is not None


def test_cube_family():
    folded = cube_family(5, 2, folded=True)
    assert folded.graph.n == 16 and regular(folded, 5) and girth(folded.graph) == 4
    q3 = cube_family(3, 2)
    assert are_isomorphic(q3.graph, generalized_petersen(4, 1).graph) is not None
    h24 = cube_family(2, 4)
    assert h24.graph.n == 16 and regular(h24, 6) and girth(h24.graph) == 3
    assert cube_family(3, 2, folded=True).graph.n == 4
    with pytest.raises(InvalidParameter):
        cube_family(5, 3, folded=True)


def test_projective_incidence():
    b = projective_incidence(3, 2, 'B')
    assert b.graph.n == 14 and regular(b, 3) and girth(b.graph) == 6
    bp = projective_incidence(3, 2, 'Bprime')
    assert regular(bp, 4)
    assert are_isomorphic(b.graph, bipartite_complement(bp.graph)) is not None
    pg33 = projective_incidence(3, 3, 'B')
    assert pg33.graph.n == 26 and regular(pg33, 4)
    pg42 = projective_incidence(4, 2, 'B')
    assert pg42.graph.n == 30 and regular(pg42, 7)
    assert are_isomorphic(heawood().graph, b.graph) is not None
    with pytest.raises(InvalidParameter):
        projective_incidence(2, 3, 'B')


def test_hadamard_designs():
    b, bp = hadamard11('B'), hadamard11('Bprime')
    assert b.graph.n == bp.graph.n == 22
    assert regular(b, 5) and regular(bp, 6)
    assert are_isomorphic(b.graph, paley_bipartite(11, 5).graph) is not None
    assert are_isomorphic(bipartite_complement(bp.graph), b.graph) is not None


def test_paley_bipartite():
    g225 = paley_bipartite(11, 5)
    assert regular(g225, 5) and structural_summary(g225.graph).bipartite
    small = paley_bipartite(5, 2)
    assert small.graph.n == 10 and regular(small, 2)
    with pytest.raises(InvalidParameter):
        paley_bipartite(5, 3)
    with pytest.raises(InvalidParameter):
        paley_bipartite(7, 3, 'G2_p_r')
    doubled = paley_bipartite(13, 4, 'G2_p_r')
    assert regular(doubled, 8)


def test_x1_cover():
    x3 = x1_cover(3)
    assert x3.graph.n == 16 and regular(x3, 3)
    assert are_isomorphic(x3.graph, generalized_petersen(8, 3).graph) is not None
    x7 = x1_cover(7)
    assert x7.graph.n == 32 and regular(x7, 7)
    assert structural_summary(x7.graph).connected
    with pytest.raises(InvalidParameter):
        x1_cover(5)


def test_matching_cover():
    k44 = matching_cover(3, 2)
    assert are_isomorphic(k44.graph, generalized_petersen(8, 3).graph) is not None
    k86 = matching_cover(7, 3)
    assert k86.graph.n == 48 and regular(k86, 7)
    with pytest.raises(InvalidParameter):
        matching_cover(7, 4)


@pytest.mark.slow
@pytest.mark.parametrize('d', [2, 3, 6])
def test_matching_cover_independent_of_primitive_element(d):
    field = make_field(7)
    reference = matching_cover(7, d).graph
    for e in range(1, 6):
        if gcd(e, 6) != 1:
            continue
        other = matching_cover(7, d, theta=field.theta_power(e))
        assert are_isomorphic(reference, other.graph) is not None


def test_at_cover():
    atd = at_cover(5, 2, 'D')
    assert atd.graph.n == 24 and regular(atd, 5)
    atq = at_cover(5, 4, 'Q')
    assert atq.graph.n == 48 and regular(atq, 5)
    with pytest.raises(InvalidParameter):
        at_cover(5, 4, 'D')
    with pytest.raises(InvalidParameter):
        at_cover(5, 2, 'Q')
    with pytest.raises(InvalidParameter):
        at_cover(7, 2, 'Q')


def test_sporadic_sizes():
    assert sporadic('ATD46').graph.n == 24
    assert regular(sporadic('ATD46'), 3)
    assert sporadic('ATQ412').graph.n == 48
    assert sporadic('ATD56').graph.n == 30
    x2 = sporadic('X2_3')
    assert x2.graph.n == 30 and regular(x2, 4) and structural_summary(x2.graph).connected
    x32 = sporadic('X3_2')
    assert x32.graph.n == 28 and regular(x32, 4) and structural_summary(x32.graph).bipartite
    with pytest.raises(InvalidParameter):
        sporadic('X9')


def test_gdd_incidence():
    g231 = gdd_incidence(2, 3, 1)
    assert g231.graph.n == 8 and regular(g231, 3)
    g232 = gdd_incidence(2, 3, 2)
    assert g232.graph.n == 16 and regular(g232, 3) and structural_summary(g232.graph).bipartite
    g321 = gdd_incidence(3, 2, 1)
    assert g321.graph.n == 14 and regular(g321, 4)
    with pytest.raises(InvalidParameter):
        gdd_incidence(2, 5, 3)


def test_x32_is_no_gdd_quotient():
    # valency q^(d-1) = 4 forces (d, q) in {(3, 2), (2, 4)}; none of those quotients has 28 vertices
    x32 = sporadic('X3_2').graph
    for d, q in ((3, 2), (2, 4)):
        for r in (r for r in range(1, q) if (q - 1) % r == 0):
            g = gdd_incidence(d, q, r).graph
            assert g.n != x32.n or are_isomorphic(g, x32) is None


def test_bi_cayley_cyclic():
    bc = bi_cayley_cyclic(24, [0, 1, 3, 11, 20])
    assert bc.graph.n == 48 and regular(bc, 5)
    k55 = bi_cayley_cyclic(5, range(5))
    assert are_isomorphic(k55.graph, complete_bipartite(5, 5).graph) is not None
    matching = bi_cayley_cyclic(4, [0])
    assert not structural_summary(matching.graph).connected
    with pytest.raises(InvalidParameter):
        bi_cayley_cyclic(4, [4])


def test_cayley():
    z8 = concrete_group('cyclic', 8)
    assert are_isomorphic(cayley(z8, [1, 7]).graph, cycle(8).graph) is not None
    assert are_isomorphic(cayley(z8, [1, 3, 5, 7]).graph, complete_bipartite(4, 4).graph) is not None
    d6 = concrete_group('dihedral', 6)
    k33 = cayley(d6, ['b', 'ba', 'ba^2'])
    assert are_isomorphic(k33.graph, complete_bipartite(3, 3).graph) is not None
    with pytest.raises(IdentityInConnection):
        cayley(z8, [0, 1, 7])
    with pytest.raises(NotInverseClosed):
        cayley(z8, [1])


def test_clebsch_is_complement_of_folded_cube():
    g = clebsch()
    assert g.n == 16 and set(g.degrees()) == {10}


def test_build_family_registry():
    assert build_family('gp', ['5', '2']).label == 'GP(5,2)'
    assert build_family(Family.X1, [3]).graph.n == 16
    assert build_family('sporadic:x2_3').graph.n == 30
    assert build_family('cayley', ['dihedral', '6', 'b', 'ab', 'a^2b']).graph.n == 6
    assert build_family('bc', [4, 0, 1]).graph.n == 8
    with pytest.raises(InvalidParameter):
        build_family('nonsense', [])
    with pytest.raises(InvalidParameter):
        build_family('gp', [5])
    with pytest.raises(InvalidParameter):
        build_family('gp', ['five', '2'])
