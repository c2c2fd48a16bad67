"""
Graph Families Module
Deterministic constructors for the 2-arc-transitive bicirculant families and
their supporting graphs.

Vertex numbering is fixed per family so graph6 output is reproducible:
- bipartite families put one half on 0..n-1 and the other on n..2n-1;
- PG(1,q) is ordered by field-element code 0..q-1, then infinity as q;
- covers number (base vertex, group element) as v * |group| + g.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from src.errors import IdentityInConnection, InvalidParameter, NotInverseClosed
from src.gf import (FieldElem, FieldSpec, is_prime, is_prime_power, make_field, nonzero_squares,
                    relative_trace)
from src.graph_core import Graph, Partition, build_graph, complement, quotient
from src.groups import GroupTable, Perm, concrete_group
from src.voltage import VoltageAssignment, cover, make_voltage, voltage_from_rule

logger = logging.getLogger(__name__)


class Family(str, Enum):
    CYCLE = 'cycle'
    COMPLETE = 'complete'
    KMN = 'kmn'
    KNN_MINUS = 'knn-minus'
    MULTIPARTITE = 'multipartite'
    GP = 'gp'
    HAMMING = 'hamming'
    FOLDED_CUBE = 'folded-cube'
    PG = 'pg'
    PG_PRIME = 'pg-prime'
    H11 = 'h11'
    H11_PRIME = 'h11-prime'
    PALEY2P = 'paley2p'
    PALEY2PR = 'paley2pr'
    X1 = 'x1'
    KQ2D = 'kq2d'
    ATD = 'atd'
    ATQ = 'atq'
    ATD46 = 'sporadic:atd46'
    ATQ412 = 'sporadic:atq412'
    ATD56 = 'sporadic:atd56'
    X2_3 = 'sporadic:x2_3'
    X3_2 = 'sporadic:x3_2'
    GDD = 'gdd'
    BC = 'bc'
    CAYLEY = 'cayley'
    GRAPH6 = 'graph6'


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    family_id: Family
    params: Tuple
    graph: Graph
    witness: Optional[Perm] = None
    notes: Tuple[str, ...] = ()
    voltage: Optional[VoltageAssignment] = None

    @property
    def label(self) -> str:
        return family_label(self.family_id, self.params)

    @property
    def order(self) -> int:
        return self.graph.n


def family_label(family: Family, params: Sequence) -> str:
    p = list(params)
    labels: Dict[Family, Callable[[], str]] = {
        Family.CYCLE: lambda: f"C_{p[0]}",
        Family.COMPLETE: lambda: f"K_{p[0]}",
        Family.KMN: lambda: f"K_{{{p[0]},{p[1]}}}",
        Family.KNN_MINUS: lambda: f"K_{{{p[0]},{p[0]}}}-{p[0]}K_2",
        Family.MULTIPARTITE: lambda: f"K_{{{p[0]}[{p[1]}]}}",
        Family.GP: lambda: f"GP({p[0]},{p[1]})",
        Family.HAMMING: lambda: f"H({p[0]},{p[1]})",
        Family.FOLDED_CUBE: lambda: f"folded {p[0]}-cube",
        Family.PG: lambda: f"B(PG({p[0] - 1},{p[1]}))",
        Family.PG_PRIME: lambda: f"B'(PG({p[0] - 1},{p[1]}))",
        Family.H11: lambda: "B(H(11))",
        Family.H11_PRIME: lambda: "B'(H(11))",
        Family.PALEY2P: lambda: f"G({2 * p[0]},{p[1]})",
        Family.PALEY2PR: lambda: f"G(2,{p[0]},{p[1]})",
        Family.X1: lambda: f"X1(4,{p[0]})",
        Family.KQ2D: lambda: f"K_{p[0] + 1}^{2 * p[1]}",
        Family.ATD: lambda: f"AT_D({p[0] + 1},{2 * p[1]})",
        Family.ATQ: lambda: f"AT_Q({p[0] + 1},{2 * p[1]})",
        Family.ATD46: lambda: "AT_D(4,6)",
        Family.ATQ412: lambda: "AT_Q(4,12)",
        Family.ATD56: lambda: "AT_D(5,6)",
        Family.X2_3: lambda: "X2(3)",
        Family.X3_2: lambda: "X(3,2)",
        Family.GDD: lambda: f"Gamma({p[0]},{p[1]},{p[2]})",
        Family.BC: lambda: f"BC_{p[0]}[{','.join(str(m) for m in p[1:])}]",
        Family.CAYLEY: lambda: f"Cay({p[0]} {p[1]};{','.join(str(s) for s in p[2:])})",
        Family.GRAPH6: lambda: "graph6 input",
    }
    return labels[Family(family)]()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameter(message)


def rotation_witness(n: int) -> Perm:
    """Simultaneous rotation of 0..n-1 and n..2n-1."""
    return Perm([(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)])


def _bipartite_rule_graph(n: int, adjacent: Callable[[int, int], bool]) -> Graph:
    return build_graph(2 * n, [(i, n + j) for i in range(n) for j in range(n) if adjacent(i, j)])


# elementary families

def cycle(n: int) -> FamilyInstance:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    graph = build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    witness = Perm([(i + 2) % n for i in range(n)]) if n % 2 == 0 and n >= 4 else None
    return FamilyInstance(Family.CYCLE, (n,), graph, witness)


def complete(n: int) -> FamilyInstance:
    _require(n >= 2, f"complete graph needs n >= 2, got {n}")
    graph = build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    witness = rotation_witness(n // 2) if n % 2 == 0 and n >= 4 else None
    return FamilyInstance(Family.COMPLETE, (n,), graph, witness)


def complete_bipartite(m: int, n: int) -> FamilyInstance:
    _require(m >= 1 and n >= 1, f"complete bipartite needs m, n >= 1, got {m}, {n}")
    graph = build_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    witness = rotation_witness(n) if m == n and n >= 2 else None
    return FamilyInstance(Family.KMN, (m, n), graph, witness)


def knn_minus_matching(n: int) -> FamilyInstance:
    """Vertices i and n + i (for i'); i ~ j' iff i != j."""
    _require(n >= 3, f"K_n,n minus a matching needs n >= 3, got {n}")
    graph = _bipartite_rule_graph(n, lambda i, j: i != j)
    return FamilyInstance(Family.KNN_MINUS, (n,), graph, rotation_witness(n))


def multipartite(m: int, b: int) -> FamilyInstance:
    """K_{m[b]}: m parts of size b, part of v is v // b."""
    _require(m >= 2 and b >= 1, f"multipartite needs m >= 2 and b >= 1, got {m}, {b}")
    size = m * b
    graph = build_graph(size, [(u, v) for u in range(size) for v in range(u + 1, size)
                               if u // b != v // b])
    return FamilyInstance(Family.MULTIPARTITE, (m, b), graph)


def elementary(kind: str, *params: int) -> FamilyInstance:
    builders = {
        'cycle': cycle,
        'complete': complete,
        'complete_bipartite': complete_bipartite,
        'knn_minus_matching': knn_minus_matching,
        'multipartite': multipartite,
    }
    if kind not in builders:
        raise InvalidParameter(f"unknown elementary family {kind!r}")
    return builders[kind](*params)


def generalized_petersen(n: int, r: int) -> FamilyInstance:
    """u_i = i, v_i = n + i."""
    _require(n >= 3 and 1 <= r and 2 * r < n, f"GP(n, r) needs n >= 3 and 1 <= r < n/2, got {n}, {r}")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + r) % n))
        edges.append((i, n + i))
    return FamilyInstance(Family.GP, (n, r), build_graph(2 * n, edges), rotation_witness(n))


def hamming(d: int, r: int) -> Graph:
    """H(d, r); vertex index is sum x_k r^k."""
    size = r ** d
    edges = []
    for x in range(size):
        for k in range(d):
            step = r ** k
            digit = (x // step) % r
            for other in range(digit + 1, r):
                edges.append((x, x + (other - digit) * step))
    return build_graph(size, edges)


def cube_family(d: int, r: int = 2, folded: bool = False) -> FamilyInstance:
    _require(d >= 2 and r >= 2, f"H(d, r) needs d, r >= 2, got {d}, {r}")
    if not folded:
        return FamilyInstance(Family.HAMMING, (d, r), hamming(d, r))
    _require(r == 2 and d >= 3, f"folded cube needs r = 2 and d >= 3, got d={d}, r={r}")
    mask = 2 ** d - 1
    # antipodal block {x, x ^ mask} has least element x < 2^(d-1)
    pairs = Partition(tuple((x, x ^ mask) for x in range(2 ** (d - 1))))
    return FamilyInstance(Family.FOLDED_CUBE, (d,), quotient(hamming(d, 2), pairs))


# incidence structures over GF(q^d)

def _trace_exponents(q: int, d: int, value: int) -> Tuple[FieldSpec, List[int]]:
    """Exponents m with Tr(theta^m) equal to 0 or 1 (trace GF(q^d) -> GF(q))."""
    big = make_field(q ** d)
    target = big.zero if value == 0 else big.one
    hits = [m for m in range(big.q - 1) if relative_trace(big, big.theta_power(m), q) == target]
    return big, hits


def projective_incidence(d: int, q: int, variant: str = 'B') -> FamilyInstance:
    """Points and hyperplanes of PG(d-1, q) in the Singer model.

    GF(q^d) is the d-dimensional space; point k is <theta^k>, hyperplane j is
    theta^j * ker(Tr); point k lies on hyperplane j iff (k - j) mod n is in the
    Singer difference set. Points are 0..n-1, hyperplanes n..2n-1.
    """
    _require(d >= 3, f"projective incidence needs d >= 3, got {d}")
    _require(is_prime_power(q), f"q = {q} is not a prime power")
    _require(variant in ('B', 'Bprime'), f"unknown variant {variant!r}")
    n = (q ** d - 1) // (q - 1)
    _, zeros = _trace_exponents(q, d, 0)
    difference_set = {m % n for m in zeros}
    contained = variant == 'B'
    graph = _bipartite_rule_graph(n, lambda k, j: ((k - j) % n in difference_set) == contained)
    family = Family.PG if contained else Family.PG_PRIME
    return FamilyInstance(family, (d, q), graph, rotation_witness(n))


HADAMARD_RESIDUES = frozenset({1, 3, 4, 5, 9})


def hadamard11(variant: str = 'Bprime') -> FamilyInstance:
    """n in Z_11 on 0..10, translate R+i on 11+i."""
    _require(variant in ('B', 'Bprime'), f"unknown variant {variant!r}")
    inside = variant == 'B'
    graph = _bipartite_rule_graph(11, lambda n, i: (((n - i) % 11) in HADAMARD_RESIDUES) == inside)
    family = Family.H11 if inside else Family.H11_PRIME
    return FamilyInstance(family, (), graph, rotation_witness(11))


def paley_bipartite(p: int, r: int, variant: str = 'G2p_r') -> FamilyInstance:
    _require(p > 2 and is_prime(p), f"p = {p} must be an odd prime")
    _require(r >= 1 and (p - 1) % r == 0, f"r = {r} must divide p - 1 = {p - 1}")
    field = make_field(p)
    step = (p - 1) // r
    subgroup = {field.code(field.theta_power(k * step)) for k in range(r)}
    cross = [(x, p + y) for x in range(p) for y in range(p) if (y - x) % p in subgroup]
    if variant == 'G2p_r':
        return FamilyInstance(Family.PALEY2P, (p, r), build_graph(2 * p, cross), rotation_witness(p))
    _require(variant == 'G2_p_r', f"unknown variant {variant!r}")
    _require(r % 2 == 0, f"G(2,p,r) is defined only for even r, got {r}")
    inner = [(x, y) for x in range(p) for y in range(p) if (y - x) % p in subgroup]
    edges = cross + inner + [(p + x, p + y) for x, y in inner]
    return FamilyInstance(Family.PALEY2PR, (p, r), build_graph(2 * p, edges), rotation_witness(p))


# voltage covers over the projective line

def _projective_line(q: int) -> Tuple[FieldSpec, List[FieldElem]]:
    field = make_field(q)
    return field, field.elements()


def _log_in_base(field: FieldSpec, theta: Optional[FieldElem]) -> Callable[[FieldElem], int]:
    """Discrete log to base theta (the field's own primitive element by default)."""
    if theta is None:
        return field.log
    exponent = field.log(field.element(theta))
    order = field.q - 1
    try:
        inverse = pow(exponent, -1, order)
    except ValueError:
        raise InvalidParameter(f"{theta} is not a primitive element of GF({field.q})")
    return lambda x: (field.log(x) * inverse) % order


def _finalize_cover(family: Family, params: Tuple, va: VoltageAssignment) -> FamilyInstance:
    graph, _ = cover(va)
    logger.debug(f"built {family_label(family, params)} as a {va.group.m}-fold cover of {va.base.n} vertices")
    return FamilyInstance(family, params, graph, voltage=va)


def x1_cover(q: int) -> FamilyInstance:
    """Z4 cover of K_{q+1} on GF(q) and infinity (vertex q)."""
    _require(is_prime_power(q) and q % 4 == 3, f"X1(4,q) needs a prime power q = 3 mod 4, got {q}")
    field, points = _projective_line(q)
    squares = nonzero_squares(field)
    infinity = q

    def rule(x: int, y: int) -> int:
        if infinity in (x, y):
            return 0
        return 1 if field.sub(points[y], points[x]) in squares else 3

    base = complete(q + 1).graph
    va = voltage_from_rule(base, concrete_group('cyclic', 4), rule)
    return _finalize_cover(Family.X1, (q,), va)


def matching_cover(q: int, d: int, theta: Optional[FieldElem] = None) -> FamilyInstance:
    """Z_d cover of K_{q+1,q+1} - (q+1)K_2; i on 0..q, i' on q+1+i, infinity last in each half."""
    _require(is_prime_power(q) and q % 2 == 1, f"q = {q} must be an odd prime power")
    _require(d >= 2 and (q - 1) % d == 0, f"d = {d} must be at least 2 and divide q - 1 = {q - 1}")
    field, points = _projective_line(q)
    log = _log_in_base(field, theta)
    half = q + 1
    infinity = q

    def rule(u: int, v: int) -> Optional[int]:
        if u < half <= v:
            i, j = u, v - half
            if i == infinity:
                return 0
            if j == infinity:
                return None
            return log(field.sub(points[j], points[i])) % d
        if v < half <= u and u - half == infinity:
            return 0
        return None

    base = knn_minus_matching(half).graph
    va = voltage_from_rule(base, concrete_group('cyclic', d), rule)
    return _finalize_cover(Family.KQ2D, (q, d), va)


def at_cover(q: int, d: int, variant: str = 'D', theta: Optional[FieldElem] = None) -> FamilyInstance:
    """Cover of K_{1+q} by D_{2d} or Q_{2d}: f(inf, i) = b, f(i, j) = b a^h with j - i = theta^h."""
    _require(is_prime_power(q) and q % 2 == 1, f"q = {q} must be an odd prime power")
    half = (q - 1) // 2
    if variant == 'Q':
        _require(d >= 1 and (q - 1) % d == 0 and half % d != 0,
                 f"AT_Q needs d | q-1 and d not dividing (q-1)/2, got q={q}, d={d}")
        group = concrete_group('generalized_quaternion', 2 * d)
        family = Family.ATQ
    elif variant == 'D':
        _require(d >= 2 and half % d == 0, f"AT_D needs d >= 2 dividing (q-1)/2, got q={q}, d={d}")
        group = concrete_group('dihedral', 2 * d)
        family = Family.ATD
    else:
        raise InvalidParameter(f"unknown variant {variant!r}")
    field, points = _projective_line(q)
    log = _log_in_base(field, theta)
    a, b = group.generators['a'], group.generators['b']
    infinity = q

    def rule(u: int, v: int) -> Optional[int]:
        if u == infinity:
            return b
        if v == infinity:
            return None
        return group.mul(b, group.power(a, log(field.sub(points[v], points[u])) % d))

    va = voltage_from_rule(complete(q + 1).graph, group, rule)
    return _finalize_cover(family, (q, d), va)


# sporadic examples, vertices numbered from 1 as published

ATD46_TABLE = {(1, 2): 'b', (1, 3): 'ba', (1, 4): 'ba^-1', (2, 3): 'ba^-1', (2, 4): 'ba', (3, 4): 'b'}
ATQ412_TABLE = {(1, 2): 'b', (1, 3): 'ba^2', (1, 4): 'ba^4', (2, 3): 'b', (2, 4): 'ba^3', (3, 4): 'b'}
ATD56_TABLE = {(1, 2): 'ab', (1, 3): 'b', (1, 4): 'ba', (1, 5): 'b', (2, 3): 'ba',
               (2, 4): 'b', (2, 5): 'b', (3, 4): 'ab', (3, 5): 'b', (4, 5): 'b'}
# (i, j) stands for the edge i ~ j' of K_{5,5} - 5K_2; unlisted edges carry 0
X2_3_NONZERO = {(2, 5): 1, (3, 4): 1, (4, 3): 1, (5, 2): 1,
                (2, 4): 2, (3, 5): 2, (4, 2): 2, (5, 3): 2}
X3_2_CONNECTION = (0, 1, 9, 11)


def _table_voltage(base: Graph, group: GroupTable, table: Dict[Tuple[int, int], str]) -> VoltageAssignment:
    return make_voltage(base, group, {(u - 1, v - 1): x for (u, v), x in table.items()})


def sporadic(name: str) -> FamilyInstance:
    key = name.upper()
    if key == 'ATD46':
        va = _table_voltage(complete(4).graph, concrete_group('dihedral', 6), ATD46_TABLE)
        return _finalize_cover(Family.ATD46, (), va)
    if key == 'ATQ412':
        va = _table_voltage(complete(4).graph, concrete_group('generalized_quaternion', 12), ATQ412_TABLE)
        return _finalize_cover(Family.ATQ412, (), va)
    if key == 'ATD56':
        va = _table_voltage(complete(5).graph, concrete_group('dihedral', 6), ATD56_TABLE)
        return _finalize_cover(Family.ATD56, (), va)
    if key == 'X2_3':
        assignment = {(i - 1, 5 + j - 1): X2_3_NONZERO.get((i, j), 0)
                      for i in range(1, 6) for j in range(1, 6) if i != j}
        va = make_voltage(knn_minus_matching(5).graph, concrete_group('cyclic', 3), assignment)
        return _finalize_cover(Family.X2_3, (), va)
    if key == 'X3_2':
        instance = bi_cayley_cyclic(14, X3_2_CONNECTION)
        return FamilyInstance(Family.X3_2, (), instance.graph, instance.witness)
    raise InvalidParameter(f"unknown sporadic graph {name!r}")


def gdd_incidence(d: int, q: int, r: int) -> FamilyInstance:
    """Gamma(d, q, r) in the field model.

    Point theta^k is the nonzero vector, block a = theta^-j is the affine
    hyperplane {y : Tr(a y) = 1}; incidence depends on k - j only. The scalar
    subgroup of order (q-1)/r is generated by theta^M with M = r(q^d-1)/(q-1),
    so the quotient lives on residues mod M.
    """
    _require(d >= 2, f"Gamma(d, q, r) needs d >= 2, got {d}")
    _require(is_prime_power(q), f"q = {q} is not a prime power")
    _require(r >= 1 and (q - 1) % r == 0, f"r = {r} must divide q - 1 = {q - 1}")
    size = r * (q ** d - 1) // (q - 1)
    _, ones = _trace_exponents(q, d, 1)
    connection = {m % size for m in ones}
    valency = q ** (d - 1)
    if len(connection) != valency:
        raise InvalidParameter(f"quotient of Gamma({d},{q}) by order {(q - 1) // r} scalars is not {valency}-regular")
    graph = _bipartite_rule_graph(size, lambda k, j: (k - j) % size in connection)
    if any(deg != valency for deg in graph.degrees()):
        raise InvalidParameter(f"Gamma({d},{q},{r}) is not {valency}-regular")
    return FamilyInstance(Family.GDD, (d, q, r), graph, rotation_witness(size))


def bi_cayley_cyclic(n: int, connection: Sequence[int]) -> FamilyInstance:
    """h_0 = h, h_1 = n + h; h_0 ~ (h + m)_1."""
    _require(n >= 1, f"bi-Cayley graph needs n >= 1, got {n}")
    residues = sorted(set(int(m) for m in connection))
    _require(all(0 <= m < n for m in residues), f"connection {residues} must lie in 0..{n - 1}")
    graph = build_graph(2 * n, [(h, n + (h + m) % n) for h in range(n) for m in residues])
    witness = rotation_witness(n) if n >= 2 else None
    return FamilyInstance(Family.BC, (n,) + tuple(residues), graph, witness)


def cayley(group: GroupTable, connection: Sequence[Union[int, str]],
           params: Optional[Tuple] = None) -> FamilyInstance:
    """Vertices are element indices; g ~ s g."""
    elements = sorted({group.evaluate(s) for s in connection})
    if group.identity in elements:
        raise IdentityInConnection(f"the identity lies in the connection set of Cay({group.label})")
    missing = [group.name(s) for s in elements if group.inv(s) not in elements]
    if missing:
        raise NotInverseClosed(f"inverses of {missing} are missing from the connection set")
    graph = build_graph(group.m, [(g, group.mul(s, g)) for g in range(group.m) for s in elements])
    witness = None
    # right multiplication by t is an automorphism whose cycles all have length ord(t)
    if group.m >= 4 and group.m % 2 == 0:
        for t in range(group.m):
            if group.element_order(t) == group.m // 2:
                witness = Perm([group.mul(g, t) for g in range(group.m)])
                break
    if params is None:
        params = (group.label, group.m) + tuple(group.name(s) for s in elements)
    return FamilyInstance(Family.CAYLEY, params, graph, witness)


# named graphs

def petersen() -> FamilyInstance:
    return generalized_petersen(5, 2)


def desargues() -> FamilyInstance:
    return generalized_petersen(10, 3)


def dodecahedron() -> FamilyInstance:
    return generalized_petersen(10, 2)


def heawood() -> FamilyInstance:
    return projective_incidence(3, 2, 'B')


def petersen_complement() -> Graph:
    return complement(petersen().graph)


def clebsch() -> Graph:
    """Complement of the folded 5-cube."""
    return complement(cube_family(5, 2, folded=True).graph)


# registry used by the CLI and the census

_GROUP_KINDS = {'cyclic': 'cyclic', 'dihedral': 'dihedral', 'quaternion': 'generalized_quaternion',
                'generalized_quaternion': 'generalized_quaternion'}


def _ints(values: Sequence, count: Optional[int], family: Family) -> List[int]:
    if count is not None and len(values) != count:
        raise InvalidParameter(f"{family.value} takes {count} parameter(s), got {len(values)}")
    try:
        return [int(v) for v in values]
    except (TypeError, ValueError):
        raise InvalidParameter(f"{family.value} parameters must be integers, got {list(values)}")


def build_family(family: Union[Family, str], params: Sequence = ()) -> FamilyInstance:
    try:
        family = Family(family)
    except ValueError:
        raise InvalidParameter(f"unknown family {family!r}")
    values = list(params)
    simple: Dict[Family, Tuple[int, Callable[..., FamilyInstance]]] = {
        Family.CYCLE: (1, cycle),
        Family.COMPLETE: (1, complete),
        Family.KMN: (2, complete_bipartite),
        Family.KNN_MINUS: (1, knn_minus_matching),
        Family.MULTIPARTITE: (2, multipartite),
        Family.GP: (2, generalized_petersen),
        Family.HAMMING: (2, lambda d, r: cube_family(d, r)),
        Family.FOLDED_CUBE: (1, lambda d: cube_family(d, 2, folded=True)),
        Family.PG: (2, lambda d, q: projective_incidence(d, q, 'B')),
        Family.PG_PRIME: (2, lambda d, q: projective_incidence(d, q, 'Bprime')),
        Family.H11: (0, lambda: hadamard11('B')),
        Family.H11_PRIME: (0, lambda: hadamard11('Bprime')),
        Family.PALEY2P: (2, lambda p, r: paley_bipartite(p, r, 'G2p_r')),
        Family.PALEY2PR: (2, lambda p, r: paley_bipartite(p, r, 'G2_p_r')),
        Family.X1: (1, x1_cover),
        Family.KQ2D: (2, matching_cover),
        Family.ATD: (2, lambda q, d: at_cover(q, d, 'D')),
        Family.ATQ: (2, lambda q, d: at_cover(q, d, 'Q')),
        Family.ATD46: (0, lambda: sporadic('ATD46')),
        Family.ATQ412: (0, lambda: sporadic('ATQ412')),
        Family.ATD56: (0, lambda: sporadic('ATD56')),
        Family.X2_3: (0, lambda: sporadic('X2_3')),
        Family.X3_2: (0, lambda: sporadic('X3_2')),
        Family.GDD: (3, gdd_incidence),
    }
    if family in simple:
        count, builder = simple[family]
        return builder(*_ints(values, count, family))
    if family is Family.BC:
        numbers = _ints(values, None, family)
        _require(len(numbers) >= 1, "bc takes n followed by connection residues")
        return bi_cayley_cyclic(numbers[0], numbers[1:])
    if family is Family.CAYLEY:
        _require(len(values) >= 2, "cayley takes a group kind, its order and connection elements")
        kind = str(values[0])
        _require(kind in _GROUP_KINDS, f"unknown group kind {kind!r}")
        order = _ints(values[1:2], 1, family)[0]
        group = concrete_group(_GROUP_KINDS[kind], order)
        elements = [int(v) if str(v).isdigit() else str(v) for v in values[2:]]
        return cayley(group, elements, params=(kind, order) + tuple(str(v) for v in values[2:]))
    raise InvalidParameter(f"family {family.value} cannot be built from parameters")
