"""
Permutation Groups Module
Permutations, Schreier-Sims stabilizer chains and multiplication-table groups.
"""

import logging
import re
from collections import deque
from math import gcd
from random import Random
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import BudgetExceeded, DegreeMismatch, InvalidParameter, UnknownGroupElement

logger = logging.getLogger(__name__)


class Perm:
    """Bijection of 0..n-1. `a * b` applies a first, then b."""

    __slots__ = ('_images',)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidParameter(f"not a permutation: {images}")
        self._images = images

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> 'Perm':
        perm = cls.__new__(cls)
        perm._images = images
        return perm

    @classmethod
    def identity(cls, n: int) -> 'Perm':
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> 'Perm':
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, n: int) -> 'Perm':
        """Parse disjoint-cycle notation such as "(0 1 2)(3 4)"; "()" is the identity."""
        cycles = [[int(x) for x in body.replace(',', ' ').split()]
                  for body in re.findall(r'\(([^)]*)\)', text)]
        return cls.from_cycles(n, [c for c in cycles if c])

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __getitem__(self, point: int) -> int:
        return self._images[point]

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __len__(self) -> int:
        return len(self._images)

    def __mul__(self, other: 'Perm') -> 'Perm':
        if len(other._images) != len(self._images):
            raise DegreeMismatch(f"cannot compose degrees {self.degree} and {other.degree}")
        b = other._images
        return Perm._trusted(tuple([b[x] for x in self._images]))

    def inverse(self) -> 'Perm':
        inv = [0] * len(self._images)
        for i, j in enumerate(self._images):
            inv[j] = i
        return Perm._trusted(tuple(inv))

    def __pow__(self, k: int) -> 'Perm':
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = [False] * len(self._images)
        out = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self._images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        """Cycle lengths including fixed points, largest first."""
        lengths = [len(c) for c in self.cycles()]
        lengths.extend([1] * self.fixed_point_count())
        return tuple(sorted(lengths, reverse=True))

    def fixed_point_count(self) -> int:
        return sum(1 for i, x in enumerate(self._images) if i == x)

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = result * len(cycle) // gcd(result, len(cycle))
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ' '.join(str(x) for x in c) + ')' for c in cycles)

    def __repr__(self) -> str:
        return f"Perm({self})"


def perm_algebra(a: Perm, b: Optional[Perm], op: str):
    """compose (a then b), inverse, order or cycle_type of a."""
    if op == 'compose':
        return a * b
    if op == 'inverse':
        return a.inverse()
    if op == 'order':
        return a.order()
    if op == 'cycle_type':
        return a.cycle_type()
    raise InvalidParameter(f"unknown permutation operation {op!r}")


def _check_degrees(gens: Sequence[Perm], degree: Optional[int] = None) -> int:
    if degree is None:
        if not gens:
            raise DegreeMismatch("degree unknown: no generators given")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
    return degree


def orbit_closure(gens: Sequence[Perm], seed: Union[int, Sequence[int]],
                  action: str = 'point') -> List:
    """Orbit of a point or an ordered tuple, in breadth-first discovery order."""
    if not gens:
        return [seed]
    degree = _check_degrees(gens)
    images = [g.images for g in gens]
    if action == 'point':
        start = seed if isinstance(seed, int) else seed[0]
        if not 0 <= start < degree:
            raise DegreeMismatch(f"point {start} outside degree {degree}")
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for img in images:
                y = img[x]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order
    if action != 'tuple':
        raise InvalidParameter(f"unknown action {action!r}")
    start = tuple(seed)
    if any(not 0 <= x < degree for x in start):
        raise DegreeMismatch(f"tuple {start} leaves degree {degree}")
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for img in images:
            u = tuple([img[x] for x in t])
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
    return order


class PermGroup:
    """Permutation group with a lazily built base and strong generating set."""

    def __init__(self, generators: Sequence[Perm], degree: Optional[int] = None,
                 base_prefix: Sequence[int] = ()):
        self.degree = _check_degrees(list(generators), degree)
        self.generators = [g for g in generators if not g.is_identity()]
        self._base_prefix = list(base_prefix)
        self._base: Optional[List[int]] = None
        self._level_gens: List[List[Perm]] = []
        self._transversals: List[Dict[int, Perm]] = []

    @classmethod
    def from_chain(cls, generators: Sequence[Perm], degree: int,
                   base: Sequence[int]) -> 'PermGroup':
        """Adopt a base for which `generators` is already a strong generating set."""
        group = cls(generators, degree)
        group._base = list(base)
        group._rebuild_levels(0)
        return group

    # chain construction

    def _rebuild_levels(self, start: int) -> None:
        base = self._base
        del self._level_gens[start:]
        del self._transversals[start:]
        for level in range(start, len(base)):
            prefix = base[:level]
            gens = [g for g in self.generators if all(g[b] == b for b in prefix)]
            self._level_gens.append(gens)
            self._transversals.append(self._transversal(base[level], gens))

    def _transversal(self, point: int, gens: Sequence[Perm]) -> Dict[int, Perm]:
        table = {point: Perm.identity(self.degree)}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            u = table[x]
            for g in gens:
                y = g[x]
                if y not in table:
                    table[y] = u * g
                    queue.append(y)
        return table

    def _strip(self, g: Perm, start: int) -> Tuple[Perm, int]:
        for level in range(start, len(self._base)):
            beta = g[self._base[level]]
            u = self._transversals[level].get(beta)
            if u is None:
                return g, level
            g = g * u.inverse()
        return g, len(self._base)

    def _schreier_sims(self) -> None:
        base = list(self._base_prefix)
        for g in self.generators:
            if all(g[b] == b for b in base):
                base.append(next(i for i, x in enumerate(g.images) if i != x))
        self._base = base
        self._level_gens = []
        self._transversals = []
        self._rebuild_levels(0)
        level = len(base) - 1
        while level >= 0:
            added = False
            for beta, u in list(self._transversals[level].items()):
                for s in self._level_gens[level]:
                    image = s[beta]
                    schreier = u * s * self._transversals[level][image].inverse()
                    if schreier.is_identity():
                        continue
                    h, drop = self._strip(schreier, level + 1)
                    if drop == len(self._base) and h.is_identity():
                        continue
                    if drop == len(self._base):
                        self._base.append(next(i for i, x in enumerate(h.images) if i != x))
                        self._level_gens.append([])
                        self._transversals.append({})
                    self.generators.append(h)
                    for k in range(level + 1, drop + 1):
                        self._level_gens[k].append(h)
                        self._transversals[k] = self._transversal(self._base[k], self._level_gens[k])
                    level = drop
                    added = True
                    break
                if added:
                    break
            if not added:
                level -= 1
        logger.debug(f"Schreier-Sims: base {self._base}, {len(self.generators)} strong generators")

    def _ensure_chain(self) -> None:
        if self._base is None:
            self._schreier_sims()

    # queries

    @property
    def base(self) -> List[int]:
        self._ensure_chain()
        return list(self._base)

    @property
    def strong_generators(self) -> List[Perm]:
        self._ensure_chain()
        return list(self.generators)

    def basic_orbits(self) -> List[Tuple[int, ...]]:
        self._ensure_chain()
        return [tuple(sorted(t)) for t in self._transversals]

    def transversal(self, level: int) -> Dict[int, Perm]:
        self._ensure_chain()
        return self._transversals[level]

    def order(self) -> int:
        self._ensure_chain()
        result = 1
        for t in self._transversals:
            result *= len(t)
        return result

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element of degree {g.degree}, group of degree {self.degree}")
        self._ensure_chain()
        h, drop = self._strip(g, 0)
        return drop == len(self._base) and h.is_identity()

    def orbit(self, point: int) -> List[int]:
        return orbit_closure(self.generators, point) if self.generators else [point]

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def tuple_orbit_length(self, points: Sequence[int]) -> int:
        """Size of the orbit of an ordered tuple of points."""
        points = list(points)
        self._ensure_chain()
        if self._base[:len(points)] == points:
            length = 1
            for t in self._transversals[:len(points)]:
                length *= len(t)
            return length
        if not self.generators:
            return 1
        return len(orbit_closure(self.generators, points, 'tuple'))

    def random_element(self, rng: Random) -> Perm:
        self._ensure_chain()
        g = Perm.identity(self.degree)
        for table in self._transversals:
            points = sorted(table)
            g = table[points[rng.randrange(len(points))]] * g
        return g

    def elements(self) -> Iterator[Perm]:
        """Every element once, in lexicographic order of base images."""
        self._ensure_chain()
        depth = len(self._transversals)

        def walk(level: int, suffix: Perm) -> Iterator[Perm]:
            if level == depth:
                yield suffix
                return
            table = self._transversals[level]
            for beta in sorted(table, key=lambda b: suffix[b]):
                yield from walk(level + 1, table[beta] * suffix)

        return walk(0, Perm.identity(self.degree))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


def bsgs_order(gens: Sequence[Perm]) -> PermGroup:
    """Deterministic Schreier-Sims on the given generators."""
    group = PermGroup(gens)
    group.order()
    return group


def enumerate_elements(group: PermGroup, budget: int) -> Iterator[Perm]:
    if budget <= 0:
        raise InvalidParameter(f"budget must be positive, got {budget}")
    order = group.order()
    if order > budget:
        raise BudgetExceeded(f"group of order {order} exceeds the enumeration budget {budget}")
    return group.elements()


_WORD_TOKEN = re.compile(r'([A-Za-z])(?:\^\(?(-?\d+)\)?)?')


class GroupTable:
    """Finite group given by its full multiplication table."""

    def __init__(self, table: np.ndarray, identity: int, generators: Dict[str, int],
                 element_names: Sequence[str], label: str):
        self.table = np.asarray(table, dtype=np.int64)
        self.table.setflags(write=False)
        self.m = self.table.shape[0]
        self.identity = identity
        self.generators = dict(generators)
        self.element_names = list(element_names)
        self.label = label
        self._validate()
        inverse = np.argmax(self.table == identity, axis=1)
        self.inverse = tuple(int(x) for x in inverse)

    def _validate(self) -> None:
        m, t, e = self.m, self.table, self.identity
        if t.shape != (m, m) or t.min() < 0 or t.max() >= m:
            raise InvalidParameter(f"{self.label}: table entries outside 0..{m - 1}")
        rng = np.arange(m)
        if not (np.array_equal(t[e], rng) and np.array_equal(t[:, e], rng)):
            raise InvalidParameter(f"{self.label}: element {e} is not an identity")
        if not all((t[a] == e).any() for a in range(m)):
            raise InvalidParameter(f"{self.label}: some element has no inverse")
        for start in range(0, m, 32):
            rows = rng[start:start + 32]
            lhs = t[t[rows]]
            rhs = t[rows][:, t]
            if not np.array_equal(lhs, rhs):
                raise InvalidParameter(f"{self.label}: multiplication is not associative")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result = self.identity
        for _ in range(k):
            result = int(self.table[result, a])
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def involutions(self) -> List[int]:
        return [a for a in range(self.m) if a != self.identity and self.table[a, a] == self.identity]

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity
        for x in elements:
            result = int(self.table[result, x])
        return result

    def evaluate(self, word: Union[int, str]) -> int:
        """Element index of an int index or a word such as "ba^-1" or "ab"."""
        if isinstance(word, (int, np.integer)):
            if not 0 <= int(word) < self.m:
                raise UnknownGroupElement(f"{self.label} has no element {word}")
            return int(word)
        text = str(word).replace(' ', '').replace('*', '')
        if text in ('', '1', 'e'):
            return self.identity
        if text.lstrip('-').isdigit():
            return self.evaluate(int(text))
        if text in self.element_names:
            return self.element_names.index(text)
        position, result = 0, self.identity
        for match in _WORD_TOKEN.finditer(text):
            if match.start() != position or match.group(1) not in self.generators:
                raise UnknownGroupElement(f"cannot read {word!r} as a word in {self.label}")
            exponent = int(match.group(2)) if match.group(2) else 1
            result = self.mul(result, self.power(self.generators[match.group(1)], exponent))
            position = match.end()
        if position != len(text):
            raise UnknownGroupElement(f"cannot read {word!r} as a word in {self.label}")
        return result

    def subgroup_closure(self, elements: Iterable[int]) -> frozenset:
        gens = list(set(elements))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def name(self, a: int) -> str:
        return self.element_names[a]

    def to_text(self) -> str:
        width = max(len(n) for n in self.element_names)
        lines = [' ' * width + ' | ' + ' '.join(n.rjust(width) for n in self.element_names)]
        for a in range(self.m):
            row = ' '.join(self.element_names[int(x)].rjust(width) for x in self.table[a])
            lines.append(self.element_names[a].rjust(width) + ' | ' + row)
        return '\n'.join(lines)

    def __repr__(self) -> str:
        return f"GroupTable({self.label}, order={self.m})"


def _power_name(letter: str, k: int) -> str:
    if k == 0:
        return ''
    return letter if k == 1 else f"{letter}^{k}"


def _cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InvalidParameter(f"cyclic group needs n >= 1, got {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    names = [_power_name('a', i) or '1' for i in range(n)]
    return GroupTable(table, 0, {'a': 1 % n}, names, f"Z{n}")


def _semidirect_pair(n: int, square_shift: int, letters: Tuple[str, str]) -> Tuple[np.ndarray, List[str]]:
    # element j*n + i is x^i y^j with y x = x^-1 y and y^2 = x^square_shift
    m = 2 * n
    table = np.zeros((m, m), dtype=np.int64)
    for left in range(m):
        j, i = divmod(left, n)
        for right in range(m):
            l, k = divmod(right, n)
            exponent = i + (k if j == 0 else -k)
            if j + l == 2:
                exponent += square_shift
            table[left, right] = ((j + l) % 2) * n + exponent % n
    x, y = letters
    names = [(_power_name(x, i) + (y if j else '')) or '1' for j in range(2) for i in range(n)]
    return table, names


def _dihedral(order: int) -> GroupTable:
    if order < 2 or order % 2:
        raise InvalidParameter(f"dihedral group order must be even and >= 2, got {order}")
    n = order // 2
    table, names = _semidirect_pair(n, 0, ('a', 'b'))
    return GroupTable(table, 0, {'a': 1 % n, 'b': n}, names, f"D{order}")


def _quaternion(order: int) -> GroupTable:
    n = order // 2
    if order % 2 or n % 2 or n < 4:
        raise InvalidParameter(f"generalized quaternion order 2n needs n even and >= 4, got {order}")
    table, names = _semidirect_pair(n, n // 2, ('u', 'v'))
    gens = {'u': 1, 'v': n, 'a': 1, 'b': n}
    return GroupTable(table, 0, gens, names, f"Q{order}")


def concrete_group(kind: str, order: int) -> GroupTable:
    """cyclic n, dihedral 2n or generalized_quaternion 2n, by group order."""
    if kind == 'cyclic':
        return _cyclic(order)
    if kind == 'dihedral':
        return _dihedral(order)
    if kind in ('generalized_quaternion', 'quaternion'):
        return _quaternion(order)
    raise InvalidParameter(f"unknown group kind {kind!r}")
