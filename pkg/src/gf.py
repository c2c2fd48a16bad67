"""
Finite Field Module
GF(p^l) arithmetic with a distinguished primitive element.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import FrozenSet, List, Optional, Sequence, Tuple

from src.errors import DivisionByZero, InvalidParameter, NotPrimePower, ZeroArgument

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class FieldElem:
    """Polynomial coefficients, lowest degree first, reduced mod p."""

    coeffs: Tuple[int, ...]

    def __str__(self) -> str:
        return str(self.coeffs)


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def prime_factors(n: int) -> List[int]:
    factors = []
    while n > 1:
        f = smallest_prime_factor(n)
        factors.append(f)
        while n % f == 0:
            n //= f
    return factors


def prime_power_decomposition(q: int) -> Optional[Tuple[int, int]]:
    """(p, l) with q = p^l, or None."""
    if q < 2:
        return None
    p = smallest_prime_factor(q)
    l, rest = 0, q
    while rest % p == 0:
        rest //= p
        l += 1
    return (p, l) if rest == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


def _trim(a: Sequence[int]) -> List[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            shift = top - dm
            for k in range(dm + 1):
                a[shift + k] = (a[shift + k] - c * m[k]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(poly: Poly, p: int) -> bool:
    degree = len(poly) - 1
    for k in range(1, degree // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            divisor = list(low) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def _least_irreducible(p: int, l: int) -> Poly:
    # product() enumerates (c0, c1, ...) lexicographically, low degree first
    for low in itertools.product(range(p), repeat=l):
        candidate = tuple(low) + (1,)
        if low[0] != 0 and _is_irreducible(candidate, p):
            return candidate
    raise InvalidParameter(f"no irreducible polynomial of degree {l} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    l: int
    q: int
    modulus: Poly
    theta: FieldElem
    _exp: Tuple[int, ...] = field(repr=False, compare=False)
    _log: Tuple[int, ...] = field(repr=False, compare=False)

    # element codes read the coefficient vector as a base-p numeral, c0 leading,
    # so code order is the lexicographic element order

    def code(self, x: FieldElem) -> int:
        value = 0
        for c in x.coeffs:
            value = value * self.p + c
        return value

    def from_code(self, value: int) -> FieldElem:
        digits = []
        for _ in range(self.l):
            digits.append(value % self.p)
            value //= self.p
        return FieldElem(tuple(reversed(digits)))

    def element(self, value) -> FieldElem:
        """Element from an integer code (reduced mod p for prime fields) or coefficients."""
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, int):
            if self.l == 1:
                return FieldElem((value % self.p,))
            if not 0 <= value < self.q:
                raise InvalidParameter(f"element code {value} outside 0..{self.q - 1}")
            return self.from_code(value)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.l:
            raise InvalidParameter(f"expected {self.l} coefficients, got {len(coeffs)}")
        return FieldElem(coeffs)

    def elements(self) -> List[FieldElem]:
        return [self.from_code(c) for c in range(self.q)]

    def nonzero_elements(self) -> List[FieldElem]:
        return [self.from_code(c) for c in range(1, self.q)]

    @property
    def zero(self) -> FieldElem:
        return FieldElem((0,) * self.l)

    @property
    def one(self) -> FieldElem:
        return FieldElem((1,) + (0,) * (self.l - 1))

    def is_zero(self, x: FieldElem) -> bool:
        return not any(x.coeffs)

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return FieldElem(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElem) -> FieldElem:
        return FieldElem(tuple((-x) % self.p for x in a.coeffs))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return FieldElem(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.is_zero(a) or self.is_zero(b):
            return self.zero
        k = (self._log[self.code(a)] + self._log[self.code(b)]) % (self.q - 1)
        return self.from_code(self._exp[k])

    def inv(self, a: FieldElem) -> FieldElem:
        if self.is_zero(a):
            raise DivisionByZero(f"zero has no inverse in GF({self.q})")
        k = (-self._log[self.code(a)]) % (self.q - 1)
        return self.from_code(self._exp[k])

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldElem, e: int) -> FieldElem:
        if self.is_zero(a):
            if e < 0:
                raise DivisionByZero(f"zero has no inverse in GF({self.q})")
            return self.one if e == 0 else self.zero
        k = (self._log[self.code(a)] * e) % (self.q - 1)
        return self.from_code(self._exp[k])

    def theta_power(self, e: int) -> FieldElem:
        return self.from_code(self._exp[e % (self.q - 1)])

    def log(self, a: FieldElem) -> int:
        return self._log[self.code(a)]


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    decomposition = prime_power_decomposition(q)
    if decomposition is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, l = decomposition
    modulus = (0, 1) if l == 1 else _least_irreducible(p, l)

    def to_code(coeffs: Sequence[int]) -> int:
        value = 0
        for c in coeffs:
            value = value * p + c
        return value

    def multiply(a: Sequence[int], b: Sequence[int]) -> List[int]:
        if l == 1:
            return [(a[0] * b[0]) % p]
        return _poly_mod(_poly_mul(a, b, p), modulus, p)

    def power(a: Sequence[int], e: int) -> List[int]:
        result = [1] + [0] * (l - 1)
        base = list(a)
        while e:
            if e & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            e >>= 1
        return result

    one = [1] + [0] * (l - 1)
    order = q - 1
    cofactors = [order // f for f in prime_factors(order)]
    theta = None
    for code in range(1, q):
        digits = []
        value = code
        for _ in range(l):
            digits.append(value % p)
            value //= p
        candidate = list(reversed(digits))
        if all(power(candidate, e) != one for e in cofactors):
            theta = candidate
            break
    if theta is None:
        raise InvalidParameter(f"no primitive element found in GF({q})")

    exp_table = []
    log_table = [-1] * q
    current = one
    for k in range(order):
        c = to_code(current)
        exp_table.append(c)
        log_table[c] = k
        current = multiply(current, theta)
    logger.debug(f"GF({q}): modulus {modulus}, theta {tuple(theta)}")
    return FieldSpec(p=p, l=l, q=q, modulus=modulus, theta=FieldElem(tuple(theta)),
                     _exp=tuple(exp_table), _log=tuple(log_table))


def field_arithmetic(F: FieldSpec, a: FieldElem, b: Optional[FieldElem], op: str) -> FieldElem:
    """Apply add, sub, mul (binary) or inv, neg (unary) in F."""
    if op == 'add':
        return F.add(a, b)
    if op == 'sub':
        return F.sub(a, b)
    if op == 'mul':
        return F.mul(a, b)
    if op == 'inv':
        return F.inv(a)
    if op == 'neg':
        return F.neg(a)
    raise InvalidParameter(f"unknown field operation {op!r}")


def nonzero_squares(F: FieldSpec) -> FrozenSet[FieldElem]:
    return frozenset(F.mul(x, x) for x in F.nonzero_elements())


def nonsquares(F: FieldSpec) -> FrozenSet[FieldElem]:
    return frozenset(F.nonzero_elements()) - nonzero_squares(F)


def dlog(F: FieldSpec, x: FieldElem) -> int:
    if F.is_zero(x):
        raise ZeroArgument(f"discrete log of zero in GF({F.q})")
    return F.log(x)


def primitive_elements(F: FieldSpec) -> List[FieldElem]:
    """All generators theta^e, gcd(e, q-1) = 1, in exponent order."""
    return [F.theta_power(e) for e in range(1, F.q) if gcd(e, F.q - 1) == 1]


def _extension_degree(F: FieldSpec, q: int) -> int:
    if q < 2:
        raise InvalidParameter(f"GF({F.q}) is not an extension of GF({q})")
    d, size = 0, 1
    while size < F.q:
        size *= q
        d += 1
    if size != F.q:
        raise InvalidParameter(f"GF({F.q}) is not an extension of GF({q})")
    return d


def relative_trace(F: FieldSpec, x: FieldElem, q: int) -> FieldElem:
    """Trace from F = GF(q^d) down to GF(q): x + x^q + ... + x^(q^(d-1))."""
    total = F.zero
    term = x
    for _ in range(_extension_degree(F, q)):
        total = F.add(total, term)
        term = F.pow(term, q)
    return total


def relative_norm(F: FieldSpec, x: FieldElem, q: int) -> FieldElem:
    """Norm from F = GF(q^d) down to GF(q): x^((q^d - 1) / (q - 1))."""
    _extension_degree(F, q)
    return F.pow(x, (F.q - 1) // (q - 1))
