"""
Residue arithmetic and the multiplicative group of units mod n.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import divisors, isprime, primefactors, totient

from circulant_qsym.errors import (
    InvalidParameter, InvariantBreach, NotASubgroup, NotDivisor, NotPrime, OrderMismatch
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Residue:
    """An element of Z_n, stored canonically in [0, n)."""
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidParameter(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise OrderMismatch(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value + value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value - value, self.modulus)

    def __mul__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value * value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent):
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def __int__(self):
        return self.value

    def is_unit(self):
        return gcd(self.value, self.modulus) == 1

    def inverse(self):
        if not self.is_unit():
            raise InvalidParameter(f"{self.value} is not invertible mod {self.modulus}")
        return Residue(pow(self.value, -1, self.modulus), self.modulus)


@dataclass(frozen=True)
class SubgroupOfUnits:
    """
    A finite subgroup of Z_n*. Elements are kept as sorted plain integers so
    set comparisons downstream stay cheap; `residues()` gives the typed view.
    """
    modulus: int
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(int(e) % self.modulus for e in self.elements))))
        self._validate()

    def _validate(self):
        n = self.modulus
        members = set(self.elements)
        if not members:
            raise NotASubgroup("a subgroup cannot be empty")
        if 1 % n not in members:
            raise NotASubgroup(f"subgroup of Z_{n}* must contain 1")
        for a in self.elements:
            if gcd(a, n) != 1:
                raise NotASubgroup(f"{a} is not a unit mod {n}")
            if pow(a, -1, n) not in members:
                raise NotASubgroup(f"inverse of {a} mod {n} is missing")
            for b in self.elements:
                if (a * b) % n not in members:
                    raise NotASubgroup(f"{a}*{b} mod {n} leaves the set")
        if euler_phi(n) % len(members) != 0:
            raise NotASubgroup(f"order {len(members)} does not divide phi({n})")

    @classmethod
    def generated_by(cls, modulus, generators):
        """Closure of `generators` under multiplication mod `modulus`."""
        members = {1 % modulus}
        frontier = list(members)
        while frontier:
            current = frontier.pop()
            for g in generators:
                nxt = (current * g) % modulus
                if nxt not in members:
                    members.add(nxt)
                    frontier.append(nxt)
        return cls(modulus, tuple(members))

    def __contains__(self, item):
        if isinstance(item, Residue):
            return item.modulus == self.modulus and item.value in self.elements
        return int(item) % self.modulus in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def residues(self):
        return tuple(Residue(e, self.modulus) for e in self.elements)

    def is_even(self):
        return (-1) % self.modulus in self.elements

    def coset(self, x):
        """xE as a sorted tuple."""
        return tuple(sorted({(x * e) % self.modulus for e in self.elements}))

    def cosets(self):
        """The cosets of this subgroup in the full unit group, ordered by smallest member."""
        seen = set()
        classes = []
        for x in unit_group(self.modulus):
            if x in seen:
                continue
            coset = self.coset(x)
            seen.update(coset)
            classes.append(coset)
        return classes


def is_prime(n):
    # sympy's test is deterministic well beyond 2**64
    if n < 2:
        return False
    return bool(isprime(n))


def euler_phi(n):
    if n < 1:
        raise InvalidParameter(f"phi is defined for n >= 1, got {n}")
    return int(totient(n))


def unit_group(n):
    """Sorted units of Z_n. For n = 1 this is {0}, the trivial group."""
    if n < 1:
        raise InvalidParameter(f"modulus must be positive, got {n}")
    if n == 1:
        return (0,)
    return tuple(a for a in range(1, n) if gcd(a, n) == 1)


def _require_prime(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@lru_cache(maxsize=None)
def primitive_root(p):
    """Smallest generator of Z_p*. Z_2* is trivial, so p = 2 gives 1."""
    _require_prime(p)
    if p == 2:
        return Residue(1, 2)
    cofactors = [(p - 1) // q for q in primefactors(p - 1)]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return Residue(g, p)
    raise InvariantBreach(f"no primitive root found mod {p}")


@lru_cache(maxsize=None)
def subgroup_of_order(p, k):
    """The unique subgroup of Z_p* of order k, generated by g^((p-1)/k)."""
    _require_prime(p)
    if k < 1 or (p - 1) % k != 0:
        raise NotDivisor(f"{k} does not divide {p - 1}")
    g = primitive_root(p).value
    h = pow(g, (p - 1) // k, p)
    elements = [pow(h, i, p) for i in range(k)]
    subgroup = SubgroupOfUnits(p, tuple(elements))
    logger.debug("subgroup of order %d mod %d: %s", k, p, subgroup.elements)
    return subgroup


def subgroups_of_units(p):
    """Every subgroup of the cyclic group Z_p*, one per divisor of p - 1."""
    _require_prime(p)
    return [subgroup_of_order(p, k) for k in divisors(p - 1)]


def even_subgroups(p):
    return [group for group in subgroups_of_units(p) if group.is_even()]
