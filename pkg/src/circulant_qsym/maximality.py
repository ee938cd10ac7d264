"""
2-maximality of even subgroups: a - b = 2(c - d) with a, b, c, d in G must
force a = +-b. Two ambient rings are supported, Z_p and Z[zeta_k].
"""
import enum
import logging
from dataclasses import dataclass, field
from math import gcd

from circulant_qsym.cyclotomic import CyclotomicInt, norm, root_of_unity, roots_of_unity
from circulant_qsym.errors import (
    InvalidParameter, NotASolution, NotEvenSubgroup, NotPrime
)
from circulant_qsym.modular import euler_phi, is_prime

logger = logging.getLogger(__name__)

MAX_STORED_SOLUTIONS = 1000


class SolutionClass(str, enum.Enum):
    TRIVIAL = "trivial"
    HEXAGONAL = "hexagonal"
    GENUINE = "genuine"


@dataclass(frozen=True)
class ModularRing:
    """Z_p. Elements are plain ints in [0, p)."""
    p: int

    kind = "modular"

    @property
    def two_invertible(self):
        return self.p % 2 == 1

    @property
    def three_nonzero(self):
        return self.p != 3

    def element(self, label):
        return int(label) % self.p

    def label(self, element):
        return element

    def constant(self, value):
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def scale(self, m, a):
        return (m * a) % self.p

    def cancellable(self, m):
        return m % self.p != 0

    def divide(self, a, m):
        if m % self.p == 0:
            return None
        return (a * pow(m, -1, self.p)) % self.p

    def describe(self):
        return {"ring": "Z_p", "p": self.p}


@dataclass(frozen=True)
class CyclotomicRing:
    """
    Z[zeta_k] inside C. Group elements are labelled by their exponent j;
    2 and 3 are invertible in the ambient field C.
    """
    k: int

    kind = "cyclotomic"
    two_invertible = True
    three_nonzero = True

    def element(self, label):
        return root_of_unity(self.k, label)

    def label(self, element):
        return roots_of_unity(self.k).index(element)

    def constant(self, value):
        return CyclotomicInt.integer(self.k, value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def scale(self, m, a):
        return a * m

    def cancellable(self, m):
        return m != 0

    def divide(self, a, m):
        return a.exact_divide(m)

    def describe(self):
        return {"ring": "Z[zeta_k]", "k": self.k}


@dataclass(frozen=True)
class Solution:
    a: int
    b: int
    c: int
    d: int
    kind: SolutionClass

    @property
    def quadruple(self):
        return (self.a, self.b, self.c, self.d)

    def to_dict(self):
        return {"quadruple": list(self.quadruple), "class": self.kind.value}


@dataclass(frozen=True)
class MaximalityReport:
    """
    Quadruples are element labels: residues for Z_p, exponents j of zeta^j
    for Z[zeta_k]. At most `max_stored` solutions are kept verbatim; `counts`
    always covers all of them.
    """
    ambient: dict
    group_elements: tuple
    is_2maximal: bool
    solutions: tuple
    counts: dict = field(default_factory=dict)
    truncated: bool = False

    @property
    def total_solutions(self):
        return sum(self.counts.values())

    def of_class(self, kind):
        return [s for s in self.solutions if s.kind == kind]

    @property
    def first_genuine(self):
        genuine = self.of_class(SolutionClass.GENUINE)
        return genuine[0].quadruple if genuine else None

    def to_dict(self):
        return {
            "ambient": self.ambient,
            "group_elements": list(self.group_elements),
            "is_2maximal": self.is_2maximal,
            "counts": {kind.value: self.counts.get(kind, 0) for kind in SolutionClass},
            "truncated": self.truncated,
            "solutions": [s.to_dict() for s in self.solutions],
        }


def classify_solution(a, b, c, d, ring):
    """Classify ring elements a, b, c, d satisfying a - b = 2(c - d)."""
    lhs = ring.sub(a, b)
    rhs = ring.scale(2, ring.sub(c, d))
    if lhs != rhs:
        raise NotASolution(f"({a}, {b}, {c}, {d}) does not satisfy a - b = 2(c - d)")
    if a == b:
        return SolutionClass.TRIVIAL
    if a == ring.neg(b) and a == ring.sub(c, d):
        return SolutionClass.HEXAGONAL
    return SolutionClass.GENUINE


def _collect(ring, labels, quadruples, max_stored):
    counts = {kind: 0 for kind in SolutionClass}
    stored = []
    for qa, qb, qc, qd in quadruples:
        kind = classify_solution(*(ring.element(q) for q in (qa, qb, qc, qd)), ring)
        counts[kind] += 1
        if len(stored) < max_stored:
            stored.append(Solution(qa, qb, qc, qd, kind))
    return MaximalityReport(
        ambient=ring.describe(),
        group_elements=tuple(labels),
        is_2maximal=counts[SolutionClass.GENUINE] == 0,
        solutions=tuple(stored),
        counts=counts,
        truncated=sum(counts.values()) > len(stored),
    )


def _lookup_solutions(ring, labels):
    """Fix (a, b, c) and solve 2d = 2c - (a - b) by exact halving plus a membership lookup."""
    elements = [ring.element(x) for x in labels]
    index = {e: x for e, x in zip(elements, labels)}
    for a, la in zip(elements, labels):
        for b, lb in zip(elements, labels):
            diff = ring.sub(a, b)
            for c, lc in zip(elements, labels):
                d = ring.divide(ring.sub(ring.scale(2, c), diff), 2)
                if d is not None and d in index:
                    yield la, lb, lc, index[d]


def _naive_solutions(ring, labels):
    elements = [ring.element(x) for x in labels]
    for a, la in zip(elements, labels):
        for b, lb in zip(elements, labels):
            lhs = ring.sub(a, b)
            for c, lc in zip(elements, labels):
                for d, ld in zip(elements, labels):
                    if lhs == ring.scale(2, ring.sub(c, d)):
                        yield la, lb, lc, ld


def _solutions(ring, labels, method):
    if method == "lookup":
        return _lookup_solutions(ring, labels)
    if method == "naive":
        return _naive_solutions(ring, labels)
    raise InvalidParameter(f"unknown enumeration method {method!r}")


def _modular_lookup_report(ring, labels, max_stored):
    """
    Integer-only version of the lookup enumeration for Z_p. With a = -b the
    equation forces c - d = a, so every such solution is hexagonal.
    """
    p = ring.p
    members = set(labels)
    half = pow(2, -1, p)
    counts = {kind: 0 for kind in SolutionClass}
    stored = []
    for a in labels:
        for b in labels:
            if a == b:
                kind = SolutionClass.TRIVIAL
            elif (a + b) % p == 0:
                kind = SolutionClass.HEXAGONAL
            else:
                kind = SolutionClass.GENUINE
            shift = ((a - b) * half) % p
            for c in labels:
                d = (c - shift) % p
                if d in members:
                    counts[kind] += 1
                    if len(stored) < max_stored:
                        stored.append(Solution(a, b, c, d, kind))
    return MaximalityReport(
        ambient=ring.describe(),
        group_elements=tuple(labels),
        is_2maximal=counts[SolutionClass.GENUINE] == 0,
        solutions=tuple(stored),
        counts=counts,
        truncated=sum(counts.values()) > len(stored),
    )


def check_2maximal_mod_p(E, p, max_stored=MAX_STORED_SOLUTIONS, method="lookup"):
    """Decide 2-maximality of the even subgroup E of Z_p*."""
    if not is_prime(p) or p < 3:
        raise NotPrime(f"2-maximality in Z_p needs an odd prime (2 must be invertible), got {p}")
    labels = sorted({int(e) % p for e in E})
    if (p - 1) not in labels:
        raise NotEvenSubgroup(f"-1 = {p - 1} is not in {labels}")
    ring = ModularRing(p)
    if method == "lookup":
        report = _modular_lookup_report(ring, labels, max_stored)
    else:
        report = _collect(ring, labels, _solutions(ring, labels, method), max_stored)
    logger.debug("Z_%d, |E|=%d: 2-maximal=%s counts=%s", p, len(labels), report.is_2maximal, report.counts)
    return report


def check_2maximal_roots_of_unity(k, max_stored=MAX_STORED_SOLUTIONS, method="lookup"):
    """Exhaustive exact check that the k-th roots of unity are 2-maximal in C."""
    if k < 2 or k % 2:
        raise InvalidParameter(f"k must be an even integer >= 2, got {k}")
    ring = CyclotomicRing(k)
    labels = list(range(k))
    return _collect(ring, labels, _solutions(ring, labels, method), max_stored)


@dataclass(frozen=True)
class ConsequenceReport:
    """The three consequences of 2-maximality, plus the ring hypotheses they need."""
    two_invertible: bool
    three_nonzero: bool
    excludes_two_and_three: bool
    midpoint_rule: bool
    weighted_rule: bool

    @property
    def hypotheses_hold(self):
        return self.two_invertible and self.three_nonzero

    @property
    def all_hold(self):
        return self.excludes_two_and_three and self.midpoint_rule and self.weighted_rule

    def as_tuple(self):
        return (self.excludes_two_and_three, self.midpoint_rule, self.weighted_rule)

    def to_dict(self):
        return {
            "two_invertible": self.two_invertible,
            "three_nonzero": self.three_nonzero,
            "excludes_two_and_three": self.excludes_two_and_three,
            "midpoint_rule": self.midpoint_rule,
            "weighted_rule": self.weighted_rule,
        }


def _combination_forces_equal(ring, elements, weight):
    """a + weight*b = (1 + weight) c with a, b, c in G implies a = b = c."""
    members = set(elements)
    total = 1 + weight
    for a in elements:
        for b in elements:
            lhs = ring.add(a, ring.scale(weight, b))
            if ring.cancellable(total):
                c = ring.divide(lhs, total)
                if c is not None and c in members and not (a == b == c):
                    return False
                continue
            # multiplication by total is not injective: try every c
            for c in elements:
                if ring.scale(total, c) == lhs and not (a == b == c):
                    return False
    return True


def check_maximality_consequences(G, ring):
    """
    Tests 2, 3 not in G; a + b = 2c => a = b = c; a + 2b = 3c => a = b = c.
    `G` is a collection of element labels for `ring`.
    """
    elements = [ring.element(x) for x in G]
    if ring.neg(ring.constant(1)) not in elements:
        raise NotEvenSubgroup(f"{list(G)} does not contain -1")
    excludes = ring.constant(2) not in elements and ring.constant(3) not in elements
    return ConsequenceReport(
        two_invertible=ring.two_invertible,
        three_nonzero=ring.three_nonzero,
        excludes_two_and_three=excludes,
        midpoint_rule=_combination_forces_equal(ring, elements, 1),
        weighted_rule=_combination_forces_equal(ring, elements, 2),
    )


@dataclass(frozen=True)
class NormObstructionRow:
    exponent: int
    root_order: int
    norm: int
    power_of_two: int

    @property
    def divisible(self):
        return self.norm % self.power_of_two == 0

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "root_order": self.root_order,
            "norm": self.norm,
            "power_of_two": self.power_of_two,
            "divisible": self.divisible,
        }


def norm_obstruction(k):
    """
    For each k-th root z = zeta^j other than +-1, of order n: N(1 - z) taken in
    Q(zeta_n) must not be divisible by 2^phi(n). Were it divisible, 1 - z = 2u
    could have an integral u; this is why only a = +-b survives.
    """
    if k < 2 or k % 2:
        raise InvalidParameter(f"k must be an even integer >= 2, got {k}")
    rows = []
    for j in range(k):
        n = k // gcd(j, k)
        if n <= 2:
            continue
        z = root_of_unity(n, 1)
        rows.append(NormObstructionRow(j, n, norm(1 - z), 2 ** euler_phi(n)))
    return rows
