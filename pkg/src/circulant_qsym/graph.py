"""
Circulant graphs on Z_n and their arithmetic invariants S, E and k.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from circulant_qsym.errors import (
    InvalidConnectionSet, InvalidPermutation, InvariantBreach, NotPrime, RangeExceeded
)
from circulant_qsym.modular import SubgroupOfUnits, is_prime, unit_group

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 9


@dataclass(frozen=True)
class CirculantGraph:
    """
    Vertices are 0..n-1; i ~ j iff (j - i) mod n lies in the connection set.
    """
    n: int
    connection_set: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConnectionSet(f"a graph needs at least one vertex, got n={self.n}")
        members = set(self.connection_set)
        if any(not 0 <= s < self.n for s in members):
            raise InvalidConnectionSet(f"connection set must be reduced mod {self.n}")
        if 0 in members:
            raise InvalidConnectionSet("0 cannot be in the connection set (no loops)")
        missing = sorted(s for s in members if (-s) % self.n not in members)
        if missing:
            raise InvalidConnectionSet(
                f"connection set is not symmetric mod {self.n}: "
                f"negatives of {missing} are missing"
            )
        object.__setattr__(self, "connection_set", tuple(sorted(members)))

    @property
    def degree(self):
        return len(self.connection_set)

    def is_empty(self):
        return not self.connection_set

    def is_complete(self):
        return self.degree == self.n - 1

    def has_edge(self, i, j):
        return (j - i) % self.n in self.connection_set

    def edges(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.has_edge(i, j)]

    def __str__(self):
        return f"Circ({self.n}; {{{', '.join(map(str, self.connection_set))}}})"


def from_connection_set(n, connection_set):
    """Canonicalize S mod n and build the graph. Non-symmetric sets are rejected."""
    if n < 1:
        raise InvalidConnectionSet(f"a graph needs at least one vertex, got n={n}")
    reduced = set()
    for s in connection_set:
        r = int(s) % n
        if r == 0:
            raise InvalidConnectionSet(f"{s} is 0 mod {n}; loops are not allowed")
        reduced.add(r)
    return CirculantGraph(n, tuple(reduced))


def empty_graph(n):
    return CirculantGraph(n, ())


def complete_graph(n):
    return CirculantGraph(n, tuple(range(1, n)))


def cycle_graph(n):
    if n < 3:
        raise InvalidConnectionSet(f"C_n needs n >= 3, got {n}")
    return from_connection_set(n, {1, n - 1})


def paley_graph(p):
    if not is_prime(p) or p % 4 != 1:
        raise InvalidConnectionSet(f"Paley graphs need a prime p = 1 mod 4, got {p}")
    return from_connection_set(p, {(x * x) % p for x in range(1, p)})


def _check_order(n, vertex_order):
    if vertex_order is None:
        return list(range(n))
    order = [int(v) for v in vertex_order]
    if sorted(order) != list(range(n)):
        raise InvalidPermutation(f"{order} is not a permutation of 0..{n - 1}")
    return order


def adjacency_matrix(g, vertex_order=None):
    """
    0/1 adjacency matrix. Row/column i stands for vertex vertex_order[i]
    (0-based); by default the natural order.
    """
    order = _check_order(g.n, vertex_order)
    d = np.zeros((g.n, g.n), dtype=np.int64)
    for row, i in enumerate(order):
        for col, j in enumerate(order):
            if g.has_edge(i, j):
                d[row, col] = 1
    return d


def multiplier_group(g):
    """E = {a in Z_n* : aS = S}."""
    s = set(g.connection_set)
    elements = [a for a in unit_group(g.n) if {(a * t) % g.n for t in s} == s]
    return SubgroupOfUnits(g.n, tuple(elements))


def graph_type(g):
    return multiplier_group(g).order


def complement(g):
    return CirculantGraph(g.n, tuple(s for s in range(1, g.n) if s not in g.connection_set))


def multiplier_orbit(g):
    """All connection sets aS for a in Z_n*, as sorted tuples."""
    return sorted({tuple(sorted((a * s) % g.n for s in g.connection_set)) for a in unit_group(g.n)})


def _is_automorphism(g, mapping):
    n = g.n
    for i in range(n):
        for j in range(i + 1, n):
            if g.has_edge(i, j) != g.has_edge(mapping[i], mapping[j]):
                return False
    return True


def affine_automorphism_count(g):
    """|{x -> ax + b : a in E, b in Z_p}|, each map checked against the edge relation."""
    if not is_prime(g.n):
        raise NotPrime(f"affine automorphism count needs prime n, got {g.n}")
    E = multiplier_group(g)
    count = 0
    for a in E:
        for b in range(g.n):
            mapping = [(a * x + b) % g.n for x in range(g.n)]
            if not _is_automorphism(g, mapping):
                raise InvariantBreach(f"x -> {a}x + {b} is not an automorphism of {g}")
            count += 1
    return count


@dataclass(frozen=True)
class AutomorphismSummary:
    affine_count: int
    affine_is_full_aut: bool

    def to_dict(self):
        return {"affine_count": self.affine_count, "affine_is_full_aut": self.affine_is_full_aut}


def automorphism_summary(g):
    # empty and complete graphs have Aut = S_p, strictly larger than the affine group
    full = is_prime(g.n) and not g.is_empty() and not g.is_complete()
    return AutomorphismSummary(affine_automorphism_count(g), full)


def _count_with_first_image(g, first):
    rest = [v for v in range(g.n) if v != first]
    count = 0
    for tail in permutations(rest):
        mapping = (first,) + tail
        if _is_automorphism(g, mapping):
            count += 1
    return count


def brute_force_automorphism_count(g, max_n=BRUTE_FORCE_MAX_N, threads=1):
    """
    |Aut(X)| by testing all n! vertex permutations. The search is split by the
    image of vertex 0; the partial counts are summed in a fixed order.
    """
    if g.n > max_n:
        raise RangeExceeded(f"brute force search is limited to n <= {max_n}, got {g.n}")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        partial = list(executor.map(lambda first: _count_with_first_image(g, first), range(g.n)))
    total = sum(partial)
    logger.debug("brute force |Aut(%s)| = %d", g, total)
    return total
