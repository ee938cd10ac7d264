"""
Atlases of all circulant graphs on p vertices up to multiplier equivalence,
and scans of the p > 6^phi(k) bound.
"""
import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import primefactors, primerange

from circulant_qsym.cyclotomic import norm, roots_of_unity
from circulant_qsym.errors import InvalidParameter, InvariantBreach, LemmaViolation, NotPrime, RangeExceeded
from circulant_qsym.graph import CirculantGraph, multiplier_group
from circulant_qsym.maximality import MAX_STORED_SOLUTIONS, check_2maximal_mod_p
from circulant_qsym.modular import is_prime, subgroup_of_order, unit_group
from circulant_qsym.qsym import bound_for_type, certify
from circulant_qsym.spectral import eigenspace_partition

logger = logging.getLogger(__name__)

ATLAS_MAX_P = 31
SCAN_MIN_P = 5
SCAN_CSV_COLUMNS = ("k", "p", "bound", "below_bound", "is_2maximal", "violation")


@dataclass(frozen=True)
class AtlasEntry:
    p: int
    connection_set: tuple
    orbit_size: int
    k: int
    is_2maximal: bool
    verdict: str
    class_count: int
    distinct_eigenvalues: int

    @property
    def degenerate_spectrum(self):
        return self.class_count != self.distinct_eigenvalues

    def to_dict(self):
        return {
            "p": self.p,
            "s": list(self.connection_set),
            "orbit_size": self.orbit_size,
            "k": self.k,
            "is_2maximal": self.is_2maximal,
            "verdict": self.verdict,
            "class_count": self.class_count,
            "distinct_eigenvalues": self.distinct_eigenvalues,
            "degenerate_spectrum": self.degenerate_spectrum,
        }


def symmetric_connection_sets(p):
    """All S = -S in Z_p \\ {0}: one choice per pair {s, p - s}."""
    pairs = [(s, p - s) for s in range(1, (p - 1) // 2 + 1)]
    for choice in product((False, True), repeat=len(pairs)):
        members = [x for take, pair in zip(choice, pairs) if take for x in pair]
        yield tuple(sorted(members))


def _orbits(p):
    """Orbits of symmetric sets under S -> aS, each with its smallest member as representative."""
    units = unit_group(p)
    seen = set()
    orbits = []
    for s in sorted(symmetric_connection_sets(p), key=lambda s: (len(s), s)):
        if s in seen:
            continue
        orbit = {tuple(sorted((a * x) % p for x in s)) for a in units}
        seen.update(orbit)
        orbits.append((s, len(orbit)))
    return orbits


def _analyze(p, representative, orbit_size, max_stored):
    g = CirculantGraph(p, representative)
    E = multiplier_group(g)
    maximal = check_2maximal_mod_p(E, p, max_stored=max_stored).is_2maximal if p >= 3 else None
    profile = eigenspace_partition(g)
    entry = AtlasEntry(
        p=p,
        connection_set=representative,
        orbit_size=orbit_size,
        k=E.order,
        is_2maximal=maximal,
        verdict=certify(g, max_stored=max_stored).verdict.value,
        class_count=profile.class_count,
        distinct_eigenvalues=profile.distinct_exact_values(),
    )
    logger.debug("atlas p=%d S=%s -> %s", p, representative, entry.verdict)
    return entry


def enumerate_atlas(p, max_p=ATLAS_MAX_P, threads=1, max_stored=MAX_STORED_SOLUTIONS):
    """One entry per multiplier orbit of symmetric connection sets, ordered by (|S|, S)."""
    if not is_prime(p):
        raise NotPrime(f"atlas needs a prime, got {p}")
    if p > max_p:
        raise RangeExceeded(f"atlas enumeration is limited to p <= {max_p}, got {p}")
    orbits = _orbits(p)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        entries = list(executor.map(lambda item: _analyze(p, item[0], item[1], max_stored), orbits))
    total = sum(entry.orbit_size for entry in entries)
    if total != 2 ** ((p - 1) // 2):
        raise InvariantBreach(f"orbit sizes sum to {total}, expected {2 ** ((p - 1) // 2)}")
    logger.info("atlas p=%d: %d orbits covering %d connection sets", p, len(entries), total)
    return entries


@lru_cache(maxsize=None)
def sum_set_norms(k):
    """
    Distinct nonzero norms N(x - y) for x != y in {a + 2b : a, b k-th roots of unity}.
    A prime p = 1 mod k dividing none of them reduces this set injectively
    into Z_p, which makes the order-k subgroup 2-maximal.
    """
    roots = roots_of_unity(k)
    units = [u for u in range(1, k) if gcd(u, k) == 1] or [1]
    # x - y = zeta^a (1 + 2 zeta^b - zeta^c - 2 zeta^d); the norm ignores the
    # zeta^a factor and is constant on Galois orbits (b, c, d) -> u (b, c, d)
    seen = set()
    norms = set()
    for b, c, d in product(range(k), repeat=3):
        key = min(((u * b) % k, (u * c) % k, (u * d) % k) for u in units)
        if key in seen:
            continue
        seen.add(key)
        norms.add(norm(1 + roots[b] * 2 - roots[c] - roots[d] * 2))
    norms.discard(0)
    logger.debug("sum-set norms k=%d: %d Galois orbits, %d distinct norms", k, len(seen), len(norms))
    return tuple(sorted(norms))


@lru_cache(maxsize=None)
def obstruction_primes(k):
    primes = set()
    for value in sum_set_norms(k):
        primes.update(primefactors(value))
    return tuple(sorted(primes))


def norm_certified(k, p):
    """True when p, with k | p - 1, divides none of the sum-set norms."""
    return (p - 1) % k == 0 and p not in obstruction_primes(k)


@dataclass(frozen=True)
class ScanRow:
    k: int
    p: int
    bound: int
    below_bound: bool
    is_2maximal: bool
    genuine_violation: tuple = None
    norm_certified: bool = None

    def to_dict(self):
        return {
            "k": self.k,
            "p": self.p,
            "bound": self.bound,
            "below_bound": self.below_bound,
            "is_2maximal": self.is_2maximal,
            "violation": list(self.genuine_violation) if self.genuine_violation else None,
            "norm_certified": self.norm_certified,
        }

    def csv_row(self):
        violation = " ".join(map(str, self.genuine_violation)) if self.genuine_violation else ""
        return [self.k, self.p, self.bound, self.below_bound, self.is_2maximal, violation]


def _scan_prime(k, p, bound, with_norms):
    report = check_2maximal_mod_p(subgroup_of_order(p, k), p, max_stored=MAX_STORED_SOLUTIONS)
    row = ScanRow(
        k=k,
        p=p,
        bound=bound,
        below_bound=p <= bound,
        is_2maximal=report.is_2maximal,
        genuine_violation=report.first_genuine,
        norm_certified=norm_certified(k, p) if with_norms else None,
    )
    logger.debug("scan k=%d p=%d: 2-maximal=%s", k, p, row.is_2maximal)
    return row


def scan_primes(k, p_max):
    return [p for p in primerange(SCAN_MIN_P, p_max + 1) if (p - 1) % k == 0]


def scan_bound_tightness(k, p_max, threads=1, with_norms=False):
    """
    Yields one ScanRow per prime 5 <= p <= p_max with k | p - 1, in increasing p.
    A failure above the bound contradicts a proven statement and raises LemmaViolation.
    """
    bound = bound_for_type(k)
    primes = scan_primes(k, p_max)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        for row in executor.map(lambda p: _scan_prime(k, p, bound, with_norms), primes):
            if not row.is_2maximal:
                if not row.below_bound:
                    logger.critical("k=%d p=%d > %d is NOT 2-maximal: %s", k, row.p, bound, row.genuine_violation)
                    raise LemmaViolation(
                        f"order-{k} subgroup of Z_{row.p}* is not 2-maximal although "
                        f"{row.p} > 6^phi({k}) = {bound}; genuine solution {row.genuine_violation}"
                    )
                logger.warning("k=%d p=%d (below bound %d) not 2-maximal: %s", k, row.p, bound, row.genuine_violation)
            yield row


def minimal_uniform_prime(k, p_max, threads=1):
    """
    Smallest scanned prime p0 such that every scanned prime p >= p0 is
    2-maximal. None when nothing is scanned or the largest scanned prime fails.
    """
    rows = list(scan_bound_tightness(k, p_max, threads=threads))
    candidate = None
    for row in reversed(rows):
        if not row.is_2maximal:
            break
        candidate = row.p
    return candidate


def write_jsonl(rows, stream):
    for row in rows:
        stream.write(json.dumps(row.to_dict()) + "\n")
        stream.flush()


def write_scan_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SCAN_CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_row())
        stream.flush()


ATLAS_CSV_COLUMNS = (
    "p", "s", "orbit_size", "k", "is_2maximal", "verdict", "class_count", "distinct_eigenvalues",
)


def write_atlas_csv(entries, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ATLAS_CSV_COLUMNS)
    for entry in entries:
        writer.writerow([
            entry.p, " ".join(map(str, entry.connection_set)), entry.orbit_size, entry.k,
            entry.is_2maximal, entry.verdict, entry.class_count, entry.distinct_eigenvalues,
        ])


def validate_scan_parameters(k, p_max):
    if k < 2 or k % 2:
        raise InvalidParameter(f"k must be an even integer >= 2, got {k}")
    if p_max < 2:
        raise InvalidParameter(f"p_max must be at least 2, got {p_max}")
