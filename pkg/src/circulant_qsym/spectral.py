"""
Spectral decomposition of circulant adjacency matrices on a prime number of
vertices. Exact eigenvalues live in Z[zeta_p]; numpy values are a cross-check.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from circulant_qsym.cyclotomic import CyclotomicInt
from circulant_qsym.errors import InvalidParameter, InvariantBreach, NotPrime, ToleranceAmbiguity
from circulant_qsym.graph import adjacency_matrix, multiplier_group
from circulant_qsym.modular import Residue, is_prime

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
AMBIGUITY_FACTOR = 10
# imaginary parts of f are float noise; S = -S makes f real
IMAGINARY_NOISE = 1e-9


def _require_prime(g):
    if not is_prime(g.n):
        raise NotPrime(f"spectral analysis needs a prime number of vertices, got {g.n}")


def eigenvalue_function(g, x):
    """f(x) = sum over t in S of zeta_p^(x t), exactly."""
    _require_prime(g)
    p = g.n
    x = x.value if isinstance(x, Residue) else int(x) % p
    counts = [0] * p
    for t in g.connection_set:
        counts[(x * t) % p] += 1
    return CyclotomicInt.from_coefficients(p, counts)


def numeric_eigenvalues(g):
    """
    f(x) for x = 0..p-1 by direct complex summation. Exponents are reduced
    mod p and sorted, so x and xe for e in E sum identical terms in the same
    order and come out bitwise equal.
    """
    p = g.n
    if not g.connection_set:
        return np.zeros(p, dtype=complex)
    x = np.arange(p)
    s = np.array(g.connection_set)
    exponents = np.sort(np.outer(x, s) % p, axis=1)
    return np.exp(2j * np.pi * exponents / p).sum(axis=1)


def fourier_vector(p, x):
    """xi^x = (1, w^x, w^2x, ..., w^(p-1)x) with w = exp(2 pi i / p)."""
    return np.exp(2j * np.pi * x * np.arange(p) / p)


def eigenvector_residual(g, x):
    """||d xi^x - f(x) xi^x||_inf, evaluated numerically."""
    d = adjacency_matrix(g)
    v = fourier_vector(g.n, x)
    value = eigenvalue_function(g, x).to_complex()
    return float(np.max(np.abs(d @ v - value * v)))


@dataclass(frozen=True)
class SpectralProfile:
    p: int
    eigenvalues: dict
    classes: tuple
    numeric: dict = field(default_factory=dict)

    @property
    def class_count(self):
        return len(self.classes)

    def distinct_exact_values(self):
        return len(set(self.eigenvalues.values()))

    def is_degenerate(self):
        """True when distinct index classes share one eigenvalue (only the empty graph)."""
        return self.distinct_exact_values() != self.class_count

    def to_dict(self):
        return {
            "p": self.p,
            "classes": [list(c) for c in self.classes],
            "class_count": self.class_count,
            "distinct_eigenvalues": self.distinct_exact_values(),
            "eigenvalues": {str(c[0]): str(self.eigenvalues[c[0]]) for c in self.classes},
        }


def eigenspace_partition(g):
    """
    {0} plus the cosets xE of the multiplier group in Z_p*. f is constant on
    every class; a class that is not raises InvariantBreach.
    """
    _require_prime(g)
    E = multiplier_group(g)
    classes = ((0,),) + tuple(E.cosets())
    eigenvalues = {x: eigenvalue_function(g, x) for x in range(g.n)}
    numeric_values = numeric_eigenvalues(g)
    for cls in classes:
        values = {eigenvalues[x] for x in cls}
        if len(values) != 1:
            raise InvariantBreach(f"f is not constant on class {cls} of {g}")
    profile = SpectralProfile(
        p=g.n,
        eigenvalues=eigenvalues,
        classes=classes,
        numeric={x: complex(numeric_values[x]) for x in range(g.n)},
    )
    if g.is_empty():
        logger.warning("%s: all %d index classes share the eigenvalue 0", g, profile.class_count)
    return profile


@dataclass(frozen=True)
class CosetLawResult:
    holds: bool
    pairs_checked: int
    counterexample: tuple = None

    def to_dict(self):
        return {
            "holds": self.holds,
            "pairs_checked": self.pairs_checked,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def verify_coset_eigenvalue_law(g):
    """Exact check of f(x) = f(y) <=> xE = yE over all x, y in Z_p*."""
    _require_prime(g)
    p = g.n
    E = multiplier_group(g)
    coset_of = {}
    for coset in E.cosets():
        for x in coset:
            coset_of[x] = coset
    values = {x: eigenvalue_function(g, x) for x in range(1, p)}
    checked = 0
    for x in range(1, p):
        for y in range(1, p):
            checked += 1
            same_value = values[x] == values[y]
            same_coset = coset_of[x] == coset_of[y]
            if same_value != same_coset:
                return CosetLawResult(False, checked, (x, y))
    return CosetLawResult(True, checked)


@dataclass(frozen=True)
class ClusterResult:
    count: int
    centers: tuple
    tolerance: float

    def to_dict(self):
        return {
            "count": self.count,
            "centers": [round(c, 12) for c in self.centers],
            "tolerance": self.tolerance,
        }


def numeric_eigenvalue_clusters(g, tolerance=DEFAULT_TOLERANCE):
    """
    Groups the numeric f(x) into clusters of values closer than `tolerance`.
    A gap between clusters below AMBIGUITY_FACTOR * tolerance is reported as
    ToleranceAmbiguity rather than guessed.
    """
    _require_prime(g)
    if tolerance <= 0:
        raise InvalidParameter(f"tolerance must be positive, got {tolerance}")
    values = numeric_eigenvalues(g)
    if np.max(np.abs(values.imag)) >= IMAGINARY_NOISE * g.n:
        raise InvariantBreach(f"{g} has an eigenvalue with imaginary part above float noise")
    ordered = np.sort(values.real)
    clusters = [[ordered[0]]]
    for previous, current in zip(ordered, ordered[1:]):
        gap = current - previous
        if gap < tolerance:
            clusters[-1].append(current)
            continue
        if gap < AMBIGUITY_FACTOR * tolerance:
            raise ToleranceAmbiguity(
                f"eigenvalues {previous:.3e} and {current:.3e} are {gap:.3e} apart, "
                f"within {AMBIGUITY_FACTOR}x the tolerance {tolerance:.1e}"
            )
        clusters.append([current])
    centers = tuple(float(np.mean(c)) for c in reversed(clusters))
    return ClusterResult(len(clusters), centers, tolerance)
