"""
Exact arithmetic in Z[zeta_k], with elements stored as integer coefficient
vectors reduced modulo the k-th cyclotomic polynomial.
"""
import cmath
from dataclasses import dataclass
from functools import lru_cache

from sympy import Poly, Symbol, cyclotomic_poly

from circulant_qsym.errors import InvalidParameter, OrderMismatch
from circulant_qsym.modular import euler_phi

_X = Symbol("X")


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k):
    """Coefficients of Phi_k, lowest degree first. Phi_12 -> (1, 0, -1, 0, 1)."""
    if k < 1:
        raise InvalidParameter(f"cyclotomic order must be >= 1, got {k}")
    coeffs = Poly(cyclotomic_poly(k, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(k, coeffs):
    phi = cyclotomic_polynomial(k)
    degree = len(phi) - 1
    coeffs = list(coeffs)
    # Phi_k is monic, so plain long division stays in Z
    for i in range(len(coeffs) - 1, degree - 1, -1):
        c = coeffs[i]
        if c:
            shift = i - degree
            for j, pj in enumerate(phi):
                coeffs[shift + j] -= c * pj
    coeffs = coeffs[:degree] + [0] * max(0, degree - len(coeffs))
    return tuple(coeffs)


@dataclass(frozen=True)
class CyclotomicInt:
    order: int
    coefficients: tuple

    @classmethod
    def from_coefficients(cls, k, coeffs):
        return cls(k, _reduce(k, [int(c) for c in coeffs]))

    @classmethod
    def integer(cls, k, value):
        return cls.from_coefficients(k, [value])

    @classmethod
    def zero(cls, k):
        return cls.integer(k, 0)

    def __post_init__(self):
        if len(self.coefficients) != euler_phi(self.order):
            raise InvalidParameter(
                f"Z[zeta_{self.order}] elements need {euler_phi(self.order)} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def _check(self, other):
        if not isinstance(other, CyclotomicInt):
            return False
        if other.order != self.order:
            raise OrderMismatch(f"cannot combine Z[zeta_{self.order}] with Z[zeta_{other.order}]")
        return True

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(self.order, other)
        if not self._check(other):
            return NotImplemented
        return CyclotomicInt(self.order, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.order, tuple(-a for a in self.coefficients))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(self.order, other)
        if not self._check(other):
            return NotImplemented
        return CyclotomicInt(self.order, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.order, tuple(other * a for a in self.coefficients))
        if not self._check(other):
            return NotImplemented
        product = [0] * (2 * len(self.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    product[i + j] += a * b
        return CyclotomicInt.from_coefficients(self.order, product)

    __rmul__ = __mul__

    def exact_divide(self, m):
        """self / m if every coefficient is divisible by m, else None."""
        if any(c % m for c in self.coefficients):
            return None
        return CyclotomicInt(self.order, tuple(c // m for c in self.coefficients))

    def is_zero(self):
        return not any(self.coefficients)

    def to_complex(self):
        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * zeta ** i for i, c in enumerate(self.coefficients))

    def norm(self):
        return norm(self)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "z" if i == 1 else f"z^{i}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms) if terms else "0"


def root_of_unity(k, j):
    """zeta_k ** (j mod k)."""
    if k < 1:
        raise InvalidParameter(f"cyclotomic order must be >= 1, got {k}")
    return roots_of_unity(k)[j % k]


@lru_cache(maxsize=None)
def roots_of_unity(k):
    """All k-th roots of unity, indexed by exponent."""
    roots = []
    for j in range(k):
        coeffs = [0] * (j + 1)
        coeffs[j] = 1
        roots.append(CyclotomicInt.from_coefficients(k, coeffs))
    return tuple(roots)


def norm(z):
    """|product of Galois conjugates| = |Res(z(X), Phi_k(X))|; N(0) = 0."""
    if z.is_zero():
        return 0
    element = Poly(list(reversed(z.coefficients)), _X)
    modulus = Poly(list(reversed(cyclotomic_polynomial(z.order))), _X)
    return abs(int(element.resultant(modulus)))
