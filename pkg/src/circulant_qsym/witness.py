"""
Magic unitaries with exact rational m x m matrix entries, used as witnesses
that a graph has quantum symmetry.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files

import numpy as np

from circulant_qsym.errors import InvariantBreach, WitnessShapeError
from circulant_qsym.graph import adjacency_matrix

logger = logging.getLogger(__name__)


def exact_matrix(rows):
    """Object array of Fractions from nested rows of ints/strings/Fractions."""
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def identity(m):
    return exact_matrix([[1 if i == j else 0 for j in range(m)] for i in range(m)])


def zeros(m):
    return exact_matrix([[0] * m for _ in range(m)])


def _equal(a, b):
    return a.shape == b.shape and bool((a == b).all())


def _is_zero(a):
    return not any(x != 0 for x in a.flat)


@dataclass(frozen=True, eq=False)
class MagicUnitaryWitness:
    """`entries` has shape (n, n, m, m); entries[i, j] is the (i, j) projection."""
    entries: np.ndarray
    label: str

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=object)
        if entries.ndim != 4 or entries.shape[0] != entries.shape[1] or entries.shape[2] != entries.shape[3]:
            raise WitnessShapeError(f"expected an (n, n, m, m) array, got shape {entries.shape}")
        entries = np.vectorize(Fraction, otypes=[object])(entries)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def m(self):
        return self.entries.shape[2]

    def entry(self, i, j):
        return self.entries[i, j]

    def block_matrix(self):
        """The nm x nm matrix whose (i, j) block is entries[i, j]."""
        return self.entries.transpose(0, 2, 1, 3).reshape(self.n * self.m, self.n * self.m)

    def to_dict(self):
        return {
            "label": self.label,
            "n": self.n,
            "m": self.m,
            "entries": [
                [[[str(x) for x in row] for row in self.entries[i, j]] for j in range(self.n)]
                for i in range(self.n)
            ],
        }

    @classmethod
    def from_dict(cls, document):
        entries = np.array(
            [[[[Fraction(x) for x in row] for row in entry] for entry in line] for line in document["entries"]],
            dtype=object,
        )
        return cls(entries, document["label"])


def _from_layout(layout, projections, m, label):
    def resolve(symbol):
        if symbol == "0":
            return zeros(m)
        if symbol == "1":
            return identity(m)
        if symbol.startswith("1-"):
            return identity(m) - projections[symbol[2:]]
        return projections[symbol]

    n = len(layout)
    entries = np.empty((n, n, m, m), dtype=object)
    for i, row in enumerate(layout):
        for j, symbol in enumerate(row):
            entries[i, j] = resolve(symbol)
    return MagicUnitaryWitness(entries, label)


def build_u_pq():
    """
    The 4x4 block-diagonal magic unitary built from two projections P, Q that
    do not commute. Layout and projections come from the packaged template.
    """
    template = json.loads(
        files("circulant_qsym.data")
        .joinpath("u_pq.json")
        .read_text(encoding="utf-8")
    )
    projections = {name: exact_matrix(rows) for name, rows in template["projections"].items()}
    m = len(next(iter(projections.values())))
    witness = _from_layout(template["layout"], projections, m, template["label"])
    P, Q = projections["P"], projections["Q"]
    if _equal(P.dot(Q), Q.dot(P)):
        raise InvariantBreach("u_pq template projections commute")
    return witness


def build_u_p(projection):
    """The 2x2 magic unitary (p, 1-p; 1-p, p) for a single projection p."""
    p = exact_matrix(projection)
    return _from_layout([["P", "1-P"], ["1-P", "P"]], {"P": p}, p.shape[0], "u_p")


def extend_with_identity_tail(witness, n):
    """Pad with a diagonal tail of identity entries up to size n."""
    if n < witness.n:
        raise WitnessShapeError(f"cannot shrink a {witness.n}x{witness.n} witness to {n}x{n}")
    if n == witness.n:
        return witness
    m = witness.m
    entries = np.empty((n, n, m, m), dtype=object)
    for i in range(n):
        for j in range(n):
            if i < witness.n and j < witness.n:
                entries[i, j] = witness.entries[i, j]
            elif i == j:
                entries[i, j] = identity(m)
            else:
                entries[i, j] = zeros(m)
    return MagicUnitaryWitness(entries, f"{witness.label}+tail{n}")


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failure: str = None
    indices: tuple = None

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "ok": self.ok,
            "failure": self.failure,
            "indices": [list(i) if isinstance(i, tuple) else i for i in self.indices] if self.indices else None,
        }


def _check_line(witness, cells, name):
    identity_m = identity(witness.m)
    total = zeros(witness.m)
    for cell in cells:
        total = total + witness.entry(*cell)
    if not _equal(total, identity_m):
        return VerificationResult(False, f"{name} does not sum to the identity", (cells[0],))
    nonzero = [cell for cell in cells if not _is_zero(witness.entry(*cell))]
    for x, first in enumerate(nonzero):
        for second in nonzero[x + 1:]:
            if not _is_zero(witness.entry(*first).dot(witness.entry(*second))):
                return VerificationResult(False, f"entries in {name} are not orthogonal", (first, second))
    return None


def verify_magic_unitary(witness):
    """Exact check: every entry is a symmetric projection; rows and columns are partitions of unity."""
    n = witness.n
    for i in range(n):
        for j in range(n):
            e = witness.entry(i, j)
            if not _equal(e.dot(e), e) or not _equal(e.T, e):
                return VerificationResult(False, "entry is not a projection", ((i, j),))
    for i in range(n):
        failure = _check_line(witness, [(i, j) for j in range(n)], f"row {i}")
        if failure:
            return failure
    for j in range(n):
        failure = _check_line(witness, [(i, j) for i in range(n)], f"column {j}")
        if failure:
            return failure
    return VerificationResult(True)


def verify_commutation(witness, g, vertex_order=None):
    """Exact check of (d x I_m) U = U (d x I_m) under the given 0-based vertex order."""
    if witness.n != g.n:
        raise WitnessShapeError(f"witness is {witness.n}x{witness.n} but the graph has {g.n} vertices")
    d = adjacency_matrix(g, vertex_order)
    D = np.kron(d, np.eye(witness.m, dtype=np.int64)).astype(object)
    U = witness.block_matrix()
    left, right = D.dot(U), U.dot(D)
    if _equal(left, right):
        return VerificationResult(True)
    row, col = (int(x) for x in np.argwhere(left != right)[0])
    return VerificationResult(
        False, "d U != U d", ((row // witness.m, col // witness.m),)
    )


def noncommuting_pair(witness):
    """First pair of entries (in row-major order) that do not commute, or None."""
    seen = {}
    for i in range(witness.n):
        for j in range(witness.n):
            key = tuple(witness.entry(i, j).flat)
            seen.setdefault(key, (i, j))
    cells = list(seen.values())
    for x, first in enumerate(cells):
        a = witness.entry(*first)
        for second in cells[x + 1:]:
            b = witness.entry(*second)
            if not _equal(a.dot(b), b.dot(a)):
                return first, second
    return None
