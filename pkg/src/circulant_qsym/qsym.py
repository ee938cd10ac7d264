"""
Quantum-symmetry certification for circulant graphs.

Rules are tried in a fixed order and every decision is written to the rule
chain, so a certificate can be replayed from its own document.
"""
import enum
import json
import logging
from dataclasses import dataclass, field

from circulant_qsym.errors import InvalidParameter, InvariantBreach
from circulant_qsym.graph import (
    CirculantGraph, complement, cycle_graph, from_connection_set, multiplier_group
)
from circulant_qsym.maximality import (
    MAX_STORED_SOLUTIONS, ModularRing, SolutionClass, check_2maximal_mod_p,
    check_maximality_consequences
)
from circulant_qsym.modular import euler_phi, is_prime
from circulant_qsym.witness import (
    build_u_pq, extend_with_identity_tail, noncommuting_pair,
    verify_commutation, verify_magic_unitary
)

logger = logging.getLogger(__name__)

# 0-based form of the cyclic vertex labelling 1, 3, 2, 4
C4_VERTEX_ORDER = (0, 2, 1, 3)

SMALL_GRAPH_CITATION = "graphs on at most 3 vertices have only classical symmetry"
EMPTY_GRAPH_CITATION = "u_pq extended by an identity tail is a noncommutative magic unitary commuting with d = 0"
COMPLEMENT_CITATION = "a graph and its complement share the same quantum symmetry group"
MAXIMALITY_CITATION = "a 2-maximal multiplier group E in Z_p, p >= 5, rules out quantum symmetry"
BOUND_CITATION = "every order-k subgroup of Z_p* is 2-maximal once p > 6^phi(k)"
CYCLE_CITATION = "u_pq commutes with the adjacency matrix of C_4 in the vertex order 1, 3, 2, 4"


class Verdict(str, enum.Enum):
    NO_QUANTUM_SYMMETRY = "NoQuantumSymmetry"
    HAS_QUANTUM_SYMMETRY = "HasQuantumSymmetry"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class RuleStep:
    rule: str
    detail: str
    params: dict = field(default_factory=dict)
    citation: str = None

    def to_dict(self):
        step = {"rule": self.rule, "detail": self.detail, "params": self.params}
        if self.citation:
            step["citation"] = self.citation
        return step


@dataclass(frozen=True, eq=False)
class Certificate:
    graph: CirculantGraph
    verdict: Verdict
    rule_chain: tuple
    witness: object = None
    vertex_order: tuple = None
    invariant_checks: tuple = ()

    def to_dict(self):
        document = {
            "graph": {"n": self.graph.n, "s": list(self.graph.connection_set)},
            "verdict": self.verdict.value,
            "rules": [step.to_dict() for step in self.rule_chain],
            "invariant_checks": list(self.invariant_checks),
        }
        if self.witness is not None:
            document["witness"] = self.witness.to_dict()
            document["witness"]["vertex_order"] = list(self.vertex_order)
        return document

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


def bound_for_type(k):
    """6^phi(k): above it every order-k subgroup of Z_p* is 2-maximal."""
    if k < 2 or k % 2:
        raise InvalidParameter(f"k must be an even integer >= 2, got {k}")
    return 6 ** euler_phi(k)


def _witness_checks(witness, g, vertex_order):
    magic = verify_magic_unitary(witness)
    commutes = verify_commutation(witness, g, vertex_order)
    pair = noncommuting_pair(witness)
    checks = (
        {"check": "magic_unitary", "passed": magic.ok, **({"failure": magic.failure} if not magic.ok else {})},
        {"check": "commutes_with_adjacency", "passed": commutes.ok},
        {"check": "noncommuting_entries", "passed": pair is not None,
         "pair": [list(cell) for cell in pair] if pair else None},
    )
    if not all(check["passed"] for check in checks):
        raise InvariantBreach(f"witness {witness.label} failed verification for {g}: {checks}")
    return checks


def _has_quantum_symmetry(g, chain, witness, vertex_order):
    checks = _witness_checks(witness, g, vertex_order)
    return Certificate(g, Verdict.HAS_QUANTUM_SYMMETRY, tuple(chain), witness, tuple(vertex_order), checks)


def _is_c4_class(g):
    c4 = cycle_graph(4)
    return g == c4 or g == complement(c4)


def certify(g, max_stored=MAX_STORED_SOLUTIONS):
    """
    R1  n <= 3                               -> NoQuantumSymmetry
    R2  n >= 4, empty or complete            -> HasQuantumSymmetry (tail-extended u_pq)
    R4  n = 4, C_4 or its complement         -> HasQuantumSymmetry (u_pq, order 1324)
    R3  n prime >= 5, E 2-maximal            -> NoQuantumSymmetry
    R5  otherwise                            -> Undecided, with diagnostics
    """
    n = g.n
    chain = [RuleStep("graph", f"circulant graph on {n} vertices", {"n": n, "s": list(g.connection_set)})]

    if n <= 3:
        chain.append(RuleStep("R1", f"n = {n} <= 3", {"n": n}, SMALL_GRAPH_CITATION))
        return Certificate(g, Verdict.NO_QUANTUM_SYMMETRY, tuple(chain))

    if g.is_empty() or g.is_complete():
        witness = extend_with_identity_tail(build_u_pq(), n)
        if g.is_complete():
            chain.append(RuleStep("complement", f"complement of K_{n} is X_{n}", {"n": n}, COMPLEMENT_CITATION))
        chain.append(RuleStep("R2", f"X_{n} carries the {witness.label} witness", {"n": n}, EMPTY_GRAPH_CITATION))
        return _has_quantum_symmetry(g, chain, witness, range(n))

    if n == 4 and _is_c4_class(g):
        if g != cycle_graph(4):
            chain.append(RuleStep("complement", "complement of C_4", {"n": 4}, COMPLEMENT_CITATION))
        chain.append(RuleStep("R4", "C_4 carries u_pq in vertex order 1,3,2,4",
                              {"order": [v + 1 for v in C4_VERTEX_ORDER]}, CYCLE_CITATION))
        return _has_quantum_symmetry(g, chain, build_u_pq(), C4_VERTEX_ORDER)

    if not is_prime(n):
        chain.append(RuleStep("R5", f"n = {n} is composite; the 2-maximality criterion needs a prime",
                              {"n": n, "reason": "composite"}))
        return Certificate(g, Verdict.UNDECIDED, tuple(chain))

    E = multiplier_group(g)
    k = E.order
    bound = bound_for_type(k)
    chain.append(RuleStep("type", f"type k={k}", {"k": k, "E": list(E.elements)}))
    report = check_2maximal_mod_p(E, n, max_stored=max_stored)
    if not report.is_2maximal:
        chain.append(RuleStep(
            "R5", "E is not 2-maximal; no sufficient condition applies",
            {"genuine_solution": list(report.first_genuine), "genuine_count": report.counts[SolutionClass.GENUINE], "bound": bound},
        ))
        return Certificate(g, Verdict.UNDECIDED, tuple(chain))

    chain.append(RuleStep("2-maximal", "2-maximal check passed", {"p": n, "solutions": report.total_solutions}))
    if n > bound:
        chain.append(RuleStep("bound", f"p={n} > {bound} = 6^phi({k})",
                              {"p": n, "k": k, "bound": bound, "applies": True}, BOUND_CITATION))
    else:
        chain.append(RuleStep("bound", f"p={n} <= {bound} = 6^phi({k}); settled by the direct check",
                              {"p": n, "k": k, "bound": bound, "applies": False}))
    chain.append(RuleStep("R3", "multiplier group is 2-maximal", {"p": n, "k": k}, MAXIMALITY_CITATION))
    consequences = check_maximality_consequences(E.elements, ModularRing(n))
    checks = ({"check": "maximality_consequences", "passed": consequences.all_hold, **consequences.to_dict()},)
    if not consequences.all_hold:
        raise InvariantBreach(f"{g}: 2-maximal E violates its consequences {consequences}")
    return Certificate(g, Verdict.NO_QUANTUM_SYMMETRY, tuple(chain), invariant_checks=checks)


def replay(document):
    """Re-certify the graph named in a certificate document and compare the result."""
    graph = from_connection_set(document["graph"]["n"], document["graph"]["s"])
    again = certify(graph).to_dict()
    return json.dumps(again, sort_keys=True) == json.dumps(document, sort_keys=True)
