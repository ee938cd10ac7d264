"""
Tests for circulant graphs, multiplier groups and automorphism counts
"""

import unittest
from itertools import product
from math import factorial

import numpy as np

from circulant_qsym.errors import (
    InvalidConnectionSet, InvalidPermutation, NotPrime, RangeExceeded
)
from circulant_qsym.graph import (
    CirculantGraph, adjacency_matrix, affine_automorphism_count, automorphism_summary,
    brute_force_automorphism_count, complement, complete_graph, cycle_graph, empty_graph,
    from_connection_set, graph_type, multiplier_group, multiplier_orbit, paley_graph
)
from circulant_qsym.modular import euler_phi


def all_circulants(n):
    """Every circulant graph on Z_n, one per symmetric connection set."""
    pairs = sorted({tuple(sorted((s, (-s) % n))) for s in range(1, n)})
    for choice in product((False, True), repeat=len(pairs)):
        members = {x for take, pair in zip(choice, pairs) if take for x in pair}
        yield CirculantGraph(n, tuple(members))


class TestConstruction(unittest.TestCase):
    """Test graph construction and validation"""

    def test_from_connection_set_reduces(self):
        """Test that S is reduced mod n and sorted"""
        g = from_connection_set(5, [6, 4])
        self.assertEqual(g.connection_set, (1, 4))
        self.assertEqual(g.degree, 2)

    def test_non_symmetric_rejected(self):
        """Test that S must equal -S"""
        with self.assertRaises(InvalidConnectionSet):
            from_connection_set(5, [1, 2])

    def test_zero_rejected(self):
        """Test that loops are rejected"""
        with self.assertRaises(InvalidConnectionSet):
            from_connection_set(5, [5])

    def test_named_graphs(self):
        """Test empty, complete, cycle and Paley graphs"""
        self.assertTrue(empty_graph(6).is_empty())
        self.assertTrue(complete_graph(6).is_complete())
        self.assertEqual(cycle_graph(7).connection_set, (1, 6))
        self.assertEqual(paley_graph(13).connection_set, (1, 3, 4, 9, 10, 12))
        with self.assertRaises(InvalidConnectionSet):
            paley_graph(7)

    def test_edges(self):
        """Test the edge list of C_4"""
        self.assertEqual(cycle_graph(4).edges(), [(0, 1), (0, 3), (1, 2), (2, 3)])
        self.assertEqual(str(cycle_graph(5)), "Circ(5; {1, 4})")


class TestAdjacency(unittest.TestCase):
    """Test adjacency matrices"""

    def test_symmetric_zero_diagonal(self):
        """Test that d is symmetric with zero diagonal"""
        for g in all_circulants(7):
            d = adjacency_matrix(g)
            with self.subTest(s=g.connection_set):
                self.assertTrue((d == d.T).all())
                self.assertEqual(int(np.trace(d)), 0)
                self.assertTrue((d.sum(axis=1) == g.degree).all())

    def test_commutes_with_shift(self):
        """Test the circulant property"""
        shift = np.roll(np.eye(8, dtype=np.int64), 1, axis=1)
        for g in all_circulants(8):
            d = adjacency_matrix(g)
            with self.subTest(s=g.connection_set):
                self.assertTrue((d @ shift == shift @ d).all())

    def test_c4_in_order_1324(self):
        """Test C_4 relabelled as 1, 3, 2, 4"""
        d = adjacency_matrix(cycle_graph(4), (0, 2, 1, 3))
        expected = np.array([[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]])
        self.assertTrue((d == expected).all())

    def test_bad_vertex_order(self):
        """Test that the vertex order must be a permutation"""
        with self.assertRaises(InvalidPermutation):
            adjacency_matrix(cycle_graph(4), (0, 1, 1, 3))


class TestMultiplierGroup(unittest.TestCase):
    """Test E and the type k"""

    def test_examples(self):
        """Test E for cycles, Paley and complete graphs"""
        self.assertEqual(multiplier_group(cycle_graph(5)).elements, (1, 4))
        self.assertEqual(graph_type(cycle_graph(13)), 2)
        self.assertEqual(multiplier_group(paley_graph(13)).elements, (1, 3, 4, 9, 10, 12))
        self.assertEqual(graph_type(complete_graph(7)), 6)
        self.assertEqual(graph_type(empty_graph(7)), 6)
        self.assertEqual(graph_type(from_connection_set(13, [1, 5, 8, 12])), 4)

    def test_type_is_even_and_divides_phi(self):
        """Test that -1 is in E and |E| divides phi(n)"""
        for n in (3, 5, 6, 8, 9, 10, 11):
            for g in all_circulants(n):
                E = multiplier_group(g)
                with self.subTest(n=n, s=g.connection_set):
                    self.assertIn(n - 1, E.elements)
                    self.assertEqual(E.order % 2, 0)
                    self.assertEqual(euler_phi(n) % E.order, 0)

    def test_complement_invariance(self):
        """Test that E(complement) = E"""
        for n in (7, 8, 9, 12):
            for g in all_circulants(n):
                with self.subTest(n=n, s=g.connection_set):
                    self.assertEqual(multiplier_group(complement(g)), multiplier_group(g))
                    self.assertEqual(complement(complement(g)), g)

    def test_orbit_size(self):
        """Test |orbit| = phi(p) / k"""
        for g in all_circulants(11):
            with self.subTest(s=g.connection_set):
                self.assertEqual(len(multiplier_orbit(g)), 10 // graph_type(g))


class TestAutomorphisms(unittest.TestCase):
    """Test affine and brute force automorphism counts"""

    def test_affine_count(self):
        """Test p * k for the cycle and Paley graphs"""
        self.assertEqual(affine_automorphism_count(cycle_graph(7)), 14)
        self.assertEqual(affine_automorphism_count(paley_graph(13)), 78)

    def test_affine_needs_prime(self):
        """Test that composite n is rejected"""
        with self.assertRaises(NotPrime):
            affine_automorphism_count(cycle_graph(8))

    def test_summary_flag(self):
        """Test that the affine group is full only away from empty and complete graphs"""
        self.assertTrue(automorphism_summary(cycle_graph(7)).affine_is_full_aut)
        self.assertFalse(automorphism_summary(empty_graph(7)).affine_is_full_aut)
        self.assertFalse(automorphism_summary(complete_graph(7)).affine_is_full_aut)
        self.assertEqual(automorphism_summary(cycle_graph(5)).to_dict(),
                         {"affine_count": 10, "affine_is_full_aut": True})

    def test_brute_force_matches_affine_on_5(self):
        """Test Aut = affine group on 5 vertices, and S_5 for empty/complete"""
        for g in all_circulants(5):
            with self.subTest(s=g.connection_set):
                count = brute_force_automorphism_count(g, threads=2)
                if g.is_empty() or g.is_complete():
                    self.assertEqual(count, factorial(5))
                else:
                    self.assertEqual(count, affine_automorphism_count(g))
                    self.assertEqual(count, 5 * graph_type(g))

    def test_brute_force_matches_affine_on_7(self):
        """Test |Aut| = 7k on 7 vertices, and 7! for empty/complete"""
        for g in all_circulants(7):
            with self.subTest(s=g.connection_set):
                count = brute_force_automorphism_count(g, threads=2)
                if g.is_empty() or g.is_complete():
                    self.assertEqual(count, factorial(7))
                else:
                    self.assertEqual(count, 7 * graph_type(g))

    def test_brute_force_c4(self):
        """Test |Aut(C_4)| = 8"""
        self.assertEqual(brute_force_automorphism_count(cycle_graph(4)), 8)

    def test_brute_force_limit(self):
        """Test that large n is refused"""
        with self.assertRaises(RangeExceeded):
            brute_force_automorphism_count(cycle_graph(10))


if __name__ == "__main__":
    unittest.main()
