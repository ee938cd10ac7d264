"""
Tests for residue arithmetic and subgroups of Z_n*
"""

import unittest

from circulant_qsym.errors import NotASubgroup, NotDivisor, NotPrime, OrderMismatch
from circulant_qsym.modular import (
    Residue, SubgroupOfUnits, euler_phi, even_subgroups, is_prime,
    primitive_root, subgroup_of_order, subgroups_of_units, unit_group
)


class TestResidue(unittest.TestCase):
    """Test canonical residues and their arithmetic"""

    def test_value_is_canonical(self):
        """Test that values are reduced into [0, n)"""
        self.assertEqual(Residue(-1, 7).value, 6)
        self.assertEqual(Residue(15, 7), Residue(1, 7))

    def test_arithmetic(self):
        """Test addition, subtraction, multiplication and negation"""
        a, b = Residue(5, 7), Residue(4, 7)
        self.assertEqual(a + b, Residue(2, 7))
        self.assertEqual(a - b, Residue(1, 7))
        self.assertEqual(a * b, Residue(6, 7))
        self.assertEqual(-a, Residue(2, 7))
        self.assertEqual(a + 3, Residue(1, 7))
        self.assertEqual(2 * a, Residue(3, 7))

    def test_inverse(self):
        """Test modular inverses of units"""
        self.assertEqual(Residue(3, 7).inverse(), Residue(5, 7))
        self.assertFalse(Residue(2, 4).is_unit())

    def test_mixed_moduli_rejected(self):
        """Test that residues with different moduli do not combine"""
        with self.assertRaises(OrderMismatch):
            Residue(1, 5) + Residue(1, 7)


class TestUnitGroup(unittest.TestCase):
    """Test primes, totients and unit groups"""

    def test_is_prime(self):
        """Test primality at the edges"""
        self.assertFalse(is_prime(0))
        self.assertFalse(is_prime(1))
        self.assertTrue(is_prime(2))
        self.assertTrue(is_prime(97))
        self.assertFalse(is_prime(91))

    def test_euler_phi(self):
        """Test totients"""
        for n, expected in ((1, 1), (4, 2), (7, 6), (12, 4), (16, 8)):
            with self.subTest(n=n):
                self.assertEqual(euler_phi(n), expected)

    def test_unit_group(self):
        """Test listing units, including the n = 1 case"""
        self.assertEqual(unit_group(1), (0,))
        self.assertEqual(unit_group(12), (1, 5, 7, 11))
        self.assertEqual(len(unit_group(13)), 12)

    def test_primitive_root(self):
        """Test smallest primitive roots"""
        for p, g in ((2, 1), (3, 2), (5, 2), (7, 3), (23, 5), (41, 6)):
            with self.subTest(p=p):
                self.assertEqual(primitive_root(p).value, g)

    def test_primitive_root_needs_prime(self):
        """Test that composite moduli are rejected"""
        with self.assertRaises(NotPrime):
            primitive_root(9)


class TestSubgroups(unittest.TestCase):
    """Test subgroups of Z_p*"""

    def test_subgroup_of_order(self):
        """Test the unique subgroup of each order"""
        self.assertEqual(subgroup_of_order(13, 4).elements, (1, 5, 8, 12))
        self.assertEqual(subgroup_of_order(7, 2).elements, (1, 6))
        self.assertEqual(subgroup_of_order(5, 4).elements, (1, 2, 3, 4))

    def test_subgroup_order_must_divide(self):
        """Test that k must divide p - 1"""
        with self.assertRaises(NotDivisor):
            subgroup_of_order(11, 4)

    def test_all_subgroups(self):
        """Test one subgroup per divisor of p - 1"""
        orders = [group.order for group in subgroups_of_units(13)]
        self.assertEqual(orders, [1, 2, 3, 4, 6, 12])
        self.assertEqual([g.order for g in even_subgroups(13)], [2, 4, 6, 12])

    def test_invalid_subsets_rejected(self):
        """Test that non-subgroups raise NotASubgroup"""
        for elements in ((1, 2), (2, 4), (), (1, 3, 5, 6)):
            with self.subTest(elements=elements):
                with self.assertRaises(NotASubgroup):
                    SubgroupOfUnits(7, elements)

    def test_generated_by(self):
        """Test closure of generators"""
        self.assertEqual(SubgroupOfUnits.generated_by(13, [5]).elements, (1, 5, 8, 12))
        self.assertEqual(SubgroupOfUnits.generated_by(7, [3]).order, 6)

    def test_cosets_partition_units(self):
        """Test that cosets partition Z_p* into pieces of equal size"""
        for p in (5, 7, 11, 13, 17):
            for group in subgroups_of_units(p):
                with self.subTest(p=p, k=group.order):
                    cosets = group.cosets()
                    self.assertEqual(len(cosets), (p - 1) // group.order)
                    members = sorted(x for c in cosets for x in c)
                    self.assertEqual(members, list(range(1, p)))

    def test_membership(self):
        """Test membership for ints and residues"""
        E = subgroup_of_order(13, 4)
        self.assertIn(5, E)
        self.assertIn(-1, E)
        self.assertIn(Residue(8, 13), E)
        self.assertNotIn(Residue(8, 11), E)
        self.assertTrue(E.is_even())
        self.assertFalse(subgroup_of_order(13, 3).is_even())


if __name__ == "__main__":
    unittest.main()
