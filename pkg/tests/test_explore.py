"""
Tests for atlases and bound scans
"""

import io
import json
import unittest
from unittest.mock import MagicMock, patch

from circulant_qsym.cyclotomic import norm, roots_of_unity
from circulant_qsym.errors import InvalidParameter, LemmaViolation, NotPrime, RangeExceeded
from circulant_qsym.explore import (
    SCAN_CSV_COLUMNS, ScanRow, enumerate_atlas, minimal_uniform_prime, norm_certified,
    obstruction_primes, scan_bound_tightness, scan_primes, sum_set_norms,
    symmetric_connection_sets, validate_scan_parameters, write_atlas_csv,
    write_jsonl, write_scan_csv
)
from circulant_qsym.maximality import SolutionClass, check_2maximal_mod_p
from circulant_qsym.modular import subgroup_of_order


class TestAtlas(unittest.TestCase):
    """Test enumeration of circulant graphs up to multiplier equivalence"""

    def test_symmetric_sets_on_five(self):
        """Test the four symmetric sets on Z_5"""
        self.assertEqual(sorted(symmetric_connection_sets(5)), [(), (1, 2, 3, 4), (1, 4), (2, 3)])

    def test_atlas_on_five(self):
        """Test X_5, the C_5 class and K_5"""
        entries = enumerate_atlas(5)
        self.assertEqual([e.connection_set for e in entries], [(), (1, 4), (1, 2, 3, 4)])
        self.assertEqual([e.orbit_size for e in entries], [1, 2, 1])
        self.assertEqual([e.verdict for e in entries],
                         ["HasQuantumSymmetry", "NoQuantumSymmetry", "HasQuantumSymmetry"])
        self.assertTrue(entries[0].degenerate_spectrum)
        self.assertFalse(entries[1].degenerate_spectrum)

    def test_atlas_on_three(self):
        """Test that both graphs on 3 vertices have no quantum symmetry"""
        entries = enumerate_atlas(3)
        self.assertEqual(len(entries), 2)
        self.assertTrue(all(e.verdict == "NoQuantumSymmetry" for e in entries))

    def test_atlas_on_thirteen(self):
        """Test 14 orbits whose sizes sum to 64, independent of thread count"""
        single = enumerate_atlas(13, threads=1)
        pooled = enumerate_atlas(13, threads=4)
        self.assertEqual(len(single), 14)
        self.assertEqual(sum(e.orbit_size for e in single), 64)
        self.assertEqual([e.to_dict() for e in single], [e.to_dict() for e in pooled])

    def test_limits(self):
        """Test that composite or large p are refused"""
        with self.assertRaises(NotPrime):
            enumerate_atlas(9)
        with self.assertRaises(RangeExceeded):
            enumerate_atlas(37)

    def test_outputs_are_byte_stable(self):
        """Test that JSON lines and CSV are identical across runs"""
        first, second = io.StringIO(), io.StringIO()
        write_jsonl(enumerate_atlas(11), first)
        write_jsonl(enumerate_atlas(11), second)
        self.assertEqual(first.getvalue(), second.getvalue())
        self.assertEqual(json.loads(first.getvalue().splitlines()[0])["s"], [])

        table = io.StringIO()
        write_atlas_csv(enumerate_atlas(5), table)
        lines = table.getvalue().splitlines()
        self.assertEqual(lines[0], "p,s,orbit_size,k,is_2maximal,verdict,class_count,distinct_eigenvalues")
        self.assertEqual(lines[2], "5,1 4,2,2,True,NoQuantumSymmetry,3,3")


class TestSumSetNorms(unittest.TestCase):
    """Test the norm certificate for 2-maximality"""

    def test_k2_norms(self):
        """Test Sigma = {-3, -1, 1, 3}: differences 2, 4, 6"""
        self.assertEqual(sum_set_norms(2), (2, 4, 6))
        self.assertEqual(obstruction_primes(2), (2, 3))
        self.assertTrue(norm_certified(2, 5))

    def test_k4_p5_not_certified(self):
        """Test that p = 5 is an obstruction prime for k = 4"""
        self.assertIn(5, obstruction_primes(4))
        self.assertFalse(norm_certified(4, 5))
        self.assertFalse(norm_certified(4, 7))

    def test_orbit_reduction_matches_all_pairs(self):
        """Test that one norm per Galois orbit gives the same set as every pair of sums"""
        for k in (4, 6):
            roots = roots_of_unity(k)
            sums = list({a + b * 2 for a in roots for b in roots})
            expected = {norm(x - y) for x in sums for y in sums} - {0}
            with self.subTest(k=k):
                self.assertEqual(sum_set_norms(k), tuple(sorted(expected)))

    def test_certificate_is_sound(self):
        """Test that norm-certified primes are 2-maximal"""
        for k in (4, 6):
            for p in scan_primes(k, 400):
                if norm_certified(k, p):
                    with self.subTest(k=k, p=p):
                        report = check_2maximal_mod_p(subgroup_of_order(p, k), p)
                        self.assertTrue(report.is_2maximal)


class TestScan(unittest.TestCase):
    """Test scans of the 6^phi(k) bound"""

    def test_k2_up_to_100(self):
        """Test that every prime 5..97 is 2-maximal for k = 2"""
        rows = list(scan_bound_tightness(2, 100))
        self.assertEqual([r.p for r in rows], scan_primes(2, 100))
        self.assertEqual(rows[0].p, 5)
        self.assertTrue(all(r.is_2maximal for r in rows))

    def test_k4_below_bound_failure(self):
        """Test that p = 5 fails for k = 4 below the bound, with (4, 2, 2, 1) a genuine solution"""
        with self.assertLogs("circulant_qsym.explore", level="WARNING"):
            rows = list(scan_bound_tightness(4, 1000, threads=4))
        first = rows[0]
        self.assertEqual(first.p, 5)
        self.assertTrue(first.below_bound)
        self.assertFalse(first.is_2maximal)
        self.assertIsNotNone(first.genuine_violation)
        report = check_2maximal_mod_p(subgroup_of_order(5, 4), 5)
        genuine = [s.quadruple for s in report.of_class(SolutionClass.GENUINE)]
        self.assertIn((4, 2, 2, 1), genuine)
        self.assertTrue(all(r.is_2maximal for r in rows if r.p > 36))

    def test_no_failures_above_bound(self):
        """Test k = 2, 4, 6 for all primes up to 1000 above the bound"""
        for k in (2, 4, 6):
            with self.subTest(k=k):
                rows = list(scan_bound_tightness(k, 1000))
                self.assertTrue(all(r.is_2maximal for r in rows if not r.below_bound))

    def test_violation_above_bound_raises(self):
        """Test that a failure above the bound is an invariant breach"""
        fake = MagicMock(is_2maximal=False, first_genuine=(1, 2, 3, 4))
        with patch("circulant_qsym.explore.check_2maximal_mod_p", return_value=fake):
            with self.assertLogs("circulant_qsym.explore", level="CRITICAL"):
                with self.assertRaises(LemmaViolation):
                    list(scan_bound_tightness(2, 20))

    def test_norms_attached(self):
        """Test that rows carry the norm certificate on request"""
        rows = list(scan_bound_tightness(2, 30, with_norms=True))
        self.assertTrue(all(r.norm_certified for r in rows))
        self.assertIsNone(list(scan_bound_tightness(2, 30))[0].norm_certified)

    def test_minimal_uniform_prime(self):
        """Test the smallest prime from which every scanned prime is 2-maximal"""
        self.assertEqual(minimal_uniform_prime(2, 1000), 5)
        self.assertLessEqual(minimal_uniform_prime(4, 1000), 37)
        self.assertLessEqual(minimal_uniform_prime(6, 1000), 43)
        self.assertIsNone(minimal_uniform_prime(4, 4))

    def test_validation(self):
        """Test parameter checks"""
        with self.assertRaises(InvalidParameter):
            validate_scan_parameters(3, 100)
        with self.assertRaises(InvalidParameter):
            validate_scan_parameters(4, 1)


class TestScanOutput(unittest.TestCase):
    """Test scan row formats"""

    def test_csv(self):
        """Test the fixed column order and the violation column"""
        rows = [
            ScanRow(k=4, p=5, bound=36, below_bound=True, is_2maximal=False, genuine_violation=(1, 2, 1, 4)),
            ScanRow(k=4, p=37, bound=36, below_bound=False, is_2maximal=True),
        ]
        stream = io.StringIO()
        write_scan_csv(rows, stream)
        self.assertEqual(stream.getvalue().splitlines(), [
            ",".join(SCAN_CSV_COLUMNS),
            "4,5,36,True,False,1 2 1 4",
            "4,37,36,False,True,",
        ])

    def test_jsonl(self):
        """Test one JSON object per line"""
        stream = io.StringIO()
        write_jsonl([ScanRow(k=2, p=7, bound=6, below_bound=False, is_2maximal=True)], stream)
        self.assertEqual(json.loads(stream.getvalue()), {
            "k": 2, "p": 7, "bound": 6, "below_bound": False, "is_2maximal": True,
            "violation": None, "norm_certified": None,
        })


if __name__ == "__main__":
    unittest.main()
