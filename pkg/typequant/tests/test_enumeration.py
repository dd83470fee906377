# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import math
from unittest import TestCase

from typequant.cache import BinomialCache
from typequant.enumeration import code_rate
from typequant.enumeration import code_rate_exact
from typequant.enumeration import count_dual_points
from typequant.enumeration import count_types
from typequant.enumeration import dual_rate
from typequant.enumeration import max_n_for_rate
from typequant.enumeration import rank
from typequant.enumeration import unrank
from typequant.errors import EnumerationError
from typequant.lattice import enumerate_dual_points
from typequant.lattice import enumerate_types
from typequant.simplex import LatticeSpec
from typequant.simplex import TypePoint


class CountTestCase(TestCase):
    def test_counts(self):
        self.assertEqual(count_types(3, 2), 6)
        self.assertEqual(count_types(3, 3), 10)
        self.assertEqual(count_types(10, 100), 4263421511271)
        self.assertEqual(count_types(1, 5), 1)
        with self.assertRaises(EnumerationError):
            count_types(0, 2)

    def test_code_rate(self):
        self.assertEqual(code_rate(3, 2), 3)
        self.assertEqual(code_rate(3, 3), 4)
        self.assertEqual(code_rate(5, 8), 9)
        # exact power of two: C(3, 1) + 1 = 4 points for m=2, n=3
        self.assertEqual(code_rate(2, 3), 2)
        self.assertEqual(code_rate(2, 1), 1)

    def test_asymptotic_rate(self):
        m, n = 3, 10 ** 6
        expansion = (m - 1) * math.log2(n) - math.log2(math.factorial(m - 1))
        self.assertLess(abs(code_rate_exact(m, n) - expansion), 0.01)

    def test_dual_counts(self):
        self.assertEqual(count_dual_points(3, 2), 10)
        for m in (2, 3, 4, 5):
            for n in range(1, 6):
                points = list(enumerate_dual_points(LatticeSpec(m, n)))
                self.assertEqual(count_dual_points(m, n), len(points))
        self.assertEqual(dual_rate(3, 2), 4)


class RankTestCase(TestCase):
    def test_endpoints(self):
        for m in (2, 3, 7):
            for n in (1, 4, 9):
                self.assertEqual(rank(TypePoint([0] * (m - 1) + [n])), 0)
                self.assertEqual(rank(TypePoint([n] + [0] * (m - 1))), count_types(m, n) - 1)

    def test_small(self):
        ranks = [rank(point) for point in enumerate_types(LatticeSpec(3, 2))]
        self.assertEqual(ranks, [0, 1, 2, 3, 4, 5])
        self.assertEqual(unrank(0, 3, 2), TypePoint([0, 0, 2]))
        self.assertEqual(unrank(5, 3, 2), TypePoint([2, 0, 0]))

    def test_bijection(self):
        for m in range(2, 7):
            for n in range(1, 11):
                for expected, point in enumerate(enumerate_types(LatticeSpec(m, n))):
                    self.assertEqual(rank(point), expected)
                    self.assertEqual(unrank(expected, m, n), point)

    def test_accepts_sequences(self):
        self.assertEqual(rank([1, 1, 0]), 4)
        with self.assertRaises(EnumerationError):
            rank([1, -1, 2])

    def test_out_of_range(self):
        for index in (-1, 6, 10 ** 30):
            with self.assertRaises(EnumerationError):
                unrank(index, 3, 2)

    def test_big(self):
        m, n = 64, 10 ** 6
        counts = [n // m] * (m - 1)
        counts.append(n - sum(counts))
        point = TypePoint(counts)
        index = rank(point)
        self.assertLess(index, count_types(m, n))
        self.assertEqual(unrank(index, m, n), point)
        self.assertEqual(unrank(count_types(m, n) - 1, m, n), TypePoint([n] + [0] * (m - 1)))


class RateBudgetTestCase(TestCase):
    def test_small(self):
        self.assertEqual(max_n_for_rate(3, 3), 2)
        # C(6, 2) = 15 still fits in 4 bits
        self.assertEqual(max_n_for_rate(3, 4), 4)

    def test_fits_exactly(self):
        for m, budget in ((10, 40), (5, 48), (3, 17), (16, 64)):
            n = max_n_for_rate(m, budget)
            self.assertLessEqual(count_types(m, n), 2 ** budget)
            self.assertGreater(count_types(m, n + 1), 2 ** budget)

    def test_budget_too_small(self):
        with self.assertRaises(EnumerationError):
            max_n_for_rate(5, 2)
        with self.assertRaises(EnumerationError):
            max_n_for_rate(1, 8)


class BinomialCacheTestCase(TestCase):
    def test_values(self):
        cache = BinomialCache()
        self.assertEqual(cache(109, 9), math.comb(109, 9))
        self.assertEqual(cache(5, 7), 0)
        self.assertEqual(cache(5, -1), 0)

    def test_hits_and_symmetry(self):
        cache = BinomialCache()
        cache(10, 3)
        cache(10, 7)
        self.assertEqual(cache.misses, 1)
        self.assertEqual(cache.hits, 1)

    def test_eviction(self):
        cache = BinomialCache(limit=4)
        for n in range(10, 20):
            cache(n, 2)
        self.assertEqual(len(cache), 4)
        cache.clear()
        self.assertEqual(len(cache), 0)
        self.assertEqual(cache.misses, 0)
