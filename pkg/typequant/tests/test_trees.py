# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import itertools
import math
from fractions import Fraction
from unittest import TestCase

import numpy as np

from typequant.errors import DistributionError
from typequant.simplex import ALL_NORMS
from typequant.simplex import batch_distances
from typequant.simplex import LN2
from typequant.simplex import Norm
from typequant.trees import catalan
from typequant.trees import CodeLengths
from typequant.trees import gilbert_moore_lengths
from typequant.trees import gilbert_moore_quantize
from typequant.trees import gilbert_moore_quantize_batch
from typequant.trees import huffman_lengths
from typequant.trees import huffman_quantize
from typequant.trees import huffman_quantize_batch
from typequant.trees import proven_bounds
from typequant.trees import Scheme
from typequant.trees import tree_quantize
from typequant.trees import tree_rate

from .base import random_distributions


class HuffmanTestCase(TestCase):
    def test_dyadic_fixed_point(self):
        result = huffman_quantize([0.5, 0.25, 0.25])
        self.assertEqual(result.lengths, (1, 2, 2))
        np.testing.assert_array_equal(result.reconstruction, [0.5, 0.25, 0.25])
        self.assertEqual(result.distances[Norm.KL], 0)
        self.assertEqual(huffman_quantize([0.25] * 4).lengths, (2, 2, 2, 2))

    def test_skewed(self):
        result = huffman_quantize([0.9, 0.05, 0.05])
        self.assertEqual(result.lengths, (1, 2, 2))
        self.assertAlmostEqual(result.distances[Norm.KL], 0.5310, places=4)

    def test_zero_probability(self):
        result = huffman_quantize([0.5, 0.5, 0.0])
        self.assertTrue(result.lengths.is_complete)
        self.assertEqual(len(result.lengths), 3)
        self.assertTrue(math.isfinite(result.distances[Norm.KL]))

    def test_batch_matches_scalar(self):
        P = random_distributions(11, 300, 6)
        Q = huffman_quantize_batch(P)
        for p, q in zip(P, Q):
            np.testing.assert_array_equal(huffman_quantize(p).reconstruction, q)

    def test_lengths_are_optimal(self):
        candidates = [
            lengths
            for lengths in itertools.product(range(1, 9), repeat=4)
            if sum(Fraction(1, 2 ** l) for l in lengths) <= 1
        ]
        L = np.array(candidates, dtype=float)
        for p in random_distributions(12, 200, 4):
            best = float((L @ p).min())
            found = CodeLengths(huffman_lengths(p)).expected_length(p)
            self.assertLessEqual(found, best + 1e-12)

    def test_pinsker_consistency(self):
        P = random_distributions(13, 10 ** 4, 5)
        d = batch_distances(P, huffman_quantize_batch(P), (Norm.L1, Norm.KL))
        self.assertTrue(np.all(d[Norm.L1] <= np.sqrt(2 * LN2 * d[Norm.KL]) + 1e-12))


class GilbertMooreTestCase(TestCase):
    def test_examples(self):
        result = gilbert_moore_quantize([0.5, 0.5])
        self.assertEqual(result.lengths, (2, 2))
        np.testing.assert_array_equal(result.reconstruction, [0.25, 0.25])
        self.assertAlmostEqual(result.distances[Norm.KL], 1.0, places=12)

        result = gilbert_moore_quantize([0.9, 0.05, 0.05])
        self.assertEqual(result.lengths, (2, 6, 6))
        expected = 0.9 * math.log2(0.9 / 0.25) + 0.1 * math.log2(0.05 / 2 ** -6)
        self.assertAlmostEqual(result.distances[Norm.KL], expected, places=12)

    def test_zero_probability(self):
        with self.assertRaises(DistributionError):
            gilbert_moore_quantize([0.5, 0.5, 0.0])

    def test_kraft(self):
        P = random_distributions(14, 10 ** 5, 5)
        L = gilbert_moore_lengths(P)
        self.assertTrue(np.all(np.ldexp(1.0, -L).sum(axis=1) <= 1))

    def test_batch_matches_scalar(self):
        P = random_distributions(15, 100, 4)
        Q = gilbert_moore_quantize_batch(P)
        for p, q in zip(P, Q):
            np.testing.assert_array_equal(gilbert_moore_quantize(p).reconstruction, q)


def test_bounds_hold():
    for m in (3, 5, 10):
        P = random_distributions(m, 10 ** 5, m)
        for scheme, quantizer in (
            (Scheme.HUFFMAN, huffman_quantize_batch),
            (Scheme.GILBERT_MOORE, gilbert_moore_quantize_batch),
        ):
            d = batch_distances(P, quantizer(P), ALL_NORMS)
            for norm, bound in proven_bounds(scheme).items():
                assert d[norm].max() <= bound, (m, scheme, norm)


def test_proven_bounds():
    huffman = proven_bounds("huffman")
    assert huffman[Norm.KL] == 1
    assert abs(huffman[Norm.L1] - 1.1774) < 1e-4
    assert huffman[Norm.LINF] == 0.5
    gm = proven_bounds(Scheme.GILBERT_MOORE)
    assert abs(gm[Norm.L1] - 1.6651) < 1e-4
    assert gm[Norm.KL] == 2


class CodeLengthsTestCase(TestCase):
    def test_kraft(self):
        self.assertTrue(CodeLengths([1, 2, 2]).is_complete)
        self.assertEqual(CodeLengths([2, 6, 6]).kraft_sum, Fraction(9, 32))
        for lengths in ([1, 1, 1], [0, 1], [3]):
            with self.assertRaises(DistributionError):
                CodeLengths(lengths)

    def test_induced(self):
        np.testing.assert_array_equal(CodeLengths([1, 3, 3, 2]).induced(), [0.5, 0.125, 0.125, 0.25])
        self.assertEqual(CodeLengths([1, 2, 2]).expected_length([0.5, 0.25, 0.25]), 1.5)


class TreeRateTestCase(TestCase):
    def test_gilbert_moore(self):
        self.assertEqual(tree_rate(3, Scheme.GILBERT_MOORE).rate, 1.0)
        self.assertAlmostEqual(tree_rate(5, "gilbert-moore").rate, math.log2(14))
        self.assertEqual([catalan(k) for k in range(6)], [1, 1, 2, 5, 14, 42])

    def test_huffman_interval(self):
        rate = tree_rate(5, Scheme.HUFFMAN)
        self.assertAlmostEqual(rate.rate_lo, math.log2(60))
        self.assertAlmostEqual(rate.rate_hi, math.log2(120 * 14))
        self.assertAlmostEqual(rate.rate, 0.5 * (math.log2(60) + math.log2(1680)))

    def test_rejects(self):
        with self.assertRaises(DistributionError):
            tree_rate(1, Scheme.HUFFMAN)
        with self.assertRaises(DistributionError):
            tree_rate(4, Scheme.TYPE_LATTICE)
        with self.assertRaises(DistributionError):
            tree_quantize([0.5, 0.5], "type_lattice")
        with self.assertRaises(DistributionError):
            Scheme.parse("arithmetic")

    def test_dispatch(self):
        self.assertEqual(tree_quantize([0.5, 0.5], "huffman").lengths, (1, 1))
        self.assertTrue(Scheme.parse("gilbert-moore").is_tree)
        self.assertFalse(Scheme.TYPE_LATTICE_DUAL.is_tree)
