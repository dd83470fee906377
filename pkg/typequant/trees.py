# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
Baseline quantizers that replace p by the dyadic vector q_i = 2^-l_i of a
prefix code built for p.

q is not renormalized: when the Kraft sum is below one it is a
subnormalized vector and reconstructions are returned as plain arrays.
"""
import heapq
import math
from collections import namedtuple
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DistributionError
from .simplex import ALL_NORMS
from .simplex import batch_distances
from .simplex import Distribution
from .simplex import LN2
from .simplex import Norm

# weight given to zero-probability symbols before the Huffman merge
ZERO_WEIGHT = 1e-12


class Scheme(Enum):
    TYPE_LATTICE = "type_lattice"
    TYPE_LATTICE_BIASED = "type_lattice_biased"
    TYPE_LATTICE_DUAL = "type_lattice_dual"
    HUFFMAN = "huffman"
    GILBERT_MOORE = "gilbert_moore"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("-", "_")
        try:
            return cls(text)
        except ValueError:
            raise DistributionError(
                "unknown scheme %r, expected one of %s"
                % (value, ", ".join(s.value for s in cls))
            )

    @property
    def is_tree(self):
        return self in (Scheme.HUFFMAN, Scheme.GILBERT_MOORE)


class CodeLengths(object):
    """Prefix-code lengths l_1..l_m, checked against the Kraft inequality."""

    __slots__ = ("_lengths",)

    def __init__(self, lengths):
        lengths = tuple(int(l) for l in lengths)
        if len(lengths) < 2:
            raise DistributionError("a code needs at least 2 symbols, got %i" % len(lengths))
        if min(lengths) < 1:
            raise DistributionError("code lengths must be >= 1, got %r" % (lengths,))
        self._lengths = lengths
        if self.kraft_sum > 1:
            raise DistributionError("lengths %r violate the Kraft inequality" % (lengths,))

    @property
    def lengths(self):
        return self._lengths

    @property
    def kraft_sum(self):
        """Exact sum of 2^-l_i."""
        top = max(self._lengths)
        return Fraction(sum(1 << (top - l) for l in self._lengths), 1 << top)

    @property
    def is_complete(self):
        return self.kraft_sum == 1

    def induced(self):
        return np.ldexp(1.0, -np.array(self._lengths))

    def expected_length(self, p):
        p = p.probs if isinstance(p, Distribution) else np.asarray(p, dtype=float)
        return float(np.dot(p, self._lengths))

    def __len__(self):
        return len(self._lengths)

    def __iter__(self):
        return iter(self._lengths)

    def __eq__(self, other):
        if isinstance(other, CodeLengths):
            return self._lengths == other._lengths
        return self._lengths == tuple(other)

    def __hash__(self):
        return hash(self._lengths)

    def __repr__(self):
        return "CodeLengths(%r)" % (list(self._lengths),)


TreeQuantization = namedtuple("TreeQuantization", ["lengths", "reconstruction", "distances"])

TreeRate = namedtuple("TreeRate", ["rate", "rate_lo", "rate_hi"])


def _probs(p):
    if not isinstance(p, Distribution):
        p = Distribution(p)
    return p.probs


def huffman_lengths(probs):
    """Huffman code lengths; ties merge the lowest original index first."""
    # (weight, smallest symbol in the subtree, symbols)
    heap = [(w if w > 0 else ZERO_WEIGHT, i, (i,)) for i, w in enumerate(probs)]
    heapq.heapify(heap)
    lengths = [0] * len(heap)
    while len(heap) > 1:
        w1, i1, s1 = heapq.heappop(heap)
        w2, i2, s2 = heapq.heappop(heap)
        for s in s1 + s2:
            lengths[s] += 1
        heapq.heappush(heap, (w1 + w2, min(i1, i2), s1 + s2))
    return lengths


def gilbert_moore_lengths(P):
    """l_i = ceil(-log2 p_i) + 1, row-wise for a 2-D array."""
    P = np.asarray(P, dtype=float)
    if np.any(P <= 0):
        raise DistributionError("Gilbert-Moore lengths need every p_i > 0")
    return np.ceil(-np.log2(P)).astype(np.int64) + 1


def _distances(p, q):
    d = batch_distances(p[None, :], q[None, :], ALL_NORMS)
    return {norm: float(value[0]) for norm, value in d.items()}


def huffman_quantize(p):
    """Replace p by the dyadic distribution of its Huffman code."""
    probs = _probs(p)
    lengths = CodeLengths(huffman_lengths(probs))
    q = lengths.induced()
    return TreeQuantization(lengths, q, _distances(probs, q))


def gilbert_moore_quantize(p):
    """Replace p by 2^-l for the Gilbert-Moore code lengths of p."""
    probs = _probs(p)
    lengths = CodeLengths(gilbert_moore_lengths(probs))
    q = lengths.induced()
    return TreeQuantization(lengths, q, _distances(probs, q))


def huffman_quantize_batch(P):
    P = np.atleast_2d(np.asarray(P, dtype=float))
    L = np.array([huffman_lengths(row) for row in P], dtype=np.int64)
    return np.ldexp(1.0, -L)


def gilbert_moore_quantize_batch(P):
    P = np.atleast_2d(np.asarray(P, dtype=float))
    return np.ldexp(1.0, -gilbert_moore_lengths(P))


def tree_quantize(p, scheme):
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.HUFFMAN:
        return huffman_quantize(p)
    if scheme is Scheme.GILBERT_MOORE:
        return gilbert_moore_quantize(p)
    raise DistributionError("%s is not a tree scheme" % scheme.name)


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


def tree_rate(m, scheme):
    """Bits needed to name one reconstruction of a tree scheme.

    Gilbert-Moore trees are counted exactly by Catalan(m-1). The Huffman
    count is only bracketed, by m!/2 below and m! Catalan(m-1) above; the
    rate is the midpoint of the two logarithms.
    """
    scheme = Scheme.parse(scheme)
    if int(m) != m or m < 2:
        raise DistributionError("alphabet size m must be an integer >= 2, got %r" % (m,))
    m = int(m)
    if scheme is Scheme.GILBERT_MOORE:
        rate = math.log2(catalan(m - 1))
        return TreeRate(rate, rate, rate)
    if scheme is Scheme.HUFFMAN:
        lo = math.log2(math.factorial(m) // 2)
        hi = math.log2(math.factorial(m) * catalan(m - 1))
        return TreeRate(0.5 * (lo + hi), lo, hi)
    raise DistributionError("%s is not a tree scheme" % scheme.name)


def proven_bounds(scheme):
    """Worst-case distances guaranteed for a tree scheme, per norm.

    The L2 bound follows from ||x||_2^2 <= ||x||_1 ||x||_inf.
    """
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.HUFFMAN:
        bounds = {Norm.KL: 1.0, Norm.L1: math.sqrt(2.0 * LN2), Norm.LINF: 0.5}
    elif scheme is Scheme.GILBERT_MOORE:
        bounds = {Norm.KL: 2.0, Norm.L1: 2.0 * math.sqrt(LN2), Norm.LINF: 1.0}
    else:
        raise DistributionError("no proven bounds for %s" % scheme.name)
    bounds[Norm.L2] = math.sqrt(bounds[Norm.L1] * bounds[Norm.LINF])
    return bounds
