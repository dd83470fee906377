# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
Lexicographic ranking of types, point counts and code rates.

Order convention: the first count is the most significant coordinate and
ranks ascend, so (0, ..., 0, n) has rank 0 and (n, 0, ..., 0) has rank
C(n+m-1, m-1) - 1. All counts and ranks are exact Python ints.
"""
import math

from .cache import BinomialCache
from .errors import EnumerationError
from .simplex import TypePoint

binomial = BinomialCache()


def count_types(m, n):
    """|Q_n| = C(n+m-1, m-1), the number of compositions of n into m parts."""
    if m < 1 or n < 0:
        raise EnumerationError("count_types needs m >= 1 and n >= 0, got m=%r, n=%r" % (m, n))
    return binomial(n + m - 1, m - 1)


def count_dual_points(m, n):
    """|Q*_n|: types plus every glue-vector translate that stays in the simplex.

    Coset i > 0 keeps a type exactly when its last m-i counts are all >= 1.
    """
    if m < 2 or n < 1:
        raise EnumerationError("count_dual_points needs m >= 2 and n >= 1")
    total = count_types(m, n)
    for i in range(1, m):
        spare = n - (m - i)
        if spare >= 0:
            total += count_types(m, spare)
    return total


def _bits(count):
    # ceil(log2(count)) without floating point
    return (count - 1).bit_length()


def code_rate(m, n):
    """Fixed code length in bits for an index of Q_n."""
    _check_lattice(m, n)
    return _bits(count_types(m, n))


def code_rate_exact(m, n):
    """Unrounded log2 |Q_n|."""
    _check_lattice(m, n)
    return math.log2(count_types(m, n))


def dual_rate(m, n):
    _check_lattice(m, n)
    return _bits(count_dual_points(m, n))


def _check_lattice(m, n):
    if m < 2 or n < 1:
        raise EnumerationError("lattice needs m >= 2 and n >= 1, got m=%r, n=%r" % (m, n))


def _below(remaining, parts, k):
    """Types whose next count is < k, given `remaining` mass over `parts` coordinates.

    This is sum_{v<k} C(remaining - v + parts - 2, parts - 2): the inner sum of
    the nested ranking formula, collapsed with the hockey-stick identity.
    """
    s = parts - 1
    return binomial(remaining + s, s) - binomial(remaining - k + s, s)


def rank(point):
    """Lexicographic index of a type among all types of its lattice."""
    if not isinstance(point, TypePoint):
        try:
            point = TypePoint(point)
        except ValueError as e:
            raise EnumerationError("invalid type: %s" % e)
    counts = point.counts
    m = len(counts)
    index = 0
    remaining = point.n
    for j in range(m - 1):
        k = counts[j]
        index += _below(remaining, m - j, k)
        remaining -= k
    return index


def unrank(index, m, n):
    """Inverse of rank: the type of Q_n with the given index."""
    _check_lattice(m, n)
    index = int(index)
    total = count_types(m, n)
    if not 0 <= index < total:
        raise EnumerationError("index out of range: %i not in [0, %i)" % (index, total))
    counts = []
    remaining = n
    for j in range(m - 1):
        parts = m - j
        # largest k with _below(k) <= index; _below is increasing in k
        lo, hi = 0, remaining
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _below(remaining, parts, mid) <= index:
                lo = mid
            else:
                hi = mid - 1
        index -= _below(remaining, parts, lo)
        counts.append(lo)
        remaining -= lo
    counts.append(remaining)
    return TypePoint(counts, n)


def max_n_for_rate(m, budget):
    """Largest n whose code rate fits in `budget` bits."""
    if m < 2:
        raise EnumerationError("alphabet size must be >= 2, got %r" % (m,))
    budget = int(budget)
    if code_rate(m, 1) > budget:
        raise EnumerationError(
            "rate budget %i bits is too small: Q_1 needs %i bits for m=%i"
            % (budget, code_rate(m, 1), m)
        )
    lo, hi = 1, 2
    while code_rate(m, hi) <= budget:
        lo, hi = hi, hi * 2
    # code_rate(m, lo) fits, code_rate(m, hi) does not
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if code_rate(m, mid) <= budget:
            lo = mid
        else:
            hi = mid
    return lo
