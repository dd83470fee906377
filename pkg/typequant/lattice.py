# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
Nearest-point search in the type lattice Q_n, its biased variant and its
dual, plus enumeration of types, deep holes and dual points.

Tie-breaking is the same everywhere: rounding errors are ordered by
(error, coordinate index) ascending; an excess of Delta is removed from the
last Delta coordinates in that order and a deficit is filled from the first.
"""
from collections import namedtuple

import numpy as np

from .enumeration import count_types
from .errors import DistributionError
from .errors import EnumerationLimitError
from .errors import LatticeError
from .log import app_log
from .simplex import ALL_NORMS
from .simplex import batch_distances
from .simplex import Distribution
from .simplex import glue_matrix
from .simplex import L_NORMS
from .simplex import Norm
from .simplex import TypePoint
from .utils import chunked

# largest number of points any enumeration will materialize
ENUMERATION_GUARD = 10 ** 7

# holes with a coordinate above -HOLE_TOLERANCE are clamped into the simplex
HOLE_TOLERANCE = 1e-12

QuantizeResult = namedtuple(
    "QuantizeResult", ["point", "reconstruction", "distances", "delta_applied"]
)

DualPoint = namedtuple("DualPoint", ["base", "coset", "reconstruction", "distance"])


def _distribution(p, m):
    if not isinstance(p, Distribution):
        p = Distribution(p)
    if p.m != m:
        raise DistributionError("dimension mismatch: distribution has m=%i, lattice m=%i" % (p.m, m))
    return p


def _distances(p, q):
    d = batch_distances(p[None, :], q[None, :], ALL_NORMS)
    return {norm: float(value[0]) for norm, value in d.items()}


def _select(values, count, largest):
    """Indices of `count` entries at one end of the (value, index) order.

    Uses a partition, not a sort: O(m) expected.
    """
    m = values.size
    if count >= m:
        return np.arange(m)
    if largest:
        threshold = np.partition(values, m - count)[m - count]
        strict = np.flatnonzero(values > threshold)
        ties = np.flatnonzero(values == threshold)
        return np.concatenate([strict, ties[len(ties) - (count - len(strict)):]])
    threshold = np.partition(values, count - 1)[count - 1]
    strict = np.flatnonzero(values < threshold)
    ties = np.flatnonzero(values == threshold)
    return np.concatenate([strict, ties[: count - len(strict)]])


def _round_and_adjust(x, n):
    k = np.floor(x + 0.5).astype(np.int64)
    excess = int(k.sum()) - n
    if excess:
        errors = k - x
        if excess > 0:
            k[_select(errors, excess, largest=True)] -= 1
        else:
            k[_select(errors, -excess, largest=False)] += 1
    return k, excess


def _nearest_compositions(X, n, lower=None):
    """Row-wise nearest integer vectors k >= lower with sum(k) == n.

    Rows of X must sum to n. Rounding is followed by clamping at `lower` and
    unit moves that always pick the coordinate with the largest (for an
    excess) or smallest (for a deficit) rounding error, which is exact for
    the separable L1 and L2 objectives. Returns (K, excess before clamping).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    rows, m = X.shape
    floor = np.zeros(m, dtype=np.int64) if lower is None else np.asarray(lower, dtype=np.int64)
    K = np.floor(X + 0.5).astype(np.int64)
    raw_excess = K.sum(axis=1) - n
    np.maximum(K, floor, out=K)
    errors = K - X
    excess = K.sum(axis=1) - n
    while True:
        over = np.flatnonzero(excess > 0)
        under = np.flatnonzero(excess < 0)
        if not over.size and not under.size:
            break
        if over.size:
            candidates = np.where(K[over] > floor, errors[over], -np.inf)
            # among equal errors take the highest index
            cols = m - 1 - np.argmax(candidates[:, ::-1], axis=1)
            K[over, cols] -= 1
            errors[over, cols] -= 1
            excess[over] -= 1
        if under.size:
            cols = np.argmin(errors[under], axis=1)
            K[under, cols] += 1
            errors[under, cols] += 1
            excess[under] += 1
    return K, raw_excess


def _biased_targets(P, spec):
    # scaled so that the nearest type k of x is the nearest biased type of p
    beta = float(spec.beta)
    return (spec.n + beta * spec.m) * P - beta


def quantize(p, spec):
    """Nearest type of a plain type lattice, simultaneously under L1, L2 and L-infinity."""
    if spec.is_biased:
        raise LatticeError("lattice is biased (beta=%s); use quantize_biased" % spec.beta)
    p = _distribution(p, spec.m)
    k, excess = _round_and_adjust(spec.n * p.probs, spec.n)
    point = TypePoint(k, spec.n)
    q = spec.reconstruct_array(k)
    return QuantizeResult(point, Distribution(q), _distances(p.probs, q), excess)


def quantize_biased(p, spec):
    """Nearest biased type (k + beta) / (n + beta m)."""
    if not spec.is_biased:
        raise LatticeError("lattice has beta=0; use quantize")
    p = _distribution(p, spec.m)
    K, excess = _nearest_compositions(_biased_targets(p.probs, spec), spec.n)
    point = TypePoint(K[0], spec.n)
    q = spec.reconstruct_array(K[0])
    return QuantizeResult(point, Distribution(q), _distances(p.probs, q), int(excess[0]))


def quantize_batch(P, spec):
    """Quantize every row of a (rows, m) array; returns (counts, reconstructions)."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if P.shape[1] != spec.m:
        raise DistributionError("dimension mismatch: rows have m=%i, lattice m=%i" % (P.shape[1], spec.m))
    X = _biased_targets(P, spec) if spec.is_biased else spec.n * P
    K, _ = _nearest_compositions(X, spec.n)
    return K, spec.reconstruct_array(K)


def _cosets(spec):
    """(index, glue vector, lower bound on counts) for every usable coset.

    The translate k/n + v_i lies in the simplex iff the counts under the
    negative entries of v_i are all >= 1.
    """
    m, n = spec.m, spec.n
    glue = glue_matrix(m, n)
    for i in range(m):
        lower = np.zeros(m, dtype=np.int64)
        if i:
            if n < m - i:
                continue
            lower[i:] = 1
        yield i, glue[i], lower


def quantize_dual(p, spec, norm=Norm.L2):
    """Nearest point of the dual type lattice Q*_n, cosets compared under `norm`."""
    if spec.is_biased:
        raise LatticeError("the dual type lattice is defined for beta=0 only")
    norm = Norm.parse(norm)
    p = _distribution(p, spec.m)
    best = None
    for i, v, lower in _cosets(spec):
        K, _ = _nearest_compositions(spec.n * (p.probs - v), spec.n, lower)
        q = np.clip(K[0] / spec.n + v, 0.0, None)
        d = batch_distances(p.probs[None, :], q[None, :], (norm,))[norm][0]
        if best is None or d < best[3]:
            best = (K[0], i, q, float(d))
    k, coset, q, d = best
    return DualPoint(TypePoint(k, spec.n), coset, Distribution(q), d)


def quantize_dual_batch(P, spec, norm=Norm.L2):
    """Row-wise quantize_dual; returns (reconstructions, cosets)."""
    if spec.is_biased:
        raise LatticeError("the dual type lattice is defined for beta=0 only")
    norm = Norm.parse(norm)
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if P.shape[1] != spec.m:
        raise DistributionError("dimension mismatch: rows have m=%i, lattice m=%i" % (P.shape[1], spec.m))
    best_q = None
    for i, v, lower in _cosets(spec):
        K, _ = _nearest_compositions(spec.n * (P - v), spec.n, lower)
        Q = np.clip(K / spec.n + v, 0.0, None)
        d = batch_distances(P, Q, (norm,))[norm]
        if best_q is None:
            best_q, best_d = Q, d
            cosets = np.zeros(len(P), dtype=np.int64)
            continue
        better = d < best_d
        best_q[better] = Q[better]
        best_d = np.where(better, d, best_d)
        cosets[better] = i
    return best_q, cosets


def nearest(p, spec, dual=False, norm=Norm.L2):
    """Dispatch to the quantizer matching the lattice kind."""
    if dual:
        return quantize_dual(p, spec, norm)
    if spec.is_biased:
        return quantize_biased(p, spec)
    return quantize(p, spec)


def _check_guard(count, what):
    if count > ENUMERATION_GUARD:
        raise EnumerationLimitError(
            "refusing to enumerate %i %s (limit %i)" % (count, what, ENUMERATION_GUARD)
        )


def _compositions(n, m):
    # successor in lexicographic order: the last count varies fastest
    k = [0] * m
    k[-1] = n
    while True:
        yield tuple(k)
        j = m - 2
        tail = k[-1]
        while tail == 0:
            j -= 1
            if j < 0:
                return
            tail += k[j + 1]
        k[j] += 1
        for t in range(j + 1, m - 1):
            k[t] = 0
        k[-1] = tail - 1


def enumerate_types(spec):
    """All types of Q_n in lexicographic order."""
    _check_guard(count_types(spec.m, spec.n), "types")
    for counts in _compositions(spec.n, spec.m):
        yield TypePoint(counts, spec.n)


def type_table(spec):
    """All types of Q_n as the rows of an int array, in lexicographic order."""
    _check_guard(count_types(spec.m, spec.n), "types")
    return np.array(list(_compositions(spec.n, spec.m)), dtype=np.int64)


def iter_hole_batches(spec, batch_size=4096):
    """Arrays of in-simplex deep holes q + v_i, i = 1..m-1, clamped at zero."""
    if spec.is_biased:
        raise LatticeError("deep holes are enumerated for beta=0 only")
    m, n = spec.m, spec.n
    _check_guard(m * count_types(m, n), "holes")
    glue = glue_matrix(m, n)[1:]
    for block in chunked(_compositions(n, m), batch_size):
        types = np.array(block, dtype=float) / n
        holes = (types[:, None, :] + glue[None, :, :]).reshape(-1, m)
        holes = holes[holes.min(axis=1) >= -HOLE_TOLERANCE]
        if len(holes):
            yield np.clip(holes, 0.0, None)


def enumerate_holes(spec):
    for holes in iter_hole_batches(spec):
        for h in holes:
            yield Distribution(h)


def enumerate_dual_points(spec):
    """Every point of Q*_n as a DualPoint (distance field 0)."""
    if spec.is_biased:
        raise LatticeError("the dual type lattice is defined for beta=0 only")
    m, n = spec.m, spec.n
    _check_guard(m * count_types(m, n), "dual points")
    cosets = list(_cosets(spec))
    for counts in _compositions(n, m):
        k = np.array(counts, dtype=np.int64)
        for i, v, lower in cosets:
            if np.all(k >= lower):
                q = np.clip(k / n + v, 0.0, None)
                yield DualPoint(TypePoint(counts, n), i, Distribution(q), 0.0)


def empirical_radius(spec, norms=L_NORMS):
    """Largest distance from a deep hole to its nearest type, per norm."""
    norms = tuple(Norm.parse(norm) for norm in norms)
    radius = dict.fromkeys(norms, 0.0)
    count = 0
    for holes in iter_hole_batches(spec):
        _, Q = quantize_batch(holes, spec)
        d = batch_distances(holes, Q, norms)
        for norm in norms:
            radius[norm] = max(radius[norm], float(d[norm].max()))
        count += len(holes)
    app_log.debug("measured %i in-simplex holes of %r", count, spec)
    return radius
