# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
Points of the probability simplex, distance measures, glue vectors and the
closed-form covering quantities of the type lattice.
"""
import math
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DistributionError
from .errors import LatticeError

# |sum(p) - 1| accepted without renormalization
SIMPLEX_TOLERANCE = 1e-9

LN2 = math.log(2.0)


class Norm(Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"
    KL = "kl"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DistributionError(
                "unknown norm %r, expected one of %s"
                % (value, ", ".join(n.value for n in cls))
            )

    @property
    def is_metric(self):
        return self is not Norm.KL


L_NORMS = (Norm.L1, Norm.L2, Norm.LINF)
ALL_NORMS = L_NORMS + (Norm.KL,)


def _frozen(array):
    array.setflags(write=False)
    return array


class Distribution(object):
    """A point of the unit simplex: m >= 2 nonnegative reals summing to one.

    Parameters
    ----------
    probs: sequence of float
        Probabilities. Must sum to 1 within SIMPLEX_TOLERANCE unless
        `renormalize` is set.
    renormalize: bool
        Divide by the total first, for raw histogram counts.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs, renormalize=False):
        try:
            probs = np.array(probs, dtype=float)
        except (TypeError, ValueError) as e:
            raise DistributionError("not a numeric vector: %s" % e)
        if probs.ndim != 1:
            raise DistributionError("expected a vector, got shape %s" % (probs.shape,))
        if probs.size < 2:
            raise DistributionError("alphabet size must be at least 2, got %i" % probs.size)
        if not np.all(np.isfinite(probs)):
            raise DistributionError("probabilities must be finite")
        if np.any(probs < 0):
            raise DistributionError("probabilities must be nonnegative")
        total = probs.sum()
        if renormalize:
            if total <= 0:
                raise DistributionError("cannot renormalize an all-zero histogram")
            probs = probs / total
        elif abs(total - 1.0) > SIMPLEX_TOLERANCE:
            raise DistributionError(
                "probabilities sum to %r, not 1 (use renormalize for histograms)" % total
            )
        self._probs = _frozen(probs)

    @property
    def probs(self):
        return self._probs

    @property
    def m(self):
        return self._probs.size

    def __len__(self):
        return self._probs.size

    def __iter__(self):
        return iter(self._probs.tolist())

    def __getitem__(self, i):
        return self._probs[i]

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self._probs, other._probs)

    def __hash__(self):
        return hash(self._probs.tobytes())

    def __repr__(self):
        return "Distribution(%s)" % ", ".join("%.6g" % x for x in self._probs)


class TypePoint(object):
    """A point of the type lattice Q_n: counts k_i >= 0 with sum(k) == n."""

    __slots__ = ("_counts", "_n")

    def __init__(self, counts, n=None):
        counts = tuple(int(k) for k in counts)
        if len(counts) < 2:
            raise LatticeError("a type needs at least 2 counts, got %i" % len(counts))
        if any(k < 0 for k in counts):
            raise LatticeError("counts must be nonnegative: %s" % (counts,))
        total = sum(counts)
        if n is None:
            n = total
        if n < 1 or total != n:
            raise LatticeError("counts %s do not sum to n=%s" % (counts, n))
        self._counts = counts
        self._n = n

    @property
    def counts(self):
        return self._counts

    @property
    def n(self):
        return self._n

    @property
    def m(self):
        return len(self._counts)

    def as_array(self):
        return np.array(self._counts, dtype=np.int64)

    def as_distribution(self):
        return Distribution(self.as_array() / self._n)

    def __iter__(self):
        return iter(self._counts)

    def __eq__(self, other):
        if not isinstance(other, TypePoint):
            return NotImplemented
        return self._counts == other._counts

    def __lt__(self, other):
        # lexicographic, first count most significant
        return self._counts < other._counts

    def __hash__(self):
        return hash(self._counts)

    def __repr__(self):
        return "TypePoint(%s)" % (self._counts,)


class LatticeSpec(object):
    """Parameters (m, n, beta) of a plain (beta=0) or biased type lattice.

    A type k reconstructs to q_i = (k_i + beta) / (n + beta * m).
    """

    __slots__ = ("_m", "_n", "_beta")

    def __init__(self, m, n, beta=0):
        if int(m) != m or m < 2:
            raise LatticeError("alphabet size m must be an integer >= 2, got %r" % (m,))
        if int(n) != n or n < 1:
            raise LatticeError("denominator n must be an integer >= 1, got %r" % (n,))
        try:
            beta = Fraction(beta)
        except (TypeError, ValueError):
            raise LatticeError("bias beta must be a number, got %r" % (beta,))
        if beta < 0:
            raise LatticeError("bias beta must be >= 0, got %s" % beta)
        self._m = int(m)
        self._n = int(n)
        self._beta = beta

    @property
    def m(self):
        return self._m

    @property
    def n(self):
        return self._n

    @property
    def beta(self):
        return self._beta

    @property
    def is_biased(self):
        return self._beta != 0

    @property
    def point_count(self):
        from .enumeration import count_types

        return count_types(self._m, self._n)

    @property
    def rate(self):
        from .enumeration import code_rate

        return code_rate(self._m, self._n)

    def check_point(self, point):
        if point.m != self._m or point.n != self._n:
            raise LatticeError(
                "type with m=%i, n=%i does not belong to lattice m=%i, n=%i"
                % (point.m, point.n, self._m, self._n)
            )

    def reconstruct_array(self, counts):
        """Map integer counts (any leading shape, last axis m) to probabilities."""
        beta = float(self._beta)
        return (np.asarray(counts, dtype=float) + beta) / (self._n + beta * self._m)

    def reconstruct(self, point):
        self.check_point(point)
        return Distribution(self.reconstruct_array(point.counts))

    def __eq__(self, other):
        if not isinstance(other, LatticeSpec):
            return NotImplemented
        return (self._m, self._n, self._beta) == (other._m, other._n, other._beta)

    def __hash__(self):
        return hash((self._m, self._n, self._beta))

    def __repr__(self):
        return "LatticeSpec(m=%i, n=%i, beta=%s)" % (self._m, self._n, self._beta)


def _as_vector(p):
    if isinstance(p, Distribution):
        return p.probs
    if isinstance(p, TypePoint):
        return p.as_distribution().probs
    return np.asarray(p, dtype=float)


def distance(p, q, norm):
    """Distance from p to q under `norm`.

    KL is the directed divergence sum p_i log2(p_i / q_i), with 0 log 0 = 0 and
    +inf when some p_i > 0 meets q_i = 0. q may be a subnormalized vector
    (tree quantizers induce one).
    """
    norm = Norm.parse(norm)
    p = _as_vector(p)
    q = _as_vector(q)
    if p.shape != q.shape:
        raise DistributionError(
            "dimension mismatch: %s vs %s" % (p.shape[-1:], q.shape[-1:])
        )
    return float(batch_distances(p[None, :], q[None, :], (norm,))[norm][0])


def batch_distances(P, Q, norms=ALL_NORMS):
    """Row-wise distances between two (rows, m) arrays, one array per norm."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.shape != Q.shape:
        raise DistributionError("dimension mismatch: %s vs %s" % (P.shape, Q.shape))
    diff = P - Q
    result = {}
    for norm in norms:
        norm = Norm.parse(norm)
        if norm is Norm.L1:
            result[norm] = np.abs(diff).sum(axis=-1)
        elif norm is Norm.L2:
            result[norm] = np.sqrt((diff * diff).sum(axis=-1))
        elif norm is Norm.LINF:
            result[norm] = np.abs(diff).max(axis=-1)
        else:
            result[norm] = _kl_divergence(P, Q)
    return result


def _kl_divergence(P, Q):
    positive = P > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(positive, P * np.log2(np.where(positive, P, 1.0) / Q), 0.0)
    terms[positive & (Q <= 0)] = np.inf
    return terms.sum(axis=-1)


def glue_vector(m, n, i):
    """Glue vector v_i of the type lattice: (1/n)[(m-i)/m x i, -i/m x (m-i)]."""
    if not 0 <= i < m:
        raise LatticeError("glue vector index %r out of range 0..%i" % (i, m - 1))
    v = np.empty(m)
    v[:i] = (m - i) / m
    v[i:] = -i / m
    return _frozen(v / n)


def glue_matrix(m, n):
    """All glue vectors v_0..v_{m-1} as the rows of an (m, m) array."""
    rows = np.arange(m)[:, None]
    cols = np.arange(m)[None, :]
    v = np.where(cols < rows, (m - rows) / m, -rows / m)
    return _frozen(v / n)


def _check_m(m, minimum=2):
    if int(m) != m or m < minimum:
        raise LatticeError("alphabet size m must be an integer >= %i, got %r" % (minimum, m))
    return int(m)


def _norm_factor(m, norm, i=None):
    """Coefficient of 1/n in the radius reached through glue vector v_i.

    With i unset the extremal glue vector is used (a = floor(m/2) for L1/L2,
    v_1 for L-infinity).
    """
    if norm is Norm.LINF:
        if i is None:
            return 1.0 - 1.0 / m
        return max(m - i, i) / m
    a = m // 2 if i is None else i
    if norm is Norm.L2:
        return math.sqrt(a * (m - a) / m)
    if norm is Norm.L1:
        return 2.0 * a * (m - a) / m
    raise LatticeError("no closed-form covering radius under %s" % norm.name)


def covering_radius(spec, norm):
    """Covering radius of a plain type lattice under an L-norm."""
    norm = Norm.parse(norm)
    if spec.is_biased:
        raise LatticeError("closed-form covering radii exist only for beta=0")
    if norm is Norm.KL:
        raise LatticeError("no closed-form KL covering radius; see kl_hole_lower_bound")
    return _norm_factor(spec.m, norm) / spec.n


def hole_radius(spec, norm):
    """Largest distance from Q_n over the deep holes lying inside the simplex.

    Holes q + v_i stay in the simplex only when n >= m - i, so for n below
    floor(m/2) the L1/L2 extremal holes fall outside and the value is
    smaller than covering_radius.
    """
    norm = Norm.parse(norm)
    if spec.is_biased:
        raise LatticeError("hole radii are defined for beta=0 only")
    if norm is Norm.KL:
        raise LatticeError("no closed-form KL hole radius")
    m, n = spec.m, spec.n
    if norm is Norm.LINF:
        best = m - 1
    else:
        best = m - min(n, m // 2)
    return _norm_factor(m, norm, best) / n


def deep_holes_in_simplex(spec):
    return spec.n >= spec.m // 2


def kl_hole_lower_bound(m, n):
    """Pinsker lower bound on the KL distance from a deep hole to Q_n."""
    m = _check_m(m)
    if n < 1:
        raise LatticeError("denominator n must be >= 1, got %r" % (n,))
    l1 = _norm_factor(m, Norm.L1) / n
    return l1 * l1 / (2.0 * LN2)


def _root_factorial(m):
    # ((m-1)!)^(1/(m-1))
    return math.exp(math.lgamma(m) / (m - 1))


def asymptotic_constant(m, norm):
    """Coefficient c with d*_r[Q_n](R) ~ c 2^(-R/(m-1)) as the rate grows."""
    m = _check_m(m)
    norm = Norm.parse(norm)
    return _norm_factor(m, norm) / _root_factorial(m)


def simplex_volume(m):
    """(m-1)-dimensional volume of the unit simplex, sqrt(m)/(m-1)!."""
    m = _check_m(m)
    return math.exp(0.5 * math.log(m) - math.lgamma(m))


def optimal_bound_constant(m):
    """L-infinity coefficient of the best possible covering of the simplex."""
    m = _check_m(m)
    return 0.5 * math.exp((0.5 * math.log(m) - math.lgamma(m)) / (m - 1))


def optimality_gap(m):
    return asymptotic_constant(m, Norm.LINF) / optimal_bound_constant(m)


def kl_rate_lower_bound(m, rate):
    """Deep-hole KL lower bound expressed through the code rate."""
    c1 = asymptotic_constant(m, Norm.L1)
    return 2.0 ** (-2.0 * rate / (m - 1)) * c1 * c1 / (2.0 * LN2)


def pinsker_bound(l1):
    """Smallest KL distance (bits) compatible with an L1 distance."""
    return l1 * l1 / (2.0 * LN2)
