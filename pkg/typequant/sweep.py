# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
Rate / worst-case distance curves for every quantization scheme.

Monte Carlo estimates draw uniform points of the simplex (flat Dirichlet,
as normalized standard exponentials) in chunks of CHUNK_SIZE; chunk c uses
PCG64 seeded with SeedSequence([seed, c]), so results do not depend on how
many workers evaluate the chunks.
"""
import csv
import math
from collections import namedtuple
from enum import Enum
from fractions import Fraction

import numpy as np

from .enumeration import code_rate
from .enumeration import code_rate_exact
from .enumeration import count_dual_points
from .enumeration import dual_rate
from .errors import EnumerationError
from .errors import TypeQuantError
from .lattice import quantize_batch
from .lattice import quantize_dual_batch
from .log import app_log
from .log import log_record
from .simplex import ALL_NORMS
from .simplex import batch_distances
from .simplex import hole_radius
from .simplex import LatticeSpec
from .simplex import Norm
from .trees import gilbert_moore_quantize_batch
from .trees import huffman_quantize_batch
from .trees import proven_bounds
from .trees import Scheme
from .trees import tree_rate
from .utils import EmptyClass
from .utils import time_block

CHUNK_SIZE = 4096

CSV_HEADER = (
    "scheme",
    "m",
    "rate",
    "rate_lo",
    "rate_hi",
    "n",
    "max_d1",
    "max_d2",
    "max_dinf",
    "max_dkl",
    "method",
    "samples",
    "seed",
)

LATTICE_SCHEMES = (Scheme.TYPE_LATTICE,)
ALL_SCHEMES = tuple(Scheme)

# record field holding the maximum for each norm
NORM_FIELDS = {
    Norm.L1: "max_d1",
    Norm.L2: "max_d2",
    Norm.LINF: "max_dinf",
    Norm.KL: "max_dkl",
}


class Method(Enum):
    EXACT_HOLES = "EXACT_HOLES"
    MONTE_CARLO = "MONTE_CARLO"
    PROVEN_BOUND = "PROVEN_BOUND"


_SCHEME_ORDER = {scheme.name: i for i, scheme in enumerate(Scheme)}
_METHOD_ORDER = {method.value: i for i, method in enumerate(Method)}

SweepRecord = namedtuple("SweepRecord", CSV_HEADER)


def sample_simplex(rng, size, m):
    """`size` uniform draws from the (m-1)-simplex as the rows of an array."""
    E = rng.standard_exponential((size, m))
    return E / E.sum(axis=1, keepdims=True)


def chunk_generator(seed, chunk):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, chunk])))


def monte_carlo_maxima(quantizer, m, samples, seed, pool=None, norms=ALL_NORMS):
    """Largest distance from a uniform sample to its reconstruction, per norm.

    `quantizer` maps a (rows, m) array of distributions to the array of
    their reconstructions. `pool` is any executor; without one the chunks
    run in the calling thread.
    """
    if samples < 1:
        raise TypeQuantError("samples must be >= 1, got %r" % (samples,))
    if seed < 0:
        raise TypeQuantError("seed must be >= 0, got %r" % (seed,))
    norms = tuple(Norm.parse(norm) for norm in norms)
    chunks = -(-samples // CHUNK_SIZE)

    def run_chunk(chunk):
        size = min(CHUNK_SIZE, samples - chunk * CHUNK_SIZE)
        P = sample_simplex(chunk_generator(seed, chunk), size, m)
        d = batch_distances(P, quantizer(P), norms)
        return {norm: float(d[norm].max()) for norm in norms}

    results = pool.map(run_chunk, range(chunks)) if pool else map(run_chunk, range(chunks))
    maxima = dict.fromkeys(norms, 0.0)
    for result in results:
        for norm in norms:
            maxima[norm] = max(maxima[norm], result[norm])
    return maxima


def _largest_n(rate_of, budget):
    """Largest n >= 1 with rate_of(n) <= budget, or None."""
    if rate_of(1) > budget:
        return None
    lo, hi = 1, 2
    while rate_of(hi) <= budget:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rate_of(mid) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


def rate_steps(m, max_rate):
    """Denominators n = 1, 2, ... whose code rate fits in `max_rate` bits."""
    top = _largest_n(lambda n: code_rate(m, n), int(max_rate))
    return [] if top is None else list(range(1, top + 1))


def dual_steps(m, max_rate):
    top = _largest_n(lambda n: dual_rate(m, n), int(max_rate))
    return [] if top is None else list(range(1, top + 1))


def _record(scheme, m, rate, n, maxima, method, samples=0, seed=0, rate_lo=None, rate_hi=None):
    return SweepRecord(
        scheme=scheme.name,
        m=m,
        rate=float(rate),
        rate_lo=float(rate if rate_lo is None else rate_lo),
        rate_hi=float(rate if rate_hi is None else rate_hi),
        n=n,
        max_d1=float(maxima[Norm.L1]),
        max_d2=float(maxima[Norm.L2]),
        max_dinf=float(maxima[Norm.LINF]),
        max_dkl=float(maxima[Norm.KL]),
        method=method.value,
        samples=samples,
        seed=seed,
    )


def sort_key(record):
    return (
        _SCHEME_ORDER[record.scheme],
        record.rate,
        _METHOD_ORDER[record.method],
        record.n,
    )


def run_sweep(
    m,
    max_rate,
    schemes=LATTICE_SCHEMES,
    samples=10 ** 5,
    seed=0,
    beta=None,
    pool=None,
    dual_norm=Norm.L2,
    statsd=None,
):
    """Sweep rate against worst-case distance; returns SweepRecords in output order."""
    schemes = sorted({Scheme.parse(s) for s in schemes}, key=lambda s: _SCHEME_ORDER[s.name])
    statsd = statsd or EmptyClass()
    m = int(m)
    records = []

    def monte_carlo(scheme, quantizer, rate, n, bounds=None, **rates):
        timer = statsd.timer("sweep.%s" % scheme.value).start()
        with time_block("%s m=%i n=%i: %i samples" % (scheme.name, m, n, samples), app_log):
            maxima = monte_carlo_maxima(quantizer, m, samples, seed, pool)
        timer.stop()
        statsd.incr("sweep.samples", samples)
        record = _record(scheme, m, rate, n, maxima, Method.MONTE_CARLO, samples, seed, **rates)
        fields = None
        if bounds:
            fields = {NORM_FIELDS[norm]: bound for norm, bound in bounds.items()}
        log_record(record, fields)
        records.append(record)

    for scheme in schemes:
        if scheme is Scheme.TYPE_LATTICE:
            for n in rate_steps(m, max_rate):
                spec = LatticeSpec(m, n)
                maxima = {norm: hole_radius(spec, norm) for norm in (Norm.L1, Norm.L2, Norm.LINF)}
                maxima[Norm.KL] = math.inf
                record = _record(scheme, m, code_rate_exact(m, n), n, maxima, Method.EXACT_HOLES)
                log_record(record)
                records.append(record)
        elif scheme is Scheme.TYPE_LATTICE_BIASED:
            bias = Fraction(1, m) if beta is None else Fraction(beta)
            for n in rate_steps(m, max_rate):
                spec = LatticeSpec(m, n, bias)
                monte_carlo(
                    scheme, lambda P, spec=spec: quantize_batch(P, spec)[1], code_rate_exact(m, n), n
                )
        elif scheme is Scheme.TYPE_LATTICE_DUAL:
            for n in dual_steps(m, max_rate):
                spec = LatticeSpec(m, n)
                monte_carlo(
                    scheme,
                    lambda P, spec=spec: quantize_dual_batch(P, spec, dual_norm)[0],
                    math.log2(count_dual_points(m, n)),
                    n,
                )
        else:
            rate = tree_rate(m, scheme)
            quantizer = (
                huffman_quantize_batch if scheme is Scheme.HUFFMAN else gilbert_moore_quantize_batch
            )
            bounds = proven_bounds(scheme)
            monte_carlo(
                scheme, quantizer, rate.rate, 0, bounds, rate_lo=rate.rate_lo, rate_hi=rate.rate_hi
            )
            record = _record(
                scheme,
                m,
                rate.rate,
                0,
                bounds,
                Method.PROVEN_BOUND,
                rate_lo=rate.rate_lo,
                rate_hi=rate.rate_hi,
            )
            log_record(record)
            records.append(record)

    if not records:
        raise EnumerationError("rate cap %s leaves nothing to sweep for m=%i" % (max_rate, m))
    records.sort(key=sort_key)
    return records


def _format(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records, f):
    """Write records under the fixed header; floats use their shortest repr."""
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow([_format(value) for value in record])


def read_csv(f):
    """Parse a sweep CSV back into SweepRecords."""
    reader = csv.reader(f)
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError("not a sweep CSV: header %r" % (header,))
    records = []
    for row in reader:
        values = dict(zip(CSV_HEADER, row))
        for field in ("m", "n", "samples", "seed"):
            values[field] = int(values[field])
        for field in ("rate", "rate_lo", "rate_hi", "max_d1", "max_d2", "max_dinf", "max_dkl"):
            values[field] = float(values[field])
        records.append(SweepRecord(**values))
    return records
