# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""Closed-form and measured covering radii of a type lattice, side by side."""
import math
from collections import namedtuple

from .enumeration import code_rate
from .enumeration import code_rate_exact
from .enumeration import count_types
from .errors import LatticeError
from .lattice import empirical_radius
from .log import app_log
from .simplex import asymptotic_constant
from .simplex import covering_radius
from .simplex import hole_radius
from .simplex import kl_hole_lower_bound
from .simplex import L_NORMS
from .simplex import Norm
from .simplex import optimal_bound_constant
from .simplex import optimality_gap
from .utils import time_block

AnalysisRow = namedtuple(
    "AnalysisRow",
    [
        "norm",
        "theoretical",
        "hole",
        "empirical",
        "normalized",
        "asymptotic",
        "optimum",
        "gap",
    ],
)

LatticeAnalysis = namedtuple(
    "LatticeAnalysis", ["m", "n", "points", "rate", "rate_exact", "kl_lower_bound", "rows"]
)


def analyze(spec, norms=L_NORMS, exhaustive=True):
    """Tabulate radii for `spec`.

    `normalized` is the in-simplex hole radius times 2^(R'/(m-1)) with the
    unrounded rate R'; it tends to `asymptotic` as n grows. With
    `exhaustive` unset the empirical column is left empty and no holes are
    enumerated.
    """
    if spec.is_biased:
        raise LatticeError("analysis is defined for beta=0 lattices")
    norms = tuple(Norm.parse(norm) for norm in norms)
    if Norm.KL in norms:
        raise LatticeError("KL has no closed-form radius; it is reported as a lower bound")
    m, n = spec.m, spec.n
    rate_exact = code_rate_exact(m, n)
    scale = 2.0 ** (rate_exact / (m - 1))

    measured = {}
    if exhaustive:
        with time_block("measured hole radii for m=%i, n=%i" % (m, n), app_log):
            measured = empirical_radius(spec, norms)

    rows = []
    for norm in norms:
        hole = hole_radius(spec, norm)
        optimum = gap = None
        if norm is Norm.LINF:
            optimum = optimal_bound_constant(m)
            gap = optimality_gap(m)
        rows.append(
            AnalysisRow(
                norm=norm,
                theoretical=covering_radius(spec, norm),
                hole=hole,
                empirical=measured.get(norm),
                normalized=hole * scale,
                asymptotic=asymptotic_constant(m, norm),
                optimum=optimum,
                gap=gap,
            )
        )
    return LatticeAnalysis(
        m=m,
        n=n,
        points=count_types(m, n),
        rate=code_rate(m, n),
        rate_exact=rate_exact,
        kl_lower_bound=kl_hole_lower_bound(m, n),
        rows=rows,
    )


def _cell(value):
    if value is None:
        return "-"
    if math.isinf(value):
        return "inf"
    return "%.6f" % value


def format_table(analysis):
    header = ("norm", "theoretical", "hole", "empirical", "normalized", "asymptotic", "optimum", "gap")
    lines = [
        "m=%i n=%i points=%i rate=%i rate_exact=%.6f"
        % (analysis.m, analysis.n, analysis.points, analysis.rate, analysis.rate_exact),
        "  ".join("%-12s" % h for h in header).rstrip(),
    ]
    for row in analysis.rows:
        cells = [row.norm.value] + [_cell(v) for v in row[1:]]
        lines.append("  ".join("%-12s" % c for c in cells).rstrip())
    lines.append("kl deep-hole lower bound: %s bits" % _cell(analysis.kl_lower_bound))
    return "\n".join(lines) + "\n"


def analysis_dict(analysis):
    """JSON-ready form of a LatticeAnalysis."""
    return {
        "m": analysis.m,
        "n": analysis.n,
        "points": analysis.points,
        "rate": analysis.rate,
        "rate_exact": analysis.rate_exact,
        "kl_lower_bound": analysis.kl_lower_bound,
        "rows": [dict(row._asdict(), norm=row.norm.value) for row in analysis.rows],
    }
