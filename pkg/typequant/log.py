# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import logging

# library modules log here; the application re-parents it onto its own logger
app_log = logging.getLogger("typequant.application")


def log_record(record, bounds=None):
    """log one sweep record at a level that reflects what it is

    - exact and proven-bound rows are debug-level (they are not measurements)
    - Monte Carlo rows are info-level
    - a Monte Carlo maximum above the scheme's proven bound is a warning

    `bounds` maps the record's max_* field names to the proven bound, if any.
    """
    exceeded = []
    if bounds:
        for field, bound in sorted(bounds.items()):
            value = getattr(record, field)
            if value > bound:
                exceeded.append("%s=%.6g>%.6g" % (field, value, bound))

    if exceeded:
        log_method = app_log.warning
    elif record.method == "MONTE_CARLO":
        log_method = app_log.info
    else:
        log_method = app_log.debug

    ns = record._asdict()
    msg = (
        "{scheme} m={m} n={n} rate={rate:.3f}"
        " d1={max_d1:.6g} d2={max_d2:.6g} dinf={max_dinf:.6g} dkl={max_dkl:.6g}"
        " ({method}"
    )
    if record.method == "MONTE_CARLO":
        msg = msg + ", {samples} samples, seed {seed}"
    msg = msg + ")"
    if exceeded:
        msg = msg + " exceeds proven bound: " + ", ".join(exceeded)
    log_method(msg.format(**ns))
