# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""Exceptions raised by typequant.

Every library error derives from TypeQuantError, which the command line
reports as a data error (exit status 3).
"""


class TypeQuantError(ValueError):
    pass


class DistributionError(TypeQuantError):
    """Input is not a point of the probability simplex, or shapes disagree."""


class LatticeError(TypeQuantError):
    """Invalid lattice parameters, or an operation applied to the wrong kind of lattice."""


class EnumerationError(TypeQuantError):
    pass


class EnumerationLimitError(EnumerationError):
    """Raised instead of materializing more points than the enumeration guard allows."""


class CodecError(TypeQuantError):
    pass
