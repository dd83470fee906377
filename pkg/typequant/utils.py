# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import time
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from itertools import islice

from .errors import LatticeError


class EmptyClass(object):
    """
    Simple empty class that returns itself for all functions called on it.
    This allows us to call any method of any name on this, and it'll return another
    instance of itself that'll allow any method to be called on it.

    Used in place of the statsd client when no statsd host is configured
    """

    def empty_function(self, *args, **kwargs):
        return self

    def __getattr__(self, attr):
        return self.empty_function


def chunked(iterable, size):
    """yield lists of at most `size` consecutive items"""
    it = iter(iterable)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def parse_fraction(value, m=None):
    """parse a bias literal: an int, a decimal, "p/q", or "auto" (1/m)"""
    if isinstance(value, Fraction):
        return value
    text = str(value).strip().lower()
    if text == "auto":
        if m is None:
            raise LatticeError("beta=auto needs the alphabet size m")
        return Fraction(1, int(m))
    try:
        # limit_denominator keeps decimals such as 0.1 from turning into 2^k denominators
        beta = Fraction(text)
        return beta if "." not in text else beta.limit_denominator(1 << 16)
    except (ValueError, ZeroDivisionError):
        raise LatticeError("bias beta must be a rational literal or 'auto', got %r" % (value,))


def parse_counts(text):
    """parse "2,1,0" or "2 1 0" into a tuple of ints"""
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise LatticeError("counts must be integers, got %r" % (text,))


@contextmanager
def time_block(message, logger, debug_limit=1):
    """context manager for timing a block

    logs millisecond timings of the block

    If the time is longer than debug_limit,
    then log level will be INFO,
    otherwise it will be DEBUG.
    """
    tic = time.time()
    yield
    dt = time.time() - tic
    log = logger.info if dt > debug_limit else logger.debug
    log("%s in %.2f ms", message, 1e3 * dt)


def cached_property(method):
    return property(lru_cache(1)(method))
