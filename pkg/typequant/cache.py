# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import math
import threading
from collections import OrderedDict

from .log import app_log

# -----------------------------------------------------------------------------
# Code
# -----------------------------------------------------------------------------


class BinomialCache(object):
    """Exact binomial coefficients, kept in a dict of fixed size.

    Values are arbitrary-precision ints. The least recently used entry is
    evicted once `limit` entries are stored. A lock makes the cache safe to
    share between Monte Carlo worker threads.
    """

    def __init__(self, limit=1 << 16):
        self._cache = OrderedDict()
        self._lock = threading.Lock()
        self.limit = limit
        self.hits = 0
        self.misses = 0

    def get(self, n, k):
        if k < 0 or n < 0 or k > n:
            return 0
        # C(n, k) == C(n, n - k); store one of the two
        k = min(k, n - k)
        key = (n, k)
        with self._lock:
            value = self._cache.get(key)
            if value is not None:
                self._cache.move_to_end(key)
                self.hits += 1
                return value
        value = math.comb(n, k)
        self.set(key, value)
        return value

    __call__ = get

    def set(self, key, value):
        with self._lock:
            self.misses += 1
            if key in self._cache:
                self._cache.move_to_end(key)
            elif len(self._cache) >= self.limit:
                oldest, _ = self._cache.popitem(last=False)
                app_log.debug("binomial cache full, evicting C%s", oldest)
            self._cache[key] = value

    def clear(self):
        with self._lock:
            self._cache.clear()
            self.hits = self.misses = 0

    def __len__(self):
        return len(self._cache)
