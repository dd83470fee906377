# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
"""
The .tqnt container: a 20-byte little-endian header followed by the
lexicographic index of a type, big-endian, in the smallest whole number of
bytes that holds code_rate(m, n) bits.

    offset  size  field
    0       4     magic b"TQ01"
    4       4     m
    8       4     n
    12      4     beta numerator
    16      4     beta denominator (1 for a plain lattice)
    20      w     index, w = ceil(code_rate(m, n) / 8)
"""
import math
import struct
from collections import namedtuple
from fractions import Fraction

from .enumeration import rank
from .enumeration import unrank
from .errors import CodecError
from .errors import EnumerationError
from .errors import LatticeError
from .simplex import LatticeSpec
from .simplex import TypePoint

MAGIC = b"TQ01"
HEADER = struct.Struct("<4sIIII")
FILE_EXTENSION = ".tqnt"

_UINT32_MAX = (1 << 32) - 1


def payload_width(spec):
    return (spec.rate + 7) // 8


def estimated_rate(m, n):
    """log2 C(n+m-1, m-1) from lgamma, without the exact big-integer count."""
    return (math.lgamma(n + m) - math.lgamma(m) - math.lgamma(n + 1)) / math.log(2)


class EncodedBlob(namedtuple("EncodedBlob", ["m", "n", "beta_num", "beta_den", "payload"])):
    __slots__ = ()

    @property
    def beta(self):
        return Fraction(self.beta_num, self.beta_den)

    @property
    def spec(self):
        try:
            return LatticeSpec(self.m, self.n, self.beta)
        except LatticeError as e:
            raise CodecError("invalid lattice in header: %s" % e)

    @property
    def index(self):
        return int.from_bytes(self.payload, "big")

    def to_bytes(self):
        return HEADER.pack(MAGIC, self.m, self.n, self.beta_num, self.beta_den) + self.payload

    @classmethod
    def from_bytes(cls, data):
        data = bytes(data)
        if len(data) < HEADER.size:
            raise CodecError(
                "truncated header: %i bytes, need %i" % (len(data), HEADER.size)
            )
        magic, m, n, beta_num, beta_den = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CodecError("bad magic %r, expected %r" % (magic, MAGIC))
        if beta_den == 0:
            raise CodecError("invalid lattice in header: beta denominator is 0")
        return cls(m, n, beta_num, beta_den, data[HEADER.size :])


def encode(point, spec):
    """Serialize a type of the lattice `spec`; deterministic byte for byte."""
    if not isinstance(point, TypePoint):
        try:
            point = TypePoint(point, spec.n)
        except LatticeError as e:
            raise CodecError("inconsistent point/spec: %s" % e)
    try:
        spec.check_point(point)
    except LatticeError as e:
        raise CodecError("inconsistent point/spec: %s" % e)
    beta = spec.beta
    if beta.numerator > _UINT32_MAX or beta.denominator > _UINT32_MAX:
        raise CodecError("beta=%s does not fit the 32-bit header fields" % beta)
    if spec.m > _UINT32_MAX or spec.n > _UINT32_MAX:
        raise CodecError("m or n does not fit the 32-bit header fields")
    payload = rank(point).to_bytes(payload_width(spec), "big")
    return EncodedBlob(spec.m, spec.n, beta.numerator, beta.denominator, payload)


def decode(blob):
    """Inverse of encode: returns (TypePoint, LatticeSpec)."""
    if not isinstance(blob, EncodedBlob):
        blob = EncodedBlob.from_bytes(blob)
    spec = blob.spec
    # a corrupted header can name a lattice whose exact size takes forever to count
    if estimated_rate(spec.m, spec.n) > 8 * len(blob.payload) + 8:
        raise CodecError(
            "truncated payload: %i bytes for m=%i n=%i" % (len(blob.payload), spec.m, spec.n)
        )
    width = payload_width(spec)
    if len(blob.payload) < width:
        raise CodecError("truncated payload: %i bytes, need %i" % (len(blob.payload), width))
    if len(blob.payload) > width:
        raise CodecError("%i trailing bytes after payload" % (len(blob.payload) - width))
    try:
        point = unrank(blob.index, spec.m, spec.n)
    except EnumerationError as e:
        raise CodecError(str(e))
    return point, spec


def write_blob(path, blob):
    with open(path, "wb") as f:
        f.write(blob.to_bytes())


def read_blob(path):
    with open(path, "rb") as f:
        return EncodedBlob.from_bytes(f.read())
