# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import os
from fractions import Fraction
from tempfile import TemporaryDirectory
from unittest import TestCase

from typequant.codec import decode
from typequant.codec import encode
from typequant.codec import EncodedBlob
from typequant.codec import estimated_rate
from typequant.codec import HEADER
from typequant.codec import payload_width
from typequant.codec import read_blob
from typequant.codec import write_blob
from typequant.enumeration import code_rate_exact
from typequant.errors import CodecError
from typequant.lattice import enumerate_types
from typequant.simplex import LatticeSpec
from typequant.simplex import TypePoint

from .base import GOLDEN


def golden_bytes(counts):
    name = "m3_n2_%s.tqnt" % "_".join(str(k) for k in counts)
    with open(os.path.join(GOLDEN, name), "rb") as f:
        return f.read()


class GoldenTestCase(TestCase):
    def test_encode_matches_golden(self):
        spec = LatticeSpec(3, 2)
        for point in enumerate_types(spec):
            self.assertEqual(encode(point, spec).to_bytes(), golden_bytes(point.counts))

    def test_decode_golden(self):
        for index, point in enumerate(enumerate_types(LatticeSpec(3, 2))):
            data = golden_bytes(point.counts)
            self.assertEqual(len(data), 21)
            self.assertEqual(data[-1], index)
            decoded, spec = decode(data)
            self.assertEqual(decoded, point)
            self.assertEqual(spec, LatticeSpec(3, 2))


class RoundTripTestCase(TestCase):
    def test_every_type(self):
        spec = LatticeSpec(5, 8)
        self.assertEqual(payload_width(spec), 2)
        for point in enumerate_types(spec):
            data = encode(point, spec).to_bytes()
            self.assertEqual(len(data), HEADER.size + 2)
            self.assertEqual(decode(data), (point, spec))

    def test_biased(self):
        spec = LatticeSpec(4, 6, Fraction(1, 4))
        blob = encode(TypePoint([3, 0, 2, 1]), spec)
        self.assertEqual((blob.beta_num, blob.beta_den), (1, 4))
        point, decoded = decode(blob.to_bytes())
        self.assertEqual(point, TypePoint([3, 0, 2, 1]))
        self.assertEqual(decoded.beta, Fraction(1, 4))

    def test_files(self):
        spec = LatticeSpec(3, 7)
        blob = encode([4, 2, 1], spec)
        with TemporaryDirectory() as td:
            path = os.path.join(td, "point.tqnt")
            write_blob(path, blob)
            self.assertEqual(read_blob(path), blob)
            self.assertEqual(decode(read_blob(path))[0], TypePoint([4, 2, 1]))

    def test_large_index(self):
        spec = LatticeSpec(10, 100)
        point = TypePoint([100] + [0] * 9)
        blob = encode(point, spec)
        self.assertEqual(len(blob.payload), payload_width(spec))
        self.assertEqual(blob.index, spec.point_count - 1)
        self.assertEqual(decode(blob)[0], point)


class ErrorTestCase(TestCase):
    def setUp(self):
        self.data = encode(TypePoint([1, 1, 0]), LatticeSpec(3, 2)).to_bytes()

    def assertCodecError(self, data):
        with self.assertRaises(CodecError):
            decode(data)

    def test_bad_magic(self):
        self.assertCodecError(b"TQ02" + self.data[4:])

    def test_truncated(self):
        self.assertCodecError(self.data[:10])
        self.assertCodecError(self.data[:20])

    def test_trailing_bytes(self):
        self.assertCodecError(self.data + b"\x00")

    def test_index_out_of_range(self):
        self.assertCodecError(self.data[:20] + b"\x06")

    def test_invalid_header(self):
        self.assertCodecError(HEADER.pack(b"TQ01", 1, 2, 0, 1) + b"\x00")
        self.assertCodecError(HEADER.pack(b"TQ01", 3, 2, 0, 0) + b"\x00")

    def test_huge_lattice_in_header(self):
        data = HEADER.pack(b"TQ01", 0x7FFFFFFF, 0x7FFFFFFF, 0, 1) + b"\x00"
        with self.assertRaisesRegex(CodecError, "truncated payload"):
            decode(data)

    def test_inconsistent_point(self):
        with self.assertRaises(CodecError):
            encode(TypePoint([1, 1, 1]), LatticeSpec(3, 2))
        with self.assertRaises(CodecError):
            encode([1, 1], LatticeSpec(3, 2))

    def test_blob_fields(self):
        blob = EncodedBlob.from_bytes(self.data)
        self.assertEqual((blob.m, blob.n, blob.index), (3, 2, 4))


def test_estimated_rate_tracks_exact_rate():
    for m in range(2, 12):
        for n in range(1, 40):
            assert abs(estimated_rate(m, n) - code_rate_exact(m, n)) < 1e-6, (m, n)
