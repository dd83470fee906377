# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import os
from tempfile import TemporaryDirectory
from unittest import TestCase

from typequant.errors import DistributionError
from typequant.formats import detect_format
from typequant.formats import load_distributions
from typequant.formats import read_distributions
from typequant.formats import write_distributions
from typequant.simplex import Distribution


class FormatsTestCase(TestCase):
    def test_detect(self):
        self.assertEqual(detect_format("  [0.5, 0.5]"), "json")
        self.assertEqual(detect_format("0.5 0.5\n"), "text")

    def test_text(self):
        text = "# header\n0.5 0.25 0.25\n\n0.1,0.9  # trailing\n"
        dists = read_distributions(text)
        self.assertEqual(dists, [Distribution([0.5, 0.25, 0.25]), Distribution([0.1, 0.9])])

    def test_json(self):
        self.assertEqual(read_distributions("[0.5, 0.5]"), [Distribution([0.5, 0.5])])
        self.assertEqual(len(read_distributions("[[0.5, 0.5], [1, 0, 0]]")), 2)

    def test_renormalize(self):
        (p,) = read_distributions("2 1 1", renormalize=True)
        self.assertEqual(p, Distribution([0.5, 0.25, 0.25]))

    def test_malformed(self):
        for text in ("", "# nothing\n", "0.5 x\n", "[0.5, ", '["a", "b"]', "0.6 0.6\n", "[[0.5, 0.5], 3]"):
            with self.assertRaises(DistributionError):
                read_distributions(text)
        with self.assertRaises(DistributionError):
            read_distributions("0.5 0.5", format="yaml")
        for text in ("5", '{"a": 1}', "null"):
            with self.assertRaises(DistributionError):
                read_distributions(text, format="json")

    def test_write_and_load(self):
        dists = [Distribution([0.5, 0.25, 0.25]), Distribution([0.1, 0.9])]
        with TemporaryDirectory() as td:
            for format in ("text", "json"):
                path = os.path.join(td, "dists." + format)
                with open(path, "w") as f:
                    f.write(write_distributions(dists, format))
                self.assertEqual(load_distributions(path), dists)
