# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import json
from unittest import TestCase

from typequant.analysis import analysis_dict
from typequant.analysis import analyze
from typequant.analysis import format_table
from typequant.enumeration import code_rate_exact
from typequant.errors import LatticeError
from typequant.simplex import hole_radius
from typequant.simplex import LatticeSpec
from typequant.simplex import Norm


class AnalyzeTestCase(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.analysis = analyze(LatticeSpec(3, 2))

    def test_small(self):
        analysis = self.analysis
        self.assertEqual((analysis.points, analysis.rate), (6, 3))
        rows = {row.norm: row for row in analysis.rows}
        linf = rows[Norm.LINF]
        self.assertAlmostEqual(linf.theoretical, 1 / 3, places=12)
        self.assertLess(abs(linf.empirical - linf.theoretical), 1e-12)
        self.assertAlmostEqual(linf.gap, 0.471405 / 0.465350, places=3)
        self.assertIsNone(rows[Norm.L1].gap)
        for row in analysis.rows:
            self.assertLess(abs(row.empirical - row.hole), 1e-12)

    def test_theory_only(self):
        analysis = analyze(LatticeSpec(3, 2), exhaustive=False)
        self.assertTrue(all(row.empirical is None for row in analysis.rows))

    def test_normalized_constant(self):
        analysis = analyze(LatticeSpec(3, 200), norms=[Norm.LINF], exhaustive=False)
        (row,) = analysis.rows
        self.assertLess(abs(row.normalized - 0.471405) / 0.471405, 0.05)

    def test_rejects(self):
        with self.assertRaises(LatticeError):
            analyze(LatticeSpec(3, 2, "1/3"))
        with self.assertRaises(LatticeError):
            analyze(LatticeSpec(3, 2), norms=["kl"])

    def test_output(self):
        analysis = analyze(LatticeSpec(4, 3))
        table = format_table(analysis)
        self.assertIn("m=4 n=3 points=20 rate=5", table)
        for name in ("l1", "l2", "linf", "theoretical", "kl deep-hole lower bound"):
            self.assertIn(name, table)
        data = json.loads(json.dumps(analysis_dict(analysis)))
        self.assertEqual([row["norm"] for row in data["rows"]], ["l1", "l2", "linf"])
        self.assertEqual(data["points"], 20)


def test_normalized_radius_converges():
    m = 3
    for n in range(50, 501):
        spec = LatticeSpec(m, n)
        normalized = hole_radius(spec, Norm.LINF) * 2 ** (code_rate_exact(m, n) / (m - 1))
        assert abs(normalized - 0.471405) < 0.05 * 0.471405, n
