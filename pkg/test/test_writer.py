import unittest
import io
import tempfile
import os
import sys

sys.path = [os.path.join(os.path.dirname(
    os.path.realpath(__file__)), '..', )]+sys.path

from tropico.diagram import DiagramSpec, count_breakdown
from tropico.lattice import LatticePolygon
from tropico.tropical import TropicalPolynomial, corner_locus
from tropico.writer import RenderStyle, Writer

LINE = TropicalPolynomial({(0, 0): 0, (1, 0): 0, (0, 1): 0})

class Tests(unittest.TestCase):

    def test_write(self):
        output_file = tempfile.mktemp()
        Writer.write("first\nsecond\n", output_file)

        with open(output_file) as output_file_io:
            self.assertEqual(["first\n", "second\n"], output_file_io.readlines())
        os.remove(output_file)

    def test_json_text(self):
        self.assertEqual('{"a": ["1/2"], "b": 1}', Writer.json_text({"b": 1, "a": ["1/2"]}))
        stream = io.StringIO()
        Writer.write_json({"count": "12"}, stream)
        self.assertEqual('{"count": "12"}\n', stream.getvalue())

    def test_breakdown(self):
        rows = count_breakdown(DiagramSpec(LatticePolygon.triangle(3)))
        table = Writer.breakdown_table(rows)
        self.assertEqual(3, len(table))
        self.assertEqual(12, table["contribution"].sum())
        stream = io.StringIO()
        Writer.write_breakdown(rows, stream)
        self.assertTrue(stream.getvalue().endswith("total 12\n"))

    def test_curve_svg(self):
        curve, subdivision = corner_locus(LINE)
        svg = Writer.curve_svg(curve)
        self.assertTrue(svg.startswith('<svg'))
        self.assertTrue(svg.endswith('</svg>\n'))
        self.assertEqual(3, svg.count('<line'))
        self.assertEqual(1, svg.count('<polygon'))
        self.assertEqual(svg, Writer.curve_svg(curve))

        inset = Writer.curve_svg(curve, subdivision=subdivision)
        self.assertEqual(1 + len(subdivision.cells), inset.count('<polygon'))

    def test_marked_points(self):
        curve, _ = corner_locus(LINE)
        svg = Writer.curve_svg(curve, points=[(1, (0, -2)), (2, (3, 3))])
        self.assertEqual(2, svg.count('<circle'))
        self.assertIn('>2</text>', svg)
        quiet = Writer.curve_svg(curve, RenderStyle(marking_labels=False), points=[(1, (0, -2))])
        self.assertNotIn('</text>', quiet)

    def test_weight_labels(self):
        curve, _ = corner_locus(LINE * LINE)
        self.assertIn('>2</text>', Writer.curve_svg(curve))
        self.assertNotIn('</text>', Writer.curve_svg(curve, RenderStyle(weight_labels=False)))

    def test_anticanonical_frame(self):
        curve, _ = corner_locus(LINE)
        svg = Writer.curve_svg(curve, RenderStyle(anticanonical_frame=True), newton=LatticePolygon.triangle(1))
        self.assertIn('stroke="#888888"', svg)
        self.assertEqual(3, svg.count('<line'))

    def test_render_style(self):
        with self.assertRaises(ValueError):
            RenderStyle(width=30, margin=20)
        with self.assertRaises(ValueError):
            RenderStyle(height=0)

if __name__ == "__main__":
    unittest.main()
