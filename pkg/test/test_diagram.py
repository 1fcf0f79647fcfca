#!/usr/bin/env python3
###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################
# Imports
import unittest
import os.path
import sys

###############################################################################

sys.path = [os.path.join(os.path.dirname(os.path.realpath(__file__)),'..')]+sys.path

from tropico.diagram import (DiagramSpec, FloorDiagram, Marking,
                             cardinality_check, check_marking, count,
                             count_breakdown, diagram_genus,
                             diagrams_isomorphic, enumerate_diagrams,
                             enumerate_markings, multiplicity, normalized,
                             structure_violations, validate,
                             weighted_cardinality)
from tropico.errors import (Disconnected, InvalidDiagram, InvalidSpec,
                            NotPrimitive, NotTransverse,
                            SideBoundaryCondition)
from tropico.lattice import LatticePolygon, LatticeVector

###############################################################################

T3 = LatticePolygon.triangle(3)

# Three floors of slope 0, two parallel edges between the lowest two.
GENUS_ONE_CUBIC = FloorDiagram(floors=((1, 0), (2, 0), (3, 0)),
                               inf_minus=(10, 11, 12),
                               edges=((10, 1, 1), (11, 1, 1), (12, 1, 1),
                                      (1, 2, 1), (1, 2, 1), (2, 3, 1)))

def _weight_two_cubic(tails):
    return FloorDiagram(floors=((1, 0), (2, 0), (3, 0)),
                        inf_minus=tuple(10 + index for index in range(len(tails))),
                        edges=tuple((10 + index, 1, weight) for index, weight in enumerate(tails))
                        + ((1, 2, 2), (2, 3, 1)))

class Tests(unittest.TestCase):

    def test_diagram_genus(self):
        self.assertEqual(1, diagram_genus(GENUS_ONE_CUBIC))
        self.assertEqual(0, diagram_genus(_weight_two_cubic([1, 1, 1])))
        disconnected = FloorDiagram(floors=((1, 0), (2, 0)))
        with self.assertRaises(Disconnected):
            diagram_genus(disconnected)

    def test_validate_genus_one_cubic(self):
        spec = DiagramSpec(T3, genus=1)
        report = validate(GENUS_ONE_CUBIC, spec)
        self.assertTrue(report)
        self.assertEqual([], report.codes())
        self.assertTrue(cardinality_check(GENUS_ONE_CUBIC, spec))
        self.assertEqual(9, weighted_cardinality(GENUS_ONE_CUBIC))

    def test_validate_reports_divergence(self):
        broken = FloorDiagram(GENUS_ONE_CUBIC.floors, GENUS_ONE_CUBIC.inf_minus, (),
                              GENUS_ONE_CUBIC.edges[:-1] + ((2, 3, 2),))
        report = validate(broken, DiagramSpec(T3, genus=1))
        self.assertFalse(report)
        self.assertIn('plane_divergence', report.codes())
        self.assertFalse(report.as_json()["ok"])

    def test_structure_violations(self):
        cyclic = FloorDiagram(floors=((1, 0), (2, 0)), edges=((1, 2, 1), (2, 1, 1)))
        self.assertIn('cyclic', [code for code, _ in structure_violations(cyclic)])
        dangling = FloorDiagram(floors=((1, 0),), inf_minus=(5,), inf_plus=(6,), edges=((5, 6, 1),))
        codes = [code for code, _ in structure_violations(dangling)]
        self.assertIn('infinite_to_infinite', codes)
        self.assertIn('disconnected', codes)

    def test_invalid_diagrams(self):
        with self.assertRaises(InvalidDiagram):
            FloorDiagram(floors=())
        with self.assertRaises(InvalidDiagram):
            FloorDiagram(floors=((1, 0),), inf_minus=(1,))
        with self.assertRaises(InvalidDiagram):
            FloorDiagram(floors=((1, 0),), edges=((1, 7, 1),))
        with self.assertRaises(InvalidDiagram):
            FloorDiagram(floors=((1, 0), (2, 0)), edges=((1, 2, 0),))

    def test_spec_errors(self):
        with self.assertRaises(InvalidSpec):
            DiagramSpec(T3, genus=2).frame
        with self.assertRaises(InvalidSpec):
            DiagramSpec(T3, genus=-1)
        with self.assertRaises(InvalidSpec):
            DiagramSpec(T3, alpha_minus=(0, 2)).frame
        with self.assertRaises(InvalidSpec):
            DiagramSpec(T3, beta_minus=(1,)).frame
        with self.assertRaises(SideBoundaryCondition):
            DiagramSpec(T3, alpha_plus=(1,)).frame
        with self.assertRaises(NotTransverse):
            DiagramSpec(LatticePolygon(((0, 0), (2, 1), (1, 2)))).frame
        with self.assertRaises(NotPrimitive):
            DiagramSpec(T3, direction=(2, 2))

    def test_spec_defaults(self):
        frame = DiagramSpec(T3).frame
        self.assertEqual((3,), frame.beta_minus)
        self.assertEqual((), frame.beta_plus)
        self.assertEqual(8, frame.s)
        self.assertTrue(frame.is_plane)
        self.assertEqual(9, DiagramSpec(T3, genus=1).frame.s)
        self.assertEqual(7, DiagramSpec(T3, beta_minus=(1, 1)).frame.s)

    def test_normalized(self):
        spec = DiagramSpec(LatticePolygon.trapezium(1, 2, 1), direction=(1, 1))
        moved = normalized(spec)
        self.assertEqual(LatticeVector(0, 1), moved.direction)
        self.assertEqual(spec.polygon.interior_points, moved.polygon.interior_points)
        self.assertEqual(spec.frame.s, moved.frame.s)

    def test_enumerate_genus_one_cubic(self):
        spec = DiagramSpec(T3, genus=1)
        diagrams = enumerate_diagrams(spec)
        self.assertEqual(1, len(diagrams))
        self.assertTrue(diagrams_isomorphic(GENUS_ONE_CUBIC, diagrams[0]))
        markings = enumerate_markings(diagrams[0], spec)
        self.assertEqual(1, len(markings))
        self.assertEqual([], check_marking(diagrams[0], markings[0], spec))

    def test_enumerate_rational_cubics(self):
        spec = DiagramSpec(T3, beta_minus=(3,))
        diagrams = enumerate_diagrams(spec)
        self.assertEqual(3, len(diagrams))
        for diagram in diagrams:
            self.assertTrue(validate(diagram, spec))
            self.assertTrue(cardinality_check(diagram, spec))

    def test_enumeration_independent_of_shard_order(self):
        spec = DiagramSpec(LatticePolygon.triangle(4))
        first = enumerate_diagrams(spec)
        second = enumerate_diagrams(spec, shuffle_seed=3)
        self.assertEqual(len(first), len(second))
        for diagram in second:
            self.assertTrue(any(diagrams_isomorphic(diagram, other) for other in first))

    def test_marking_census(self):
        cases = [(DiagramSpec(T3, beta_minus=(3,)), [1, 3, 5]),
                 (DiagramSpec(T3, beta_minus=(1, 1)), [2, 4, 6]),
                 (DiagramSpec(T3, alpha_minus=(0, 1), beta_minus=(1,)), [1, 3, 3])]
        for spec, expected in cases:
            self.assertEqual(expected, sorted(row["markings"] for row in count_breakdown(spec)))

    def test_markings_pass_check(self):
        spec = DiagramSpec(T3, alpha_minus=(0, 1), beta_minus=(1,))
        for diagram in enumerate_diagrams(spec):
            for marking in enumerate_markings(diagram, spec):
                self.assertEqual([], check_marking(diagram, marking, spec))

    def test_check_marking_rejects(self):
        spec = DiagramSpec(T3, genus=1)
        marking = enumerate_markings(GENUS_ONE_CUBIC, spec)[0]
        # swap the labels of the top floor and a bottom tail
        swapped = dict(marking.label_of)
        swapped['floor:3'], swapped['edge:0'] = swapped['edge:0'], swapped['floor:3']
        codes = [code for code, _ in check_marking(GENUS_ONE_CUBIC, Marking.from_assignment(swapped), spec)]
        self.assertIn('order', codes)
        short = Marking(marking.labels[:-1])
        self.assertIn('bijection', [code for code, _ in check_marking(GENUS_ONE_CUBIC, short, spec)])

    def test_multiplicity(self):
        self.assertEqual(4, multiplicity(_weight_two_cubic([1, 1, 1]), DiagramSpec(T3, beta_minus=(3,))))
        self.assertEqual(8, multiplicity(_weight_two_cubic([1, 2]), DiagramSpec(T3, beta_minus=(1, 1))))
        self.assertEqual(1, multiplicity(GENUS_ONE_CUBIC, DiagramSpec(T3, genus=1)))

    def test_golden_counts(self):
        self.assertEqual(12, count(DiagramSpec(T3, beta_minus=(3,))))
        self.assertEqual(36, count(DiagramSpec(T3, beta_minus=(1, 1))))
        self.assertEqual(10, count(DiagramSpec(T3, alpha_minus=(0, 1), beta_minus=(1,))))
        self.assertEqual(1, count(DiagramSpec(T3, genus=1)))
        self.assertEqual(1, count(DiagramSpec(LatticePolygon.triangle(1))))

    def test_fixed_point_conditions(self):
        # simple fixed points on the bottom line are ordinary point conditions
        for alpha in [(1,), (2,), (3,)]:
            self.assertEqual(12, count(DiagramSpec(T3, alpha_minus=alpha)))
        T2 = LatticePolygon.triangle(2)
        self.assertEqual(1, count(DiagramSpec(T2, alpha_minus=(1,))))
        self.assertEqual(1, count(DiagramSpec(T2, alpha_minus=(2,))))
        self.assertEqual(10, count(DiagramSpec(T3, direction=(0, -1), alpha_plus=(0, 1), beta_plus=(1,))))

    def test_fixed_point_markings(self):
        spec = DiagramSpec(T3, alpha_minus=(3,))
        for diagram in enumerate_diagrams(spec):
            markings = enumerate_markings(diagram, spec)
            self.assertTrue(markings)
            for marking in markings:
                self.assertEqual([-2, -1, 0], [label for label, _ in marking.labels[:3]])
                self.assertEqual([], check_marking(diagram, marking, spec))

    def test_toric_surface_counts(self):
        self.assertEqual(4, count(DiagramSpec(LatticePolygon.diamond())))
        self.assertEqual(1, count(DiagramSpec(LatticePolygon.diamond(), genus=1)))
        self.assertEqual(12, count(DiagramSpec(LatticePolygon.octic_quadrilateral(), genus=1)))
        self.assertEqual(16, count(DiagramSpec(LatticePolygon.octic_quadrilateral())))
        self.assertEqual(1, len(enumerate_diagrams(DiagramSpec(LatticePolygon.diamond()))))

    def test_validate_toric_surfaces(self):
        for polygon in (LatticePolygon.diamond(), LatticePolygon.octic_quadrilateral()):
            for genus in (0, 1):
                spec = DiagramSpec(polygon, genus=genus)
                for diagram in enumerate_diagrams(spec):
                    report = validate(diagram, spec)
                    self.assertTrue(report)
                    self.assertEqual([], report.codes())
                    self.assertTrue(cardinality_check(diagram, spec))
                    self.assertEqual(genus, diagram_genus(diagram))

    def test_trapezium_top_genus(self):
        spec = DiagramSpec(LatticePolygon.trapezium(2, 3, 2), genus=8)
        diagrams = enumerate_diagrams(spec)
        self.assertEqual(1, len(diagrams))
        self.assertEqual(8, diagram_genus(diagrams[0]))
        self.assertEqual(1, count(spec))

    def test_plane_quartics(self):
        self.assertEqual(620, count(DiagramSpec(LatticePolygon.triangle(4), beta_minus=(4,))))

    def test_count_with_pool(self):
        self.assertEqual(12, count(DiagramSpec(T3), threads=2))

if __name__ == "__main__":
    unittest.main()
