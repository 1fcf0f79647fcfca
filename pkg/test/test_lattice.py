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

import numpy as np

###############################################################################

sys.path = [os.path.join(os.path.dirname(os.path.realpath(__file__)),'..')]+sys.path

from tropico.errors import (InvalidPolygon, NonPositiveDeterminant,
                            NotPrimitive, NotTransverse)
from tropico.lattice import (LatticePolygon, LatticeVector, UnimodularMap,
                             det, direction_data, integral_length,
                             is_transverse, pick_identity,
                             transverse_directions, vertex_singularity)

###############################################################################

class Tests(unittest.TestCase):

    def test_integral_length(self):
        self.assertEqual(3, integral_length((0, 0), (3, 0)))
        self.assertEqual(2, integral_length((0, 0), (2, 4)))
        self.assertEqual(2, integral_length((2, 2), (0, 0)))
        self.assertEqual(0, integral_length((1, 1), (1, 1)))

    def test_double_area(self):
        self.assertEqual(9, LatticePolygon.triangle(3).double_area)
        self.assertEqual(2, LatticePolygon.rectangle(1, 1).double_area)
        self.assertEqual(4, LatticePolygon.diamond().double_area)

    def test_point_counts(self):
        T3 = LatticePolygon.triangle(3)
        self.assertEqual(1, T3.interior_points)
        self.assertEqual(9, T3.boundary_points)
        self.assertEqual(8, LatticePolygon.trapezium(2, 3, 2).interior_points)
        diamond = LatticePolygon.diamond()
        self.assertEqual(1, diamond.interior_points)
        self.assertEqual(4, diamond.boundary_points)
        self.assertEqual(10, len(T3.lattice_points()))

    def test_pick_identity(self):
        for degree in range(1, 7):
            self.assertTrue(pick_identity(LatticePolygon.triangle(degree)))
        self.assertTrue(pick_identity(LatticePolygon.trapezium(2, 3, 2)))

        rng = np.random.default_rng(7)
        tried = 0
        while tried < 100:
            points = rng.integers(-6, 7, size=(int(rng.integers(3, 10)), 2))
            try:
                polygon = LatticePolygon.from_points([tuple(int(c) for c in point) for point in points])
            except InvalidPolygon:
                continue
            tried += 1
            self.assertTrue(pick_identity(polygon), polygon.as_json())

    def test_polygon_normal_form(self):
        clockwise = LatticePolygon(((0, 0), (0, 3), (3, 0)))
        self.assertEqual(LatticePolygon.triangle(3), clockwise)
        # a vertex inside an edge is dropped
        padded = LatticePolygon(((0, 0), (1, 0), (3, 0), (0, 3)))
        self.assertEqual(LatticePolygon.triangle(3).vertices, padded.vertices)
        self.assertEqual(LatticeVector(0, 0), padded.vertices[0])

    def test_invalid_polygons(self):
        with self.assertRaises(InvalidPolygon):
            LatticePolygon(((0, 0), (1, 1), (2, 2)))
        with self.assertRaises(InvalidPolygon):
            LatticePolygon(((0, 0), (2, 0), (1, 1), (2, 2), (0, 2)))
        with self.assertRaises(InvalidPolygon):
            LatticePolygon.from_points([(0, 0), (1, 0)])

    def test_from_points(self):
        hull = LatticePolygon.from_points([(0, 0), (1, 1), (2, 0), (0, 2), (2, 2), (1, 0)])
        self.assertEqual(LatticePolygon.rectangle(2, 2), hull)

    def test_vertex_singularity(self):
        self.assertEqual((1, 0), vertex_singularity((-2, 1), (-1, 0)))
        self.assertEqual((2, 1), vertex_singularity((0, -1), (2, -1)))
        self.assertEqual((3, 1), vertex_singularity((0, -1), (3, -1)))
        self.assertEqual((3, 2), vertex_singularity((1, 1), (-1, 2)))
        with self.assertRaises(NonPositiveDeterminant):
            vertex_singularity((-1, 2), (1, 1))
        with self.assertRaises(NotPrimitive):
            vertex_singularity((2, 0), (0, 1))

    def test_singularities_of_fixtures(self):
        self.assertEqual([(1, 0)] * 3, LatticePolygon.triangle(3).singularities())
        self.assertIn((3, 2), LatticePolygon(((0, 0), (2, 1), (1, 2))).singularities())

    def test_transversality(self):
        for degree in range(1, 5):
            self.assertTrue(is_transverse(LatticePolygon.triangle(degree), (0, 1)))
        self.assertFalse(is_transverse(LatticePolygon.trapezium(2, 3, 2), (1, 0)))
        self.assertFalse(is_transverse(LatticePolygon(((0, 0), (2, 1), (1, 2))), (0, 1)))
        self.assertIn(LatticeVector(0, 1), transverse_directions(LatticePolygon.triangle(3)))
        with self.assertRaises(NotTransverse):
            direction_data(LatticePolygon(((0, 0), (2, 1), (1, 2))), (0, 1))

    def test_direction_data_triangle(self):
        data = direction_data(LatticePolygon.triangle(3), (0, 1))
        self.assertEqual((LatticeVector(1, 0),) * 3, data.left)
        self.assertEqual((LatticeVector(1, 1),) * 3, data.right)
        self.assertEqual(3, data.d_height)
        self.assertEqual(3, data.d_minus)
        self.assertEqual(0, data.d_plus)

    def test_direction_data_trapezium(self):
        data = direction_data(LatticePolygon.trapezium(2, 3, 2), (0, 1))
        self.assertEqual(3, data.d_height)
        self.assertEqual(8, data.d_minus)
        self.assertEqual(2, data.d_plus)
        self.assertEqual((LatticeVector(1, 2),) * 3, data.right)

    def test_direction_data_octic(self):
        data = direction_data(LatticePolygon.octic_quadrilateral(), (0, 1))
        expected = (LatticeVector(1, -1), LatticeVector(1, 1), LatticeVector(1, 1))
        self.assertEqual(expected, data.left)
        self.assertEqual(expected, data.right)
        self.assertEqual(0, data.d_plus)
        self.assertEqual(0, data.d_minus)

    def test_unimodular_map(self):
        for direction in [(1, 0), (2, 3), (-1, 2), (0, -1), (-3, -2), (5, -7)]:
            unimodular = UnimodularMap.sending_to_vertical(direction)
            self.assertEqual(LatticeVector(0, 1), unimodular.apply_vector(direction))
            self.assertTrue(UnimodularMap(*_compose(unimodular, unimodular.inverse())).is_identity())
        # perp commutes with the polygon action
        unimodular = UnimodularMap.sending_to_vertical((2, 3))
        u = LatticeVector(1, 4)
        self.assertEqual(unimodular.dual().apply_vector(u.perp()), unimodular.apply_vector(u).perp())
        with self.assertRaises(NotPrimitive):
            UnimodularMap.sending_to_vertical((2, 2))

    def test_transport_keeps_invariants(self):
        polygon = LatticePolygon.trapezium(2, 3, 2)
        moved = UnimodularMap.sending_to_vertical((1, 2)).apply_polygon(polygon)
        self.assertEqual(polygon.double_area, moved.double_area)
        self.assertEqual(polygon.interior_points, moved.interior_points)

    def test_det(self):
        self.assertEqual(1, det(LatticeVector(1, 0), LatticeVector(0, 1)))
        self.assertEqual(-3, det(LatticeVector(1, 1), LatticeVector(2, -1)))

def _compose(first, second):
    return (first.m11 * second.m11 + first.m12 * second.m21, first.m11 * second.m12 + first.m12 * second.m22,
            first.m21 * second.m11 + first.m22 * second.m21, first.m21 * second.m12 + first.m22 * second.m22)

if __name__ == "__main__":
    unittest.main()
