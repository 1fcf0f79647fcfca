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
from fractions import Fraction

###############################################################################

import json
import tempfile
from unittest import mock

###############################################################################

sys.path = [os.path.join(os.path.dirname(os.path.realpath(__file__)),'..')]+sys.path

from tropico.data import Data
from tropico.diagram import DiagramSpec, enumerate_diagrams, enumerate_markings
from tropico.errors import (InvalidDiagram, InvalidMarking, InvalidPolygon,
                            InvalidPolynomial, InvalidSpec)
from tropico.lattice import LatticePolygon, LatticeVector
from tropico.parser import Parser

###############################################################################

class Tests(unittest.TestCase):

    def test_fixtures(self):
        self.assertEqual(LatticePolygon.triangle(4), Parser.parse_polygon('T4'))
        self.assertEqual(LatticePolygon.trapezium(2, 3, 2), Parser.parse_polygon('Tz2_3_2'))
        self.assertEqual(LatticePolygon.diamond(), Parser.parse_polygon('diamond'))
        self.assertIsNone(Data.fixture('T'))

    def test_polygon_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            good, bad = os.path.join(tmp, 'good.json'), os.path.join(tmp, 'bad.json')
            with open(good, 'w') as out_io:
                json.dump([[0, 0], [2, 0], [0, 2]], out_io)
            with open(bad, 'w') as out_io:
                json.dump({"vertices": [[0, 0], [1, 1], [2, 2]]}, out_io)
            self.assertEqual(LatticePolygon.triangle(2), Parser.parse_polygon(good))
            with self.assertRaises(InvalidPolygon):
                Parser.parse_polygon(bad)

    def test_sequences_and_directions(self):
        self.assertEqual((0, 1), Parser.parse_sequence("0,1,0"))
        self.assertEqual((), Parser.parse_sequence(""))
        self.assertIsNone(Parser.parse_sequence(None))
        with self.assertRaises(InvalidSpec):
            Parser.parse_sequence("1,-2")
        self.assertEqual(LatticeVector(-1, 2), Parser.parse_direction("-1,2"))
        with self.assertRaises(InvalidSpec):
            Parser.parse_direction("1")

    def test_diagram_and_marking(self):
        spec = DiagramSpec(LatticePolygon.triangle(3), genus=1)
        diagram = enumerate_diagrams(spec)[0]
        marking = enumerate_markings(diagram, spec)[0]
        self.assertEqual(diagram, Parser.parse_diagram(json.loads(json.dumps(diagram.as_json()))))
        self.assertEqual(marking, Parser.parse_marking(json.loads(json.dumps(marking.as_json()))))
        with self.assertRaises(InvalidDiagram):
            Parser.parse_diagram({"floors": [{"id": 1}], "edges": []})
        with self.assertRaises(InvalidMarking):
            Parser.parse_marking({"labels": {"1": "vertex:1"}})

    def test_polynomial(self):
        polynomial = Parser.parse_polynomial({"terms": [{"i": [0, 0], "a": "1/2"}, {"i": [1, 0], "a": 3}]})
        self.assertEqual(Fraction(1, 2), polynomial.coefficients[LatticeVector(0, 0)])
        with self.assertRaises(InvalidPolynomial):
            Parser.parse_polynomial({"terms": [{"i": [0, 0]}]})

    def test_threads(self):
        with mock.patch.object(Data, 'THREADS_CAP', None):
            self.assertEqual(1, Data.threads())
            self.assertEqual(4, Data.threads(4))
        with mock.patch.object(Data, 'THREADS_CAP', 2):
            self.assertEqual(2, Data.threads())
            self.assertEqual(2, Data.threads(8))
            self.assertEqual(1, Data.threads(1))

if __name__ == "__main__":
    unittest.main()
