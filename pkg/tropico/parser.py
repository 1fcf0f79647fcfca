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
import json
import logging
# Local
from tropico.data import Data
from tropico.diagram import Edge, Floor, FloorDiagram, Marking, parse_element
from tropico.errors import (InvalidDiagram, InvalidMarking, InvalidPolygon,
                            InvalidPolynomial, InvalidSpec)
from tropico.lattice import LatticePolygon, LatticeVector
from tropico.toolbox import n_sequence, parse_rational
from tropico.tropical import TropicalPolynomial
###############################################################################

class Parser:
    '''
    A collection of functions to parse the JSON inputs and the command line
    values of tropico.
    '''

    @staticmethod
    def read_json(path):
        logging.debug("Reading %s" % path)
        with open(path) as json_io:
            return json.load(json_io)

    @staticmethod
    def parse_polygon(value):
        '''
        Parameters
        ----------
        value   - String. A fixture name (T3, diamond, ...) or the path of a
                  JSON file {"vertices": [[x, y], ...]}

        Output
        ------
        LatticePolygon
        '''
        polygon = Data.fixture(value)
        if polygon is not None:
            return polygon
        content = Parser.read_json(value)
        vertices = content["vertices"] if isinstance(content, dict) and "vertices" in content else content
        try:
            return LatticePolygon(tuple(tuple(vertex) for vertex in vertices))
        except (TypeError, ValueError) as error:
            raise InvalidPolygon("Malformed polygon in %s: %s" % (value, error))

    @staticmethod
    def parse_sequence(text):
        '''"a1,a2,..." to an N-sequence; an empty string is the zero sequence.'''
        if text is None:
            return None
        text = text.strip()
        if not text:
            return ()
        try:
            return n_sequence(int(entry) for entry in text.split(','))
        except ValueError as error:
            raise InvalidSpec("Malformed sequence %r: %s" % (text, error))

    @staticmethod
    def parse_direction(text):
        try:
            x, y = (int(entry) for entry in text.split(','))
        except ValueError:
            raise InvalidSpec("Direction must read dx,dy: %r" % text)
        return LatticeVector(x, y)

    @staticmethod
    def parse_diagram(content):
        try:
            floors = tuple(Floor(int(floor["id"]), int(floor["theta"])) for floor in content["floors"])
            edges = tuple(Edge(int(edge["from"]), int(edge["to"]), int(edge["w"])) for edge in content["edges"])
            return FloorDiagram(floors, tuple(content.get("inf_minus", ())),
                                tuple(content.get("inf_plus", ())), edges)
        except (KeyError, TypeError, ValueError) as error:
            raise InvalidDiagram("Malformed diagram: %s" % error)

    @staticmethod
    def parse_marking(content):
        try:
            labels = content["labels"]
            for element in labels.values():
                parse_element(element)
            return Marking(tuple((int(label), element) for label, element in labels.items()))
        except (KeyError, TypeError, ValueError, AttributeError, InvalidDiagram) as error:
            raise InvalidMarking("Malformed marking: %s" % error)

    @staticmethod
    def parse_polynomial(content):
        '''{"terms": [{"i": [i1, i2], "a": "p/q"}, ...]}'''
        try:
            return TropicalPolynomial(tuple((tuple(term["i"]), parse_rational(term["a"]))
                                            for term in content["terms"]))
        except (KeyError, TypeError, ValueError) as error:
            raise InvalidPolynomial("Malformed polynomial: %s" % error)
