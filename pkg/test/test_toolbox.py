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

sys.path = [os.path.join(os.path.dirname(os.path.realpath(__file__)),'..')]+sys.path

from tropico.toolbox import (format_rational, n_sequence, pairs,
                             parse_rational, seq_from_weights, seq_power,
                             seq_size, seq_weighted, seq_weights)

###############################################################################

class Tests(unittest.TestCase):

    def test_n_sequence(self):
        self.assertEqual((0, 1), n_sequence([0, 1, 0, 0]))
        self.assertEqual((), n_sequence([0, 0]))
        with self.assertRaises(ValueError):
            n_sequence([1, -1])

    def test_sequence_statistics(self):
        sequence = (2, 0, 1)
        self.assertEqual(3, seq_size(sequence))
        self.assertEqual(5, seq_weighted(sequence))
        self.assertEqual(3, seq_power(sequence))
        self.assertEqual([1, 1, 3], seq_weights(sequence))
        self.assertEqual(sequence, seq_from_weights([3, 1, 1]))
        self.assertEqual((), seq_from_weights([]))
        self.assertEqual(1, seq_power(()))

    def test_rationals(self):
        self.assertEqual("-3/2", format_rational(Fraction(6, -4)))
        self.assertEqual("4", format_rational(Fraction(8, 2)))
        self.assertEqual(Fraction(-3, 2), parse_rational(" -3/2 "))
        self.assertEqual(Fraction(7), parse_rational(7))
        for bad in [True, 0.5, "x", None]:
            with self.assertRaises(ValueError):
                parse_rational(bad)

    def test_pairs(self):
        self.assertEqual([(0, 1), (0, 2), (1, 2)], list(pairs("abc")))
        self.assertEqual([], list(pairs([1])))

if __name__ == "__main__":
    unittest.main()
