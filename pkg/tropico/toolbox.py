#!/usr/bin/env python3
# pylint: disable=line-too-long
'''
Small helpers shared by the modules: N-sequence arithmetic, exact rational
formatting and list sharding for the worker pools.
'''
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

from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

def n_sequence(values: Iterable[int]) -> Tuple[int, ...]:
    """
    Normalise an N-sequence: non-negative integers, index k-1 holding the
    entry for order k, trailing zeros dropped.

    :param values: entries a_1, a_2, ...
    :returns: tuple without trailing zeros
    :raises ValueError: on a negative entry
    """
    entries = [int(value) for value in values]
    if any(value < 0 for value in entries):
        raise ValueError("N-sequence entries must be non-negative: %s" % entries)
    while entries and entries[-1] == 0:
        entries.pop()
    return tuple(entries)

def seq_size(sequence: Sequence[int]) -> int:
    '''|a| = sum of a_k'''
    return sum(sequence)

def seq_weighted(sequence: Sequence[int]) -> int:
    '''Ia = sum of k * a_k'''
    return sum(k * a_k for k, a_k in enumerate(sequence, 1))

def seq_power(sequence: Sequence[int]) -> int:
    '''I^a = product of k ** a_k'''
    result = 1
    for k, a_k in enumerate(sequence, 1):
        result *= k ** a_k
    return result

def seq_weights(sequence: Sequence[int]) -> List[int]:
    '''The multiset of orders: k repeated a_k times, ascending.'''
    return [k for k, a_k in enumerate(sequence, 1) for _ in range(a_k)]

def seq_from_weights(weights: Iterable[int]) -> Tuple[int, ...]:
    '''Inverse of seq_weights: a_k counts the entries equal to k.'''
    counts = Counter(weights)
    return n_sequence(counts.get(k, 0) for k in range(1, max(counts, default=0) + 1))

def format_rational(value) -> str:
    '''Canonical text for a rational: "p/q" reduced with q > 0, or "p" when q = 1.'''
    return str(Fraction(value))

def parse_rational(text) -> Fraction:
    '''Inverse of format_rational; integers and "p/q" strings are accepted.'''
    if isinstance(text, bool):
        raise ValueError("Not a rational: %r" % (text,))
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError("Not a rational: %r" % (text,))

def pairs(items: Sequence) -> Iterator[Tuple[int, int]]:
    '''Index pairs (i, j) with i < j.'''
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield i, j
