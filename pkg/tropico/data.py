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
import os
import re
import logging
# Local
from tropico.lattice import LatticePolygon
###############################################################################

class Data:
    '''
    Runtime configuration read from the environment, and the named polygons
    accepted in place of a polygon file.
    '''
    # TROPICO_THREADS is the default worker count and the cap on --threads
    threads_var = "TROPICO_THREADS"
    if threads_var in os.environ:
        try:
            THREADS_CAP = max(1, int(os.environ[threads_var]))
        except ValueError:
            logging.warning("Ignoring non-integer %s=%s" % (threads_var, os.environ[threads_var]))
            THREADS_CAP = None
    else:
        THREADS_CAP = None

    TRIANGLE        = re.compile(r'^T(\d+)$')
    TRAPEZIUM       = re.compile(r'^Tz(\d+)_(\d+)_(\d+)$')
    NAMED           = {'diamond': LatticePolygon.diamond,
                       'octic': LatticePolygon.octic_quadrilateral,
                       'cubic-singular': lambda: LatticePolygon(((0, 0), (2, 1), (1, 2)))}

    @classmethod
    def threads(cls, requested=None):
        '''
        Number of workers to use. Without a request this is TROPICO_THREADS
        when it is set and 1 otherwise; a request is capped by TROPICO_THREADS.
        '''
        threads = 1 if requested is None else max(1, int(requested))
        if cls.THREADS_CAP is not None:
            threads = min(threads, cls.THREADS_CAP) if requested is not None else cls.THREADS_CAP
        return threads

    @classmethod
    def fixture(cls, name):
        '''
        Parameters
        ----------
        name    - String. T<d>, Tz<r>_<a>_<b>, diamond, octic or cubic-singular

        Output
        ------
        LatticePolygon, or None when the name is not a fixture.
        '''
        match = cls.TRIANGLE.match(name)
        if match:
            return LatticePolygon.triangle(int(match.group(1)))
        match = cls.TRAPEZIUM.match(name)
        if match:
            r, a, b = (int(group) for group in match.groups())
            return LatticePolygon.trapezium(r, a, b)
        if name in cls.NAMED:
            return cls.NAMED[name]()
        return None
