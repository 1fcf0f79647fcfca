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
'''
Exceptions raised by tropico. The CLI reports the class name of any
TropicoError in its JSON error payload.
'''

class TropicoError(Exception):
    '''Base class for every domain error.'''

# lattice
class NotPrimitive(TropicoError): ...
class NonPositiveDeterminant(TropicoError): ...
class InvalidPolygon(TropicoError): ...
class NotTransverse(TropicoError): ...

# diagram
class InvalidSpec(TropicoError): ...
class SideBoundaryCondition(TropicoError): ...
class InvalidDiagram(TropicoError): ...
class Disconnected(TropicoError): ...
class InvalidMarking(TropicoError): ...

# tropical
class InvalidPolynomial(TropicoError): ...
class SegmentSupport(TropicoError): ...
class NotClosed(TropicoError): ...
class UnsupportedShape(TropicoError): ...
class NonReduced(TropicoError): ...
class NotTrivalent(TropicoError): ...
class NonTransverse(TropicoError): ...
class InvalidCurve(TropicoError): ...

# realize
class SpacingTooSmall(TropicoError): ...

# internal consistency checks
class InvariantViolation(TropicoError): ...
class GenusMismatch(InvariantViolation): ...
