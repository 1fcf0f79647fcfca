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
Exact toolkit for convex lattice polygons: lattice invariants, cyclic
quotient singularity types, transversality with respect to a direction and
the left/right direction lists feeding floor diagrams.
'''
# Imports
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, List, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:
    # sympy < 1.13
    from sympy.core.numbers import igcdex

# Local
from tropico.errors import (InvalidPolygon, InvariantViolation,
                            NonPositiveDeterminant, NotPrimitive, NotTransverse)
###############################################################################

@dataclass(frozen=True, order=True)
class LatticeVector:
    '''
    An integral vector (or lattice point) of the plane.
    '''
    x: int
    y: int

    def __post_init__(self):
        if isinstance(self.x, bool) or isinstance(self.y, bool) \
                or int(self.x) != self.x or int(self.y) != self.y:
            raise ValueError("Lattice vectors need integer coordinates: (%s, %s)" % (self.x, self.y))
        object.__setattr__(self, 'x', int(self.x))
        object.__setattr__(self, 'y', int(self.y))

    @classmethod
    def of(cls, value):
        if isinstance(value, cls):
            return value
        x, y = value
        return cls(x, y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other):
        return LatticeVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return LatticeVector(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return LatticeVector(-self.x, -self.y)

    def scaled(self, factor: int):
        return LatticeVector(factor * self.x, factor * self.y)

    def dot(self, other) -> int:
        return self.x * other.x + self.y * other.y

    def content(self) -> int:
        '''gcd(|x|, |y|), with gcd(0, n) = n.'''
        return gcd(abs(self.x), abs(self.y))

    def is_primitive(self) -> bool:
        return self.content() == 1

    def primitive(self):
        '''The primitive vector pointing the same way.'''
        content = self.content()
        if content == 0:
            raise NotPrimitive("The zero vector has no primitive direction")
        return LatticeVector(self.x // content, self.y // content)

    def perp(self):
        '''Rotation by +pi/2.'''
        return LatticeVector(-self.y, self.x)

    def as_list(self) -> List[int]:
        return [self.x, self.y]

    def __repr__(self):
        return "(%i,%i)" % (self.x, self.y)

def det(u, v):
    '''det(u, v) = u.x v.y - u.y v.x; works on anything with x and y.'''
    return u.x * v.y - u.y * v.x

def integral_length(p, q) -> int:
    '''
    Number of lattice points on the segment [p, q] minus one.

    Parameters
    ----------
    p   - LatticeVector or pair. First end point
    q   - LatticeVector or pair. Second end point
    '''
    p, q = LatticeVector.of(p), LatticeVector.of(q)
    return (q - p).content()

def _signed_double_area(points):
    total = 0
    for index, point in enumerate(points):
        following = points[(index + 1) % len(points)]
        total += point.x * following.y - following.x * point.y
    return total

def _convex_hull(points: Iterable[LatticeVector]) -> List[LatticeVector]:
    # Monotone chain; collinear points are dropped, output is counterclockwise
    # starting at the smallest point.
    ordered = sorted(set(points))
    if len(ordered) < 3:
        return ordered

    def half_hull(sequence):
        chain = []
        for point in sequence:
            while len(chain) >= 2 and det(chain[-1] - chain[-2], point - chain[-1]) <= 0:
                chain.pop()
            chain.append(point)
        return chain

    lower = half_hull(ordered)
    upper = half_hull(reversed(ordered))
    return lower[:-1] + upper[:-1]

def _drop_redundant(points):
    changed = True
    while changed and len(points) >= 3:
        changed = False
        for index in range(len(points)):
            previous = points[index - 1]
            current = points[index]
            following = points[(index + 1) % len(points)]
            incoming = current - previous
            outgoing = following - current
            if current == previous or (det(incoming, outgoing) == 0 and incoming.dot(outgoing) > 0):
                del points[index]
                changed = True
                break
    return points

@dataclass(frozen=True)
class LatticePolygon:
    '''
    A strictly convex polygon with integral vertices, stored counterclockwise
    starting from its smallest vertex (lexicographic in (x, y)). Clockwise
    input is reversed; vertices in the relative interior of an edge are
    dropped. Segments, points and non-convex input raise InvalidPolygon.
    '''
    vertices: Tuple[LatticeVector, ...]

    def __post_init__(self):
        points = [LatticeVector.of(vertex) for vertex in self.vertices]
        if len(set(points)) < 3:
            raise InvalidPolygon("A polygon needs at least three distinct vertices, got %s" % points)

        signed_area = _signed_double_area(points)
        if signed_area == 0:
            raise InvalidPolygon("Degenerate polygon (zero area): %s" % points)
        if signed_area < 0:
            points.reverse()

        points = _drop_redundant(points)
        hull = _convex_hull(points)
        if len(hull) < 3:
            raise InvalidPolygon("Degenerate polygon: %s" % points)

        start = points.index(hull[0]) if hull[0] in points else -1
        rotated = points[start:] + points[:start]
        if start < 0 or rotated != hull:
            raise InvalidPolygon("Polygon is not convex: %s" % points)

        object.__setattr__(self, 'vertices', tuple(hull))

    @classmethod
    def from_points(cls, points):
        '''Convex hull of a finite set of lattice points.'''
        hull = _convex_hull(LatticeVector.of(point) for point in points)
        if len(hull) < 3:
            raise InvalidPolygon("Points are collinear: %s" % sorted(set(LatticeVector.of(p) for p in points)))
        return cls(tuple(hull))

    # Fixtures
    @classmethod
    def triangle(cls, degree: int):
        '''T_d, the Newton polygon of plane curves of degree d.'''
        return cls(((0, 0), (degree, 0), (0, degree)))

    @classmethod
    def trapezium(cls, r: int, a: int, b: int):
        '''
        Tz^r_{a,b}: height a, width b + (a - y) r at height y.
        '''
        if a < 1 or r < 0 or b < 0 or b + a * r < 1:
            raise InvalidPolygon("Trapezium parameters out of range: r=%i a=%i b=%i" % (r, a, b))
        vertices = [(0, 0), (b + a * r, 0), (b, a), (0, a)]
        if b == 0:
            vertices = [(0, 0), (a * r, 0), (0, a)]
        return cls(tuple(vertices))

    @classmethod
    def diamond(cls):
        return cls(((0, 1), (1, 0), (2, 1), (1, 2)))

    @classmethod
    def octic_quadrilateral(cls):
        return cls(((0, 0), (1, 1), (3, -1), (2, -2)))

    @classmethod
    def rectangle(cls, width: int, height: int):
        return cls(((0, 0), (width, 0), (width, height), (0, height)))

    def edges(self) -> List[Tuple[LatticeVector, LatticeVector]]:
        count = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % count]) for i in range(count)]

    @cached_property
    def double_area(self) -> int:
        return _signed_double_area(self.vertices)

    @cached_property
    def boundary_points(self) -> int:
        return sum(integral_length(p, q) for p, q in self.edges())

    @cached_property
    def interior_points(self) -> int:
        return sum(1 for point in self._box_points() if self.contains(point, strict=True))

    def lattice_points(self) -> List[LatticeVector]:
        '''All lattice points of the closed polygon, sorted.'''
        return [point for point in self._box_points() if self.contains(point)]

    def _box_points(self):
        xs = [vertex.x for vertex in self.vertices]
        ys = [vertex.y for vertex in self.vertices]
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                yield LatticeVector(x, y)

    def contains(self, point, strict: bool = False) -> bool:
        '''
        Whether a (possibly rational) point lies in the polygon.

        Parameters
        ----------
        point   - pair of rationals or LatticeVector.
        strict  - Boolean. Exclude the boundary.
        '''
        x, y = point
        for p, q in self.edges():
            side = (q.x - p.x) * (y - p.y) - (q.y - p.y) * (x - p.x)
            if side < 0 or (strict and side == 0):
                return False
        return True

    def translated(self, offset):
        offset = LatticeVector.of(offset)
        return LatticePolygon(tuple(vertex + offset for vertex in self.vertices))

    def translated_to_origin(self):
        '''Translate so that the bounding box starts at (0, 0).'''
        return self.translated((-min(v.x for v in self.vertices),
                                -min(v.y for v in self.vertices)))

    def same_up_to_translation(self, other) -> bool:
        return self.translated_to_origin() == other.translated_to_origin()

    def singularities(self) -> List[Tuple[int, int]]:
        '''
        Per vertex (order, k) of the toric surface point, vertices in stored order.
        '''
        result = list()
        count = len(self.vertices)
        for index, vertex in enumerate(self.vertices):
            u_prime = (self.vertices[(index + 1) % count] - vertex).primitive()
            u_second = (self.vertices[index - 1] - vertex).primitive()
            result.append(vertex_singularity(u_prime, u_second))
        return result

    def as_json(self):
        return {"vertices": [vertex.as_list() for vertex in self.vertices]}

def pick_identity(polygon: LatticePolygon) -> bool:
    '''2A = 2 I + B - 2, with the point counts taken by enumeration.'''
    return polygon.double_area == 2 * polygon.interior_points + polygon.boundary_points - 2

def vertex_singularity(u_prime, u_second) -> Tuple[int, int]:
    '''
    Type 1/order (1, k) of the cyclic quotient singularity of the toric
    surface at a vertex whose edges leave along u_prime and u_second.

    Parameters
    ----------
    u_prime     - LatticeVector. Primitive direction of the first edge
    u_second    - LatticeVector. Primitive direction of the second edge, with
                  det(u_prime, u_second) > 0

    Output
    ------
    Tuple (order, k); (1, 0) is a smooth point.
    '''
    u_prime, u_second = LatticeVector.of(u_prime), LatticeVector.of(u_second)
    for vector in (u_prime, u_second):
        if not vector.is_primitive():
            raise NotPrimitive("Edge direction %s is not primitive" % (vector,))

    order = det(u_prime, u_second)
    if order <= 0:
        raise NonPositiveDeterminant("det(%s, %s) = %i" % (u_prime, u_second, order))
    if order == 1:
        return (1, 0)

    # e2 = perp(u'), and order * e1 = -perp(u'') + k e2 must be integral.
    e2 = u_prime.perp()
    target = -u_second.perp()
    s, t, _ = igcdex(e2.x, e2.y)
    k = int(-(s * target.x + t * target.y)) % order
    if (target.x + k * e2.x) % order or (target.y + k * e2.y) % order:
        raise InvariantViolation("No normal form for %s, %s" % (u_prime, u_second))
    return (order, k)

###############################################################################

@dataclass(frozen=True)
class UnimodularMap:
    '''
    An element of SL2(Z) acting on the tropical plane. Newton polygons
    transform by the inverse transpose so that perp(M u) = M^{-T} perp(u).
    '''
    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.m11 * self.m22 - self.m12 * self.m21 != 1:
            raise ValueError("Not an element of SL2(Z): %s" % (self,))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def sending_to_vertical(cls, direction):
        '''The map M with M d = (0, 1).'''
        direction = LatticeVector.of(direction)
        if not direction.is_primitive():
            raise NotPrimitive("Direction %s is not primitive" % (direction,))
        if direction == LatticeVector(0, 1):
            return cls.identity()
        s, t, _ = igcdex(direction.x, direction.y)
        return cls(direction.y, -direction.x, int(s), int(t))

    def inverse(self):
        return UnimodularMap(self.m22, -self.m12, -self.m21, self.m11)

    def dual(self):
        '''M^{-T}, the action on Newton polygons.'''
        return UnimodularMap(self.m22, -self.m21, -self.m12, self.m11)

    def apply_vector(self, vector) -> LatticeVector:
        vector = LatticeVector.of(vector)
        return LatticeVector(self.m11 * vector.x + self.m12 * vector.y,
                             self.m21 * vector.x + self.m22 * vector.y)

    def apply_point(self, point) -> Tuple[Fraction, Fraction]:
        x, y = Fraction(point[0]), Fraction(point[1])
        return (self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)

    def apply_polygon(self, polygon: LatticePolygon) -> LatticePolygon:
        dual = self.dual()
        return LatticePolygon(tuple(dual.apply_vector(vertex) for vertex in polygon.vertices))

    def is_identity(self) -> bool:
        return self == UnimodularMap.identity()

###############################################################################

@dataclass(frozen=True)
class DirectionData:
    '''
    Left and right direction lists of a polygon with respect to d, each
    stored sorted, plus the top/bottom lengths and the d-height.
    '''
    d: LatticeVector
    left: Tuple[LatticeVector, ...]
    right: Tuple[LatticeVector, ...]
    d_plus: int
    d_minus: int
    d_height: int

    def __post_init__(self):
        if not len(self.left) == len(self.right) == self.d_height:
            raise InvariantViolation("Direction lists of unequal length: %s / %s" % (self.left, self.right))

    # Directions read as (1, m) once d = (0, 1).
    def left_slopes(self) -> List[int]:
        return sorted(vector.y for vector in self.left)

    def right_slopes(self) -> List[int]:
        return sorted(vector.y for vector in self.right)

    def as_json(self):
        return {"d": self.d.as_list(),
                "D_left": [vector.as_list() for vector in self.left],
                "D_right": [vector.as_list() for vector in self.right],
                "d_plus": self.d_plus,
                "d_minus": self.d_minus,
                "d_height": self.d_height}

LEFT, RIGHT, TOP, BOTTOM = 'left', 'right', 'top', 'bottom'

def boundary_sides(polygon: LatticePolygon, d) -> List[Tuple[LatticeVector, LatticeVector, str]]:
    '''
    Classify every edge as left, right, top or bottom with respect to d.
    Edges parallel to perp(d) are top/bottom edges.
    '''
    d = LatticeVector.of(d)
    d_perp = d.perp()
    sides = list()
    for p, q in polygon.edges():
        edge = q - p
        normal = LatticeVector(edge.y, -edge.x)
        along = normal.dot(d_perp)
        if along > 0:
            sides.append((p, q, LEFT))
        elif along < 0:
            sides.append((p, q, RIGHT))
        elif normal.dot(d) > 0:
            sides.append((p, q, TOP))
        else:
            sides.append((p, q, BOTTOM))
    return sides

def is_transverse(polygon: LatticePolygon, d) -> bool:
    d = LatticeVector.of(d)
    if not d.is_primitive():
        raise NotPrimitive("Direction %s is not primitive" % (d,))
    d_perp = d.perp()
    for p, q, side in boundary_sides(polygon, d):
        if side in (LEFT, RIGHT) and abs(det((q - p).primitive(), d_perp)) != 1:
            return False
    return True

def direction_data(polygon: LatticePolygon, d) -> DirectionData:
    '''
    Parameters
    ----------
    polygon - LatticePolygon.
    d       - LatticeVector. Primitive direction

    Output
    ------
    DirectionData; raises NotTransverse when polygon is not d-perp transverse.
    '''
    d = LatticeVector.of(d)
    if not is_transverse(polygon, d):
        raise NotTransverse("Polygon %s is not transverse to perp(%s)" % (list(polygon.vertices), d))

    d_perp = d.perp()
    left, right = list(), list()
    d_plus = d_minus = 0
    for p, q, side in boundary_sides(polygon, d):
        length = integral_length(p, q)
        if side == TOP:
            d_plus += length
        elif side == BOTTOM:
            d_minus += length
        else:
            going_down = (q - p).primitive()
            if det(d_perp, going_down) < 0:
                going_down = -going_down
            (left if side == LEFT else right).extend([going_down.perp()] * length)

    data = DirectionData(d, tuple(sorted(left)), tuple(sorted(right)), d_plus, d_minus, len(left))
    if 2 * data.d_height + d_plus + d_minus != polygon.boundary_points:
        raise InvariantViolation("2 d_height + d_+ + d_- differs from the boundary point count")
    return data

def transverse_directions(polygon: LatticePolygon, bound: int = 2) -> List[LatticeVector]:
    '''Primitive d with |d_x|, |d_y| <= bound for which the polygon is transverse.'''
    found = list()
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            candidate = LatticeVector(x, y)
            if candidate.is_primitive() and is_transverse(polygon, candidate):
                found.append(candidate)
    logging.debug("Transverse directions within %i: %i" % (bound, len(found)))
    return found
