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
Max-plus tropical polynomials in two variables and the curves they define.

Everything is exact: points are pairs of Fractions, directions are primitive
LatticeVectors. A polynomial max_I {a_I + I.x} has as corner locus the curve
dual to the subdivision obtained by projecting the upper hull of the lifted
points (I, a_I).
'''
# Imports
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key, reduce
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

# Local
from tropico.errors import (GenusMismatch, InvalidCurve, InvalidPolygon,
                            InvalidPolynomial, NonReduced, NonTransverse,
                            NotClosed, NotPrimitive, NotTrivalent,
                            SegmentSupport, UnsupportedShape)
from tropico.lattice import LatticePolygon, LatticeVector, det, integral_length
from tropico.toolbox import format_rational, pairs, parse_rational
###############################################################################

Point = Tuple[Fraction, Fraction]

def as_point(value) -> Point:
    x, y = value
    return (parse_rational(x), parse_rational(y))

def _shift(point: Point, t, direction: LatticeVector) -> Point:
    return (point[0] + t * direction.x, point[1] + t * direction.y)

def _cross(ax, ay, bx, by):
    return ax * by - ay * bx

def _angle_order(first, second):
    # Counterclockwise order starting from the positive x axis.
    def half(vector):
        return 0 if vector.y > 0 or (vector.y == 0 and vector.x > 0) else 1
    if half(first) != half(second):
        return half(first) - half(second)
    turn = det(first, second)
    return -1 if turn > 0 else (1 if turn < 0 else 0)

###############################################################################

@dataclass(frozen=True)
class TropicalPolynomial:
    '''
    max_I {a_I + I.x} over a finite support of lattice exponents. Terms may be
    given as a mapping or as (exponent, coefficient) pairs; repeated exponents
    are merged by max.
    '''
    terms: Tuple[Tuple[LatticeVector, Fraction], ...]

    def __post_init__(self):
        items = self.terms.items() if isinstance(self.terms, dict) else self.terms
        merged = dict()
        try:
            for exponent, coefficient in items:
                exponent = LatticeVector.of(exponent)
                coefficient = parse_rational(coefficient)
                merged[exponent] = max(merged[exponent], coefficient) if exponent in merged else coefficient
        except (TypeError, ValueError) as error:
            raise InvalidPolynomial("Malformed term: %s" % error)
        if not merged:
            raise InvalidPolynomial("A tropical polynomial needs a non-empty support")
        object.__setattr__(self, 'terms', tuple(sorted(merged.items())))

    @cached_property
    def coefficients(self) -> Dict[LatticeVector, Fraction]:
        return dict(self.terms)

    def support(self) -> List[LatticeVector]:
        return [exponent for exponent, _ in self.terms]

    def term_value(self, exponent: LatticeVector, point) -> Fraction:
        return self.coefficients[exponent] + exponent.x * point[0] + exponent.y * point[1]

    def evaluate(self, point) -> Fraction:
        point = as_point(point)
        return max(self.term_value(exponent, point) for exponent in self.coefficients)

    def maximizers(self, point) -> List[LatticeVector]:
        '''Exponents whose terms attain the maximum at point.'''
        point = as_point(point)
        best = self.evaluate(point)
        return [exponent for exponent in self.coefficients if self.term_value(exponent, point) == best]

    def is_collinear(self) -> bool:
        support = self.support()
        return all(det(second - support[0], third - support[0]) == 0
                   for second, third in itertools.combinations(support[1:], 2))

    def newton_polygon(self) -> LatticePolygon:
        try:
            return LatticePolygon.from_points(self.support())
        except InvalidPolygon:
            raise SegmentSupport("Support %s does not span the plane" % self.support())

    def __add__(self, other):
        '''Tropical sum: pointwise max.'''
        return TropicalPolynomial(self.terms + other.terms)

    def __mul__(self, other):
        '''Tropical product: exponents add, coefficients add, max on collisions.'''
        return TropicalPolynomial(tuple((first + second, a + b)
                                        for first, a in self.terms for second, b in other.terms))

    def as_json(self):
        return {"terms": [{"i": exponent.as_list(), "a": format_rational(coefficient)}
                          for exponent, coefficient in self.terms]}

###############################################################################

@dataclass(frozen=True)
class Segment:
    source: int
    target: int
    weight: int
    direction: LatticeVector

@dataclass(frozen=True)
class Ray:
    vertex: int
    direction: LatticeVector
    weight: int

@dataclass(frozen=True)
class _Piece:
    # A segment (length given) or a ray (length None) parametrised by
    # origin + t * direction.
    origin: Point
    direction: LatticeVector
    length: Optional[Fraction]
    weight: int

    def at(self, t) -> Point:
        return _shift(self.origin, t, self.direction)

    def upper(self):
        return math.inf if self.length is None else self.length

def _crossing(first: _Piece, second: _Piece) -> Optional[Tuple[Fraction, Fraction]]:
    '''
    Parameters (t_first, t_second) of the common point of two pieces, None
    when disjoint. Raises NonTransverse on a positive-length overlap.
    '''
    offset_x = second.origin[0] - first.origin[0]
    offset_y = second.origin[1] - first.origin[1]
    u, v = first.direction, second.direction
    denominator = det(u, v)

    if denominator == 0:
        if _cross(u.x, u.y, offset_x, offset_y) != 0:
            return None
        norm = u.dot(u)
        start = Fraction(offset_x * u.x + offset_y * u.y) / norm
        orientation = u.dot(v) // norm
        if second.length is None:
            lower, upper = (start, math.inf) if orientation > 0 else (-math.inf, start)
        else:
            lower, upper = sorted((start, start + orientation * second.length))
        low, high = max(Fraction(0), lower), min(first.upper(), upper)
        if low < high:
            raise NonTransverse("Collinear pieces overlap from %s along %s" % (first.at(low), u))
        if low == high:
            return (low, (low - start) * orientation)
        return None

    t_first = Fraction(_cross(offset_x, offset_y, v.x, v.y)) / denominator
    t_second = Fraction(_cross(offset_x, offset_y, u.x, u.y)) / denominator
    if 0 <= t_first <= first.upper() and 0 <= t_second <= second.upper():
        return (t_first, t_second)
    return None

@dataclass(frozen=True)
class PlaneTropicalCurve:
    '''
    Vertices at finite distance, bounded segments between them and rays
    leaving them, each with a positive integer weight and a primitive
    direction (segments point from source to target).
    '''
    vertices: Tuple[Point, ...]
    segments: Tuple[Segment, ...] = ()
    rays: Tuple[Ray, ...] = ()
    newton: Optional[LatticePolygon] = None

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(as_point(vertex) for vertex in self.vertices))
        object.__setattr__(self, 'segments', tuple(self.segments))
        object.__setattr__(self, 'rays', tuple(self.rays))
        count = len(self.vertices)
        for item in self.segments + self.rays:
            if not item.direction.is_primitive():
                raise NotPrimitive("Curve direction %s is not primitive" % (item.direction,))
            if item.weight < 1:
                raise InvalidCurve("Non-positive weight on %s" % (item,))
        for ray in self.rays:
            if not 0 <= ray.vertex < count:
                raise InvalidCurve("Ray %s leaves an unknown vertex" % (ray,))
        for segment in self.segments:
            if not (0 <= segment.source < count and 0 <= segment.target < count):
                raise InvalidCurve("Segment %s joins an unknown vertex" % (segment,))
            self.segment_length(segment)

    def segment_length(self, segment: Segment) -> Fraction:
        '''The t > 0 with target = source + t * direction.'''
        start, end = self.vertices[segment.source], self.vertices[segment.target]
        u = segment.direction
        t = (end[0] - start[0]) / u.x if u.x else (end[1] - start[1]) / u.y
        if t <= 0 or _shift(start, t, u) != end:
            raise InvalidCurve("Segment %s is not along its direction" % (segment,))
        return t

    def pieces(self) -> List[_Piece]:
        '''Segments in stored order, then rays.'''
        result = [_Piece(self.vertices[segment.source], segment.direction,
                         self.segment_length(segment), segment.weight) for segment in self.segments]
        result += [_Piece(self.vertices[ray.vertex], ray.direction, None, ray.weight) for ray in self.rays]
        return result

    def branches(self, vertex: int) -> List[Tuple[LatticeVector, int]]:
        '''(outgoing primitive direction, weight) of every edge at vertex.'''
        result = list()
        for segment in self.segments:
            if segment.source == vertex:
                result.append((segment.direction, segment.weight))
            if segment.target == vertex:
                result.append((-segment.direction, segment.weight))
        result += [(ray.direction, ray.weight) for ray in self.rays if ray.vertex == vertex]
        return result

    def contains(self, point) -> bool:
        point = as_point(point)
        return point in self.vertices or any(_on_piece(piece, point) for piece in self.pieces())

    def as_json(self):
        return {"vertices": [[format_rational(x), format_rational(y)] for x, y in self.vertices],
                "segments": [{"from": segment.source, "to": segment.target, "w": segment.weight,
                              "u": segment.direction.as_list()} for segment in self.segments],
                "rays": [{"from": ray.vertex, "u": ray.direction.as_list(), "w": ray.weight}
                         for ray in self.rays],
                "newton": self.newton.as_json() if self.newton else None}

def _on_piece(piece: _Piece, point: Point) -> bool:
    offset_x = point[0] - piece.origin[0]
    offset_y = point[1] - piece.origin[1]
    u = piece.direction
    if _cross(u.x, u.y, offset_x, offset_y) != 0:
        return False
    t = Fraction(offset_x * u.x + offset_y * u.y) / u.dot(u)
    return 0 <= t <= piece.upper()

@dataclass(frozen=True)
class DualSubdivision:
    '''
    Cells tiling the Newton polygon, cell i dual to curve vertex i; the dual
    lattice segment of every curve segment and ray, in the curve's order.
    '''
    polygon: LatticePolygon
    cells: Tuple[LatticePolygon, ...]
    segment_dual: Tuple[Tuple[LatticeVector, LatticeVector], ...]
    ray_dual: Tuple[Tuple[LatticeVector, LatticeVector], ...]

    def as_json(self):
        return {"polygon": self.polygon.as_json(),
                "cells": [cell.as_json() for cell in self.cells],
                "segment_dual": [[p.as_list(), q.as_list()] for p, q in self.segment_dual],
                "ray_dual": [[p.as_list(), q.as_list()] for p, q in self.ray_dual]}

def _tie_point(polynomial: TropicalPolynomial, first, second, third) -> Optional[Point]:
    # Point where three terms with affinely independent exponents are equal.
    a = polynomial.coefficients
    e1, e2 = second - first, third - first
    denominator = det(e1, e2)
    if denominator == 0:
        return None
    r1, r2 = a[first] - a[second], a[first] - a[third]
    x = (r1 * e2.y - r2 * e1.y) / denominator
    y = (e1.x * r2 - e2.x * r1) / denominator
    return (Fraction(x), Fraction(y))

def corner_locus(polynomial: TropicalPolynomial) -> Tuple[PlaneTropicalCurve, DualSubdivision]:
    '''
    The tropical curve of a polynomial together with its dual subdivision.

    Parameters
    ----------
    polynomial  - TropicalPolynomial. Support must span the plane

    Output
    ------
    (PlaneTropicalCurve, DualSubdivision)
    '''
    if polynomial.is_collinear():
        raise SegmentSupport("Support %s does not span the plane" % polynomial.support())
    newton = polynomial.newton_polygon()

    vertices = dict()
    for triple in itertools.combinations(polynomial.support(), 3):
        point = _tie_point(polynomial, *triple)
        if point is None or point in vertices:
            continue
        value = polynomial.term_value(triple[0], point)
        if polynomial.evaluate(point) == value:
            vertices[point] = LatticePolygon.from_points(polynomial.maximizers(point))

    points = sorted(vertices)
    cells = [vertices[point] for point in points]

    incidence = defaultdict(list)
    for index, cell in enumerate(cells):
        for p, q in cell.edges():
            incidence[frozenset((p, q))].append((index, p, q))

    segments, rays, segment_dual, ray_dual = list(), list(), list(), list()
    for key in sorted(incidence, key=lambda edge: sorted(edge)):
        found = incidence[key]
        _, p, q = found[0]
        weight = integral_length(p, q)
        if len(found) == 2:
            (first, _, _), (second, _, _) = found
            start, end = points[first], points[second]
            normal = (q - p).perp().primitive()
            if (end[0] - start[0]) * normal.x + (end[1] - start[1]) * normal.y < 0:
                normal = -normal
            segments.append(Segment(first, second, weight, normal))
            segment_dual.append((p, q))
        else:
            index = found[0][0]
            edge = q - p
            rays.append(Ray(index, LatticeVector(edge.y, -edge.x).primitive(), weight))
            ray_dual.append((p, q))

    logging.debug("Corner locus: %i vertices, %i segments, %i rays" % (len(points), len(segments), len(rays)))
    curve = PlaneTropicalCurve(tuple(points), tuple(segments), tuple(rays), newton)
    return curve, DualSubdivision(newton, tuple(cells), tuple(segment_dual), tuple(ray_dual))

###############################################################################

def unbalanced_vertices(curve: PlaneTropicalCurve) -> List[int]:
    result = list()
    for vertex in range(len(curve.vertices)):
        total = LatticeVector(0, 0)
        for direction, weight in curve.branches(vertex):
            total = total + direction.scaled(weight)
        if total != LatticeVector(0, 0):
            result.append(vertex)
    return result

def check_balancing(curve: PlaneTropicalCurve) -> bool:
    '''Sum of w * u over the edges at every vertex vanishes.'''
    return not unbalanced_vertices(curve)

def boundary_ray_weights(curve: PlaneTropicalCurve) -> Dict[LatticeVector, int]:
    '''Total ray weight per primitive direction.'''
    totals = defaultdict(int)
    for ray in curve.rays:
        totals[ray.direction] += ray.weight
    return dict(totals)

def polygon_from_rays(weighted: List[Tuple[LatticeVector, int]]) -> LatticePolygon:
    '''
    Chain the weighted ray vectors, rotated by +pi/2, in angular order. The
    path must close.
    '''
    vectors = sorted((direction.scaled(weight).perp() for direction, weight in weighted),
                     key=cmp_to_key(_angle_order))
    path = [LatticeVector(0, 0)]
    for vector in vectors:
        path.append(path[-1] + vector)
    if path[-1] != LatticeVector(0, 0):
        raise NotClosed("Rotated ray circuit ends at %s" % (path[-1],))
    try:
        return LatticePolygon.from_points(path).translated_to_origin()
    except InvalidPolygon:
        raise NotClosed("Rotated ray circuit does not bound a polygon")

def newton_polygon_of(curve: PlaneTropicalCurve) -> LatticePolygon:
    '''
    Newton polygon, up to translation, read off the rays of a balanced
    curve. Placed with its bounding box at the origin.
    '''
    if not check_balancing(curve):
        raise NotClosed("Curve is not balanced at vertices %s" % unbalanced_vertices(curve))
    return polygon_from_rays([(ray.direction, ray.weight) for ray in curve.rays])

def translated(curve: PlaneTropicalCurve, offset) -> PlaneTropicalCurve:
    dx, dy = as_point(offset)
    return PlaneTropicalCurve(tuple((x + dx, y + dy) for x, y in curve.vertices),
                              curve.segments, curve.rays, curve.newton)

###############################################################################
# Crossings, delta invariant and genus

def _is_crossing(branches):
    # Two straight lines through the vertex, each with a single weight.
    if len(branches) != 4:
        return False
    remaining, lines = list(branches), list()
    while remaining:
        direction, weight = remaining.pop()
        if (-direction, weight) not in remaining:
            return False
        remaining.remove((-direction, weight))
        lines.append(direction)
    return det(lines[0], lines[1]) != 0

def _straight_chains(curve: PlaneTropicalCurve):
    '''
    Join the edges passing straight through 4-valent crossings.

    Output
    ------
    (crossing vertices, list of chains); a chain lists ('segment', i) and
    ('ray', j) items.
    '''
    crossings = {vertex for vertex in range(len(curve.vertices)) if _is_crossing(curve.branches(vertex))}
    graph = nx.Graph()
    items = [('segment', index) for index in range(len(curve.segments))] + \
            [('ray', index) for index in range(len(curve.rays))]
    graph.add_nodes_from(items)

    for vertex in crossings:
        ends = list()
        for index, segment in enumerate(curve.segments):
            if segment.source == vertex:
                ends.append((segment.direction, ('segment', index)))
            if segment.target == vertex:
                ends.append((-segment.direction, ('segment', index)))
        ends += [(ray.direction, ('ray', index)) for index, ray in enumerate(curve.rays) if ray.vertex == vertex]
        for (first, item), (second, other) in itertools.combinations(ends, 2):
            if first == -second:
                graph.add_edge(item, other)

    chains = [sorted(component) for component in nx.connected_components(graph)]
    return crossings, sorted(chains)

def _chain_weight(curve, chain):
    kind, index = chain[0]
    return curve.segments[index].weight if kind == 'segment' else curve.rays[index].weight

def check_reduced(curve: PlaneTropicalCurve):
    '''NonReduced when all weights share a factor or two edges overlap.'''
    weights = [item.weight for item in curve.segments + curve.rays]
    if weights and reduce(math.gcd, weights) > 1:
        raise NonReduced("All weights are divisible by %i" % reduce(math.gcd, weights))
    pieces = curve.pieces()
    for first, second in pairs(pieces):
        try:
            _crossing(pieces[first], pieces[second])
        except NonTransverse as error:
            raise NonReduced(str(error))

def _vertex_shapes(curve: PlaneTropicalCurve, crossings):
    '''Per vertex ('triangle', 2A, boundary) or ('parallelogram', area).'''
    shapes = dict()
    for vertex in range(len(curve.vertices)):
        branches = curve.branches(vertex)
        if vertex in crossings:
            first, first_weight = branches[0]
            other, other_weight = next((direction, weight) for direction, weight in branches
                                       if direction not in (first, -first))
            area = abs(det(first.scaled(first_weight), other.scaled(other_weight)))
            shapes[vertex] = ('parallelogram', area)
        elif len(branches) == 3:
            (u1, w1), (u2, w2), (_, w3) = branches
            shapes[vertex] = ('triangle', abs(det(u1.scaled(w1), u2.scaled(w2))), w1 + w2 + w3)
        else:
            raise UnsupportedShape("Vertex %i has a dual polygon that is neither a triangle nor a parallelogram"
                                   % vertex)
    return shapes

def delta_invariant(curve: PlaneTropicalCurve) -> int:
    '''
    Sum over bounded chains of (w - 1), plus parallelogram areas, plus the
    interior point counts of the dual triangles.
    '''
    check_reduced(curve)
    crossings, chains = _straight_chains(curve)
    shapes = _vertex_shapes(curve, crossings)

    delta = 0
    for chain in chains:
        if not any(kind == 'ray' for kind, _ in chain):
            delta += _chain_weight(curve, chain) - 1
    for shape in shapes.values():
        if shape[0] == 'parallelogram':
            delta += shape[1]
        else:
            _, double_area, boundary = shape
            delta += (double_area - boundary + 2) // 2
    return delta

def geometric_genus(curve: PlaneTropicalCurve) -> int:
    '''
    Arithmetic genus of the Newton polygon minus delta, checked against the
    genus 1 - t + a of the abstract curve (t trivalent vertices, a bounded
    edges once crossings are separated).
    '''
    newton = curve.newton or newton_polygon_of(curve)
    genus = newton.interior_points - delta_invariant(curve)

    crossings, chains = _straight_chains(curve)
    trivalent = len(curve.vertices) - len(crossings)
    bounded = sum(1 for chain in chains if not any(kind == 'ray' for kind, _ in chain))
    if genus != 1 - trivalent + bounded:
        raise GenusMismatch("p_a - delta = %i but 1 - t + a = %i" % (genus, 1 - trivalent + bounded))
    return genus

###############################################################################
# Parametrized curves

@dataclass(frozen=True)
class ParamEdge:
    '''An edge of the source graph; target None means the edge is unbounded.'''
    source: int
    target: Optional[int]
    direction: LatticeVector
    weight: int

@dataclass(frozen=True)
class ParametrizedCurve:
    '''
    A tropical morphism from an abstract curve: nodes are the images of its
    vertices, each edge is mapped affinely along a primitive direction with
    stretching factor weight.
    '''
    nodes: Tuple[Point, ...]
    edges: Tuple[ParamEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, 'nodes', tuple(as_point(node) for node in self.nodes))
        object.__setattr__(self, 'edges', tuple(self.edges))
        for edge in self.edges:
            if not edge.direction.is_primitive():
                raise NotPrimitive("Edge direction %s is not primitive" % (edge.direction,))
            if edge.weight < 1:
                raise InvalidCurve("Non-positive weight on %s" % (edge,))
            if edge.target is not None:
                self.edge_length(edge)

    def edge_length(self, edge: ParamEdge) -> Fraction:
        start, end = self.nodes[edge.source], self.nodes[edge.target]
        u = edge.direction
        t = (end[0] - start[0]) / u.x if u.x else (end[1] - start[1]) / u.y
        if t <= 0 or _shift(start, t, u) != end:
            raise InvalidCurve("Edge %s is not along its direction" % (edge,))
        return t

    def pieces(self) -> List[_Piece]:
        return [_Piece(self.nodes[edge.source], edge.direction,
                       None if edge.target is None else self.edge_length(edge), edge.weight)
                for edge in self.edges]

    def branches(self, node: int) -> List[Tuple[LatticeVector, int]]:
        result = list()
        for edge in self.edges:
            if edge.source == node:
                result.append((edge.direction, edge.weight))
            if edge.target == node:
                result.append((-edge.direction, edge.weight))
        return result

    def graph(self) -> nx.MultiGraph:
        '''Source graph restricted to its vertices at finite distance.'''
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        for index, edge in enumerate(self.edges):
            if edge.target is not None:
                graph.add_edge(edge.source, edge.target, key=index, weight=edge.weight)
        return graph

    def genus(self) -> int:
        '''First Betti number of the source graph.'''
        graph = self.graph()
        return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)

    def is_balanced(self) -> bool:
        for node in range(len(self.nodes)):
            total = LatticeVector(0, 0)
            for direction, weight in self.branches(node):
                total = total + direction.scaled(weight)
            if total != LatticeVector(0, 0):
                return False
        return True

    def contains(self, point) -> bool:
        point = as_point(point)
        return point in self.nodes or any(_on_piece(piece, point) for piece in self.pieces())

    def edges_through(self, point) -> List[int]:
        '''Indices of the edges passing through point, their end nodes excluded.'''
        point = as_point(point)
        return [index for index, piece in enumerate(self.pieces())
                if _on_piece(piece, point) and point != piece.origin
                and (piece.length is None or point != piece.at(piece.length))]

    def image(self) -> PlaneTropicalCurve:
        '''
        The plane curve traced by the map: edges are cut where they meet,
        crossings become 4-valent vertices. Raises NonTransverse when two
        edges overlap.
        '''
        pieces = self.pieces()
        cuts = [{Fraction(0)} | ({piece.length} if piece.length is not None else set()) for piece in pieces]
        for first, second in pairs(pieces):
            hit = _crossing(pieces[first], pieces[second])
            if hit is not None:
                cuts[first].add(hit[0])
                cuts[second].add(hit[1])

        index, vertices = dict(), list()

        def vertex_of(point):
            if point not in index:
                index[point] = len(vertices)
                vertices.append(point)
            return index[point]

        for node in self.nodes:
            vertex_of(node)
        segments, rays = list(), list()
        for piece, parameters in zip(pieces, cuts):
            points = [piece.at(t) for t in sorted(parameters)]
            for start, end in zip(points, points[1:]):
                segments.append(Segment(vertex_of(start), vertex_of(end), piece.weight, piece.direction))
            if piece.length is None:
                rays.append(Ray(vertex_of(points[-1]), piece.direction, piece.weight))
        return PlaneTropicalCurve(tuple(vertices), tuple(segments), tuple(rays))

    def as_json(self):
        return {"nodes": [[format_rational(x), format_rational(y)] for x, y in self.nodes],
                "edges": [{"from": edge.source, "to": edge.target, "u": edge.direction.as_list(),
                           "w": edge.weight} for edge in self.edges]}

def separate_crossings(curve: PlaneTropicalCurve) -> ParametrizedCurve:
    '''
    Read a plane curve as a parametrized one: every 4-valent crossing is
    undone, the two straight lines through it becoming separate edges.
    '''
    crossings, chains = _straight_chains(curve)
    nodes = [vertex for vertex in range(len(curve.vertices)) if vertex not in crossings]
    renumber = {vertex: number for number, vertex in enumerate(nodes)}

    edges = list()
    for chain in chains:
        ends, direction, ray_direction = list(), None, None
        for kind, index in chain:
            if kind == 'segment':
                segment = curve.segments[index]
                direction = segment.direction
                ends += [vertex for vertex in (segment.source, segment.target) if vertex not in crossings]
            else:
                ray = curve.rays[index]
                ray_direction = ray.direction
                if ray.vertex not in crossings:
                    ends.append(ray.vertex)
        weight = _chain_weight(curve, chain)
        if ray_direction is not None:
            if len(ends) != 1:
                raise UnsupportedShape("A straight line of the curve has no vertex")
            edges.append(ParamEdge(renumber[ends[0]], None, ray_direction, weight))
        else:
            source, target = ends
            start, end = curve.vertices[source], curve.vertices[target]
            if (end[0] - start[0]) * direction.x + (end[1] - start[1]) * direction.y < 0:
                direction = -direction
            edges.append(ParamEdge(renumber[source], renumber[target], direction, weight))
    return ParametrizedCurve(tuple(curve.vertices[vertex] for vertex in nodes), tuple(edges))

def tropical_multiplicity(curve: ParametrizedCurve) -> int:
    '''Product over vertices of |det(w1 u1, w2 u2)|; vertices must be trivalent.'''
    result = 1
    for node in range(len(curve.nodes)):
        branches = curve.branches(node)
        if len(branches) != 3:
            raise NotTrivalent("Node %i has valence %i" % (node, len(branches)))
        (u1, w1), (u2, w2), _ = branches
        result *= abs(det(u1.scaled(w1), u2.scaled(w2)))
    return result

###############################################################################
# Stable intersection

def stable_intersection(first: PlaneTropicalCurve, second: PlaneTropicalCurve) -> List[Tuple[Point, int]]:
    '''
    Transverse intersection points with multiplicity w1 * w2 * |det(u1, u2)|.
    Raises NonTransverse on overlapping edges or when a vertex of either
    curve lies on the other.
    '''
    found = list()
    second_pieces = second.pieces()
    for piece in first.pieces():
        for other in second_pieces:
            hit = _crossing(piece, other)
            if hit is None:
                continue
            t_first, t_second = hit
            if t_first == 0 or t_first == piece.length or t_second == 0 or t_second == other.length:
                raise NonTransverse("Curves meet at a vertex: %s" % (piece.at(t_first),))
            multiplicity = piece.weight * other.weight * abs(det(piece.direction, other.direction))
            found.append((piece.at(t_first), multiplicity))
    return sorted(found)

def stable_intersection_generic(first: PlaneTropicalCurve, second: PlaneTropicalCurve,
                                seed: int = 0, attempts: int = 20) -> List[Tuple[Point, int]]:
    '''
    stable_intersection, retried after small random rational translations of
    the second curve until the intersection is transverse.
    '''
    rng = np.random.default_rng(seed)
    offset = (Fraction(0), Fraction(0))
    for attempt in range(attempts):
        try:
            return stable_intersection(first, translated(second, offset))
        except NonTransverse:
            offset = (Fraction(int(rng.integers(1, 1000)), 997), Fraction(int(rng.integers(1, 1000)), 991))
            logging.debug("Intersection not transverse, translating by %s (attempt %i)"
                          % ([format_rational(c) for c in offset], attempt + 1))
    raise NonTransverse("No transverse translation found in %i attempts" % attempts)

###############################################################################
# Legendre transform

@dataclass(frozen=True)
class AffinePiece:
    '''
    p -> slope.p + constant on the domain {p : n.p >= b for (n, b) in constraints}.
    '''
    slope: LatticeVector
    constant: Fraction
    constraints: Tuple[Tuple[LatticeVector, Fraction], ...] = ()

    def value(self, p) -> Fraction:
        p = as_point(p)
        return self.slope.x * p[0] + self.slope.y * p[1] + self.constant

    def contains(self, p) -> bool:
        p = as_point(p)
        return all(normal.x * p[0] + normal.y * p[1] >= bound for normal, bound in self.constraints)

    def as_json(self):
        return {"slope": self.slope.as_list(),
                "constant": format_rational(self.constant),
                "domain": [{"n": normal.as_list(), "b": format_rational(bound)}
                           for normal, bound in self.constraints]}

@dataclass(frozen=True)
class LegendreTransform:
    '''
    f^v(p) = max_x {p.x - f(x)} over a finite set of lattice points, kept as
    its linearity domains.
    '''
    values: Tuple[Tuple[LatticeVector, Fraction], ...]
    pieces: Tuple[AffinePiece, ...]

    @cached_property
    def polynomial(self) -> TropicalPolynomial:
        return TropicalPolynomial(tuple((x, -value) for x, value in self.values))

    def evaluate(self, p) -> Fraction:
        return self.polynomial.evaluate(p)

    def piece_at(self, p) -> AffinePiece:
        '''First piece whose domain holds p.'''
        return next(piece for piece in self.pieces if piece.contains(p))

    def biconjugate(self, x) -> Optional[Fraction]:
        '''
        f^vv(x): the lower convex envelope of f at x, None when x is outside
        the convex hull of the domain.
        '''
        x = as_point(x)
        support = [point for point, _ in self.values]
        if self.polynomial.is_collinear():
            return _interpolate_on_line(dict(self.values), x)
        if not LatticePolygon.from_points(support).contains(x):
            return None
        curve, _ = corner_locus(self.polynomial)
        return max(x[0] * vertex[0] + x[1] * vertex[1] - self.evaluate(vertex) for vertex in curve.vertices)

    def as_json(self):
        return {"pieces": [piece.as_json() for piece in self.pieces]}

def _line_frame(support: List[LatticeVector]):
    origin = min(support)
    others = [point for point in support if point != origin]
    direction = (others[0] - origin).primitive() if others else LatticeVector(1, 0)
    if others and direction < LatticeVector(0, 0):
        direction = -direction
    return origin, direction

def _lower_chain(values):
    # Vertices of the lower hull of the graph of f over collinear support.
    origin, direction = _line_frame(list(values))
    ordered = sorted(values, key=lambda point: (point - origin).dot(direction))
    chain = list()
    for point in ordered:
        while len(chain) >= 2:
            a, b = chain[-2], chain[-1]
            ta, tb, tc = ((q - origin).dot(direction) for q in (a, b, point))
            if (values[b] - values[a]) * (tc - tb) >= (values[point] - values[b]) * (tb - ta):
                chain.pop()
            else:
                break
        chain.append(point)
    return chain

def _interpolate_on_line(values: Dict[LatticeVector, Fraction], x: Point) -> Optional[Fraction]:
    chain = _lower_chain(values)
    origin, direction = _line_frame(list(values))
    offset = (x[0] - origin.x, x[1] - origin.y)
    if _cross(direction.x, direction.y, *offset) != 0:
        return None
    t = (offset[0] * direction.x + offset[1] * direction.y) / Fraction(direction.dot(direction))
    params = [(point - origin).dot(direction) for point in chain]
    if len(chain) == 1:
        return values[chain[0]] if t == 0 else None
    for (ta, a), (tb, b) in zip(zip(params, chain), zip(params[1:], chain[1:])):
        if ta <= t <= tb:
            return values[a] + (values[b] - values[a]) * (t - ta) / (tb - ta)
    return None

def legendre_transform(function) -> LegendreTransform:
    '''
    Parameters
    ----------
    function    - mapping lattice point -> rational. Non-empty

    Output
    ------
    LegendreTransform with one AffinePiece per vertex of the lower hull of f,
    its domain cut out by the neighbouring vertices.
    '''
    polynomial = TropicalPolynomial({point: -parse_rational(value) for point, value in
                                     (function.items() if isinstance(function, dict) else function)})
    values = {x: -a for x, a in polynomial.terms}

    neighbours = defaultdict(set)
    if len(values) == 1:
        active = list(values)
    elif polynomial.is_collinear():
        active = _lower_chain(values)
        for first, second in zip(active, active[1:]):
            neighbours[first].add(second)
            neighbours[second].add(first)
    else:
        _, subdivision = corner_locus(polynomial)
        active = sorted({vertex for cell in subdivision.cells for vertex in cell.vertices})
        for cell in subdivision.cells:
            for p, q in cell.edges():
                neighbours[p].add(q)
                neighbours[q].add(p)

    pieces = list()
    for x in active:
        constraints = tuple((x - y, values[x] - values[y]) for y in sorted(neighbours[x]))
        pieces.append(AffinePiece(x, -values[x], constraints))
    return LegendreTransform(tuple(sorted(values.items())), tuple(pieces))
