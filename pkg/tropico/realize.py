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
From marked floor diagrams to tropical curves and back.

A configuration stretched along d places point i at height i * M in the
normalised frame. Each floor is then the graph of a piecewise affine
function of the transverse coordinate, each elevator a vertical line through
its marked point (or its fixed line for the alpha conditions).
'''
# Imports
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

# Local
from tropico.diagram import (DiagramSpec, Edge, Floor, FloorDiagram, Marking,
                             check_marking, diagrams_isomorphic,
                             edge_element, enumerate_diagrams,
                             enumerate_markings, floor_element,
                             parse_element)
from tropico.errors import (InvalidMarking, InvalidSpec, NotClosed,
                            NotTrivalent, SpacingTooSmall)
from tropico.lattice import LatticeVector, UnimodularMap, det
from tropico.tropical import (ParamEdge, ParametrizedCurve, Point, as_point,
                              polygon_from_rays, tropical_multiplicity)
from tropico.toolbox import format_rational, seq_power, seq_size
###############################################################################

@dataclass(frozen=True)
class PointConfig:
    '''
    Points x_1..x_s in the original frame, ordered along d, and the fixed
    lines for the alpha conditions, each given by its transverse coordinate
    in the frame where d = (0, 1).
    '''
    direction: LatticeVector
    points: Tuple[Point, ...]
    omega_minus: Tuple[Fraction, ...] = ()
    omega_plus: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'direction', LatticeVector.of(self.direction))
        object.__setattr__(self, 'points', tuple(as_point(point) for point in self.points))
        object.__setattr__(self, 'omega_minus', tuple(Fraction(value) for value in self.omega_minus))
        object.__setattr__(self, 'omega_plus', tuple(Fraction(value) for value in self.omega_plus))

    @property
    def unimodular(self) -> UnimodularMap:
        return UnimodularMap.sending_to_vertical(self.direction)

    def normalized_points(self) -> List[Point]:
        unimodular = self.unimodular
        return [unimodular.apply_point(point) for point in self.points]

    def scaled(self, factor) -> 'PointConfig':
        '''Same transverse coordinates, heights along d multiplied by factor.'''
        unimodular = self.unimodular
        inverse = unimodular.inverse()
        points = tuple(inverse.apply_point((x, y * factor)) for x, y in self.normalized_points())
        return PointConfig(self.direction, points, self.omega_minus, self.omega_plus)

    def omega_lines(self) -> List[Tuple[Point, LatticeVector]]:
        '''(point, direction) of each fixed line in the original frame, minus side first.'''
        inverse = self.unimodular.inverse()
        return [(inverse.apply_point((omega, 0)), self.direction)
                for omega in self.omega_minus + self.omega_plus]

    def as_json(self):
        return {"d": self.direction.as_list(),
                "points": [[format_rational(x), format_rational(y)] for x, y in self.points],
                "omega_minus": [format_rational(value) for value in self.omega_minus],
                "omega_plus": [format_rational(value) for value in self.omega_plus]}

@dataclass(frozen=True)
class Realization:
    '''
    A curve built from a marked floor diagram: the parametrized curve, the
    corner points of each floor and the supporting line of each elevator,
    all in the original frame.
    '''
    curve: ParametrizedCurve
    floor_paths: Dict[int, Tuple[Point, ...]]
    elevator_lines: Dict[int, Tuple[Point, LatticeVector]]
    config: PointConfig

    def as_json(self):
        return {"curve": self.curve.as_json(),
                "floor_paths": {str(floor): [[format_rational(x), format_rational(y)] for x, y in path]
                                for floor, path in self.floor_paths.items()},
                "elevator_lines": {str(edge): {"point": [format_rational(point[0]), format_rational(point[1])],
                                               "u": direction.as_list()}
                                   for edge, (point, direction) in self.elevator_lines.items()},
                "config": self.config.as_json()}

def stretch_points(spec: DiagramSpec, seed: int = 0) -> PointConfig:
    '''
    s points stretched along d, plus one fixed line per alpha condition.
    Transverse coordinates are distinct rationals drawn with numpy's
    generator; the spacing M = 1 + 2 S E bounds every floor within M / 2 of
    its marked height, S bounding the floor slopes and E the transverse extent.

    Parameters
    ----------
    spec    - DiagramSpec.
    seed    - Integer. Seed of the generator

    Output
    ------
    PointConfig
    '''
    frame = spec.frame
    needed = frame.s + seq_size(frame.alpha_minus) + seq_size(frame.alpha_plus)
    rng = np.random.default_rng(seed)
    draws = rng.choice(np.arange(1, 10 * needed + 11), size=needed, replace=False)
    coordinates = [Fraction(int(draw), 7) for draw in draws]

    transverse = coordinates[:frame.s]
    omega_minus = coordinates[frame.s:frame.s + seq_size(frame.alpha_minus)]
    omega_plus = coordinates[frame.s + seq_size(frame.alpha_minus):]

    slopes = [abs(slope) for slope in frame.left_slopes + frame.right_slopes]
    bound = max(slopes, default=0) + 2 * frame.polygon.boundary_points
    extent = (max(coordinates) - min(coordinates) + 1) if coordinates else Fraction(1)
    spacing = 1 + 2 * bound * extent

    inverse = frame.unimodular.inverse()
    points = tuple(inverse.apply_point((t, label * spacing)) for label, t in enumerate(transverse, 1))
    logging.debug("Stretched %i points with spacing %s" % (frame.s, format_rational(spacing)))
    return PointConfig(spec.direction, points, tuple(omega_minus), tuple(omega_plus))

###############################################################################

class _FloorFunction:
    '''Height of one floor over the transverse axis in the normalised frame.'''

    def __init__(self, theta, breaks, anchor):
        self.theta = theta
        self.breaks = sorted(breaks)
        self.offset = anchor[1] - self._integral(anchor[0])

    def _integral(self, x):
        return self.theta * x + sum(change * max(Fraction(0), x - position)
                                    for position, change in self.breaks)

    def __call__(self, x):
        return self.offset + self._integral(x)

    def slope_after(self, position):
        return self.theta + sum(change for where, change in self.breaks if where <= position)

def _edge_positions(diagram, marking, config, spec, normalized):
    '''
    :param normalized: the point conditions in the frame where d is vertical
    :return: x coordinate of every edge, from its point or its fixed line
    '''
    frame = spec.frame
    lowest = -seq_size(frame.alpha_minus) + 1
    positions = dict()
    for index in range(len(diagram.edges)):
        label = marking.label_of[edge_element(index)]
        if label < 1:
            positions[index] = config.omega_minus[label - lowest]
        elif label > frame.s:
            positions[index] = config.omega_plus[label - frame.s - 1]
        else:
            positions[index] = normalized[label - 1][0]
    return positions

def realize(diagram: FloorDiagram, marking: Marking, config: PointConfig, spec: DiagramSpec) -> Realization:
    '''
    The curve through config corresponding to a marked floor diagram. Raises
    SpacingTooSmall when the configuration is not stretched enough for the
    floors and elevators to sit in the order the diagram prescribes.
    '''
    frame = spec.frame
    violations = check_marking(diagram, marking, spec)
    if violations:
        raise InvalidMarking("; ".join(detail for _, detail in violations))
    if len(config.points) != frame.s or len(config.omega_minus) != seq_size(frame.alpha_minus) \
            or len(config.omega_plus) != seq_size(frame.alpha_plus):
        raise InvalidSpec("Configuration does not match the spec: %i points for s = %i"
                          % (len(config.points), frame.s))

    normalized = config.normalized_points()
    positions = _edge_positions(diagram, marking, config, spec, normalized)

    floors = dict()
    for floor in diagram.floors:
        label = marking.label_of[floor_element(floor.id)]
        breaks = list()
        for index, edge in enumerate(diagram.edges):
            if edge.target == floor.id:
                breaks.append((positions[index], edge.weight))
            if edge.source == floor.id:
                breaks.append((positions[index], -edge.weight))
        floors[floor.id] = _FloorFunction(floor.theta, breaks, normalized[label - 1])

    for index, edge in enumerate(diagram.edges):
        x = positions[index]
        label = marking.label_of[edge_element(index)]
        lower = floors[edge.source](x) if edge.source in floors else None
        upper = floors[edge.target](x) if edge.target in floors else None
        if lower is not None and upper is not None and not lower < upper:
            raise SpacingTooSmall("Elevator %i leaves floor %i above floor %i" % (index, edge.source, edge.target))
        if 1 <= label <= frame.s:
            height = normalized[label - 1][1]
            if (lower is not None and not lower < height) or (upper is not None and not height < upper):
                raise SpacingTooSmall("Point %i is not on elevator %i" % (label, index))

    return _assemble_curve(diagram, floors, positions, spec, config)

def _assemble_curve(diagram, floors, positions, spec, config) -> Realization:
    inverse = spec.frame.unimodular.inverse()
    nodes, edges = list(), list()
    node_of = dict()
    floor_paths = dict()

    for floor in diagram.floors:
        function = floors[floor.id]
        incident = sorted((positions[index], index) for index, edge in enumerate(diagram.edges)
                          if floor.id in (edge.source, edge.target))
        first = len(nodes)
        for x, index in incident:
            node_of[(floor.id, index)] = len(nodes)
            nodes.append((x, function(x)))
        last = len(nodes) - 1

        edges.append(ParamEdge(first, None, LatticeVector(-1, -floor.theta), 1))
        for number in range(first, last):
            slope = function.slope_after(nodes[number][0])
            edges.append(ParamEdge(number, number + 1, LatticeVector(1, slope), 1))
        edges.append(ParamEdge(last, None, LatticeVector(1, function.slope_after(nodes[last][0])), 1))
        floor_paths[floor.id] = tuple(inverse.apply_point(nodes[number]) for number in range(first, last + 1))

    up, down = LatticeVector(0, 1), LatticeVector(0, -1)
    for index, edge in enumerate(diagram.edges):
        lower = node_of.get((edge.source, index))
        upper = node_of.get((edge.target, index))
        if lower is not None and upper is not None:
            edges.append(ParamEdge(lower, upper, up, edge.weight))
        elif upper is not None:
            edges.append(ParamEdge(upper, None, down, edge.weight))
        else:
            edges.append(ParamEdge(lower, None, up, edge.weight))

    curve = ParametrizedCurve(tuple(inverse.apply_point(node) for node in nodes),
                              tuple(ParamEdge(edge.source, edge.target, inverse.apply_vector(edge.direction), edge.weight)
                                    for edge in edges))
    elevator_lines = {index: (inverse.apply_point((positions[index], 0)), spec.direction)
                      for index in range(len(diagram.edges))}
    return Realization(curve, floor_paths, elevator_lines, config)

def realize_stretched(diagram: FloorDiagram, marking: Marking, spec: DiagramSpec,
                      seed: int = 0, doublings: int = 10) -> Realization:
    '''realize on stretch_points(spec, seed), doubling the spacing on SpacingTooSmall.'''
    config = stretch_points(spec, seed)
    for attempt in range(doublings + 1):
        try:
            return realize(diagram, marking, config, spec)
        except SpacingTooSmall as error:
            if attempt == doublings:
                raise
            logging.debug("%s; doubling the spacing" % error)
            config = config.scaled(2)

###############################################################################

def floor_decompose(curve: ParametrizedCurve, d) -> FloorDiagram:
    '''
    Elevators are the edges along +-d, floors the connected components of
    what remains. Theta is read off the left end of each floor once d is
    sent to (0, 1).
    '''
    unimodular = UnimodularMap.sending_to_vertical(d)
    directions = [unimodular.apply_vector(edge.direction) for edge in curve.edges]
    heights = [unimodular.apply_point(node)[1] for node in curve.nodes]
    vertical = {LatticeVector(0, 1), LatticeVector(0, -1)}

    graph = nx.Graph()
    graph.add_nodes_from(range(len(curve.nodes)))
    for edge, direction in zip(curve.edges, directions):
        if direction not in vertical and edge.target is not None:
            graph.add_edge(edge.source, edge.target)
    components = sorted(sorted(component) for component in nx.connected_components(graph))
    floor_of = {node: number for number, component in enumerate(components) for node in component}

    thetas = dict()
    for edge, direction in zip(curve.edges, directions):
        if edge.target is None and direction.x < 0:
            thetas.setdefault(floor_of[edge.source], Fraction(direction.y, direction.x))
    for number in range(len(components)):
        if number not in thetas:
            logging.warning("Floor %i has no left end; theta set to 0" % number)
    floors = tuple(Floor(number, int(thetas.get(number, 0))) for number in range(len(components)))

    bottom, top, edges = list(), list(), list()
    next_id = len(components)
    for edge, direction in zip(curve.edges, directions):
        if direction not in vertical:
            continue
        if edge.target is not None:
            source, target = edge.source, edge.target
            if heights[target] < heights[source]:
                source, target = target, source
            edges.append(Edge(floor_of[source], floor_of[target], edge.weight))
        elif direction == LatticeVector(0, -1):
            bottom.append((floor_of[edge.source], edge.weight))
        else:
            top.append((floor_of[edge.source], edge.weight))

    inf_minus, inf_plus, tails = list(), list(), list()
    for floor, weight in bottom:
        inf_minus.append(next_id)
        tails.append(Edge(next_id, floor, weight))
        next_id += 1
    for floor, weight in top:
        inf_plus.append(next_id)
        tails.append(Edge(floor, next_id, weight))
        next_id += 1
    return FloorDiagram(floors, tuple(inf_minus), tuple(inf_plus), tuple(tails[:len(bottom)] + edges + tails[len(bottom):]))

def expected_multiplicity(diagram: FloorDiagram) -> int:
    '''Product of infinite edge weights times the squared finite edge weights.'''
    result = 1
    finite = set(diagram.finite_edges())
    for index, edge in enumerate(diagram.edges):
        result *= edge.weight ** 2 if index in finite else edge.weight
    return result

def verify_realization(realization: Realization, diagram: FloorDiagram, marking: Marking,
                       config: PointConfig, spec: DiagramSpec) -> List[str]:
    '''
    Parameters
    ----------
    realization - Realization. Output of realize
    diagram     - FloorDiagram.
    marking     - Marking.
    config      - PointConfig.
    spec        - DiagramSpec.

    Output
    ------
    List of violation messages, empty when the realization passes.
    '''
    frame = spec.frame
    curve = realization.curve
    d = spec.direction
    violations = list()

    if not curve.is_balanced():
        violations.append("curve is not balanced")
    if curve.genus() != spec.genus:
        violations.append("source genus %i, expected %i" % (curve.genus(), spec.genus))

    rays = [(edge.direction, edge.weight) for edge in curve.edges if edge.target is None]
    down = sorted(weight for direction, weight in rays if direction == -d)
    up = sorted(weight for direction, weight in rays if direction == d)
    if tuple(down) != frame.bottom_weights or tuple(up) != frame.top_weights:
        violations.append("tails along -d %s and +d %s do not realise alpha and beta" % (down, up))
    try:
        if not polygon_from_rays(rays).same_up_to_translation(spec.polygon):
            violations.append("rays do not close up to the Newton polygon")
    except NotClosed as error:
        violations.append("rays do not close up: %s" % error)

    for number, (point, _) in enumerate(config.omega_lines()):
        on_line = any(edge.target is None and edge.direction in (d, -d)
                      and _on_vertical(curve.nodes[edge.source], point, d)
                      for edge in curve.edges)
        if not on_line:
            violations.append("no tail lies on fixed line %i" % number)

    carried = defaultdict(list)
    for label, point in enumerate(config.points, 1):
        if not curve.contains(point):
            violations.append("point %i is not on the curve" % label)
            continue
        if point in curve.nodes:
            violations.append("point %i sits on a vertex of the curve" % label)
            continue
        through = curve.edges_through(point)
        if len(through) > 1:
            violations.append("point %i lies on %i edges" % (label, len(through)))
        for index in through:
            carried[index].append(label)
    for index, labels in sorted(carried.items()):
        if len(labels) > 1:
            violations.append("edge %i carries points %s" % (index, labels))

    for label, element in marking.labels:
        kind, number = parse_element(element)
        if kind == 'edge' and 1 <= label <= frame.s and number in realization.elevator_lines:
            line_point, _ = realization.elevator_lines[number]
            if not _on_vertical(config.points[label - 1], line_point, d):
                violations.append("point %i is not on its elevator %i" % (label, number))

    try:
        product = tropical_multiplicity(curve)
        if product != expected_multiplicity(diagram):
            violations.append("multiplicity %i differs from the edge product %i" % (product, expected_multiplicity(diagram)))
    except NotTrivalent as error:
        violations.append("multiplicity: %s" % error)

    if not diagrams_isomorphic(floor_decompose(curve, d), diagram):
        violations.append("floor decomposition does not recover the diagram")

    for node in range(len(curve.nodes)):
        for direction, _ in curve.branches(node):
            if direction not in (d, -d) and abs(det(direction, d)) != 1:
                violations.append("floor direction %s at node %i has |det(u, d)| != 1" % (direction, node))
    return violations

def _on_vertical(node, point, d):
    return (node[0] - point[0]) * d.y - (node[1] - point[1]) * d.x == 0

def realization_multiplicity_sum(spec: DiagramSpec, seed: int = 0, threads: Optional[int] = None) -> Fraction:
    '''
    Sum over all marked floor diagrams of the multiplicity of the realised
    curve divided by I^alpha; equals count(spec).
    '''
    frame = spec.frame
    normalization = seq_power(frame.alpha_plus) * seq_power(frame.alpha_minus)
    total = Fraction(0)
    for diagram in enumerate_diagrams(spec, threads):
        for marking in enumerate_markings(diagram, spec):
            realization = realize_stretched(diagram, marking, spec, seed)
            total += Fraction(tropical_multiplicity(realization.curve), normalization)
    logging.info("Realised multiplicity sum: %s" % format_rational(total))
    return total
