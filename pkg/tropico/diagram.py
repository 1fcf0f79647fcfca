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
Floor diagrams: representation, validation, exhaustive generation, marking
enumeration up to equivalence, multiplicities and the resulting curve counts.

All enumeration happens in the normalised frame d = (0, 1): a floor's theta is
the slope m of its left direction (1, m).
'''
# Imports
import itertools
import logging
import multiprocessing as mp
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism
from sympy.utilities.iterables import multiset_permutations, partitions

# Local
from tropico.data import Data
from tropico.errors import (Disconnected, InvalidDiagram, InvalidSpec,
                            NotPrimitive, SideBoundaryCondition)
from tropico.lattice import (DirectionData, LatticePolygon, LatticeVector,
                             UnimodularMap, direction_data)
from tropico.toolbox import (n_sequence, seq_from_weights, seq_power,
                             seq_size, seq_weighted, seq_weights)
###############################################################################

FLOOR = 'floor'
INF_MINUS = 'inf_minus'
INF_PLUS = 'inf_plus'

def floor_element(floor_id: int) -> str:
    return "floor:%i" % floor_id

def edge_element(index: int) -> str:
    return "edge:%i" % index

def parse_element(element: str) -> Tuple[str, int]:
    kind, _, number = element.partition(':')
    if kind not in ('floor', 'edge') or not number.lstrip('-').isdigit():
        raise InvalidDiagram("Unknown element id: %s" % element)
    return kind, int(number)

@dataclass(frozen=True)
class Floor:
    id: int
    theta: int

@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    weight: int

@dataclass(frozen=True)
class FloorDiagram:
    '''
    Weighted oriented graph made of floors (carrying theta), vertices at
    -infinity (sources) and +infinity (sinks). Edges point along d.

    Only well-formedness is enforced here; the structural conditions
    (connected, acyclic, 1-valent infinite vertices) are reported by
    structure_violations so that decompositions of pathological curves can
    still be represented.
    '''
    floors: Tuple[Floor, ...]
    inf_minus: Tuple[int, ...] = ()
    inf_plus: Tuple[int, ...] = ()
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        floors = tuple(floor if isinstance(floor, Floor) else Floor(*floor) for floor in self.floors)
        edges = tuple(edge if isinstance(edge, Edge) else Edge(*edge) for edge in self.edges)
        object.__setattr__(self, 'floors', floors)
        object.__setattr__(self, 'edges', edges)
        object.__setattr__(self, 'inf_minus', tuple(int(v) for v in self.inf_minus))
        object.__setattr__(self, 'inf_plus', tuple(int(v) for v in self.inf_plus))

        if not floors:
            raise InvalidDiagram("A floor diagram needs at least one floor")
        ids = [floor.id for floor in floors] + list(self.inf_minus) + list(self.inf_plus)
        if len(ids) != len(set(ids)):
            raise InvalidDiagram("Vertex identifiers are not unique: %s" % ids)
        known = set(ids)
        for edge in edges:
            if edge.source not in known or edge.target not in known:
                raise InvalidDiagram("Edge %s references an unknown vertex" % (edge,))
            if edge.weight < 1:
                raise InvalidDiagram("Edge %s has a non-positive weight" % (edge,))

    @cached_property
    def theta(self) -> Dict[int, int]:
        return {floor.id: floor.theta for floor in self.floors}

    def kind(self, vertex: int) -> str:
        if vertex in self.theta:
            return FLOOR
        if vertex in self.inf_minus:
            return INF_MINUS
        return INF_PLUS

    def divergence(self, vertex: int) -> int:
        '''Incoming weight minus outgoing weight.'''
        incoming = sum(edge.weight for edge in self.edges if edge.target == vertex)
        outgoing = sum(edge.weight for edge in self.edges if edge.source == vertex)
        return incoming - outgoing

    def finite_edges(self) -> List[int]:
        return [index for index, edge in enumerate(self.edges)
                if edge.source in self.theta and edge.target in self.theta]

    def bottom_edges(self) -> List[int]:
        return [index for index, edge in enumerate(self.edges) if edge.source in self.inf_minus]

    def top_edges(self) -> List[int]:
        return [index for index, edge in enumerate(self.edges) if edge.target in self.inf_plus]

    def elements(self) -> List[str]:
        '''D = floors and edges, floors first, edges in stored order.'''
        return [floor_element(floor.id) for floor in self.floors] + \
               [edge_element(index) for index in range(len(self.edges))]

    def graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for floor in self.floors:
            graph.add_node(floor.id, kind=FLOOR, theta=floor.theta)
        for vertex in self.inf_minus:
            graph.add_node(vertex, kind=INF_MINUS, theta=None)
        for vertex in self.inf_plus:
            graph.add_node(vertex, kind=INF_PLUS, theta=None)
        for index, edge in enumerate(self.edges):
            graph.add_edge(edge.source, edge.target, key=index, weight=edge.weight)
        return graph

    def order_graph(self) -> nx.DiGraph:
        '''Covering relations of the partial order on D induced by orientation.'''
        order = nx.DiGraph()
        order.add_nodes_from(self.elements())
        for index, edge in enumerate(self.edges):
            if edge.source in self.theta:
                order.add_edge(floor_element(edge.source), edge_element(index))
            if edge.target in self.theta:
                order.add_edge(edge_element(index), floor_element(edge.target))
        return order

    def twin_keys(self) -> Dict[str, tuple]:
        '''
        Elements sharing a key are exchanged by an automorphism fixing
        everything else: parallel finite edges, and tails of equal weight on
        the same floor.
        '''
        keys = {floor_element(floor.id): (FLOOR, floor.id) for floor in self.floors}
        for index, edge in enumerate(self.edges):
            source = edge.source if edge.source in self.theta else INF_MINUS
            target = edge.target if edge.target in self.theta else INF_PLUS
            keys[edge_element(index)] = ('edge', source, target, edge.weight)
        return keys

    def as_json(self):
        return {"floors": [{"id": floor.id, "theta": floor.theta} for floor in self.floors],
                "inf_minus": list(self.inf_minus),
                "inf_plus": list(self.inf_plus),
                "edges": [{"from": edge.source, "to": edge.target, "w": edge.weight}
                          for edge in self.edges]}

def diagram_genus(diagram: FloorDiagram) -> int:
    '''First Betti number: Card(Edges) - Card(Vert) + 1.'''
    graph = diagram.graph()
    if not nx.is_weakly_connected(graph):
        raise Disconnected("Floor diagram is not connected")
    return graph.number_of_edges() - graph.number_of_nodes() + 1

def weighted_cardinality(diagram: FloorDiagram) -> int:
    '''Floors plus finite edges plus infinite edges counted with weights.'''
    infinite = set(diagram.bottom_edges()) | set(diagram.top_edges())
    return len(diagram.floors) + len(diagram.finite_edges()) + \
        sum(diagram.edges[index].weight for index in infinite)

def structure_violations(diagram: FloorDiagram) -> List[Tuple[str, str]]:
    violations = list()
    graph = diagram.graph()
    if not nx.is_weakly_connected(graph):
        violations.append(('disconnected', "underlying graph is not connected"))
    if not nx.is_directed_acyclic_graph(graph):
        violations.append(('cyclic', "oriented graph has a cycle"))
    for vertex in diagram.inf_minus + diagram.inf_plus:
        if graph.degree(vertex) != 1:
            violations.append(('infinite_valence', "vertex %i has valence %i" % (vertex, graph.degree(vertex))))
    for vertex in diagram.inf_minus:
        if graph.in_degree(vertex):
            violations.append(('infinite_orientation', "vertex %i at -infinity has an ingoing edge" % vertex))
    for vertex in diagram.inf_plus:
        if graph.out_degree(vertex):
            violations.append(('infinite_orientation', "vertex %i at +infinity has an outgoing edge" % vertex))
    for index, edge in enumerate(diagram.edges):
        if edge.source not in diagram.theta and edge.target not in diagram.theta:
            violations.append(('infinite_to_infinite', "edge %i joins two vertices at infinity" % index))
    return violations

###############################################################################

@dataclass(frozen=True)
class NormalFrame:
    '''
    A DiagramSpec transported to d = (0, 1), with the boundary data resolved.
    '''
    unimodular: UnimodularMap
    polygon: LatticePolygon
    data: DirectionData
    genus: int
    alpha_plus: Tuple[int, ...]
    alpha_minus: Tuple[int, ...]
    beta_plus: Tuple[int, ...]
    beta_minus: Tuple[int, ...]

    @property
    def left_slopes(self) -> Tuple[int, ...]:
        return tuple(self.data.left_slopes())

    @property
    def right_slopes(self) -> Tuple[int, ...]:
        return tuple(self.data.right_slopes())

    @property
    def bottom_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(seq_weights(self.alpha_minus) + seq_weights(self.beta_minus)))

    @property
    def top_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(seq_weights(self.alpha_plus) + seq_weights(self.beta_plus)))

    @property
    def floor_count(self) -> int:
        return self.data.d_height

    @property
    def finite_edge_count(self) -> int:
        return self.genus + self.data.d_height - 1

    @property
    def s(self) -> int:
        '''Number of points: g - 1 + 2 d_height + |beta+| + |beta-|.'''
        return self.genus - 1 + 2 * self.data.d_height + seq_size(self.beta_plus) + seq_size(self.beta_minus)

    @property
    def is_plane(self) -> bool:
        return self.data.d_plus == 0 and \
            self.polygon.translated_to_origin() == LatticePolygon.triangle(self.data.d_height)

@dataclass(frozen=True)
class DiagramSpec:
    '''
    Counting problem: polygon, direction, genus and the boundary conditions
    alpha (fixed points on the top/bottom divisor) and beta (free ones), as
    N-sequences. A missing beta defaults to simple free tangencies filling
    what alpha leaves of d_+ / d_-.
    '''
    polygon: LatticePolygon
    direction: LatticeVector = LatticeVector(0, 1)
    genus: int = 0
    alpha_plus: Tuple[int, ...] = ()
    alpha_minus: Tuple[int, ...] = ()
    beta_plus: Optional[Tuple[int, ...]] = None
    beta_minus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        direction = LatticeVector.of(self.direction)
        if not direction.is_primitive():
            raise NotPrimitive("Direction %s is not primitive" % (direction,))
        object.__setattr__(self, 'direction', direction)
        if int(self.genus) != self.genus or self.genus < 0:
            raise InvalidSpec("Genus must be a non-negative integer, got %s" % self.genus)
        object.__setattr__(self, 'genus', int(self.genus))
        try:
            for name in ('alpha_plus', 'alpha_minus', 'beta_plus', 'beta_minus'):
                value = getattr(self, name)
                if value is not None:
                    object.__setattr__(self, name, n_sequence(value))
        except ValueError as error:
            raise InvalidSpec(str(error))

    @cached_property
    def frame(self) -> NormalFrame:
        '''
        Transport to d = (0, 1) and check the boundary conditions. Raises
        NotTransverse, SideBoundaryCondition or InvalidSpec.
        '''
        unimodular = UnimodularMap.sending_to_vertical(self.direction)
        polygon = unimodular.apply_polygon(self.polygon)
        data = direction_data(polygon, LatticeVector(0, 1))
        if data.d_height == 0:
            raise InvalidSpec("Polygon has no left or right edge with respect to %s" % (self.direction,))

        if self.genus > polygon.interior_points:
            raise InvalidSpec("Genus %i exceeds the %i interior points" % (self.genus, polygon.interior_points))

        resolved = dict()
        for side, d_side in (('plus', data.d_plus), ('minus', data.d_minus)):
            alpha = getattr(self, 'alpha_' + side)
            beta = getattr(self, 'beta_' + side)
            if d_side == 0 and (alpha or beta):
                raise SideBoundaryCondition(
                    "Boundary conditions on the %s side but the polygon has no edge there" % side)
            if beta is None:
                free = d_side - seq_weighted(alpha)
                if free < 0:
                    raise InvalidSpec("I alpha_%s = %i exceeds d_%s = %i"
                                      % (side, seq_weighted(alpha), side, d_side))
                beta = n_sequence([free])
            total = seq_weighted(alpha) + seq_weighted(beta)
            if total != d_side:
                raise InvalidSpec("I alpha + I beta = %i differs from d_%s = %i" % (total, side, d_side))
            resolved[side] = (alpha, beta)

        return NormalFrame(unimodular, polygon, data, self.genus,
                           resolved['plus'][0], resolved['minus'][0],
                           resolved['plus'][1], resolved['minus'][1])

    def as_json(self):
        frame = self.frame
        return {"polygon": self.polygon.as_json(),
                "direction": self.direction.as_list(),
                "genus": self.genus,
                "alpha_plus": list(frame.alpha_plus),
                "alpha_minus": list(frame.alpha_minus),
                "beta_plus": list(frame.beta_plus),
                "beta_minus": list(frame.beta_minus),
                "s": frame.s}

def normalized(spec: DiagramSpec) -> DiagramSpec:
    '''The same counting problem transported to d = (0, 1), boundary data resolved.'''
    frame = spec.frame
    return DiagramSpec(frame.polygon, LatticeVector(0, 1), spec.genus,
                       frame.alpha_plus, frame.alpha_minus, frame.beta_plus, frame.beta_minus)

@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Tuple[str, str], ...] = ()

    def __bool__(self):
        return not self.violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> List[str]:
        return [code for code, _ in self.violations]

    def as_json(self):
        return {"ok": self.ok,
                "violations": [{"check": code, "detail": detail} for code, detail in self.violations]}

def validate(diagram: FloorDiagram, spec: DiagramSpec) -> ValidationReport:
    '''
    Check a diagram against a spec: genus, divergence at infinity, the theta
    lists against the direction lists and, for T_d, the plane conditions.

    Parameters
    ----------
    diagram - FloorDiagram.
    spec    - DiagramSpec.

    Output
    ------
    ValidationReport, falsy when a condition fails.
    '''
    frame = spec.frame
    violations = structure_violations(diagram)

    if 'disconnected' not in [code for code, _ in violations]:
        genus = diagram_genus(diagram)
        if genus != spec.genus:
            violations.append(('genus', "diagram genus %i, expected %i" % (genus, spec.genus)))

    div_minus = sum(diagram.divergence(vertex) for vertex in diagram.inf_minus)
    if div_minus != -frame.data.d_minus:
        violations.append(('divergence_minus', "sum of div at -infinity is %i, expected %i" % (div_minus, -frame.data.d_minus)))
    div_plus = sum(diagram.divergence(vertex) for vertex in diagram.inf_plus)
    if div_plus != frame.data.d_plus:
        violations.append(('divergence_plus', "sum of div at +infinity is %i, expected %i" % (div_plus, frame.data.d_plus)))

    if len(diagram.floors) != frame.floor_count:
        violations.append(('floor_count', "%i floors, expected %i" % (len(diagram.floors), frame.floor_count)))

    thetas = tuple(sorted(floor.theta for floor in diagram.floors))
    if thetas != frame.left_slopes:
        violations.append(('theta_left', "theta list %s, left slopes %s" % (list(thetas), list(frame.left_slopes))))
    rights = tuple(sorted(floor.theta + diagram.divergence(floor.id) for floor in diagram.floors))
    if rights != frame.right_slopes:
        violations.append(('theta_right', "theta + div list %s, right slopes %s" % (list(rights), list(frame.right_slopes))))

    if frame.is_plane:
        for floor in diagram.floors:
            if diagram.divergence(floor.id) != 1:
                violations.append(('plane_divergence', "floor %i has divergence %i" % (floor.id, diagram.divergence(floor.id))))
        infinite_weight = sum(diagram.edges[index].weight for index in diagram.bottom_edges())
        if infinite_weight != frame.data.d_height:
            violations.append(('plane_weight', "infinite edges weigh %i, expected %i" % (infinite_weight, frame.data.d_height)))

    return ValidationReport(tuple(violations))

def cardinality_check(diagram: FloorDiagram, spec: DiagramSpec) -> bool:
    '''
    Counting identities of a valid diagram: for T_d, d floors and
    Card(D) = 2d + g - 1 + Card(Vert^-inf); in general
    Card_w(D) = Card(boundary points) + g - 1.
    '''
    frame = spec.frame
    holds = weighted_cardinality(diagram) == frame.polygon.boundary_points + spec.genus - 1
    if frame.is_plane:
        degree = frame.data.d_height
        cardinality = len(diagram.floors) + len(diagram.edges)
        holds = holds and len(diagram.floors) == degree and \
            cardinality == 2 * degree + spec.genus - 1 + len(diagram.inf_minus)
    return holds

###############################################################################
# Generation

def _floor_orderings(frame: NormalFrame) -> List[Tuple[Tuple[int, int], ...]]:
    '''
    Sequences of (theta, div) per floor position: one per arrangement of each
    pairing of left slopes with right slopes.
    '''
    left = list(frame.left_slopes)
    pairings = set()
    for right in multiset_permutations(list(frame.right_slopes)):
        pairings.add(tuple(sorted((theta, slope - theta) for theta, slope in zip(left, right))))

    orderings = list()
    for pairing in sorted(pairings):
        if sum(div for _, div in pairing) != frame.data.d_minus - frame.data.d_plus:
            continue
        orderings.extend(tuple(ordering) for ordering in multiset_permutations(list(pairing)))
    return orderings

def _sub_multisets(counter):
    keys = sorted(counter)
    for picks in itertools.product(*[range(counter[key] + 1) for key in keys]):
        yield Counter({key: pick for key, pick in zip(keys, picks) if pick})

def _weight_partitions(total, max_parts):
    if max_parts <= 0:
        return
    for partition in partitions(total, m=max_parts):
        yield sorted((part for part, times in partition.items() for _ in range(times)), reverse=True)

def _edge_bundles(total, targets, max_edges):
    '''Multisets of (target, weight) with weights summing to total.'''
    if total == 0:
        yield []
        return
    if not targets or max_edges <= 0:
        return
    first, rest = targets[0], targets[1:]
    for amount in range(0, total + 1):
        if amount == 0:
            yield from _edge_bundles(total, rest, max_edges)
            continue
        for parts in _weight_partitions(amount, max_edges):
            for tail in _edge_bundles(total - amount, rest, max_edges - len(parts)):
                yield [(first, weight) for weight in parts] + tail

def _assemble(ordering, finite, tails_minus, tails_plus) -> FloorDiagram:
    count = len(ordering)
    floors = tuple(Floor(position, theta) for position, (theta, _) in enumerate(ordering))
    edges = list()
    inf_minus, inf_plus = list(), list()
    next_id = count
    for position, weight in sorted(tails_minus):
        inf_minus.append(next_id)
        edges.append(Edge(next_id, position, weight))
        next_id += 1
    edges.extend(Edge(source, target, weight) for source, target, weight in sorted(finite))
    for position, weight in sorted(tails_plus):
        inf_plus.append(next_id)
        edges.append(Edge(position, next_id, weight))
        next_id += 1
    return FloorDiagram(floors, tuple(inf_minus), tuple(inf_plus), tuple(edges))

def diagrams_for_ordering(job) -> List[FloorDiagram]:
    '''
    Worker: every connected diagram whose floors, listed in a topological
    order, carry the given (theta, div) sequence.

    Parameters
    ----------
    job - Tuple. (ordering, bottom tail weights, top tail weights, number of finite edges)
    '''
    ordering, bottom_weights, top_weights, finite_count = job
    count = len(ordering)
    incoming = [0] * count
    finite, tails_minus, tails_plus = list(), list(), list()
    found = list()

    def place(position, bottom_left, top_left, budget):
        if position == count:
            if budget == 0 and not +bottom_left and not +top_left:
                diagram = _assemble(ordering, finite, tails_minus, tails_plus)
                if nx.is_weakly_connected(diagram.graph()):
                    found.append(diagram)
            return

        _, div = ordering[position]
        last = position == count - 1
        bottom_choices = [bottom_left] if last else _sub_multisets(bottom_left)
        for bottom_pick in bottom_choices:
            in_weight = incoming[position] + sum(weight * times for weight, times in bottom_pick.items())
            top_choices = [top_left] if last else list(_sub_multisets(top_left))
            for top_pick in top_choices:
                out_finite = in_weight - div - sum(weight * times for weight, times in top_pick.items())
                if out_finite < 0 or (last and out_finite > 0):
                    continue
                picked_minus = [(position, weight) for weight, times in bottom_pick.items() for _ in range(times)]
                picked_plus = [(position, weight) for weight, times in top_pick.items() for _ in range(times)]
                for bundle in _edge_bundles(out_finite, list(range(position + 1, count)), budget):
                    for target, weight in bundle:
                        incoming[target] += weight
                        finite.append((position, target, weight))
                    tails_minus.extend(picked_minus)
                    tails_plus.extend(picked_plus)

                    place(position + 1, bottom_left - bottom_pick, top_left - top_pick, budget - len(bundle))

                    del tails_plus[len(tails_plus) - len(picked_plus):]
                    del tails_minus[len(tails_minus) - len(picked_minus):]
                    for target, weight in bundle:
                        incoming[target] -= weight
                        finite.pop()

    place(0, Counter(bottom_weights), Counter(top_weights), finite_count)
    return found

_NODE_MATCH = isomorphism.categorical_node_match(['kind', 'theta'], [None, None])
_EDGE_MATCH = isomorphism.categorical_multiedge_match('weight', None)

def _signature(diagram):
    local = list()
    for floor in diagram.floors:
        ins = sorted((diagram.kind(edge.source), edge.weight) for edge in diagram.edges if edge.target == floor.id)
        outs = sorted((diagram.kind(edge.target), edge.weight) for edge in diagram.edges if edge.source == floor.id)
        local.append((floor.theta, tuple(ins), tuple(outs)))
    return tuple(sorted(local))

def diagrams_isomorphic(first: FloorDiagram, second: FloorDiagram) -> bool:
    '''Isomorphism of weighted oriented graphs preserving theta.'''
    if _signature(first) != _signature(second):
        return False
    matcher = isomorphism.MultiDiGraphMatcher(first.graph(), second.graph(),
                                              node_match=_NODE_MATCH, edge_match=_EDGE_MATCH)
    return matcher.is_isomorphic()

class _IsomorphismIndex:
    '''Keeps the first diagram of every isomorphism class, bucketed by signature.'''

    def __init__(self):
        self.buckets = defaultdict(list)
        self.diagrams = list()

    def add(self, diagram: FloorDiagram) -> bool:
        bucket = self.buckets[_signature(diagram)]
        if any(diagrams_isomorphic(diagram, other) for other in bucket):
            return False
        bucket.append(diagram)
        self.diagrams.append(diagram)
        return True

def enumerate_diagrams(spec: DiagramSpec, threads: Optional[int] = None,
                       shuffle_seed: Optional[int] = None) -> List[FloorDiagram]:
    '''
    All floor diagrams of the spec's type carrying markings, pairwise
    non-isomorphic.

    Parameters
    ----------
    spec            - DiagramSpec.
    threads         - Integer. Worker processes (see Data.threads)
    shuffle_seed    - Integer. Permute the search shards first; the result is
                      the same up to the choice of representatives.

    Output
    ------
    List of FloorDiagram
    '''
    frame = spec.frame
    jobs = [(ordering, frame.bottom_weights, frame.top_weights, frame.finite_edge_count)
            for ordering in _floor_orderings(frame)]
    if shuffle_seed is not None:
        permutation = np.random.default_rng(shuffle_seed).permutation(len(jobs))
        jobs = [jobs[index] for index in permutation]

    threads = Data.threads(threads)
    logging.info("Enumerating floor diagrams: %i floors, genus %i, %i search shards"
                 % (frame.floor_count, spec.genus, len(jobs)))

    if threads > 1 and len(jobs) > 1:
        logging.debug("Using a pool of %i workers" % threads)
        pool = mp.Pool(processes=threads)
        shard_results = pool.map_async(diagrams_for_ordering, jobs)
        shard_results.wait()
        shards = shard_results.get()
        pool.close()
        pool.join()
    else:
        shards = [diagrams_for_ordering(job) for job in jobs]

    index = _IsomorphismIndex()
    for shard in shards:
        for diagram in shard:
            index.add(diagram)

    logging.info("Found %i floor diagrams" % len(index.diagrams))
    return index.diagrams

###############################################################################
# Markings

@dataclass(frozen=True)
class Marking:
    '''
    A bijection from the label interval onto D, stored as (label, element)
    pairs sorted by label. Elements are "floor:<id>" or "edge:<index>".
    '''
    labels: Tuple[Tuple[int, str], ...]

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(sorted((int(label), str(element))
                                                        for label, element in self.labels)))

    @classmethod
    def from_assignment(cls, assignment: Dict[str, int]):
        '''Build from an element -> label mapping.'''
        return cls(tuple((label, element) for element, label in assignment.items()))

    @cached_property
    def element_of(self) -> Dict[int, str]:
        return dict(self.labels)

    @cached_property
    def label_of(self) -> Dict[str, int]:
        return {element: label for label, element in self.labels}

    def as_json(self):
        return {"labels": {str(label): element for label, element in self.labels}}

def _linear_extensions(elements, predecessors, twins, fixed=()):
    # Among interchangeable twins only the first unplaced one is tried, so
    # each orbit of twin swaps is produced once. Fixed elements already
    # carry their labels and count as placed.
    placed = set(fixed)
    sequence = list()
    total = len(elements)

    def extend():
        if len(sequence) == total:
            yield tuple(sequence)
            return
        tried = set()
        for element in elements:
            if element in placed or not predecessors[element] <= placed:
                continue
            if twins[element] in tried:
                continue
            tried.add(twins[element])
            placed.add(element)
            sequence.append(element)
            yield from extend()
            sequence.pop()
            placed.remove(element)

    yield from extend()

def _marking_key(diagram, assignment):
    # The marked diagram rewritten in terms of labels: two markings are
    # equivalent exactly when these descriptions coincide.
    items = set()
    for floor in diagram.floors:
        items.add(('floor', assignment[floor_element(floor.id)], floor.theta))
    for index, edge in enumerate(diagram.edges):
        source = assignment[floor_element(edge.source)] if edge.source in diagram.theta else INF_MINUS
        target = assignment[floor_element(edge.target)] if edge.target in diagram.theta else INF_PLUS
        items.add(('edge', assignment[edge_element(index)], source, target, edge.weight))
    return frozenset(items)

def _alpha_blocks(first_label, alpha):
    '''(weight, labels) per block, blocks in increasing weight.'''
    blocks = list()
    label = first_label
    for weight, size in enumerate(alpha, 1):
        blocks.append((weight, list(range(label, label + size))))
        label += size
    return blocks

def _edges_by_weight(diagram, indices):
    grouped = defaultdict(list)
    for index in indices:
        grouped[diagram.edges[index].weight].append(index)
    return grouped

def enumerate_markings(diagram: FloorDiagram, spec: DiagramSpec) -> List[Marking]:
    '''
    One marking per equivalence class: order-compatible bijections of the
    label interval onto D with the alpha blocks on the tails of matching
    weight.
    '''
    frame = spec.frame
    bottom = _edges_by_weight(diagram, diagram.bottom_edges())
    top = _edges_by_weight(diagram, diagram.top_edges())
    for grouped, alpha, beta in ((bottom, frame.alpha_minus, frame.beta_minus),
                                 (top, frame.alpha_plus, frame.beta_plus)):
        weights = set(grouped) | set(range(1, max(len(alpha), len(beta)) + 1))
        for weight in weights:
            expected = (alpha[weight - 1] if weight <= len(alpha) else 0) + \
                       (beta[weight - 1] if weight <= len(beta) else 0)
            if len(grouped.get(weight, [])) != expected:
                return list()

    blocks = [(labels, bottom.get(weight, [])) for weight, labels in
              _alpha_blocks(-seq_size(frame.alpha_minus) + 1, frame.alpha_minus)]
    blocks += [(labels, top.get(weight, [])) for weight, labels in
               _alpha_blocks(frame.s + 1, frame.alpha_plus)]

    order = diagram.order_graph()
    predecessors = {element: set(order.predecessors(element)) for element in order.nodes}
    twins = diagram.twin_keys()
    elements = diagram.elements()

    seen, markings = set(), list()
    for choice in itertools.product(*[itertools.permutations(candidates, len(labels))
                                      for labels, candidates in blocks]):
        fixed = dict()
        for (labels, _), picked in zip(blocks, choice):
            for label, index in zip(labels, picked):
                fixed[edge_element(index)] = label
        remaining = [element for element in elements if element not in fixed]
        if len(remaining) != frame.s:
            logging.warning("Diagram has %i free elements for %i points" % (len(remaining), frame.s))
            return list()

        for extension in _linear_extensions(remaining, predecessors, twins, fixed):
            assignment = dict(fixed)
            assignment.update({element: label for label, element in enumerate(extension, 1)})
            key = _marking_key(diagram, assignment)
            if key in seen:
                continue
            seen.add(key)
            markings.append(Marking.from_assignment(assignment))

    logging.debug("%i marking classes" % len(markings))
    return markings

def check_marking(diagram: FloorDiagram, marking: Marking, spec: DiagramSpec) -> List[Tuple[str, str]]:
    '''Violations of the marking conditions; empty when the marking is valid.'''
    frame = spec.frame
    violations = list()
    lowest = -seq_size(frame.alpha_minus) + 1
    highest = frame.s + seq_size(frame.alpha_plus)
    labels = [label for label, _ in marking.labels]
    elements = [element for _, element in marking.labels]

    if labels != list(range(lowest, highest + 1)):
        violations.append(('bijection', "labels are not the interval %i..%i" % (lowest, highest)))
    if sorted(elements) != sorted(diagram.elements()):
        violations.append(('bijection', "labelled elements are not exactly the floors and edges"))
        return violations

    label_of = marking.label_of
    for lower, upper in diagram.order_graph().edges:
        if label_of[lower] >= label_of[upper]:
            violations.append(('order', "%s <= %s in the diagram but labelled %i >= %i"
                               % (lower, upper, label_of[lower], label_of[upper])))

    bottom, top = set(diagram.bottom_edges()), set(diagram.top_edges())
    for side, blocks, allowed in (('alpha_minus', _alpha_blocks(lowest, frame.alpha_minus), bottom),
                                  ('alpha_plus', _alpha_blocks(frame.s + 1, frame.alpha_plus), top)):
        for weight, block in blocks:
            for label in block:
                kind, number = parse_element(marking.element_of[label])
                if kind != 'edge' or number not in allowed or diagram.edges[number].weight != weight:
                    violations.append((side, "label %i must mark a weight %i infinite edge" % (label, weight)))

    for side, indices, beta in (('beta_minus', bottom, frame.beta_minus), ('beta_plus', top, frame.beta_plus)):
        free = [diagram.edges[index].weight for index in indices if 1 <= label_of[edge_element(index)] <= frame.s]
        if seq_from_weights(free) != beta:
            violations.append((side, "free infinite edges by weight %s, expected %s" % (dict(Counter(free)), list(beta))))
    return violations

###############################################################################
# Counting

def multiplicity(diagram: FloorDiagram, spec: DiagramSpec) -> int:
    '''I^beta times the product of squared finite edge weights.'''
    frame = spec.frame
    result = seq_power(frame.beta_plus) * seq_power(frame.beta_minus)
    for index in diagram.finite_edges():
        result *= diagram.edges[index].weight ** 2
    return result

def count_breakdown(spec: DiagramSpec, threads: Optional[int] = None,
                    shuffle_seed: Optional[int] = None) -> List[dict]:
    '''One row per diagram: marking classes, multiplicity and contribution.'''
    rows = list()
    for number, diagram in enumerate(enumerate_diagrams(spec, threads, shuffle_seed)):
        classes = len(enumerate_markings(diagram, spec))
        weight = multiplicity(diagram, spec)
        rows.append({"diagram": number,
                     "floors": len(diagram.floors),
                     "finite_weights": [diagram.edges[index].weight for index in diagram.finite_edges()],
                     "markings": classes,
                     "multiplicity": weight,
                     "contribution": classes * weight})
    return rows

def count(spec: DiagramSpec, threads: Optional[int] = None, shuffle_seed: Optional[int] = None) -> int:
    '''
    Number of irreducible curves of the spec's genus and Newton polygon
    through the appropriate points, as a sum over marked floor diagrams.
    '''
    total = sum(row["contribution"] for row in count_breakdown(spec, threads, shuffle_seed))
    logging.info("Count: %i" % total)
    return total
