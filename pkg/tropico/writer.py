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

import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

import pandas as pd
# Local
from tropico.lattice import LatticeVector, det
###############################################################################

@dataclass(frozen=True)
class RenderStyle:
    '''
    Size of the picture in pixels and what to draw besides the curve. The
    anticanonical frame replaces the clipping rectangle by a polygon with one
    side per edge of the Newton polygon, hit by the rays dual to that edge.
    '''
    width: int = 640
    height: int = 480
    margin: int = 20
    weight_labels: bool = True
    marking_labels: bool = True
    anticanonical_frame: bool = False

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.margin < 0 \
                or 2 * self.margin >= min(self.width, self.height):
            raise ValueError("Bad picture size %ix%i with margin %i" % (self.width, self.height, self.margin))

def _normal_order(first, second):
    def half(vector):
        return 0 if vector.y > 0 or (vector.y == 0 and vector.x > 0) else 1
    if half(first) != half(second):
        return half(first) - half(second)
    return -1 if det(first, second) > 0 else (1 if det(first, second) < 0 else 0)

class _Frame:
    '''Convex clipping polygon {x : n.x <= c} in curve coordinates.'''

    AXES = (LatticeVector(1, 0), LatticeVector(0, 1), LatticeVector(-1, 0), LatticeVector(0, -1))

    def __init__(self, normals, points, padding):
        self.normals = sorted(set(normals), key=cmp_to_key(_normal_order))
        self.offsets = [max(n.x * x + n.y * y for x, y in points) + padding * (abs(n.x) + abs(n.y))
                        for n in self.normals]

    def corners(self):
        result = list()
        count = len(self.normals)
        for index in range(count):
            n1, c1 = self.normals[index], self.offsets[index]
            n2, c2 = self.normals[(index + 1) % count], self.offsets[(index + 1) % count]
            denominator = det(n1, n2)
            result.append((Fraction(c1 * n2.y - c2 * n1.y, denominator),
                           Fraction(n1.x * c2 - n2.x * c1, denominator)))
        return result

    def exit(self, origin, direction):
        '''Where the ray from origin along direction leaves the frame.'''
        t = min((c - (n.x * origin[0] + n.y * origin[1])) / Fraction(n.x * direction.x + n.y * direction.y)
                for n, c in zip(self.normals, self.offsets) if n.x * direction.x + n.y * direction.y > 0)
        return (origin[0] + t * direction.x, origin[1] + t * direction.y)

class Writer:
    '''
    A collection of functions to write JSON documents, tables and SVG
    pictures.
    '''

    @staticmethod
    def json_text(payload):
        '''Canonical JSON: sorted keys, so equal inputs give identical bytes.'''
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def write_json(payload, stream=None):
        stream = stream or sys.stdout
        stream.write(Writer.json_text(payload) + '\n')
        stream.flush()

    @staticmethod
    def write(text, output_path):
        '''
        Parameters
        ----------
        text        - String. Content of the file
        output_path - String. Path to write to.
        '''
        logging.info("Writing results to file: %s" % output_path)
        with open(output_path, 'w') as out_io:
            out_io.write(text)

    @staticmethod
    def breakdown_table(rows):
        '''Per-diagram count rows as a pandas DataFrame, indexed by diagram.'''
        frame = pd.DataFrame(rows, columns=["diagram", "floors", "finite_weights",
                                            "markings", "multiplicity", "contribution"])
        return frame.set_index("diagram")

    @staticmethod
    def write_breakdown(rows, stream=None):
        stream = stream or sys.stderr
        table = Writer.breakdown_table(rows)
        stream.write(table.to_string() + '\n')
        stream.write("total %i\n" % int(table["contribution"].sum()) if len(table) else "total 0\n")

    @staticmethod
    def curve_svg(curve, style=None, newton=None, points=(), subdivision=None):
        '''
        Render a tropical curve, plane or parametrized, rays clipped at the
        frame.

        Parameters
        ----------
        curve       - PlaneTropicalCurve or ParametrizedCurve.
        style       - RenderStyle.
        newton      - LatticePolygon. Needed for the anticanonical frame when
                      the curve does not carry one
        points      - List of (label, point) marked points to draw.
        subdivision - DualSubdivision. Drawn as an inset when given

        Output
        ------
        String. The SVG document
        '''
        style = style or RenderStyle()
        newton = newton or getattr(curve, 'newton', None)
        pieces = curve.pieces()
        finite = [piece.origin for piece in pieces] + [piece.at(piece.length) for piece in pieces
                                                       if piece.length is not None]
        finite += [point for _, point in points]
        if not finite:
            finite = [(Fraction(0), Fraction(0))]

        xs = [x for x, _ in finite]
        ys = [y for _, y in finite]
        padding = Fraction(max(max(xs) - min(xs), max(ys) - min(ys), 1)) / 4
        if style.anticanonical_frame and newton is not None:
            normals = [LatticeVector((q - p).y, -(q - p).x).primitive() for p, q in newton.edges()]
        else:
            normals = _Frame.AXES
        frame = _Frame(normals, finite, padding)
        corners = frame.corners()

        x_low, x_high = min(x for x, _ in corners), max(x for x, _ in corners)
        y_low, y_high = min(y for _, y in corners), max(y for _, y in corners)
        scale = min((style.width - 2 * style.margin) / (x_high - x_low),
                    (style.height - 2 * style.margin) / (y_high - y_low))

        def to_svg(point):
            return (float(style.margin + (point[0] - x_low) * scale),
                    float(style.height - style.margin - (point[1] - y_low) * scale))

        lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{style.height}"'
                 f' viewBox="0 0 {style.width} {style.height}">',
                 f'<rect x="0" y="0" width="{style.width}" height="{style.height}" fill="white"/>']

        outline = " ".join(f"{to_svg(corner)[0]:.1f},{to_svg(corner)[1]:.1f}" for corner in corners)
        frame_stroke = "#888888" if style.anticanonical_frame else "#dddddd"
        lines.append(f'<polygon points="{outline}" fill="none" stroke="{frame_stroke}" stroke-width="1"/>')

        for piece in pieces:
            start = piece.origin
            end = piece.at(piece.length) if piece.length is not None else frame.exit(start, piece.direction)
            sx1, sy1 = to_svg(start)
            sx2, sy2 = to_svg(end)
            width = 1.5 * piece.weight
            lines.append(f'<line x1="{sx1:.1f}" y1="{sy1:.1f}" x2="{sx2:.1f}" y2="{sy2:.1f}"'
                         f' stroke="black" stroke-width="{width:.1f}" stroke-linecap="round"/>')
            if style.weight_labels and piece.weight > 1:
                mx, my = (sx1 + sx2) / 2, (sy1 + sy2) / 2
                lines.append(f'<text x="{mx + 4:.1f}" y="{my - 4:.1f}" font-family="Arial" font-size="11"'
                             f' fill="#c0392b">{piece.weight}</text>')

        for label, point in points:
            sx, sy = to_svg(point)
            lines.append(f'<circle cx="{sx:.1f}" cy="{sy:.1f}" r="3" fill="#2e86c1"/>')
            if style.marking_labels:
                lines.append(f'<text x="{sx + 5:.1f}" y="{sy + 12:.1f}" font-family="Arial" font-size="11"'
                             f' fill="#2e86c1">{label}</text>')

        if subdivision is not None:
            lines.extend(Writer._subdivision_inset(subdivision, style))
        lines.append('</svg>')
        return '\n'.join(lines) + '\n'

    @staticmethod
    def _subdivision_inset(subdivision, style):
        size = min(style.width, style.height) / 4
        vertices = subdivision.polygon.vertices
        x_low, y_low = min(v.x for v in vertices), min(v.y for v in vertices)
        extent = max(max(v.x for v in vertices) - x_low, max(v.y for v in vertices) - y_low, 1)
        left = style.width - style.margin - size

        def to_svg(vertex):
            return (left + (vertex.x - x_low) * size / extent,
                    style.margin + size - (vertex.y - y_low) * size / extent)

        lines = ['<g>']
        for cell in subdivision.cells:
            outline = " ".join(f"{to_svg(vertex)[0]:.1f},{to_svg(vertex)[1]:.1f}" for vertex in cell.vertices)
            lines.append(f'<polygon points="{outline}" fill="#f4f6f7" stroke="#566573" stroke-width="0.8"/>')
        lines.append('</g>')
        return lines
