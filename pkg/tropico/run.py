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
import logging
import sys

from tropico.data import Data
from tropico.diagram import (DiagramSpec, count_breakdown, diagram_genus,
                             edge_element, enumerate_diagrams,
                             enumerate_markings)
from tropico.errors import InvalidSpec
from tropico.lattice import (LatticeVector, direction_data, is_transverse,
                             transverse_directions)
from tropico.parser import Parser
from tropico.realize import realize_stretched, verify_realization
from tropico.selfcheck import SelfCheck
from tropico.toolbox import seq_from_weights
from tropico.tropical import corner_locus
from tropico.writer import RenderStyle, Writer

####################################################################################################

debug = {1:logging.CRITICAL, 2:logging.ERROR, 3:logging.WARNING, 4:logging.INFO, 5:logging.DEBUG}

####################################################################################################

class Run:

    def __init__(self):

        self.POLYGON         = 'polygon'
        self.COUNT           = 'count'
        self.DIAGRAMS        = 'diagrams'
        self.REALIZE         = 'realize'
        self.TROPICALIZE     = 'tropicalize'
        self.CHECK           = 'check'

    def _logging_setup(self, args):
        if args.verbosity not in range(1, 6):
            raise InvalidSpec("Logging verbosity must be a positive integer between 1 and 5.")

        logger = logging.getLogger('')
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
        logger.setLevel(debug[args.verbosity])
        log_format = logging.Formatter(fmt="[%(asctime)s] %(levelname)s: %(message)s",
                                       datefmt="%Y-%m-%d %H:%M:%S %p")

        # stdout carries the JSON results
        stream_logger = logging.StreamHandler(sys.stderr)
        stream_logger.setFormatter(log_format)
        stream_logger.setLevel(debug[args.verbosity])
        logger.addHandler(stream_logger)

        if args.log:
            file_logger = logging.FileHandler(args.log, 'a')
            file_logger.setFormatter(log_format)
            logger.addHandler(file_logger)

    def _spec(self, args, genus):
        '''
        Build the counting problem from the shared --polygon, --dir and
        boundary condition options.
        '''
        return DiagramSpec(Parser.parse_polygon(args.polygon),
                           Parser.parse_direction(args.dir),
                           genus,
                           Parser.parse_sequence(args.alpha_plus) or (),
                           Parser.parse_sequence(args.alpha_minus) or (),
                           Parser.parse_sequence(args.beta_plus),
                           Parser.parse_sequence(args.beta_minus))

    def _realize_spec(self, args, diagram, marking):
        '''
        The counting problem of a marked diagram. Without boundary options on
        the command line they are read off its tails: a bottom tail labelled
        below 1 is a fixed point of alpha_minus, every other tail is free.
        '''
        options = (args.alpha_plus, args.alpha_minus, args.beta_plus, args.beta_minus)
        if any(option is not None for option in options):
            return self._spec(args, diagram_genus(diagram))

        fixed, free, top = list(), list(), list()
        for index in diagram.bottom_edges():
            weight = diagram.edges[index].weight
            if marking.label_of.get(edge_element(index), 1) < 1:
                fixed.append(weight)
            else:
                free.append(weight)
        for index in diagram.top_edges():
            top.append(diagram.edges[index].weight)

        return DiagramSpec(Parser.parse_polygon(args.polygon),
                           Parser.parse_direction(args.dir),
                           diagram_genus(diagram),
                           (),
                           seq_from_weights(fixed),
                           seq_from_weights(top),
                           seq_from_weights(free))

    def _style(self, args):
        return RenderStyle(width=args.width, height=args.height,
                           weight_labels=not args.no_weight_labels,
                           marking_labels=not args.no_marking_labels,
                           anticanonical_frame=args.anticanonical_frame)

    def _check_counting(self, args):
        '''
        Check count and diagrams options are valid.

        Parameters
        ----------
        args    - object. Argparse object
        '''
        if args.genus < 0:
            raise InvalidSpec("--genus must be a non-negative integer")
        if args.threads is not None and args.threads < 1:
            raise InvalidSpec("--threads must be a positive integer")

    def _check_realize(self, args):
        '''
        Check realize options are valid.

        Parameters
        ----------
        args    - object. Argparse object
        '''
        if args.seed < 0:
            raise InvalidSpec("--seed must be a non-negative integer")

    def _check_check(self, args):
        unknown = [name for name in (args.only or []) if name not in SelfCheck.names()]
        if unknown:
            raise InvalidSpec("Unknown checks: %s (available: %s)" % (', '.join(unknown), ', '.join(SelfCheck.names())))

    def polygon_report(self, args):
        polygon = Parser.parse_polygon(args.polygon)
        report = {"vertices": polygon.as_json()["vertices"],
                  "double_area": polygon.double_area,
                  "interior": polygon.interior_points,
                  "boundary": polygon.boundary_points,
                  "p_a": polygon.interior_points,
                  "singularities": [list(singularity) for singularity in polygon.singularities()],
                  "transverse_directions": [d.as_list() for d in transverse_directions(polygon, args.bound)]}
        vertical = LatticeVector(0, 1)
        report["direction_data"] = direction_data(polygon, vertical).as_json() \
            if is_transverse(polygon, vertical) else None
        return report

    def count(self, args):
        spec = self._spec(args, args.genus)
        rows = count_breakdown(spec, Data.threads(args.threads))
        if args.explain:
            Writer.write_breakdown(rows)
        return sum(row["contribution"] for row in rows)

    def diagrams(self, args):
        spec = self._spec(args, args.genus)
        result = list()
        for diagram in enumerate_diagrams(spec, Data.threads(args.threads)):
            entry = {"diagram": diagram.as_json()}
            if args.markings:
                entry["markings"] = [marking.as_json() for marking in enumerate_markings(diagram, spec)]
            result.append(entry)
        logging.info("Listed %i diagrams" % len(result))
        return result

    def realize(self, args):
        diagram = Parser.parse_diagram(Parser.read_json(args.diagram))
        marking = Parser.parse_marking(Parser.read_json(args.marking))
        spec = self._realize_spec(args, diagram, marking)
        realization = realize_stretched(diagram, marking, spec, args.seed)
        violations = verify_realization(realization, diagram, marking, realization.config, spec)
        for violation in violations:
            logging.warning("Realization check: %s" % violation)
        if args.svg:
            points = [(str(label), point) for label, point in enumerate(realization.config.points, 1)]
            Writer.write(Writer.curve_svg(realization.curve, self._style(args), spec.polygon, points), args.svg)
        payload = realization.as_json()
        payload["spec"] = spec.as_json()
        payload["violations"] = violations
        return payload

    def tropicalize(self, args):
        polynomial = Parser.parse_polynomial(Parser.read_json(args.poly))
        curve, subdivision = corner_locus(polynomial)
        if args.svg:
            inset = subdivision if args.subdivision else None
            Writer.write(Writer.curve_svg(curve, self._style(args), subdivision=inset), args.svg)
        payload = {"curve": curve.as_json()}
        if args.subdivision:
            payload["subdivision"] = subdivision.as_json()
        return payload

    def check(self, args):
        return SelfCheck(args.seed, Data.threads(args.threads)).run(args.only)

    def run_tropico(self, args, command):
        '''
        Parameters
        ----------
        args    - object. Argparse object
        command - List. The command line, for the log

        Output
        ------
        Integer. The exit code
        '''
        self._logging_setup(args)

        logging.info("Command: %s" % ' '.join(command))
        logging.info("Running the %s command" % args.subparser_name)

        exit_code = 0
        if args.subparser_name == self.POLYGON:
            result = self.polygon_report(args)

        elif args.subparser_name == self.COUNT:
            self._check_counting(args)
            result = self.count(args)

        elif args.subparser_name == self.DIAGRAMS:
            self._check_counting(args)
            result = self.diagrams(args)

        elif args.subparser_name == self.REALIZE:
            self._check_realize(args)
            result = self.realize(args)

        elif args.subparser_name == self.TROPICALIZE:
            result = self.tropicalize(args)

        elif args.subparser_name == self.CHECK:
            self._check_check(args)
            result = self.check(args)
            exit_code = 0 if result["ok"] else 1

        Writer.write_json(result)
        logging.info('Finished running tropico')
        return exit_code
