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
import argparse
import json
import logging
import sys

# Local
from tropico.errors import TropicoError
from tropico.run import Run
from tropico.selfcheck import SelfCheck
from tropico.version import __version__
from tropico.writer import Writer
###############################################################################

BANNER = '''
                             _                 _
                            | |_ _ __ ___  _ __ (_) ___ ___
                            | __| '__/ _ \\| '_ \\| |/ __/ _ \\
                            | |_| | | (_) | |_) | | (_| (_) |
                             \\__|_|  \\___/| .__/|_|\\___\\___/
                                          |_|          %s

    polygon      -> Lattice invariants, singularities and direction data of a polygon
    count        -> Count curves through points with floor diagrams
    diagrams     -> List the floor diagrams (and their markings) of a counting problem
    realize      -> Build the tropical curve of a marked floor diagram
    tropicalize  -> Corner locus and dual subdivision of a tropical polynomial
    check        -> Run the invariant self-check suite

    Use tropico <command> -h for command-specific help.
''' % __version__

def _common_options(parser):
    group = parser.add_argument_group('Logging options')
    group.add_argument('--verbosity', type=int, default=4, choices=range(1, 6), metavar='1-5',
                       help='1 - 5, 1 being silent, 5 being noisy indeed. Default = 4')
    group.add_argument('--log', help='Also append the log to this file')

def _problem_options(parser, genus=True):
    group = parser.add_argument_group('Counting problem')
    group.add_argument('--polygon', required=True,
                       help='Polygon JSON file, or a fixture name (T<d>, Tz<r>_<a>_<b>, diamond, octic, cubic-singular)')
    if genus:
        group.add_argument('--genus', type=int, default=0, help='Genus of the curves. Default = 0')
    group.add_argument('--dir', default='0,1', help='Direction d as dx,dy. Default = 0,1')
    group.add_argument('--alpha-plus', dest='alpha_plus', help='Fixed tangencies to the top divisor, a1,a2,...')
    group.add_argument('--alpha-minus', dest='alpha_minus', help='Fixed tangencies to the bottom divisor, a1,a2,...')
    group.add_argument('--beta-plus', dest='beta_plus', help='Free tangencies to the top divisor, b1,b2,...')
    group.add_argument('--beta-minus', dest='beta_minus', help='Free tangencies to the bottom divisor, b1,b2,...')

def _render_options(parser):
    group = parser.add_argument_group('Picture')
    group.add_argument('--svg', help='Write an SVG picture to this file')
    group.add_argument('--width', type=int, default=640, help='Width in pixels. Default = 640')
    group.add_argument('--height', type=int, default=480, help='Height in pixels. Default = 480')
    group.add_argument('--anticanonical-frame', dest='anticanonical_frame', action='store_true',
                       help='Clip at a frame with one side per edge of the Newton polygon')
    group.add_argument('--no-weight-labels', dest='no_weight_labels', action='store_true',
                       help='Do not label edges of weight > 1')
    group.add_argument('--no-marking-labels', dest='no_marking_labels', action='store_true',
                       help='Do not label the marked points')

def build_parser():
    parser = argparse.ArgumentParser(prog='tropico', formatter_class=argparse.RawDescriptionHelpFormatter,
                                     description=BANNER)
    parser.add_argument('--version', action='version', version='tropico %s' % __version__)
    subparsers = parser.add_subparsers(dest='subparser_name', metavar='command')
    subparsers.required = True

    polygon = subparsers.add_parser('polygon', description='Report the invariants of a lattice polygon')
    polygon.add_argument('action', choices=['report'])
    polygon.add_argument('polygon', help='Polygon JSON file or fixture name')
    polygon.add_argument('--bound', type=int, default=2,
                         help='Search transverse directions with |dx|, |dy| <= bound. Default = 2')
    _common_options(polygon)

    count = subparsers.add_parser('count', description='Count curves with marked floor diagrams')
    _problem_options(count)
    count.add_argument('--explain', action='store_true', help='Print the per-diagram breakdown to stderr')
    count.add_argument('--threads', type=int, help='Worker processes (capped by TROPICO_THREADS)')
    _common_options(count)

    diagrams = subparsers.add_parser('diagrams', description='List the floor diagrams of a counting problem')
    _problem_options(diagrams)
    diagrams.add_argument('--markings', action='store_true', help='Also list the markings of every diagram')
    diagrams.add_argument('--threads', type=int, help='Worker processes (capped by TROPICO_THREADS)')
    _common_options(diagrams)

    realize = subparsers.add_parser('realize', description='Realise a marked floor diagram on stretched points')
    realize.add_argument('--diagram', required=True, help='Floor diagram JSON file')
    realize.add_argument('--marking', required=True, help='Marking JSON file')
    realize.add_argument('--seed', type=int, default=0, help='Seed of the point configuration. Default = 0')
    _problem_options(realize, genus=False)
    _render_options(realize)
    _common_options(realize)

    tropicalize = subparsers.add_parser('tropicalize', description='Corner locus of a tropical polynomial')
    tropicalize.add_argument('--poly', required=True, help='Tropical polynomial JSON file')
    tropicalize.add_argument('--subdivision', action='store_true', help='Output (and draw) the dual subdivision')
    _render_options(tropicalize)
    _common_options(tropicalize)

    check = subparsers.add_parser('check', description='Run the invariant self-check suite')
    check.add_argument('--only', nargs='+', metavar='NAME',
                       help='Run only these checks: %s' % ', '.join(SelfCheck.names()))
    check.add_argument('--seed', type=int, default=0, help='Seed of the randomised checks. Default = 0')
    check.add_argument('--threads', type=int, help='Worker processes (capped by TROPICO_THREADS)')
    _common_options(check)
    return parser

def main(argv=None):
    '''
    Parameters
    ----------
    argv    - List of strings. Arguments, sys.argv[1:] when None

    Output
    ------
    Integer. 0 on success, 1 on a domain or input error, 2 on a usage error
    '''
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code

    try:
        return Run().run_tropico(args, ['tropico'] + argv)
    except (TropicoError, OSError, json.JSONDecodeError) as error:
        logging.error(str(error))
        Writer.write_json({"error": type(error).__name__, "message": str(error)})
        return 1
    except ValueError as error:
        logging.error(str(error))
        Writer.write_json({"error": type(error).__name__, "message": str(error)})
        return 2
