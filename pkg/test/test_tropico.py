#!/usr/bin/env python
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
import unittest
import os.path
import sys
import io
import json
import subprocess
import tempfile
from contextlib import redirect_stderr, redirect_stdout

###############################################################################

path_to_script = os.path.join(os.path.dirname(os.path.realpath(__file__)),'..','bin','tropico')
sys.path = [os.path.join(os.path.dirname(os.path.realpath(__file__)),'..')]+sys.path

from tropico.cli import main

###############################################################################

def _run(argv):
    '''main() on argv, quiet; returns (exit code, stdout, stderr).'''
    if argv[0] in COMMANDS and '--verbosity' not in argv:
        argv = argv + ['--verbosity', '1']
    stdout, stderr = io.StringIO(), io.StringIO()
    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = main(argv)
    return code, stdout.getvalue(), stderr.getvalue()

COMMANDS = ['polygon', 'count', 'diagrams', 'realize', 'tropicalize', 'check']

class Tests(unittest.TestCase):

    def test_hello_world(self):
        cmd = '%s -h > /dev/null' % path_to_script
        self.assertEqual(0, subprocess.call(cmd, shell=True))

    def test_count(self):
        code, stdout, _ = _run(['count', '--polygon', 'T3', '--genus', '0'])
        self.assertEqual(0, code)
        self.assertEqual("12", stdout.strip())
        self.assertEqual("36", _run(['count', '--polygon', 'T3', '--beta-minus', '1,1'])[1].strip())
        self.assertEqual("10", _run(['count', '--polygon', 'T3', '--alpha-minus', '0,1',
                                     '--beta-minus', '1'])[1].strip())
        self.assertEqual("4", _run(['count', '--polygon', 'diamond'])[1].strip())
        self.assertEqual("1", _run(['count', '--polygon', 'T3', '--genus', '1'])[1].strip())

    def test_count_explain(self):
        code, stdout, stderr = _run(['count', '--polygon', 'T3', '--explain'])
        self.assertEqual(0, code)
        self.assertEqual("12", stdout.strip())
        self.assertTrue(stderr.endswith("total 12\n"))

    def test_polygon_report(self):
        code, stdout, _ = _run(['polygon', 'report', 'T3'])
        self.assertEqual(0, code)
        report = json.loads(stdout)
        self.assertEqual(9, report["double_area"])
        self.assertEqual(1, report["interior"])
        self.assertEqual(9, report["boundary"])
        self.assertEqual(1, report["p_a"])
        self.assertIn([0, 1], report["transverse_directions"])
        self.assertEqual(3, report["direction_data"]["d_height"])

    def test_polygon_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'square.json')
            with open(path, 'w') as out_io:
                json.dump({"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}, out_io)
            report = json.loads(_run(['polygon', 'report', path])[1])
        self.assertEqual(2, report["double_area"])
        self.assertEqual(0, report["interior"])

    def test_diagrams_and_realize(self):
        code, stdout, _ = _run(['diagrams', '--polygon', 'T3', '--genus', '1', '--markings'])
        self.assertEqual(0, code)
        listing = json.loads(stdout)
        self.assertEqual(1, len(listing))
        self.assertEqual(1, len(listing[0]["markings"]))

        with tempfile.TemporaryDirectory() as tmp:
            diagram, marking, svg = (os.path.join(tmp, name) for name in ('d.json', 'm.json', 'c.svg'))
            with open(diagram, 'w') as out_io:
                json.dump(listing[0]["diagram"], out_io)
            with open(marking, 'w') as out_io:
                json.dump(listing[0]["markings"][0], out_io)

            code, stdout, _ = _run(['realize', '--polygon', 'T3', '--diagram', diagram,
                                    '--marking', marking, '--seed', '2', '--svg', svg])
            self.assertEqual(0, code)
            payload = json.loads(stdout)
            self.assertEqual([], payload["violations"])
            self.assertEqual(9, len(payload["config"]["points"]))
            with open(svg) as svg_io:
                self.assertEqual(9, svg_io.read().count('<circle'))

    def test_realize_boundary_from_tails(self):
        for problem, expected in ((['--beta-minus', '1,1'], ([], [1, 1])),
                                  (['--alpha-minus', '0,1', '--beta-minus', '1'], ([0, 1], [1]))):
            listing = json.loads(_run(['diagrams', '--polygon', 'T3', '--markings'] + problem)[1])
            with tempfile.TemporaryDirectory() as tmp:
                diagram, marking = os.path.join(tmp, 'd.json'), os.path.join(tmp, 'm.json')
                for entry in listing:
                    with open(diagram, 'w') as out_io:
                        json.dump(entry["diagram"], out_io)
                    with open(marking, 'w') as out_io:
                        json.dump(entry["markings"][0], out_io)
                    code, stdout, _ = _run(['realize', '--polygon', 'T3', '--diagram', diagram,
                                            '--marking', marking])
                    self.assertEqual(0, code)
                    payload = json.loads(stdout)
                    self.assertEqual(expected, (payload["spec"]["alpha_minus"], payload["spec"]["beta_minus"]))
                    self.assertEqual([], payload["violations"])

    def test_tropicalize(self):
        with tempfile.TemporaryDirectory() as tmp:
            poly, svg = os.path.join(tmp, 'p.json'), os.path.join(tmp, 'p.svg')
            with open(poly, 'w') as out_io:
                json.dump({"terms": [{"i": [0, 0], "a": "0"}, {"i": [1, 0], "a": "0"},
                                     {"i": [0, 1], "a": "0"}, {"i": [1, 1], "a": "1"}]}, out_io)
            code, stdout, _ = _run(['tropicalize', '--poly', poly, '--subdivision', '--svg', svg])
            self.assertEqual(0, code)
            payload = json.loads(stdout)
            self.assertEqual(2, len(payload["curve"]["vertices"]))
            self.assertIn("subdivision", payload)
            self.assertTrue(os.path.exists(svg))

    def test_check(self):
        code, stdout, _ = _run(['check', '--only', 'lattice_invariants', 'genus_fixtures'])
        self.assertEqual(0, code)
        result = json.loads(stdout)
        self.assertTrue(result["ok"])
        self.assertEqual(['genus_fixtures', 'lattice_invariants'], sorted(result["checks"]))

    def test_domain_errors(self):
        code, stdout, _ = _run(['count', '--polygon', 'T3', '--genus', '2'])
        self.assertEqual(1, code)
        self.assertEqual("InvalidSpec", json.loads(stdout)["error"])

        code, stdout, _ = _run(['count', '--polygon', 'cubic-singular'])
        self.assertEqual(1, code)
        self.assertEqual("NotTransverse", json.loads(stdout)["error"])

        code, stdout, _ = _run(['count', '--polygon', 'no/such/polygon.json'])
        self.assertEqual(1, code)
        self.assertEqual("FileNotFoundError", json.loads(stdout)["error"])

        self.assertEqual(1, _run(['check', '--only', 'no_such_check'])[0])

    def test_usage_errors(self):
        self.assertEqual(2, _run(['frobnicate'])[0])
        self.assertEqual(2, _run(['count'])[0])
        self.assertEqual(2, _run(['count', '--polygon', 'T3', '--verbosity', '9'])[0])

if __name__ == "__main__":
    unittest.main()
