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
import logging
import time
from collections import OrderedDict

import numpy as np

# Local
from tropico.diagram import (DiagramSpec, cardinality_check, count,
                             count_breakdown, enumerate_diagrams,
                             enumerate_markings, validate)
from tropico.errors import InvalidPolygon, TropicoError
from tropico.lattice import (LatticePolygon, LatticeVector, pick_identity,
                             vertex_singularity)
from tropico.realize import (realization_multiplicity_sum, realize_stretched,
                             verify_realization)
from tropico.tropical import (TropicalPolynomial, check_balancing,
                              corner_locus, geometric_genus,
                              newton_polygon_of, separate_crossings,
                              stable_intersection_generic)
###############################################################################

# Tropical polynomials with a known geometric genus: a weight two segment, a
# single vertex dual to a triangle with an interior point, and two curves where
# a weight two line crosses a weight one line (rational, and of genus one).
GENUS_FIXTURES = OrderedDict([
    ('weight-two-segment', ({(-1, 0): 0, (1, 0): 0, (0, 1): -1, (0, -1): -1}, 0)),
    ('singular-vertex', ({(0, 0): 0, (2, 1): 0, (1, 2): 0}, 0)),
    ('crossing', ({(0, 0): 0, (2, 0): 0, (2, 1): 0, (0, 1): 0,
                   (1, -1): -1, (1, 2): -1, (-1, 1): -1}, 0)),
    ('elliptic-crossing', ({(-1, 0): 0, (1, 0): 0, (1, 1): 0, (-1, 1): 0,
                            (0, -1): -1, (0, 2): -1, (-2, 1): -1, (2, 0): -1}, 1)),
])

class SelfCheck:
    '''
    Invariant suite run by `tropico check`. Every check returns a pair
    (ok, detail) where detail is JSON serialisable.
    '''

    def __init__(self, seed=0, threads=None):
        self.seed = seed
        self.threads = threads

    def _golden_specs(self):
        T3 = LatticePolygon.triangle(3)
        return [("T3 g=0 beta=[3]", DiagramSpec(T3, genus=0, beta_minus=(3,)), 12),
                ("T3 g=0 beta=[1,1]", DiagramSpec(T3, genus=0, beta_minus=(1, 1)), 36),
                ("T3 g=0 alpha=[0,1] beta=[1]", DiagramSpec(T3, genus=0, alpha_minus=(0, 1), beta_minus=(1,)), 10),
                ("T3 g=1 beta=[3]", DiagramSpec(T3, genus=1, beta_minus=(3,)), 1),
                ("T1 g=0", DiagramSpec(LatticePolygon.triangle(1)), 1),
                ("diamond g=0", DiagramSpec(LatticePolygon.diamond()), 4),
                ("octic g=1", DiagramSpec(LatticePolygon.octic_quadrilateral(), genus=1), 12),
                ("octic g=0", DiagramSpec(LatticePolygon.octic_quadrilateral()), 16)]

    def golden_counts(self):
        results, ok = dict(), True
        for label, spec, expected in self._golden_specs():
            found = count(spec, self.threads)
            results[label] = found
            ok &= found == expected
        return ok, results

    def plane_quartics(self):
        found = count(DiagramSpec(LatticePolygon.triangle(4), beta_minus=(4,)), self.threads)
        return found == 620, found

    def marking_census(self):
        T3 = LatticePolygon.triangle(3)
        cases = [("beta=[3]", DiagramSpec(T3, beta_minus=(3,)), [1, 3, 5]),
                 ("beta=[1,1]", DiagramSpec(T3, beta_minus=(1, 1)), [2, 4, 6]),
                 ("alpha=[0,1] beta=[1]", DiagramSpec(T3, alpha_minus=(0, 1), beta_minus=(1,)), [1, 3, 3])]
        results, ok = dict(), True
        for label, spec, expected in cases:
            found = sorted(row["markings"] for row in count_breakdown(spec, self.threads))
            results[label] = found
            ok &= found == expected
        return ok, results

    def diagram_identities(self):
        failures = list()
        for degree in range(1, 5):
            polygon = LatticePolygon.triangle(degree)
            for genus in range(0, min(3, polygon.interior_points) + 1):
                spec = DiagramSpec(polygon, genus=genus)
                for diagram in enumerate_diagrams(spec, self.threads):
                    if not validate(diagram, spec) or not cardinality_check(diagram, spec):
                        failures.append("T%i g=%i" % (degree, genus))
                        break
        return not failures, failures

    def lattice_invariants(self):
        rng = np.random.default_rng(self.seed)
        failures, tried = list(), 0
        while tried < 100:
            points = rng.integers(-5, 6, size=(int(rng.integers(3, 9)), 2))
            try:
                polygon = LatticePolygon.from_points([tuple(int(c) for c in point) for point in points])
            except InvalidPolygon:
                continue
            tried += 1
            if not pick_identity(polygon):
                failures.append(polygon.as_json())

        if LatticePolygon.trapezium(2, 3, 2).interior_points != 8:
            failures.append("Tz2_3_2 interior points")
        singularities = [(((-2, 1), (-1, 0)), (1, 0)),
                         (((0, -1), (2, -1)), (2, 1)),
                         (((1, 1), (-1, 2)), (3, 2))]
        for (first, second), expected in singularities:
            found = vertex_singularity(LatticeVector.of(first), LatticeVector.of(second))
            if found != expected:
                failures.append("singularity of %s %s: %s" % (first, second, found))
        return not failures, failures or "%i random polygons" % tried

    def _random_polynomial(self, rng, degree):
        polygon = LatticePolygon.triangle(degree)
        return TropicalPolynomial({point: int(rng.integers(-20, 21)) for point in polygon.lattice_points()})

    def corner_loci(self, per_degree=50):
        rng = np.random.default_rng(self.seed)
        failures = list()
        for degree in range(1, 5):
            for _ in range(per_degree):
                polynomial = self._random_polynomial(rng, degree)
                curve, subdivision = corner_locus(polynomial)
                if not check_balancing(curve):
                    failures.append("unbalanced: %s" % polynomial.as_json())
                if not newton_polygon_of(curve).same_up_to_translation(polynomial.newton_polygon()):
                    failures.append("newton round trip: %s" % polynomial.as_json())
                for segment, (p, q) in zip(curve.segments, subdivision.segment_dual):
                    if segment.direction.dot(q - p) != 0 or segment.weight != (q - p).content():
                        failures.append("duality: %s" % polynomial.as_json())
                        break
        return not failures, failures or "%i polynomials" % (4 * per_degree)

    def stable_intersections(self, per_degree=10):
        rng = np.random.default_rng(self.seed + 1)
        failures = list()
        for degree in range(1, 5):
            for _ in range(per_degree):
                first, _ = corner_locus(self._random_polynomial(rng, degree))
                second, _ = corner_locus(self._random_polynomial(rng, degree))
                total = sum(weight for _, weight in stable_intersection_generic(first, second, self.seed))
                if total != degree ** 2:
                    failures.append("degree %i: %i" % (degree, total))
        return not failures, failures

    def genus_fixtures(self):
        results, ok = dict(), True
        for name, (terms, expected) in GENUS_FIXTURES.items():
            curve, _ = corner_locus(TropicalPolynomial(terms))
            try:
                genus = geometric_genus(curve)
                abstract = separate_crossings(curve).genus()
            except TropicoError as error:
                results[name] = "%s: %s" % (type(error).__name__, error)
                ok = False
                continue
            results[name] = genus
            ok &= genus == expected == abstract
        return ok, results

    def realizations(self):
        failures, totals = list(), dict()
        for label, spec, expected in self._golden_specs():
            for diagram in enumerate_diagrams(spec, self.threads):
                for marking in enumerate_markings(diagram, spec):
                    try:
                        realization = realize_stretched(diagram, marking, spec, self.seed)
                    except TropicoError as error:
                        failures.append("%s: %s" % (label, error))
                        continue
                    problems = verify_realization(realization, diagram, marking, realization.config, spec)
                    failures.extend("%s: %s" % (label, problem) for problem in problems)
            total = realization_multiplicity_sum(spec, self.seed, self.threads)
            totals[label] = str(total)
            if total != expected:
                failures.append("%s: multiplicity sum %s, expected %i" % (label, total, expected))
        return not failures, failures or totals

    def run(self, names=None):
        '''
        Parameters
        ----------
        names   - List of check names, all checks when None

        Output
        ------
        Dictionary {"checks": {name: {"ok", "detail"}}, "ok": bool}
        '''
        names = names or self.names()
        checks = dict()
        for name in names:
            start = time.time()
            logging.info("Running check: %s" % name)
            try:
                ok, detail = getattr(self, name)()
            except TropicoError as error:
                ok, detail = False, "%s: %s" % (type(error).__name__, error)
            checks[name] = {"ok": bool(ok), "detail": detail}
            logging.info("Check %s %s in %.1fs" % (name, "passed" if ok else "FAILED", time.time() - start))
        return {"checks": checks, "ok": all(check["ok"] for check in checks.values())}

    @staticmethod
    def names():
        return ["golden_counts", "marking_census", "diagram_identities", "lattice_invariants",
                "corner_loci", "stable_intersections", "genus_fixtures", "realizations",
                "plane_quartics"]
