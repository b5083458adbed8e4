"""Desk-scale property checks over randomized corpora.

These run for several minutes and are skipped unless ``FFPGN_ACCEPTANCE=1``.
"""
import os
import random
import sys
import unittest
from fractions import Fraction

# Include parent path in case we are running within the tests directory
sys.path.insert(1, '../')
from ffpgn.adelic import adelic_margin, adelic_report, tight_example
from ffpgn.construct import construct_point, universality_reduce, \
    verify_construction
from ffpgn.fields import PrimeField, Rationals
from ffpgn.minima import compound_direct, compound_identities, \
    compound_profile, dual_profile, minima_profile, random_unit_point, \
    slope_change_check
from ffpgn.nsystem import eval_switches, extremal, random_switches, \
    validate_profile
from ffpgn.pade import canonical_scaling, exp_system, log_system, \
    pade_solve, perfect_scan, realizer_sequence
from ffpgn.poly import Poly

acceptance = os.environ.get('FFPGN_ACCEPTANCE') == '1'


@unittest.skipUnless(acceptance, 'set FFPGN_ACCEPTANCE=1 to run')
class Test(unittest.TestCase):

    def setUp(self):
        # Move to test directory if running from setup.py
        if os.path.basename(os.getcwd()) != 'tests':
            os.chdir('tests')

        self.rng = random.Random(20240)
        self.Q = Rationals()

    def random_points(self, field, count, prec, dims=(2, 3, 4)):
        for _ in range(count):
            n = self.rng.choice(dims)
            yield random_unit_point(field, n, prec, self.rng)

    def random_switch_data(self, count):
        for _ in range(count):
            n = self.rng.choice((2, 3, 4))
            switches = random_switches(n, self.rng.randint(1, 6), self.rng)
            N = min(24, switches.records[-1].q + 2)
            yield switches, N

    def test_minima_are_systems(self):
        corpus = [(PrimeField(5), 200), (self.Q, 50)]
        for field, count in corpus:
            for u in self.random_points(field, count, 21):
                profile = minima_profile(u, 20)
                self.assertIsNone(validate_profile(profile))

    def test_construction_round_trip(self):
        for switches, N in self.random_switch_data(100):
            result = construct_point(switches, N)
            self.assertTrue(verify_construction(result))
            self.assertEqual(minima_profile(result.u, N - 1),
                             eval_switches(switches, N - 1))

    def test_exponential_minima(self):
        Q = 16
        for omegas in ([0, 1], [0, 1, 2], [0, 1, -1], [0, 1, 2, 3]):
            u = exp_system(omegas, Q + 2).at_infinity()
            profile = minima_profile(u, Q)
            self.assertEqual(profile, extremal(len(omegas), Q))
            for row in profile:
                self.assertTrue(row[-1] - row[0] <= 1)

    def test_duality(self):
        Q = 12
        for u in self.random_points(self.Q, 50, Q + 1, dims=(2, 3)):
            primal = minima_profile(u, Q)
            dual = dual_profile(u, Q)
            for q in range(Q + 1):
                self.assertEqual(dual[q], tuple(-v for v in
                                                reversed(primal[q])))

    def test_compound(self):
        Q = 10
        cases = [(3, 2), (4, 2), (4, 3)]
        for n, m in cases:
            for u in self.random_points(self.Q, 20, Q + 1, dims=(n,)):
                profile = minima_profile(u, Q)
                rows = [compound_profile(row, m) for row in profile]
                self.assertEqual(list(compound_direct(u, m, Q)), rows)
                for row, comp in zip(profile, rows):
                    self.assertIsNone(compound_identities(row, comp, m))
                self.assertIsNone(slope_change_check(profile, m))

    def test_universality(self):
        for switches, N in self.random_switch_data(30):
            for p in (2, 5, 101):
                report = universality_reduce(switches, p, N)
                self.assertTrue(report['integral'])
                self.assertTrue(report['monic'])
                self.assertTrue(report['unit_det'])
                self.assertTrue(report['agree'])

    def test_hermite_pade(self):
        sol = pade_solve(exp_system([0, 1], 8), (2, 2))
        target = canonical_scaling((Poly(self.Q, [-2, -1]),
                                    Poly(self.Q, [2, -1])))
        self.assertEqual(sol.a, target)
        self.assertEqual(sol.order, 3)

        self.assertTrue(perfect_scan(exp_system([0, 1, 2], 11), 9).perfect)
        self.assertTrue(perfect_scan(log_system(2, 10), 8, 'sorted').perfect)

        realizers = realizer_sequence(exp_system([0, 1], 12), 8)
        self.assertEqual([r.det_degree for r in realizers], list(range(8)))

    def test_adelic(self):
        a, omegas = tight_example(2)
        self.assertEqual(adelic_margin(a, omegas, [0]), 0)

        for _ in range(200):
            n = self.rng.choice((2, 3))
            omegas = self.rng.sample(range(-3, 4), n)
            a = []
            for _ in range(n):
                coeffs = [self.rng.randint(-3, 3)
                          for _ in range(self.rng.randint(1, 7))]
                coeffs[-1] = coeffs[-1] or 1
                a.append(Poly(self.Q, coeffs))
            S = [Fraction(x, self.rng.randint(1, 3)) for x in
                 self.rng.sample(range(-4, 5), self.rng.randint(1, 3))]
            S = list(set(S))

            report = adelic_report(a, omegas, S)
            self.assertTrue(report['holds'])
            self.assertTrue(report['delta']['degree_ok'])
            self.assertTrue(report['delta']['lead_ok'])


if __name__ == '__main__':
    unittest.main()
