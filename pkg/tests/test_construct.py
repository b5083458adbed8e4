import os
import sys
import unittest
import warnings

# Include parent path in case we are running within the tests directory
sys.path.insert(1, '../')
import ffpgn
from ffpgn.construct import basis_step, cf_point, construct_point, \
    universality_reduce, verify_construction
from ffpgn.errors import BasisStepError, PreconditionError, \
    VerificationError
from ffpgn.fields import PrimeField, Rationals
from ffpgn.linalg import det, identity
from ffpgn.lognorm import POS_INF
from ffpgn.minima import minima_profile, trajectory
from ffpgn.nsystem import SwitchData, cf_profile, eval_switches
from ffpgn.poly import Poly


class Test(unittest.TestCase):

    def setUp(self):
        # Move to test directory if running from setup.py
        if os.path.basename(os.getcwd()) != 'tests':
            os.chdir('tests')

        self.Q = Rationals()
        self.switches = SwitchData(2, [(0, 2, 2), (1, 1, 2), (3, 1, 2)])

    def poly(self, *coeffs):
        return Poly(self.Q, coeffs)

    def test_basis_step(self):
        basis = basis_step(identity(self.Q, 2), 2, 1, 2, 1)
        self.assertEqual(basis, [(self.poly(1), self.poly()),
                                 (self.poly(0, 1), self.poly(1))])

    def test_basis_step_preconditions(self):
        e = identity(self.Q, 2)
        cases = [
            ((2, 1, 2, 0), 'a-not-large-enough'),
            ((2, 2, 2, 1), 'k-not-less-than-l'),
            ((2, 1, 1, 1), 'h-greater-than-l'),
        ]
        for args, name in cases:
            with self.assertRaises(BasisStepError) as context:
                basis_step(e, *args)
            self.assertEqual(context.exception.name, name)
            self.assertEqual(context.exception.state['basis'][0][0]['coeffs'],
                             ['1'])

    def test_basis_step_below_norms(self):
        basis = [(self.poly(1), self.poly(), self.poly()),
                 (self.poly(), self.poly(0, 0, 1), self.poly()),
                 (self.poly(), self.poly(), self.poly(1))]
        with self.assertRaises(BasisStepError) as context:
            basis_step(basis, 1, 1, 2, 1)
        self.assertEqual(context.exception.name, 'a-below-norms')

    def test_construct(self):
        result = construct_point(self.switches, 8)
        self.assertTrue(result.exact)
        self.assertEqual(len(result.steps), 3)

        last = result.steps[-1].basis
        self.assertEqual(last, ((self.poly(0, 1), self.poly(1)),
                                (self.poly(1, 0, 1), self.poly(0, 1))))
        self.assertEqual([det(step.basis) for step in result.steps],
                         [self.poly(1), self.poly(1), self.poly(-1)])
        self.assertEqual([step.dist_log for step in result.steps[1:]],
                         [-1, -3])
        self.assertEqual(result.final_dists, [-1, -3])

        nums, den = result.rational_form
        self.assertEqual(nums, (self.poly(0, -1), self.poly(1, 0, 1)))
        self.assertEqual(den, self.poly(1, 0, 1))

        self.assertTrue(verify_construction(result))

    def test_construct_profile(self):
        result = construct_point(self.switches, 8)
        profile = minima_profile(result.u, 7)
        self.assertEqual(profile, eval_switches(self.switches, 7))
        self.assertEqual(profile, cf_profile([1, 2], 7))

    def test_construct_from_file(self):
        switches = ffpgn.read('extremal2_switches.json')
        result = construct_point(switches, 9)
        self.assertEqual(len(result.steps), 5)
        self.assertTrue(verify_construction(result))
        self.assertEqual(minima_profile(result.u, 8),
                         eval_switches(switches, 8))

    def test_construct_truncated(self):
        result = construct_point(self.switches, 2)
        self.assertFalse(result.exact)
        self.assertIsNone(result.rational_form)
        self.assertEqual(len(result.steps), 2)

    def test_construct_standard_point(self):
        result = construct_point(SwitchData(3, [(0, 3, 3)]), 5)
        self.assertTrue(result.exact)
        self.assertTrue(result.u.exact)
        self.assertEqual(list(minima_profile(result.u, 4)),
                         [(0, 0, q) for q in range(5)])

    def test_construct_horizon_warning(self):
        switches = SwitchData(2, [(0, 2, 2), (1, 1, 2)], horizon=3)
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            result = construct_point(switches, 6)
            self.assertEqual(len(w), 1)
            self.assertIn('q=3', str(w[0].message))
        self.assertFalse(result.exact)

    def test_construct_invalid(self):
        with self.assertRaises(PreconditionError) as context:
            construct_point(SwitchData(2, [(0, 1, 2)]), 5)
        self.assertEqual(context.exception.name, 'invalid-switches')
        self.assertRaises(ValueError, construct_point, self.switches, 0)

    def test_verify_tampered(self):
        result = construct_point(self.switches, 8)
        result.final_dists[0] = -2
        self.assertRaises(VerificationError, verify_construction, result)

    def test_construct_prime_field(self):
        result = construct_point(self.switches, 8, PrimeField(5))
        self.assertEqual(result.u.field, PrimeField(5))
        self.assertTrue(verify_construction(result))

    def test_universality(self):
        report = universality_reduce(self.switches, 5, 8)
        self.assertTrue(report['integral'])
        self.assertTrue(report['monic'])
        self.assertTrue(report['unit_det'])
        self.assertTrue(report['agree'])
        self.assertEqual(report['mismatches'], [])

    def test_cf_point(self):
        cf = cf_point(8, degrees=[1, 2, 3])
        self.assertTrue(cf.exact)
        self.assertEqual(cf.quotients, (self.poly(0, 1),) * 3)
        self.assertEqual([c.level for c in cf.convergents], [0, 1, 2, 3])
        self.assertEqual([c.breakpoint for c in cf.convergents],
                         [1, 3, 5, POS_INF])

        y = cf.convergents[1]
        track = trajectory(y.x, cf.u)
        self.assertEqual((track.level, track.breakpoint), (1, 3))

    def test_cf_point_truncated(self):
        cf = cf_point(4, degrees=[1, 2, 3])
        self.assertFalse(cf.exact)
        self.assertEqual(len(cf.quotients), 2)
        self.assertEqual([c.breakpoint for c in cf.convergents], [1, 3, 5])

    def test_cf_point_errors(self):
        with self.assertRaises(PreconditionError) as context:
            cf_point(8, [self.poly(1)])
        self.assertEqual(context.exception.name, 'degree-mismatch')
        self.assertRaises(ValueError, cf_point, 8)


if __name__ == '__main__':
    unittest.main()
