import os
import random
import sys
import unittest

# Include parent path in case we are running within the tests directory
sys.path.insert(1, '../')
import ffpgn
from ffpgn.construct import cf_point
from ffpgn.errors import PrecisionError, PreconditionError, \
    VerificationError
from ffpgn.fields import PrimeField, Rationals
from ffpgn.laurent import LaurentSeries
from ffpgn.linalg import identity
from ffpgn.minima import MinimaCertificate, UnitPoint, check_certificate, \
    compound_direct, compound_identities, compound_profile, \
    compound_realizers, compound_value, dual_profile, minima_at, \
    minima_certificate, minima_certificates, minima_profile, \
    random_unit_point, slope_change_check, slope_changes, tilde_profile, \
    trajectory, trajectory_value
from ffpgn.nsystem import Profile, cf_profile, extremal, validate_profile
from ffpgn.pade import exp_system
from ffpgn.poly import Poly


class Test(unittest.TestCase):

    def setUp(self):
        # Move to test directory if running from setup.py
        if os.path.basename(os.getcwd()) != 'tests':
            os.chdir('tests')

        self.Q = Rationals()
        self.e3 = ffpgn.read('e3.json')

        # u = (-1/T, 1)
        self.cf1 = cf_point(8, [Poly.monomial(self.Q, 1)]).u

    def test_read_point(self):
        self.assertIsInstance(self.e3, UnitPoint)
        self.assertEqual(self.e3.n, 3)
        self.assertTrue(self.e3.exact)
        self.assertIsNone(self.e3.prec)
        self.assertEqual(UnitPoint.fromdict(self.e3.todict()), self.e3)

    def test_unit_point_errors(self):
        one = LaurentSeries.constant(self.Q, 1)
        big = LaurentSeries.from_poly(Poly.monomial(self.Q, 1))
        self.assertRaises(ValueError, UnitPoint, [one])
        self.assertRaises(PreconditionError, UnitPoint, [one, big])

        mixed = LaurentSeries.constant(PrimeField(5), 1)
        self.assertRaises(TypeError, UnitPoint, [one, mixed])

    def test_require_horizon(self):
        self.assertEqual(self.cf1.prec, 8)
        self.cf1.require_horizon(7)
        self.assertRaises(PrecisionError, self.cf1.require_horizon, 8)
        self.assertRaises(PrecisionError, minima_profile, self.cf1, 8)

    def test_standard_point(self):
        profile = minima_profile(self.e3, 5)
        self.assertEqual(list(profile), [(0, 0, q) for q in range(6)])
        self.assertIsNone(validate_profile(profile))

    def test_minima_at(self):
        self.assertEqual(minima_at(self.e3, 4), (0, 0, 4))
        self.assertEqual(minima_at(self.cf1, 5, lower=(1, 3)), (1, 4))

    def test_cf_point(self):
        self.assertEqual(minima_profile(self.cf1, 7), cf_profile([1], 7))

        u = cf_point(8, degrees=[1, 2, 3]).u
        self.assertEqual(minima_profile(u, 7), extremal(2, 7))

        u = cf_point(8, degrees=[1, 3]).u
        self.assertEqual(minima_profile(u, 7), cf_profile([1, 3], 7))

    def test_exponential_point(self):
        u = exp_system([0, 1], 10).at_infinity()
        self.assertEqual(minima_profile(u, 8), extremal(2, 8))

    def test_trajectory(self):
        x = (Poly(self.Q, [1]), Poly(self.Q))
        track = trajectory(x, self.cf1)
        self.assertEqual(track.level, 0)
        self.assertEqual(track.breakpoint, 1)
        self.assertEqual(track.value(1), 0)
        self.assertEqual(track.value(4), 3)
        self.assertEqual(trajectory_value(x, self.cf1, 4), 3)

    def test_trajectory_truncated(self):
        # u.x vanishes to the known precision
        x = (Poly.monomial(self.Q, 1), Poly(self.Q, [1]))
        self.assertEqual(trajectory_value(x, self.cf1, 5), 1)
        self.assertRaises(PrecisionError, trajectory, x, self.cf1)

        zero = (Poly(self.Q), Poly(self.Q))
        self.assertRaises(PreconditionError, trajectory_value, zero,
                          self.cf1, 0)

    def test_certificates(self):
        certs = minima_certificates(self.cf1, 5)
        self.assertEqual(len(certs), 6)
        for q, cert in enumerate(certs):
            self.assertEqual(cert.q, q)
            self.assertEqual(cert.values, cf_profile([1], 5)[q])
            self.assertEqual(len(cert.basis), 2)

        data = certs[3].todict()
        self.assertEqual(list(data.keys()), ['q', 'values', 'basis'])

    def test_check_certificate(self):
        basis = identity(self.Q, 3)
        check_certificate(self.e3, MinimaCertificate(2, (0, 0, 2), basis))

        bad = MinimaCertificate(2, (0, 1, 1), basis)
        self.assertRaises(VerificationError, check_certificate, self.e3, bad)

        short = MinimaCertificate(2, (0, 0, 2), basis[:2])
        self.assertRaises(VerificationError, check_certificate, self.e3,
                          short)

        cert = minima_certificate(self.e3, 3)
        self.assertEqual(cert.values, (0, 0, 3))

    def test_dual_profile(self):
        dual = dual_profile(self.e3, 4)
        self.assertEqual(dual[4], (-4, 0, 0))

        primal = minima_profile(self.cf1, 6)
        dual = dual_profile(self.cf1, 6)
        for q in range(7):
            self.assertEqual(dual[q], tuple(-v for v in reversed(primal[q])))

    def test_tilde_profile(self):
        tilde = tilde_profile(self.e3, 2)
        self.assertEqual(list(tilde), [(0, 0, 0), (-2, 1, 1), (-4, 2, 2)])

    def test_compound_profile(self):
        self.assertEqual(compound_profile((0, 1, 2), 2), (1, 2, 3))
        self.assertEqual(compound_profile((0, 1, 2), 3), (3,))
        self.assertRaises(ValueError, compound_profile, (0, 1), 3)

    def test_compound_identities(self):
        self.assertIsNone(compound_identities((0, 1, 2), (1, 2, 3), 2))

        violation = compound_identities((0, 1, 2), (2, 2, 2), 2)
        self.assertEqual(violation.condition, 'compound-first')

        violation = compound_identities((0, 1, 2), (1, 2, 4), 2)
        self.assertEqual(violation.condition, 'compound-sum')

    def test_compound_direct(self):
        direct = compound_direct(self.e3, 2, 3)
        self.assertEqual(list(direct), [(0, q, q) for q in range(4)])

        profile = minima_profile(self.e3, 3)
        for q in range(4):
            self.assertEqual(direct[q], compound_profile(profile[q], 2))

    def test_compound_realizers(self):
        for q in range(4):
            cert = minima_certificate(self.e3, q)
            realizers = compound_realizers(cert, 2, self.e3)
            self.assertEqual([value for value, w in realizers], [0, q, q])

        # Wedges of a certificate basis reach the subset sums exactly
        rng = random.Random(23)
        u = random_unit_point(self.Q, 3, 9, rng)
        for q in range(5):
            cert = minima_certificate(u, q)
            for m in (1, 2, 3):
                realizers = compound_realizers(cert, m, u)
                self.assertEqual(tuple(value for value, w in realizers),
                                 compound_profile(cert.values, m))
                for value, w in realizers:
                    self.assertEqual(compound_value(w, u, m, q), value)

        cert = minima_certificate(self.e3, 2)
        bad = MinimaCertificate(2, (0, 1, 2), cert.basis)
        self.assertRaises(VerificationError, compound_realizers, bad, 2,
                          self.e3)
        self.assertEqual(len(compound_realizers(bad, 2)), 3)

    def test_slope_changes(self):
        profile = extremal(3, 9)
        self.assertEqual(slope_changes(profile, 1), [3, 6])
        self.assertIsNone(slope_change_check(profile, 1))
        self.assertIsNone(slope_change_check(profile, 2))

        bad = Profile([(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 2), (0, 2, 2),
                       (1, 2, 2), (1, 2, 3)])
        violation = slope_change_check(bad, 1)
        self.assertEqual(violation.condition, 'slope-change')
        self.assertEqual(violation.q, 5)

    def test_random_points(self):
        rng = random.Random(11)
        for field in (PrimeField(5), self.Q):
            for n in (2, 3):
                u = random_unit_point(field, n, 9, rng)
                profile = minima_profile(u, 8)
                self.assertIsNone(validate_profile(profile))

    def test_random_duality(self):
        rng = random.Random(5)
        for _ in range(3):
            u = random_unit_point(PrimeField(5), 2, 7, rng)
            primal = minima_profile(u, 6)
            dual = dual_profile(u, 6)
            for q in range(7):
                self.assertEqual(dual[q],
                                 tuple(-v for v in reversed(primal[q])))


if __name__ == '__main__':
    unittest.main()
