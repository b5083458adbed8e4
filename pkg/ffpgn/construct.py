"""Construction of a unit point with a prescribed n-system.

Starting from the standard basis of A^n, each switch of the switch data
exchanges one basis vector by an explicit step.  After step i the point
``u_i`` is the vector orthogonal to every basis row except row ``k_i``,
normalized by ``u_i . e_n = 1``.  The points ``u_i`` converge to a point u
whose successive minima map is the given n-system.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import warnings
from collections import OrderedDict

from ffpgn.errors import (BasisStepError, PrecisionError, PreconditionError,
                          VerificationError)
from ffpgn.exterior import hadamard_defect, log_norm, projective_distance
from ffpgn.fields import PrimeField, Rationals
from ffpgn.laurent import LaurentSeries
from ffpgn.linalg import det, identity, mat_todict, minor, unit_vector, \
    vec_todict
from ffpgn.lognorm import Indeterminate, NEG_INF, POS_INF, fmtnorm
from ffpgn.minima import Trajectory, UnitPoint
from ffpgn.nsystem import switch_points, validate_switches
from ffpgn.poly import Poly


def _lead_coefficient(value):
    """Return the leading coefficient of a polynomial or series."""
    if isinstance(value, LaurentSeries):
        return value.coeffs[0] if value.coeffs else value.field.zero
    return value.lead


def _orthogonal(rows):
    """Return ``True`` if ``rows`` form an orthogonal basis."""
    defect = hadamard_defect(rows)
    return defect == 0


def basis_step(basis, h, k, ell, a, partner=None):
    """Exchange basis row ``h`` for a new row of norm ``e^a`` at ``ell``.

    The rows other than ``h`` keep their order and the new row
    ``x_h + T^b y_k`` is inserted at position ``ell`` (indices are 1-based).
    ``partner`` defaults to ``e_n``.  Every precondition is checked and
    raises ``BasisStepError``; every postcondition is checked and raises
    ``VerificationError``.
    """
    basis = [tuple(row) for row in basis]
    n = len(basis)
    field = basis[0][0].field
    if partner is None:
        partner = unit_vector(field, n, n - 1)

    state = OrderedDict([('h', h), ('k', k), ('l', ell), ('a', a),
                         ('basis', mat_todict(basis))])

    def fail(name, message):
        raise BasisStepError(name, message, state)

    if not 1 <= h <= ell <= n:
        fail('h-greater-than-l', 'Basis step needs h={0} <= l={1} <= {2}.'
             ''.format(h, ell, n))
    if not 1 <= k < ell:
        fail('k-not-less-than-l', 'Basis step needs k={0} < l={1}.'
             ''.format(k, ell))

    norms = [log_norm(row) for row in basis]
    if not a > norms[h - 1]:
        fail('a-not-large-enough', 'a={0} does not exceed log|x_{1}|={2}.'
             ''.format(a, h, norms[h - 1]))
    if any(a < v for v in norms[:ell]):
        fail('a-below-norms', 'a={0} is below one of the norms {1}.'
             ''.format(a, norms[:ell]))

    others = basis[:h - 1] + basis[h:]
    if not _orthogonal(others + [partner]):
        fail('not-orthogonal', 'The rows other than x_{0}, with the partner, '
             'are not an orthogonal basis.'.format(h))

    y_k = others[k - 1]
    b = a - log_norm(y_k)
    shift = Poly.monomial(field, b)
    y_ell = tuple(x + shift * y for x, y in zip(basis[h - 1], y_k))
    result = others[:ell - 1] + [y_ell] + others[ell - 1:]

    _check_step(basis, result, h, k, ell, a, b, partner)
    return result


def _check_step(basis, result, h, k, ell, a, b, partner):
    """Verify the five postconditions of a basis step."""
    others = basis[:h - 1] + basis[h:]
    if result[:ell - 1] + result[ell:] != others:
        raise VerificationError('Rows outside l={0} changed.'.format(ell))

    if b < 0 or k > ell - 1:
        raise VerificationError('New row is not x_h plus an A-combination of '
                                'x_1..x_l.')
    diff = tuple(y - x for x, y in zip(basis[h - 1], result[ell - 1]))
    if diff != tuple(y.shift(b) for y in result[k - 1]):
        raise VerificationError('New row differs from x_h + T^b y_k.')

    if log_norm(result[ell - 1]) != a:
        raise VerificationError('New row has norm e^{0}, not e^{1}.'
                                ''.format(log_norm(result[ell - 1]), a))

    after = result[:k - 1] + result[k:] + [partner]
    if not _orthogonal(after):
        raise VerificationError('Rows other than y_{0}, with the partner, '
                                'are not orthogonal.'.format(k))

    before = others + [partner]
    if _lead_coefficient(det(after)) != _lead_coefficient(det(before)):
        raise VerificationError('Basis step changed the leading coefficient '
                                'of the determinant.')


def _dual_direction(basis, k):
    """Return ``(nums, den)`` with ``u_i = nums / den``.

    ``u_i`` is the last row of the inverse transpose of the matrix with rows
    ``x_1, ..., (omit x_k), ..., x_n, e_n``.
    """
    n = len(basis)
    field = basis[0][0].field
    rows = list(basis[:k - 1]) + list(basis[k:]) + [unit_vector(field, n,
                                                                n - 1)]
    den = det(rows)
    if den.lead != field.one:
        raise VerificationError('det(M) = {0} is not monic.'.format(den))

    nums = []
    for j in range(n):
        value = det(minor(rows, n - 1, j))
        nums.append(-value if (n - 1 + j) % 2 else value)

    if nums[n - 1] != den:
        raise VerificationError('u_i . e_n differs from 1.')
    return nums, den


def _expand(nums, den, prec):
    """Expand the rational vector ``nums / den`` to precision ``prec``."""
    one = den.field.one
    entries = []
    for j, num in enumerate(nums):
        if j == len(nums) - 1:
            entries.append(LaurentSeries.constant(den.field, one))
        else:
            entries.append(LaurentSeries.from_rational(num, den, prec))
    return tuple(entries)


class ConstructionState(object):
    """Basis, distinguished index and approximation after one switch."""

    def __init__(self, i, q, basis, k, u_i, den, dist_log=None):
        self.i = i
        self.q = q
        self.basis = tuple(tuple(row) for row in basis)
        self.k = k
        self.u_i = u_i
        self.den = den
        self.dist_log = dist_log

    def todict(self):
        return OrderedDict([
            ('q', self.q),
            ('k', self.k),
            ('basis', mat_todict(self.basis)),
            ('u_i', vec_todict(self.u_i)),
            ('dist_log', None if self.dist_log is None
             else fmtnorm(self.dist_log)),
        ])


class ConstructionResult(object):
    """Output of ``construct_point`` with its certificate."""

    def __init__(self, switches, N, steps, u, exact, rational_form,
                 final_dists):
        self.switches = switches
        self.N = N
        self.steps = steps
        self.u = u
        self.exact = exact
        self.rational_form = rational_form
        self.final_dists = final_dists

    def todict(self):
        rational = None
        if self.rational_form is not None:
            nums, den = self.rational_form
            rational = OrderedDict([('nums', vec_todict(nums)),
                                    ('den', den.todict())])

        return OrderedDict([
            ('field', self.u.field.tag),
            ('N', self.N),
            ('steps', [step.todict() for step in self.steps]),
            ('u', self.u.todict()),
            ('exact', self.exact),
            ('rational_form', rational),
            ('final_dists', [fmtnorm(v) for v in self.final_dists]),
        ])


def construct_point(switches, N, field=None):
    """Return a ``ConstructionResult`` whose point u has ``L_u = P``.

    The minima of u agree with the n-system of ``switches`` for every
    integer q <= N - 1.  Every intermediate point is computed as an exact
    rational vector and expanded to precision N + 1; the final point is
    truncated to N.
    """
    if field is None:
        field = Rationals()
    if N < 1:
        raise ValueError('Construction precision must be at least 1.')

    violation = validate_switches(switches)
    if violation:
        raise PreconditionError('invalid-switches', 'Invalid switch data: '
                                '{0}'.format(violation))

    n = switches.n
    recs = switches.records
    points = switch_points(switches)
    work = N + 1

    if switches.horizon is not None and N - 1 > switches.horizon:
        warnings.warn('ffpgn: warning: switch data is only known up to '
                      'q={0}; the point is certified only that far.'
                      ''.format(switches.horizon))

    basis = list(identity(field, n))
    nums, den = _dual_direction(basis, n)
    u_prev = _expand(nums, den, work)
    steps = [ConstructionState(0, 0, basis, n, u_prev, den)]
    rational = (tuple(nums), den)

    for i in range(1, len(recs)):
        rec = recs[i]
        if rec.q > N:
            break

        a = points[i][rec.l - 1]
        basis = basis_step(basis, recs[i - 1].k, rec.k, rec.l, a)

        norms = tuple(log_norm(row) for row in basis)
        if norms != points[i]:
            raise VerificationError('Row norms {0} differ from P({1}) = {2}.'
                                    ''.format(norms, rec.q, points[i]))

        nums, den = _dual_direction(basis, rec.k)
        u_i = _expand(nums, den, work)
        dist = projective_distance(u_i, u_prev)
        if dist != -rec.q:
            raise VerificationError('dist(u_{0}, u_{1}) = e^{2}, not '
                                    'e^-{3}.'.format(i, i - 1, dist, rec.q))

        steps.append(ConstructionState(i, rec.q, basis, rec.k, u_i, den,
                                       dist))
        rational = (tuple(nums), den)
        u_prev = u_i

    exact = len(steps) == len(recs) and switches.horizon is None
    u = UnitPoint(x if x.exact else x.truncate(N) for x in u_prev)

    final_dists = []
    for step in steps[:-1]:
        diff = tuple(x - y for x, y in zip(step.u_i, u.entries))
        final_dists.append(log_norm(diff))

    return ConstructionResult(switches, N, steps, u, exact,
                              rational if exact else None, final_dists)


def verify_construction(result):
    """Re-check a construction; raise ``VerificationError`` on failure.

    Each basis must have a unit determinant, satisfy the orthogonality
    condition for its distinguished index, and have row norms ``P(q_i)``.
    Each distance ``dist(u_i, u_{i-1})`` must be ``e^-q_i`` and each
    ``|u_i - u|`` must be ``e^-q_{i+1}``.
    """
    switches = result.switches
    n = switches.n
    points = switch_points(switches)
    recs = switches.records

    for step in result.steps:
        field = step.basis[0][0].field
        delta = det(step.basis)
        if delta.degree != 0:
            raise VerificationError('Basis at q={0} has determinant {1}.'
                                    ''.format(step.q, delta))

        rows = (list(step.basis[:step.k - 1]) + list(step.basis[step.k:])
                + [unit_vector(field, n, n - 1)])
        if hadamard_defect(rows) != 0:
            raise VerificationError('Basis at q={0} fails the orthogonality '
                                    'condition.'.format(step.q))

        norms = tuple(log_norm(row) for row in step.basis)
        if norms != points[step.i]:
            raise VerificationError('Row norms at q={0} are {1}, not {2}.'
                                    ''.format(step.q, norms,
                                              points[step.i]))

        if step.i > 0 and step.dist_log != -step.q:
            raise VerificationError('Distance at q={0} is e^{1}.'
                                    ''.format(step.q, step.dist_log))

    for i, dist in enumerate(result.final_dists):
        if dist != -recs[i + 1].q:
            raise VerificationError('|u_{0} - u| = e^{1}, not e^-{2}.'
                                    ''.format(i, dist, recs[i + 1].q))
    return True


def _is_integral(value):
    return getattr(value, 'denominator', 1) == 1


def universality_reduce(switches, p, N):
    """Compare the construction over Q, reduced mod p, with that over F_p.

    Return a report of four flags: integral coefficients, monic
    determinants ``det(M_i)``, unit basis determinants, and agreement of
    the reduced and native constructions.
    """
    field_p = PrimeField(p)
    over_q = construct_point(switches, N, Rationals())
    over_p = construct_point(switches, N, field_p)

    integral = True
    monic = True
    unit_det = True
    for step in over_q.steps:
        for row in step.basis:
            integral &= all(_is_integral(c) for x in row for c in x.coeffs)
        integral &= all(_is_integral(c) for x in step.u_i for c in x.coeffs)
        monic &= step.den.lead == 1
        unit_det &= det(step.basis) in (Poly(Rationals(), [1]),
                                        Poly(Rationals(), [-1]))
    integral &= all(_is_integral(c) for x in over_q.u for c in x.coeffs)

    mismatches = []
    if integral:
        if len(over_q.steps) != len(over_p.steps):
            mismatches.append('step count')
        for step_q, step_p in zip(over_q.steps, over_p.steps):
            basis = tuple(tuple(x.map(field_p) for x in row)
                          for row in step_q.basis)
            if basis != step_p.basis:
                mismatches.append('basis at q={0}'.format(step_q.q))
            if tuple(x.map(field_p) for x in step_q.u_i) != step_p.u_i:
                mismatches.append('u_i at q={0}'.format(step_q.q))
        if tuple(x.map(field_p) for x in over_q.u) != over_p.u.entries:
            mismatches.append('u')

    return OrderedDict([
        ('p', p),
        ('N', N),
        ('integral', integral),
        ('monic', monic),
        ('unit_det', unit_det),
        ('agree', integral and not mismatches),
        ('mismatches', mismatches),
    ])


class ContinuedFractionPoint(object):
    """The point ``(-xi, 1)`` of a continued fraction with its convergents."""

    def __init__(self, u, quotients, convergents, exact):
        self.u = u
        self.quotients = tuple(quotients)
        self.convergents = tuple(convergents)
        self.exact = exact

    def todict(self):
        return OrderedDict([
            ('u', self.u.todict()),
            ('quotients', [a.todict() for a in self.quotients]),
            ('convergents', [c.todict() for c in self.convergents]),
            ('exact', self.exact),
        ])


def cf_point(N, quotients=None, degrees=None, field=None, a0=0):
    """Return the point ``(-xi, 1)`` for ``xi = [a0, a_1, a_2, ...]``.

    The partial quotients are given directly, or by their degree sequence
    ``0 < d_1 < d_2 < ...`` in which case ``a_i = T^(d_i - d_{i-1})``.  The
    convergents ``y_i = a_i y_{i-1} + y_{i-2}`` come with their trajectory
    ``L_{y_i}(q) = max(d_i, q - d_{i+1})``.  A quotient list that ends before
    precision N is reached gives an exact rational xi.
    """
    if field is None:
        field = Rationals()

    if quotients is None:
        if degrees is None:
            raise ValueError('cf_point needs quotients or degrees.')
        ds = [0] + list(degrees)
        quotients = [Poly.monomial(field, b - a) for a, b in zip(ds, ds[1:])]
    quotients = list(quotients)

    ds = [0]
    for i, a in enumerate(quotients, start=1):
        if not a or a.degree < 1:
            raise PreconditionError('degree-mismatch', 'Partial quotient '
                                    'a_{0} = {1} has degree below 1.'
                                    ''.format(i, a))
        ds.append(ds[-1] + a.degree)
    if degrees is not None and ds[1:] != list(degrees)[:len(ds) - 1]:
        raise PreconditionError('degree-mismatch', 'Quotient degrees {0} do '
                                'not match {1}.'.format(ds[1:], degrees))

    one = Poly(field, [1])
    prev, cur = (Poly(field), one), (one, Poly(field, [a0]))
    ys = [cur]
    used = 0
    # y_i approximates xi to e^-(d_i + d_{i+1})
    while used < len(quotients) and ds[used] + ds[used + 1] <= N:
        a = quotients[used]
        prev, cur = cur, (a * cur[0] + prev[0], a * cur[1] + prev[1])
        ys.append(cur)
        used += 1

    exact = used == len(quotients)
    den, num = ys[-1]
    xi = LaurentSeries.from_rational(num, den, N)
    u = UnitPoint([-xi, LaurentSeries.constant(field, 1)])

    convergents = []
    for i, y in enumerate(ys):
        if i + 1 < len(ds):
            breakpoint = ds[i] + ds[i + 1]
        elif exact:
            breakpoint = POS_INF
        else:
            continue
        convergents.append(Trajectory(y, ds[i], breakpoint))

    return ContinuedFractionPoint(u, quotients[:used], convergents, exact)


def cf_expand(xi, depth=None):
    """Return the partial quotients ``a_1, a_2, ...`` of ``xi = [0, a_1, ...]``.

    Without ``depth``, the expansion stops when the precision of ``xi`` is
    exhausted.  With ``depth``, exhausting the precision first raises
    ``PrecisionError``.
    """
    if xi.exact:
        num, den = xi.to_rational()
        return cf_expand_rational(num, den)[:depth]

    norm = xi.log_norm()
    if not isinstance(norm, Indeterminate) and norm >= 0:
        raise PreconditionError('not-small', 'Continued fraction expansion '
                                'needs |xi| < 1.')

    quotients = []
    x = xi
    while depth is None or len(quotients) < depth:
        norm = x.log_norm()
        if norm == NEG_INF:
            break
        elif isinstance(norm, Indeterminate):
            if depth is None:
                break
            raise PrecisionError('Precision is exhausted after {0} partial '
                                 'quotients.'.format(len(quotients)))

        try:
            inv = x.inverse()
            a = inv.polynomial_part()
        except PrecisionError:
            if depth is None:
                break
            raise

        quotients.append(a)
        x = inv - a

    return quotients


def cf_expand_rational(num, den):
    """Return the partial quotients of ``num / den`` by Euclid's algorithm."""
    if not den:
        raise ZeroDivisionError('Continued fraction with zero denominator.')
    if num and num.degree >= den.degree:
        raise PreconditionError('not-small', 'Continued fraction expansion '
                                'needs deg num < deg den.')

    quotients = []
    while num:
        a, r = divmod(den, num)
        quotients.append(a)
        num, den = r, num
    return quotients
