"""Hermite-Padé approximants of type I and perfect systems.

For series ``f = (f_1, ..., f_n)`` in F[[T]] and an index tuple rho, a
type I approximant is a nonzero polynomial vector ``a`` with
``deg a_i <= rho_i - 1`` and ``ord_0(a.f) >= sum(rho) - 1``.  The system is
normal at rho when the approximants form one line and reach this order
exactly, and perfect when it is normal at every rho.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import factorial

from ffpgn.errors import PrecisionError, PreconditionError, VerificationError
from ffpgn.exterior import log_norm
from ffpgn.fields import Rationals
from ffpgn.findex import RhoIndex, realizer_index
from ffpgn.laurent import LaurentSeries
from ffpgn.linalg import det, nullspace, vec_todict
from ffpgn.lognorm import POS_INF, fmtnorm
from ffpgn.minima import UnitPoint, minima_profile, trajectory
from ffpgn.nsystem import Violation, extremal
from ffpgn.poly import Poly

# Extra series terms demanded beyond the order being certified
GUARD = 2


class PowerSeries(object):
    """Power series in T known to ``prec`` terms.

    ``coeffs[k]`` is the coefficient of ``T**k``.  An ``exact`` series has
    zero coefficients beyond those stored.
    """

    __slots__ = ('field', 'coeffs', 'prec', 'exact')

    def __init__(self, field, coeffs, prec=None, exact=False):
        values = [field(c) for c in coeffs]
        if prec is None:
            prec = len(values)
        values = values[:prec]
        if exact:
            while values and not values[-1]:
                values.pop()

        self.field = field
        self.coeffs = tuple(values)
        self.prec = prec
        self.exact = bool(exact)

    @classmethod
    def from_poly(cls, poly):
        """Return the exact series of a polynomial."""
        return cls(poly.field, poly.coeffs, exact=True)

    def coefficient(self, k):
        """Return the coefficient of ``T**k``."""
        if k < 0:
            return self.field.zero
        elif k < len(self.coeffs):
            return self.coeffs[k]
        elif self.exact or k < self.prec:
            return self.field.zero
        raise PrecisionError('Coefficient of T^{0} lies beyond the {1} known '
                             'terms.'.format(k, self.prec))

    def order(self):
        """Return ``ord_0`` of the series, ``POS_INF`` for an exact zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        if self.exact:
            return POS_INF
        raise PrecisionError('The first {0} terms vanish; the order cannot '
                             'be certified.'.format(self.prec))

    def __add__(self, other):
        if self.exact and other.exact:
            size = max(len(self.coeffs), len(other.coeffs))
        elif self.exact:
            size = other.prec
        elif other.exact:
            size = self.prec
        else:
            size = min(self.prec, other.prec)

        coeffs = [self.coefficient(k) + other.coefficient(k)
                  for k in range(size)]
        return PowerSeries(self.field, coeffs, size,
                           self.exact and other.exact)

    def times_poly(self, poly):
        """Return the product with a polynomial, to the terms it determines."""
        if not poly:
            return PowerSeries(self.field, [], 0, exact=True)

        low = next(k for k, c in enumerate(poly.coeffs) if c)
        if self.exact:
            size = len(self.coeffs) + poly.degree
        else:
            size = self.prec + low

        coeffs = []
        for k in range(size):
            total = self.field.zero
            for j in range(low, min(k, poly.degree) + 1):
                c = poly.coeffs[j]
                if c:
                    total += c * self.coefficient(k - j)
            coeffs.append(total)
        return PowerSeries(self.field, coeffs, size, self.exact)

    def at_infinity(self):
        """Return the Laurent series ``f(1/T)``."""
        if self.exact:
            return LaurentSeries(self.field, self.coeffs, 0,
                                 max(len(self.coeffs) - 1, 0), exact=True)
        return LaurentSeries(self.field, self.coeffs, 0, self.prec - 1)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (self.field == other.field and self.coeffs == other.coeffs
                and self.prec == other.prec and self.exact == other.exact)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.field, self.coeffs, self.prec, self.exact))

    def __repr__(self):
        return 'PowerSeries({0})'.format(self)

    def __str__(self):
        out = Poly(self.field, self.coeffs).format()
        if not self.exact:
            out += ' + O(T^{0})'.format(self.prec)
        return out

    def todict(self):
        return OrderedDict([
            ('prec', self.prec),
            ('exact', self.exact),
            ('coeffs', [self.field.format(c) for c in self.coeffs]),
        ])


def _require_char_zero(field, what):
    if field.characteristic != 0:
        raise PreconditionError('characteristic-p', '{0} series need a field '
                                'of characteristic 0, not {1}.'
                                ''.format(what, field))


def series_exp(omega, N, field=None, variable='T'):
    """Return the first N terms of ``e^(omega T)`` or ``e^(omega / T)``.

    With ``variable='T'`` the result is a ``PowerSeries``; with
    ``variable='1/T'`` it is the ``LaurentSeries`` known down to
    ``T**-(N-1)``.
    """
    if field is None:
        field = Rationals()
    _require_char_zero(field, 'Exponential')
    if variable not in ('T', '1/T'):
        raise ValueError('Series variable must be T or 1/T.')

    omega = field(omega)
    if omega == 0:
        series = PowerSeries(field, [1], exact=True)
    else:
        series = PowerSeries(field, [omega ** j / factorial(j)
                                     for j in range(N)], N)

    if variable == '1/T':
        return series.at_infinity()
    return series


def series_binomial(omega, N, field=None):
    """Return the first N terms of ``(1 + T)^omega``."""
    if field is None:
        field = Rationals()
    _require_char_zero(field, 'Binomial')

    omega = field(omega)
    coeffs = []
    c = field.one
    for j in range(N):
        coeffs.append(c)
        c = c * (omega - j) / (j + 1)
    return PowerSeries(field, coeffs, N)


def series_log_powers(n, N, field=None):
    """Return ``(log(1-T)^(n-1), ..., log(1-T), 1)`` to N terms."""
    if field is None:
        field = Rationals()
    _require_char_zero(field, 'Logarithmic')

    log = PowerSeries(field, [0] + [Fraction(-1, j) for j in range(1, N)], N)
    powers = [PowerSeries(field, [1], exact=True)]
    for _ in range(n - 1):
        prev = powers[-1]
        poly = Poly(field, log.coeffs)
        coeffs = prev.times_poly(poly).coeffs[:N]
        powers.append(PowerSeries(field, coeffs, N))
    return tuple(reversed(powers))


class SeriesSystem(object):
    """Tuple of power series with the tag of its generator."""

    def __init__(self, series, tag='custom', params=None):
        series = tuple(PowerSeries.from_poly(f) if isinstance(f, Poly)
                       else f for f in series)
        if not series:
            raise ValueError('A series system needs at least one series.')
        if len(set(f.field for f in series)) != 1:
            raise TypeError('System series lie over different fields.')

        self.series = series
        self.field = series[0].field
        self.tag = tag
        self.params = list(params) if params is not None else []

    @property
    def n(self):
        """Number of series.

        :type: ``int``
        """
        return len(self.series)

    @property
    def prec(self):
        """Smallest number of known terms, or ``None`` if every series is
        exact.

        :type: ``int`` or ``None``
        """
        precs = [f.prec for f in self.series if not f.exact]
        return min(precs) if precs else None

    def require(self, terms):
        """Raise ``PrecisionError`` unless ``terms`` terms are known."""
        if self.prec is not None and self.prec < terms:
            raise PrecisionError('System is known to {0} terms; {1} are '
                                 'needed.'.format(self.prec, terms))

    def at_infinity(self):
        """Return the point ``f(1/T)``, which must have norm 1."""
        return UnitPoint([f.at_infinity() for f in self.series])

    def __getitem__(self, i):
        return self.series[i]

    def __len__(self):
        return len(self.series)

    def __iter__(self):
        return iter(self.series)

    def describe(self):
        """Return the system tag with its parameters."""
        return OrderedDict([('tag', self.tag),
                            ('params', [str(p) for p in self.params]),
                            ('field', self.field.tag)])

    def todict(self):
        out = self.describe()
        out['series'] = [f.todict() for f in self.series]
        return out


def exp_system(omegas, N, field=None):
    """Return ``(e^(omega_1 T), ..., e^(omega_n T))`` to N terms."""
    if field is None:
        field = Rationals()
    values = [field(w) for w in omegas]
    if len(set(values)) != len(values):
        raise PreconditionError('omega-not-distinct', 'Exponents {0} are not '
                                'pairwise distinct.'
                                ''.format([str(w) for w in values]))
    return SeriesSystem([series_exp(w, N, field) for w in values], 'exp',
                        values)


def binomial_system(omegas, N, field=None):
    """Return ``((1 + T)^omega_1, ..., (1 + T)^omega_n)`` to N terms."""
    if field is None:
        field = Rationals()
    values = [field(w) for w in omegas]
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            if (a - b).denominator == 1:
                raise PreconditionError('omega-congruent', 'Exponents {0} '
                                        'and {1} are congruent modulo Z.'
                                        ''.format(a, b))
    return SeriesSystem([series_binomial(w, N, field) for w in values],
                        'binomial', values)


def log_system(n, N, field=None):
    """Return the system of powers of ``log(1 - T)``."""
    return SeriesSystem(series_log_powers(n, N, field), 'log_powers', [n])


class PadeSolution(object):
    """Approximant of a system at an index tuple."""

    def __init__(self, rho, a, order, nullity, basis):
        self.rho = tuple(rho)
        self.a = tuple(a)
        self.order = order
        self.nullity = nullity
        self.basis = basis

    @property
    def sigma(self):
        return sum(self.rho)

    def todict(self):
        return OrderedDict([
            ('rho', list(self.rho)),
            ('a', vec_todict(self.a)),
            ('order', fmtnorm(self.order)),
            ('nullity', self.nullity),
        ])


def canonical_scaling(a):
    """Scale ``a`` so that its first nonzero coefficient is 1.

    Coefficients are visited by entry, then by ascending degree.
    """
    for p in a:
        if p:
            lead = next(c for c in p.coeffs if c)
            inv = p.field.one / lead
            return tuple(x.scale(inv) for x in a)
    raise ValueError('The zero vector has no canonical scaling.')


def _split(field, vec, rho):
    a = []
    k = 0
    for r in rho:
        a.append(Poly(field, vec[k:k + r]))
        k += r
    return tuple(a)


def _combine(system, a):
    total = PowerSeries(system.field, [], 0, exact=True)
    for f, p in zip(system, a):
        total = total + f.times_poly(p)
    return total


def pade_solve(system, rho):
    """Return a ``PadeSolution`` of the system at ``rho``.

    The ``sum(rho) - 1`` conditions on the ``sum(rho)`` coefficients of
    ``a`` are solved exactly; the solution is the first null space vector
    in canonical scaling.  The achieved order ``ord_0(a.f)`` is certified
    from the known terms.
    """
    rho = tuple(int(r) for r in rho)
    if len(rho) != system.n:
        raise ValueError('Index tuple {0} does not match {1} series.'
                         ''.format(rho, system.n))
    if any(r < 0 for r in rho) or sum(rho) < 1:
        raise ValueError('Index tuple {0} must be nonnegative and nonzero.'
                         ''.format(rho))

    sigma = sum(rho)
    system.require(sigma + GUARD)
    field = system.field

    rows = []
    for e in range(sigma - 1):
        row = []
        for f, r in zip(system, rho):
            row.extend(f.coefficient(e - d) for d in range(r))
        rows.append(row)

    basis = nullspace(rows, field, sigma)
    if not basis:
        raise VerificationError('The approximation system at {0} has no '
                                'solution.'.format(rho))

    basis = [canonical_scaling(_split(field, v, rho)) for v in basis]
    a = basis[0]
    order = _combine(system, a).order()
    if order < sigma - 1:
        raise VerificationError('Approximant at {0} reaches order {1} only.'
                                ''.format(rho, order))
    return PadeSolution(rho, a, order, len(basis), basis)


def is_normal(system, rho):
    """Return ``(normal, witness)`` for the system at ``rho``.

    The witness is ``None`` for a normal index, a second independent
    approximant when the solutions do not form a line, or the approximant
    whose order exceeds ``sum(rho) - 1``.
    """
    return normality(pade_solve(system, rho))


def normality(sol):
    """Return ``(normal, witness)`` of an already computed solution."""
    if sol.nullity > 1:
        return False, sol.basis[1]
    elif sol.order != sol.sigma - 1:
        return False, sol.a
    return True, None


class ScanReport(object):
    """Index tuples found non-normal up to a total degree."""

    def __init__(self, system, R, mode, non_normal, count):
        self.system = system
        self.R = R
        self.mode = mode
        self.non_normal = list(non_normal)
        self.count = count

    @property
    def perfect(self):
        """``True`` if no scanned index tuple is non-normal."""
        return not self.non_normal

    def todict(self):
        return OrderedDict([
            ('system', self.system.describe()),
            ('R', self.R),
            ('mode', self.mode),
            ('scanned', self.count),
            ('non_normal', [list(rho) for rho in self.non_normal]),
        ])


def _normal_job(args):
    system, rho = args
    return is_normal(system, rho)[0]


def perfect_scan(system, R, mode='all', jobs=1):
    """Return a ``ScanReport`` of every rho with ``sum(rho) <= R``.

    ``mode`` restricts the scan to sorted, diagonal or balanced tuples.
    With ``jobs > 1`` the tuples are checked in separate processes.
    """
    system.require(R + GUARD)
    tuples = list(RhoIndex(system.n, R, mode))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(_normal_job,
                                  [(system, rho) for rho in tuples]))
    else:
        flags = [is_normal(system, rho)[0] for rho in tuples]

    non_normal = [rho for rho, ok in zip(tuples, flags) if not ok]
    return ScanReport(system, R, mode, non_normal, len(tuples))


def lower_bound_check(profile):
    """Check ``L_1(q) >= floor(q / n)``; return ``None`` or a Violation."""
    n = profile.n
    for q, row in enumerate(profile):
        if row[0] < q // n:
            return Violation(q, 'lower-bound', 'L_1({0}) = {1} is below '
                             '{2}.'.format(q, row[0], q // n))
    return None


def extremal_profile_check(omegas, Q, field=None, jobs=1):
    """Compare the minima of ``(e^(omega_i / T))`` with the extremal system.

    The report records diagonal normality of the exponential system, the
    comparison on [0, Q], the gap ``L_n(q) - L_1(q) <= 1`` and the bound
    ``L_1(q) >= floor(q / n)``.
    """
    if field is None:
        field = Rationals()
    _require_char_zero(field, 'Exponential')

    values = [field(w) for w in omegas]
    n = len(values)
    if len(set(values)) != n:
        raise PreconditionError('omega-not-distinct', 'Exponents {0} are not '
                                'pairwise distinct.'
                                ''.format([str(w) for w in values]))

    R = n * (Q // n + 1)
    diag = perfect_scan(exp_system(values, R + GUARD, field), R, 'diagonal')

    u = UnitPoint([series_exp(w, Q + 2, field, '1/T') for w in values])
    profile = minima_profile(u, Q, jobs)
    target = extremal(n, Q)

    mismatch = next((q for q in range(Q + 1) if profile[q] != target[q]),
                    None)
    gap = next((q for q, row in enumerate(profile) if row[-1] - row[0] > 1),
               None)
    lower = lower_bound_check(profile)

    return OrderedDict([
        ('n', n),
        ('omega', [field.format(w) for w in values]),
        ('Q', Q),
        ('diagonal_non_normal', [list(rho) for rho in diag.non_normal]),
        ('equal', mismatch is None),
        ('first_mismatch', mismatch),
        ('gap_ok', gap is None),
        ('lower_bound_ok', lower is None),
        ('profile', profile.todict()),
    ])


class Realizer(object):
    """Point ``y_i`` built from the approximant at ``rho_i``."""

    def __init__(self, i, solution, y, level, dot_log, det_degree=None):
        self.i = i
        self.solution = solution
        self.y = tuple(y)
        self.level = level
        self.dot_log = dot_log
        self.det_degree = det_degree

    @property
    def breakpoint(self):
        return self.level - self.dot_log

    def value(self, q):
        """Return the trajectory value ``L_y(q)``."""
        return max(self.level, q + self.dot_log)

    def todict(self):
        return OrderedDict([
            ('i', self.i),
            ('rho', list(self.solution.rho)),
            ('a', vec_todict(self.solution.a)),
            ('y', vec_todict(self.y)),
            ('level', self.level),
            ('dot_log', self.dot_log),
            ('det_degree', self.det_degree),
        ])


def realizer_sequence(system, i_max, check_cover=True):
    """Return the points ``y_1, ..., y_{i_max}`` realizing the minima.

    ``y_i = T^(rho_in - 1) a_i(1/T)`` where ``a_i`` is the approximant at
    ``rho_ij = ceil((i + j - n) / n)``.  The checks are
    ``|y_i| = e^(ceil(i/n) - 1)``, ``|y_i . u| = e^(ceil(i/n) - i)`` with
    ``u = f(1/T)``, ``deg det(a_i, ..., a_{i+n-1}) = i - 1``, and, with
    ``check_cover``, that ``y_i, ..., y_{i+n-1}`` realize the extremal
    system on ``[i - 1, i]``.  A non-normal index raises
    ``PreconditionError`` and any failed check raises ``VerificationError``.
    """
    n = system.n
    top = i_max + n - 1
    system.require(top + GUARD)
    u = system.at_infinity()

    realizers = []
    for i in range(1, top + 1):
        rho = realizer_index(i, n)
        sol = pade_solve(system, rho)
        normal, witness = normality(sol)
        if not normal:
            raise PreconditionError('not-normal', 'System is not normal at '
                                    'rho={0}; witness {1}.'
                                    ''.format(list(rho),
                                              [str(p) for p in witness]))

        shift = rho[-1] - 1
        y = tuple(p.reverse(shift) for p in sol.a)
        level = log_norm(y)
        track = trajectory(y, u)
        dot_log = level - track.breakpoint

        want = -(-i // n) - 1
        if level != want:
            raise VerificationError('|y_{0}| = e^{1}, not e^{2}.'
                                    ''.format(i, level, want))
        if dot_log != want + 1 - i:
            raise VerificationError('|y_{0}.u| = e^{1}, not e^{2}.'
                                    ''.format(i, dot_log, want + 1 - i))
        realizers.append(Realizer(i, sol, y, level, dot_log))

    for i in range(1, i_max + 1):
        block = realizers[i - 1:i + n - 1]
        delta = det([r.solution.a for r in block])
        if not delta or delta.degree != i - 1:
            raise VerificationError('det(a_{0}, ..., a_{1}) = {2} does not '
                                    'have degree {3}.'
                                    ''.format(i, i + n - 1, delta, i - 1))
        realizers[i - 1].det_degree = delta.degree

        if check_cover:
            target = extremal(n, i)
            for q in (i - 1, i):
                values = tuple(sorted(r.value(q) for r in block))
                if values != target[q]:
                    raise VerificationError('Realizers at i={0} give {1} at '
                                            'q={2}, not {3}.'
                                            ''.format(i, values, q,
                                                      target[q]))

    return realizers[:i_max]
