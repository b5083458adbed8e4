"""Successive minima of the convex bodies attached to a unit point.

For a point ``u`` of norm 1 in K_inf^n and an integer q, ``L_j(q)`` is the
least t such that the conditions ``deg x <= t`` and ``|u.x| <= e^(t-q)``
admit j solutions x in A^n linearly independent over K.  For fixed (q, t)
the solutions form an F-vector space, computed exactly as the null space of
a linear system on the coefficients of x.  The same scheme computes the dual
and compound minima.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from math import comb

from ffpgn.errors import PrecisionError, PreconditionError, VerificationError
from ffpgn.exterior import contract, index_sets, log_norm, wedge
from ffpgn.fields import field_from_tag
from ffpgn.laurent import LaurentSeries
from ffpgn.linalg import det, dot, laurentvec_fromdict, mat_todict, \
    nullspace, rank
from ffpgn.lognorm import Indeterminate, NEG_INF, POS_INF, certify
from ffpgn.nsystem import Profile, Violation
from ffpgn.poly import Poly


class UnitPoint(object):
    """A point of K_inf^n of norm exactly 1."""

    def __init__(self, entries):
        """Create a unit point from Laurent series or polynomial entries."""
        entries = tuple(LaurentSeries.from_poly(x) if isinstance(x, Poly)
                        else x for x in entries)
        if len(entries) < 2:
            raise ValueError('A unit point needs at least two entries.')

        fields = set(x.field for x in entries)
        if len(fields) != 1:
            raise TypeError('Unit point entries lie over different fields.')

        norm = certify(log_norm(entries), 'norm of u')
        if norm != 0:
            raise PreconditionError('unit-norm', 'Point has log-norm {0}, '
                                    'not 0.'.format(norm))

        self.entries = entries
        self.field = entries[0].field

    @property
    def n(self):
        """Dimension of the ambient space.

        :type: ``int``
        """
        return len(self.entries)

    @property
    def exact(self):
        """``True`` if every entry is known exactly."""
        return all(x.exact for x in self.entries)

    @property
    def prec(self):
        """Common precision of the inexact entries, or ``None`` if exact.

        :type: ``int`` or ``None``
        """
        precs = [x.prec for x in self.entries if not x.exact]
        return min(precs) if precs else None

    def require_horizon(self, Q):
        """Raise ``PrecisionError`` unless profiles up to ``Q`` are certified."""
        if not self.exact and Q > self.prec - 1:
            raise PrecisionError('A point known to precision {0} determines '
                                 'profiles only up to q={1}, not {2}.'
                                 ''.format(self.prec, self.prec - 1, Q))

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, UnitPoint):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return 'UnitPoint({0})'.format(', '.join(str(x) for x in self))

    def todict(self):
        """Return the JSON form of the point."""
        return OrderedDict([
            ('field', self.field.tag),
            ('n', self.n),
            ('entries', [x.todict() for x in self.entries]),
        ])

    @classmethod
    def fromdict(cls, data):
        """Create a point from its JSON form."""
        try:
            field = field_from_tag(data['field'])
            entries = data['entries']
        except KeyError as exc:
            raise ValueError('Point document is missing the {0} field.'
                             ''.format(exc))
        return cls(laurentvec_fromdict(field, entries))


def _kernel_vectors(field, rows, blocks, width):
    """Return the null space of ``rows`` as vectors of polynomials.

    Unknown ``block * width + d`` is the coefficient of ``T^d`` in entry
    ``block`` of the solution.
    """
    basis = nullspace(rows, field, blocks * width)
    return [tuple(Poly(field, v[b * width:(b + 1) * width])
                  for b in range(blocks)) for v in basis]


def _minima_rows(u, q, t):
    """Return the conditions ``|u.x| <= e^(t-q)`` on x with ``deg x <= t``."""
    field = u.field
    width = t + 1
    rows = []
    for e in range(t - q + 1, t + 1):
        row = [field.zero] * (u.n * width)
        for i, ui in enumerate(u):
            for d in range(max(e, 0), width):
                row[i * width + d] = ui.coefficient(e - d)
        rows.append(row)
    return rows, width


def _dual_rows(u, q, t):
    """Return the conditions ``|u ^ y| <= e^t`` on y with ``|y| <= e^(q+t)``."""
    field = u.field
    s = q + t
    width = s + 1
    rows = []
    for a, b in combinations(range(u.n), 2):
        for e in range(t + 1, s + 1):
            row = [field.zero] * (u.n * width)
            for d in range(max(e, 0), width):
                row[b * width + d] += u[a].coefficient(e - d)
                row[a * width + d] -= u[b].coefficient(e - d)
            rows.append(row)
    return rows, width


def _compound_rows(u, m, q, t):
    """Return the conditions ``|contract(u, w)| <= e^(t-q)`` on grade m."""
    field = u.field
    n = u.n
    grade_m = index_sets(n, m)
    index = dict((cols, k) for k, cols in enumerate(grade_m))
    width = t + 1
    rows = []
    for J in index_sets(n, m - 1):
        for e in range(t - q + 1, t + 1):
            row = [field.zero] * (len(grade_m) * width)
            for i in range(n):
                if i in J:
                    continue
                I = tuple(sorted(J + (i,)))
                sign = -1 if I.index(i) % 2 else 1
                for d in range(max(e, 0), width):
                    row[index[I] * width + d] += sign * u[i].coefficient(e - d)
            rows.append(row)
    return rows, width


def _search(field, blocks, rows_at, start, lower, guard, what):
    """Return the least t with at least j independent solutions, per j.

    ``rows_at(t)`` returns the linear conditions and the coefficient width
    at t.  The search for the j-th value starts from the (j-1)-th value and
    from ``lower[j - 1]``.
    """
    ranks = {}

    def rank_at(t):
        if t not in ranks:
            rows, width = rows_at(t)
            ranks[t] = rank(_kernel_vectors(field, rows, blocks, width))
        return ranks[t]

    values = []
    t = start
    for j in range(1, blocks + 1):
        if lower is not None:
            t = max(t, lower[j - 1])
        while rank_at(t) < j:
            t += 1
            if t > guard:
                raise VerificationError('No {0} minimum {1} found up to '
                                        't={2}.'.format(what, j, guard))
        values.append(t)

    return tuple(values)


def minima_at(u, q, lower=None):
    """Return the sorted minima ``(L_1(q), ..., L_n(q))``."""
    u.require_horizon(q)
    return _search(u.field, u.n, lambda t: _minima_rows(u, q, t), 0, lower,
                   q, 'successive')


def _minima_job(args):
    u, q = args
    return minima_at(u, q)


def minima_profile(u, Q, jobs=1):
    """Return the profile ``q -> L_u(q)`` on [0, Q].

    With ``jobs > 1`` the values at distinct q are computed in separate
    processes.
    """
    u.require_horizon(Q)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_minima_job, [(u, q)
                                                 for q in range(Q + 1)]))
    else:
        values = []
        lower = None
        for q in range(Q + 1):
            lower = minima_at(u, q, lower)
            values.append(lower)

    return Profile(values, u.n)


class MinimaCertificate(object):
    """Basis of A^n realizing the minima of the body at q."""

    def __init__(self, q, values, basis):
        self.q = q
        self.values = tuple(values)
        self.basis = tuple(tuple(row) for row in basis)

    def todict(self):
        return OrderedDict([
            ('q', self.q),
            ('values', list(self.values)),
            ('basis', mat_todict(self.basis)),
        ])


def minima_certificate(u, q, values=None):
    """Return a ``MinimaCertificate`` for the body at q.

    At each first attainment ``t = L_j(q)`` the solutions at t are scanned
    for one that is independent of the rows chosen so far.
    """
    if values is None:
        values = minima_at(u, q)

    chosen = []
    for j, t in enumerate(values, start=1):
        if len(chosen) >= j:
            continue
        rows, width = _minima_rows(u, q, t)
        for x in _kernel_vectors(u.field, rows, u.n, width):
            if rank(chosen + [x]) > len(chosen):
                chosen.append(x)
                if len(chosen) == j:
                    break

    cert = MinimaCertificate(q, values, chosen)
    check_certificate(u, cert)
    return cert


def minima_certificates(u, Q):
    """Return certificates for every q in [0, Q]."""
    profile = minima_profile(u, Q)
    return [minima_certificate(u, q, values)
            for q, values in enumerate(profile)]


def check_certificate(u, cert):
    """Verify a certificate; raise ``VerificationError`` on failure."""
    if len(cert.basis) != u.n:
        raise VerificationError('Certificate at q={0} has {1} rows.'
                                ''.format(cert.q, len(cert.basis)))

    delta = det(cert.basis)
    if delta.degree != 0:
        raise VerificationError('Certificate basis at q={0} has determinant '
                                '{1}, not a unit.'.format(cert.q, delta))

    if sum(cert.values) != cert.q:
        raise VerificationError('Minima at q={0} sum to {1}.'
                                ''.format(cert.q, sum(cert.values)))

    reached = []
    for x, value in zip(cert.basis, cert.values):
        level = trajectory_value(x, u, cert.q)
        if level > value:
            raise VerificationError('Row {0} reaches {1} above the minimum '
                                    '{2}.'.format(x, level, value))
        reached.append(level)

    if tuple(sorted(reached)) != cert.values:
        raise VerificationError('Trajectories {0} do not realize the minima '
                                '{1}.'.format(sorted(reached), cert.values))


def trajectory_value(x, u, q):
    """Return ``L_x(q) = max(log|x|, q + log|u.x|)``.

    An indeterminate ``|u.x|`` is accepted while its bound cannot reach
    the level.
    """
    level = certify(log_norm(x), 'norm of x')
    if level == NEG_INF:
        raise PreconditionError('zero-vector', 'Trajectory of the zero '
                                'vector.')

    return _body_value(level, dot(u.entries, x).log_norm(), q, '|u.x|')


def _body_value(level, norm, q, what):
    """Return ``max(level, q + norm)`` for a possibly indeterminate norm."""
    if norm == NEG_INF:
        return level
    elif isinstance(norm, Indeterminate):
        if q + norm.bound <= level:
            return level
        raise PrecisionError('{0} <= e^{1} is too coarse for q={2}.'
                             ''.format(what, norm.bound, q))
    return max(level, q + norm)


class Trajectory(object):
    """Graph of ``L_x``: constant at ``level``, then slope 1 after
    ``breakpoint``."""

    def __init__(self, x, level, breakpoint):
        self.x = tuple(x)
        self.level = level
        self.breakpoint = breakpoint

    def value(self, q):
        """Return ``L_x(q)``."""
        if q <= self.breakpoint:
            return self.level
        return q - self.breakpoint + self.level

    def todict(self):
        return OrderedDict([
            ('x', [p.todict() for p in self.x]),
            ('level', self.level),
            ('breakpoint', None if self.breakpoint == POS_INF
             else self.breakpoint),
        ])


def trajectory(x, u):
    """Return the ``Trajectory`` of a nonzero x in A^n."""
    level = certify(log_norm(x), 'norm of x')
    if level == NEG_INF:
        raise PreconditionError('zero-vector', 'Trajectory of the zero '
                                'vector.')

    norm = certify(dot(u.entries, x).log_norm(), '|u.x|')
    if norm == NEG_INF:
        return Trajectory(x, level, POS_INF)
    return Trajectory(x, level, level - norm)


def dual_profile(u, Q):
    """Return the minima ``L*_u(q)`` of the dual bodies on [0, Q].

    ``L*_j(q)`` is the least t with j independent y in A^n such that
    ``|y| <= e^(q+t)`` and ``|u ^ y| <= e^t``.  Values may be negative.
    """
    u.require_horizon(Q)

    values = []
    prev = None
    for q in range(Q + 1):
        lower = None if prev is None else [v - 1 for v in prev]
        prev = _search(u.field, u.n, lambda t, q=q: _dual_rows(u, q, t), -q,
                       lower, q, 'dual')
        values.append(prev)

    return Profile(values, u.n)


def tilde_profile(u, q_max):
    """Return ``q -> q + L*_u(nq)`` for q in [0, q_max]."""
    n = u.n
    dual = dual_profile(u, n * q_max)
    values = [tuple(q + v for v in dual[n * q]) for q in range(q_max + 1)]
    return Profile(values, n)


def compound_profile(values, m):
    """Return the sorted m-subset sums of the minima ``values``.

    ``values`` may also be a ``MinimaCertificate``.
    """
    if isinstance(values, MinimaCertificate):
        values = values.values
    n = len(values)
    if not 1 <= m <= n:
        raise ValueError('Compound grade {0} is out of range for n={1}.'
                         ''.format(m, n))
    return tuple(sorted(sum(values[i] for i in cols)
                        for cols in combinations(range(n), m)))


def compound_value(w, u, m, q):
    """Return ``max(log|w|, q + log|contract(u, w)|)`` for grade-m w.

    This is the trajectory of w for the grade-m compound of the body.
    """
    level = certify(log_norm(w), 'norm of w')
    if level == NEG_INF:
        raise PreconditionError('zero-vector', 'Trajectory of the zero '
                                'vector.')
    norm = log_norm(contract(u.entries, w, m))
    return _body_value(level, norm, q, '|contract(u, w)|')


def compound_realizers(cert, m, u=None):
    """Return the wedges of certificate rows realizing the compound minima.

    The result is a list of ``(value, wedge)`` pairs sorted by value.  With
    ``u``, the trajectory of every wedge is checked against its value.
    """
    n = len(cert.values)
    keyed = sorted((sum(cert.values[i] for i in cols), cols)
                   for cols in combinations(range(n), m))
    realizers = [(value, wedge([cert.basis[i] for i in cols], n))
                 for value, cols in keyed]

    if u is not None:
        for value, w in realizers:
            reached = compound_value(w, u, m, cert.q)
            if reached != value:
                raise VerificationError('Compound realizer at q={0} reaches '
                                        '{1}, not {2}.'
                                        ''.format(cert.q, reached, value))
    return realizers


def compound_direct(u, m, Q):
    """Compute the grade-m compound minima on [0, Q] directly.

    The projection norm is that of the contraction with u, and the search
    runs over every coordinate vector of grade m.
    """
    n = u.n
    if not 1 <= m <= n:
        raise ValueError('Compound grade {0} is out of range for n={1}.'
                         ''.format(m, n))

    size = comb(n, m)
    if size > 6:
        raise PreconditionError('oversized', 'Direct compound computation '
                                'supports at most 6 coordinates, not {0}.'
                                ''.format(size))
    u.require_horizon(Q)

    values = []
    prev = None
    for q in range(Q + 1):
        prev = _search(u.field, size,
                       lambda t, q=q: _compound_rows(u, m, q, t), 0, prev, q,
                       'compound')
        values.append(prev)

    return Profile(values, size)


def compound_identities(values, compound, m):
    """Check the compound identities at one q.

    The components sum to ``C(n-1, m-1) * q``, the first equals the sum of
    the first m minima, and for m < n the first gap equals
    ``L_{m+1} - L_m``.  Return ``None`` or a ``Violation``.
    """
    n = len(values)
    q = sum(values)
    if sum(compound) != comb(n - 1, m - 1) * q:
        return Violation(q, 'compound-sum', 'Compound minima sum to {0}.'
                         ''.format(sum(compound)))

    if compound[0] != sum(values[:m]):
        return Violation(q, 'compound-first', 'First compound minimum {0} '
                         'differs from {1}.'
                         ''.format(compound[0], sum(values[:m])))

    if m < n and compound[1] - compound[0] != values[m] - values[m - 1]:
        return Violation(q, 'compound-gap', 'Compound gap {0} differs from '
                         '{1}.'.format(compound[1] - compound[0],
                                       values[m] - values[m - 1]))
    return None


def slope_changes(profile, m):
    """Return the q where ``L_1 + ... + L_m`` changes slope from 1 to 0."""
    first = [sum(row[:m]) for row in profile]
    return [q for q in range(1, profile.Q)
            if first[q] - first[q - 1] == 1 and first[q + 1] - first[q] == 0]


def slope_change_check(profile, m):
    """Check that ``L_m(q) = L_{m+1}(q)`` at every 1 -> 0 slope change."""
    for q in slope_changes(profile, m):
        if profile[q][m - 1] != profile[q][m]:
            return Violation(q, 'slope-change', 'L_{0}({1}) != L_{2}({1}) '
                             'at a slope change.'.format(m, q, m + 1))
    return None


def random_unit_point(field, n, prec, rng):
    """Return a random unit point known to precision ``prec``."""
    lead = rng.randrange(n)
    entries = []
    for i in range(n):
        coeffs = [field.random_element(rng) for _ in range(prec + 1)]
        while i == lead and not coeffs[0]:
            coeffs[0] = field.random_element(rng)
        entries.append(LaurentSeries(field, coeffs, 0, prec))
    return UnitPoint(entries)
