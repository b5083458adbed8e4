"""Product inequalities for exponential polynomials at finitely many places.

For nonzero polynomials ``a_1, ..., a_n`` and distinct exponents
``omega_i``, the function ``a.f = sum(a_i(T) e^(omega_i T))`` is expanded at
each point alpha in powers of ``S = T - alpha``.  The constant factors
``e^(omega_i alpha)`` are kept as formal symbols ``E_beta`` keyed by the
exact exponent ``beta = omega_i * alpha``, and distinct symbols are treated
as linearly independent.  All inequalities are checked in integer log
scale.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import OrderedDict
from math import comb, factorial

from ffpgn.errors import PrecisionError, PreconditionError, VerificationError
from ffpgn.fields import Rationals
from ffpgn.linalg import det
from ffpgn.lognorm import POS_INF, fmtnorm
from ffpgn.poly import Poly


class ExpSymbolRing(object):
    """F-linear combinations of the formal symbols ``E_beta = e^beta``.

    Elements are dictionaries mapping ``beta`` to a nonzero coefficient.
    ``E_0`` is the unit 1.
    """

    def __init__(self, field):
        self.field = field

    def symbol(self, beta, coeff=1):
        """Return ``coeff * E_beta``."""
        coeff = self.field(coeff)
        return {self.field(beta): coeff} if coeff else {}

    def add(self, x, y):
        """Return ``x + y``."""
        total = dict(x)
        for beta, c in y.items():
            value = total.get(beta, self.field.zero) + c
            if value:
                total[beta] = value
            else:
                total.pop(beta, None)
        return total

    def is_zero(self, x):
        """Return ``True`` if ``x`` vanishes identically."""
        return not x

    def format(self, x):
        """Return a readable form of ``x``."""
        if not x:
            return '0'
        terms = []
        for beta in sorted(x):
            c = self.field.format(x[beta])
            terms.append(c if beta == 0
                         else '{0}*E({1})'.format(c, self.field.format(beta)))
        return ' + '.join(terms)


def _scalars(field, values):
    return [field(v) for v in values]


def _check_inputs(a, omegas, field):
    if field.characteristic != 0:
        raise PreconditionError('characteristic-p', 'Exponential '
                                'polynomials need a field of characteristic '
                                '0, not {0}.'.format(field))
    if len(a) != len(omegas):
        raise ValueError('{0} polynomials do not match {1} exponents.'
                         ''.format(len(a), len(omegas)))
    if len(set(omegas)) != len(omegas):
        raise PreconditionError('omega-not-distinct', 'Exponents {0} are not '
                                'pairwise distinct.'
                                ''.format([str(w) for w in omegas]))
    for i, p in enumerate(a, start=1):
        if not p:
            raise PreconditionError('zero-polynomial', 'Polynomial a_{0} is '
                                    'zero.'.format(i))


def _field_of(a, field):
    if field is not None:
        return field
    return a[0].field if a else Rationals()


def _expansion_order(a, omegas, alpha, terms):
    """Return ``ord_alpha`` of ``sum(a_i e^(omega_i T))`` and its first
    nonzero coefficient."""
    field = a[0].field
    ring = ExpSymbolRing(field)
    if not any(a):
        return POS_INF, {}

    shifted = [p.taylor_shift(alpha) for p in a]
    for k in range(terms):
        coeff = {}
        for p, w in zip(shifted, omegas):
            if not p:
                continue
            value = field.zero
            for j in range(min(k, p.degree) + 1):
                c = p.coefficient(j)
                if c:
                    value += c * w ** (k - j) / factorial(k - j)
            coeff = ring.add(coeff, ring.symbol(w * alpha, value))
        if not ring.is_zero(coeff):
            return k, coeff

    raise PrecisionError('The first {0} terms of a.f at {1} vanish; raise the '
                         'number of terms.'.format(terms, alpha))


class LocalData(object):
    """Orders at a point alpha of the a_i and of ``a.f``."""

    def __init__(self, alpha, ords, ord_af, lead=None):
        self.alpha = alpha
        self.ords = tuple(ords)
        self.ord_af = ord_af
        self.lead = lead

    @property
    def norm_exp(self):
        """Exponent of ``||a||_alpha``, that is ``-min_i ord_alpha(a_i)``.

        :type: ``int``
        """
        return -min(self.ords)

    def todict(self, field=None):
        field = field or Rationals()
        return OrderedDict([
            ('alpha', field.format(self.alpha)),
            ('ords', [fmtnorm(v) for v in self.ords]),
            ('ord_af', fmtnorm(self.ord_af)),
            ('norm_exp', self.norm_exp),
        ])


def default_terms(a):
    """Return the number of terms that certifies ``ord(a.f)`` for s = 1."""
    n = len(a)
    return sum(p.degree for p in a) + n * (n - 1) // 2 + 2


def local_data(a, omegas, alpha, terms=None, field=None):
    """Return the ``LocalData`` of ``a`` at ``alpha``.

    ``ord_alpha(a_i)`` comes from the Taylor shift of ``a_i``;
    ``ord_alpha(a.f)`` is the first power of ``T - alpha`` whose symbolic
    coefficient does not vanish, searched among ``terms`` terms.
    """
    field = _field_of(a, field)
    omegas = _scalars(field, omegas)
    _check_inputs(a, omegas, field)
    alpha = field(alpha)
    if terms is None:
        terms = default_terms(a)

    ords = [p.ord_at(alpha) for p in a]
    ord_af, lead = _expansion_order(a, omegas, alpha, terms)
    return LocalData(alpha, ords, ord_af, lead)


def wronskian_matrix(a, omegas, field=None):
    """Return the rows ``a_k = ((omega_i + d/dT)^k a_i)_i`` for k < n."""
    field = _field_of(a, field)
    omegas = _scalars(field, omegas)
    _check_inputs(a, omegas, field)

    rows = [tuple(a)]
    for _ in range(1, len(a)):
        prev = rows[-1]
        rows.append(tuple(p.scale(w) + p.derivative()
                          for p, w in zip(prev, omegas)))
    return rows


def vandermonde(omegas):
    """Return ``det(omega_i^k)`` with the convention ``0^0 = 1``."""
    n = len(omegas)
    return det([[w ** k for w in omegas] for k in range(n)])


def delta(a, omegas, field=None):
    """Return ``(Delta, report)`` for the Wronskian-type determinant.

    The report records that ``deg Delta = sum(deg a_i)`` and that the
    leading coefficient of Delta is ``prod(c_i)`` times the Vandermonde
    determinant of the exponents.  A failed identity raises
    ``VerificationError``.
    """
    field = _field_of(a, field)
    omegas = _scalars(field, omegas)
    rows = wronskian_matrix(a, omegas, field)
    value = det(rows)

    degree = sum(p.degree for p in a)
    lead = field.one
    for p in a:
        lead *= p.lead
    lead *= vandermonde(omegas)

    if not value or value.degree != degree:
        raise VerificationError('deg Delta = {0}, not {1}.'
                                ''.format(value.degree, degree))
    if value.lead != lead:
        raise VerificationError('Leading coefficient of Delta is {0}, not '
                                '{1}.'.format(value.lead, lead))

    report = OrderedDict([
        ('delta', value.todict()),
        ('degree', degree),
        ('lead', field.format(lead)),
        ('degree_ok', True),
        ('lead_ok', True),
    ])
    return value, report


def _points(field, S):
    points = _scalars(field, S)
    if not points:
        raise PreconditionError('empty-S', 'The point set S must have at '
                                'least one element.')
    if len(set(points)) != len(points):
        raise PreconditionError('S-not-distinct', 'Points {0} are not '
                                'pairwise distinct.'
                                ''.format([str(p) for p in points]))
    return points


def adelic_margin(a, omegas, S, terms=None, field=None):
    """Return the integer margin of the product inequality over S.

    ``sum(deg a_i) + sum over alpha of (min_i ord(a_i) - sum_i ord(a_i)
    - ord(a.f)) + s n(n-1)/2``, which is nonnegative.
    """
    return _margin(a, omegas, S, terms, field)[0]


def _margin(a, omegas, S, terms, field):
    field = _field_of(a, field)
    points = _points(field, S)
    n = len(a)

    local = [local_data(a, omegas, alpha, terms, field) for alpha in points]
    margin = sum(p.degree for p in a) + len(points) * n * (n - 1) // 2
    for data in local:
        margin += min(data.ords) - sum(data.ords) - data.ord_af
    return margin, local


def adelic_report(a, omegas, S, terms=None, field=None):
    """Return the margin over S with the local data and the check of Delta.

    The report also records the product formula bound
    ``deg Delta >= sum over alpha of ord_alpha(Delta)``.
    """
    field = _field_of(a, field)
    margin, local = _margin(a, omegas, S, terms, field)
    value, structure = delta(a, omegas, field)
    points = _points(field, S)
    delta_ords = [value.ord_at(alpha) for alpha in points]

    return OrderedDict([
        ('n', len(a)),
        ('omega', [field.format(field(w)) for w in omegas]),
        ('S', [field.format(alpha) for alpha in points]),
        ('margin', margin),
        ('holds', margin >= 0),
        ('local', [data.todict(field) for data in local]),
        ('delta_deg', value.degree),
        ('delta', structure),
        ('product_formula', value.degree >= sum(delta_ords)),
    ])


def _log_at_infinity(a, omegas, field, terms=None):
    """Return ``log|a.u|_inf`` for ``u = (e^(omega_i / T))``.

    With ``d = max(deg a_i)`` and ``x_i = T^d a_i(1/T)``, the norm is
    ``d - ord_0(x.f)``.
    """
    d = max(p.degree for p in a)
    x = [p.reverse(d) for p in a]
    if terms is None:
        terms = default_terms(x)
    order, _ = _expansion_order(x, omegas, field.zero, terms)
    return d - order


def corollary_checks(a, omegas, field=None):
    """Return the margins of the three inequalities at infinity.

    ``first``: ``sum(deg a_i - ord_0 a_i) + log|a.u| - max(deg a_i)
    + n(n-1)/2``.  ``single``: ``log|a.u| + sum(deg a_i, i >= 2) +
    n(n-1)/2``.  ``pairs``: ``deg a_1 + sum(log|a_1 u_i - a_i u_1|, i >= 2)
    + (n-1) n(n-1)/2``.  Each margin is nonnegative.
    """
    field = _field_of(a, field)
    omegas = _scalars(field, omegas)
    _check_inputs(a, omegas, field)
    n = len(a)
    c = n * (n - 1) // 2

    log_au = _log_at_infinity(a, omegas, field)
    d = max(p.degree for p in a)
    first = sum(p.degree - p.ord_at(0) for p in a) + log_au - d + c
    single = log_au + sum(p.degree for p in a[1:]) + c

    pairs = a[0].degree + (n - 1) * c
    for i in range(1, n):
        pair = [a[0], -a[i]]
        pairs += _log_at_infinity(pair, [omegas[i], omegas[0]], field)

    return OrderedDict([
        ('n', n),
        ('log_au', log_au),
        ('first', first),
        ('single', single),
        ('pairs', pairs),
        ('holds', min(first, single, pairs) >= 0),
    ])


def tight_example(n, field=None):
    """Return ``(a, omega)`` with ``a.f = (e^T - 1)^(n-1)``."""
    if field is None:
        field = Rationals()
    a = [Poly(field, [comb(n - 1, j - 1) * (-1) ** (n - j)])
         for j in range(1, n + 1)]
    omegas = [field(j - 1) for j in range(1, n + 1)]
    return a, omegas


def remark_margin(a, omegas, S, terms=None, field=None):
    """Return ``sum(deg a_i) - sum over alpha of ord(a.f) + s(n - 1)``."""
    field = _field_of(a, field)
    points = _points(field, S)
    n = len(a)

    margin = sum(p.degree for p in a) + len(points) * (n - 1)
    for alpha in points:
        margin -= local_data(a, omegas, alpha, terms, field).ord_af
    return margin


def proof_step_checks(a, omegas, alpha, terms=None, field=None):
    """Check the order drops of the derivative rows at ``alpha``.

    For k < n: ``ord(a_{k,i}) >= ord(a_i) - k`` and
    ``ord(a_k.f) >= ord(a.f) - k``.  Returns a list of failures, empty when
    both inequalities hold.
    """
    field = _field_of(a, field)
    omegas = _scalars(field, omegas)
    alpha = field(alpha)
    rows = wronskian_matrix(a, omegas, field)
    if terms is None:
        terms = default_terms(a)

    base = local_data(a, omegas, alpha, terms, field)
    failures = []
    for k, row in enumerate(rows):
        for i, (p, low) in enumerate(zip(row, base.ords), start=1):
            if p.ord_at(alpha) < low - k:
                failures.append('ord a_{0},{1} < ord a_{1} - {0}'
                                ''.format(k, i))
        order, _ = _expansion_order(list(row), omegas, alpha, terms)
        if order < base.ord_af - k:
            failures.append('ord a_{0}.f < ord a.f - {0}'.format(k))
    return failures
