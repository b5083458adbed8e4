"""Truncated Laurent series in 1/T.

A ``LaurentSeries`` stores the coefficients of ``T**lead_exp`` down to
``T**-prec``.  Coefficients below ``T**-prec`` are unknown, unless the
series is flagged ``exact``, in which case they are zero.  Arithmetic tracks
the precision floor so that results never claim more than the inputs
determine.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numbers
from collections import OrderedDict

from ffpgn.errors import PrecisionError
from ffpgn.fields import Residue, field_from_tag
from ffpgn.lognorm import Indeterminate, NEG_INF
from ffpgn.poly import Poly


class LaurentSeries(object):
    """Element of F((1/T)) known down to the power ``T**-prec``."""

    __slots__ = ('field', 'lead_exp', 'coeffs', 'prec', 'exact')

    def __init__(self, field, coeffs, lead_exp, prec, exact=False):
        """Create a series from coefficients of descending powers of T.

        ``coeffs[0]`` is the coefficient of ``T**lead_exp``.  Missing
        coefficients down to ``T**-prec`` are zero; extra coefficients below
        the floor are discarded.  Leading zeros are stripped, so that
        ``lead_exp`` is the log-norm of any series with stored coefficients.
        """
        size = max(lead_exp + prec + 1, 0)
        values = [field(c) for c in coeffs][:size]
        values += [field.zero] * (size - len(values))

        first = next((k for k, c in enumerate(values) if c), len(values))
        values = values[first:]
        lead_exp -= first
        if not values:
            lead_exp = -prec - 1

        self.field = field
        self.lead_exp = lead_exp
        self.coeffs = tuple(values)
        self.prec = prec
        self.exact = bool(exact)

    @classmethod
    def from_poly(cls, poly):
        """Return the exact series of a polynomial."""
        if not poly:
            return cls(poly.field, [], 0, 0, exact=True)
        return cls(poly.field, list(reversed(poly.coeffs)), poly.degree, 0,
                   exact=True)

    @classmethod
    def constant(cls, field, value):
        """Return the exact constant series ``value``."""
        return cls(field, [value], 0, 0, exact=True)

    @classmethod
    def from_rational(cls, num, den, prec):
        """Expand ``num / den`` down to ``T**-prec``.

        The expansion is exact when the denominator is a constant.
        """
        if not den:
            raise ZeroDivisionError('Rational function with zero denominator.')
        if den.degree == 0:
            return cls.from_poly(num.scale(num.field.one / den.lead))
        if not num:
            return cls(num.field, [], 0, prec, exact=True)

        inverse = cls.from_poly(den).inverse(prec + num.degree)
        return (cls.from_poly(num) * inverse).truncate(prec)

    @property
    def floor(self):
        """Lowest exponent with a known coefficient."""
        return -self.prec

    @property
    def top(self):
        """Largest exponent that may carry a nonzero coefficient."""
        return self.lead_exp if self.coeffs else self.floor - 1

    def log_norm(self):
        """Return the log-norm: an integer, ``NEG_INF`` or ``Indeterminate``."""
        if self.coeffs:
            return self.lead_exp
        elif self.exact:
            return NEG_INF
        return Indeterminate(self.floor - 1)

    def coefficient(self, e):
        """Return the coefficient of ``T**e``."""
        if e > self.lead_exp:
            return self.field.zero
        elif e >= self.floor:
            return self.coeffs[self.lead_exp - e]
        elif self.exact:
            return self.field.zero
        raise PrecisionError('Coefficient of T^{0} lies below the precision '
                             'T^{1}.'.format(e, self.floor))

    def _lift(self, other):
        """Promote ``other`` to a series over the same field."""
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise TypeError('Cannot combine series over {0} and {1}.'
                                ''.format(self.field, other.field))
            return other
        elif isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError('Cannot combine series over {0} and {1}.'
                                ''.format(self.field, other.field))
            return LaurentSeries.from_poly(other)
        elif isinstance(other, (numbers.Rational, Residue)):
            return LaurentSeries.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented

        if self.exact and other.exact:
            floor = min(self.floor, other.floor)
        elif self.exact:
            floor = other.floor
        elif other.exact:
            floor = self.floor
        else:
            floor = max(self.floor, other.floor)

        lead = max(self.top, other.top)
        coeffs = [self.coefficient(e) + other.coefficient(e)
                  for e in range(lead, floor - 1, -1)]
        return LaurentSeries(self.field, coeffs, lead, -floor,
                             exact=self.exact and other.exact)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, [-c for c in self.coeffs],
                             self.lead_exp, self.prec, self.exact)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (numbers.Rational, Residue)):
            value = self.field(other)
            return LaurentSeries(self.field, [value * c for c in self.coeffs],
                                 self.lead_exp, self.prec, self.exact)

        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented

        a, b = self, other
        exact = a.exact and b.exact
        if (a.exact and not a.coeffs) or (b.exact and not b.coeffs):
            return LaurentSeries(self.field, [], 0, max(a.prec, b.prec),
                                 exact=True)

        if exact:
            floor = a.floor + b.floor
        elif a.exact:
            floor = b.floor + a.top
        elif b.exact:
            floor = a.floor + b.top
        else:
            floor = max(a.floor + b.top, b.floor + a.top)

        lead = a.top + b.top
        coeffs = []
        for e in range(lead, floor - 1, -1):
            total = self.field.zero
            for i in range(max(a.floor, e - b.top), min(a.top, e - b.floor) + 1):
                ai = a.coefficient(i)
                if ai:
                    total += ai * b.coefficient(e - i)
            coeffs.append(total)

        return LaurentSeries(self.field, coeffs, lead, -floor, exact=exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (numbers.Rational, Residue)):
            return self * (self.field.one / self.field(other))
        return NotImplemented

    def shift(self, k):
        """Return the series multiplied by ``T**k``."""
        return LaurentSeries(self.field, self.coeffs, self.lead_exp + k,
                             self.prec - k, self.exact)

    def truncate(self, prec):
        """Return the series known only down to ``T**-prec``."""
        if prec > self.prec and not self.exact:
            raise PrecisionError('Cannot extend precision from {0} to {1}.'
                                 ''.format(self.prec, prec))
        coeffs = [self.coefficient(e) for e in range(self.top, -prec - 1, -1)]
        return LaurentSeries(self.field, coeffs, self.top, prec, exact=False)

    def inverse(self, prec=None):
        """Return ``1 / self`` known down to ``T**-prec``.

        Without ``prec``, the inverse of an inexact series carries every
        coefficient its relative precision determines.
        """
        norm = self.log_norm()
        if norm == NEG_INF:
            raise ZeroDivisionError('Inverse of the zero series.')
        elif isinstance(norm, Indeterminate):
            raise PrecisionError('Cannot invert a series with no certified '
                                 'leading term.')

        lead = self.lead_exp
        if len(self.coeffs) == 1 and self.exact:
            return LaurentSeries(self.field, [self.field.one / self.coeffs[0]],
                                 -lead, lead, exact=True)

        if self.exact:
            if prec is None:
                raise ValueError('An exact series needs an explicit inverse '
                                 'precision.')
            terms = prec - lead
        else:
            terms = len(self.coeffs) - 1
            if prec is not None:
                terms = min(terms, prec - lead)
        if terms < 0:
            raise PrecisionError('Precision T^-{0} lies above the leading '
                                 'term T^{1} of the inverse.'
                                 ''.format(prec, -lead))

        inv_lead = self.field.one / self.coeffs[0]
        body = [self.coefficient(lead - j) for j in range(terms + 1)]
        inv = [inv_lead]
        for k in range(1, terms + 1):
            total = self.field.zero
            for j in range(1, k + 1):
                if body[j]:
                    total += body[j] * inv[k - j]
            inv.append(-inv_lead * total)

        return LaurentSeries(self.field, inv, -lead, lead + terms)

    def polynomial_part(self):
        """Return the polynomial formed by the terms of exponent >= 0."""
        if self.floor > 0 and not self.exact:
            raise PrecisionError('The polynomial part is unknown below T^{0}.'
                                 ''.format(self.floor))
        return Poly(self.field, [self.coefficient(e)
                                 for e in range(0, max(self.top, -1) + 1)])

    def to_rational(self):
        """Return ``(num, den)`` for an exact series."""
        if not self.exact:
            raise ValueError('Only exact series have a rational form.')
        low = min(self.floor, 0)
        num = Poly(self.field, [self.coefficient(e)
                                for e in range(low, max(self.top, low) + 1)])
        return num, Poly.monomial(self.field, -low)

    def map(self, field):
        """Return the series with coefficients converted to ``field``."""
        return LaurentSeries(field, self.coeffs, self.lead_exp, self.prec,
                             self.exact)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.coeffs == other.coeffs
                and self.lead_exp == other.lead_exp
                and self.prec == other.prec and self.exact == other.exact)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.field, self.coeffs, self.lead_exp, self.prec,
                     self.exact))

    def __repr__(self):
        return 'LaurentSeries({0})'.format(self)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.lead_exp - k
            c_str = self.field.format(c)
            if e == 0:
                terms.append(c_str)
            elif e == 1:
                terms.append('{0}*T'.format(c_str))
            else:
                terms.append('{0}*T^{1}'.format(c_str, e))

        out = ' + '.join(terms) if terms else '0'
        if not self.exact:
            out += ' + O(T^{0})'.format(self.floor - 1)
        return out

    def todict(self):
        """Return the JSON form, most significant coefficient first."""
        return OrderedDict([
            ('lead_exp', self.lead_exp),
            ('prec', self.prec),
            ('exact', self.exact),
            ('coeffs', [self.field.format(c) for c in self.coeffs]),
        ])

    @classmethod
    def fromdict(cls, field, data):
        """Create a series from its JSON form."""
        field = field_from_tag(field)
        try:
            lead = int(data['lead_exp'])
            prec = int(data['prec'])
        except KeyError as exc:
            raise ValueError('Series entry is missing the {0} field.'
                             ''.format(exc))
        coeffs = [field.parse(str(c)) for c in data.get('coeffs', [])]
        return cls(field, coeffs, lead, prec,
                   exact=bool(data.get('exact', False)))
