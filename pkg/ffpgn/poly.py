"""Dense univariate polynomials over an exact field.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numbers
from collections import OrderedDict

from ffpgn.fields import Residue, field_from_tag
from ffpgn.lognorm import NEG_INF, POS_INF


class Poly(object):
    """Polynomial in T with coefficients in ascending powers of T.

    Polynomials are immutable.  The zero polynomial has no coefficients and
    degree ``NEG_INF``.
    """

    __slots__ = ('field', 'coeffs')

    def __init__(self, field, coeffs=()):
        """Create the polynomial ``sum(coeffs[k] * T**k)`` over ``field``."""
        values = [field(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()

        self.field = field
        self.coeffs = tuple(values)

    @classmethod
    def constant(cls, field, value):
        """Return the constant polynomial ``value``."""
        return cls(field, [value])

    @classmethod
    def monomial(cls, field, degree, value=1):
        """Return ``value * T**degree``."""
        if degree < 0:
            raise ValueError('Monomial degree must be nonnegative.')
        return cls(field, [0] * degree + [value])

    @property
    def degree(self):
        """Degree of the polynomial, or ``NEG_INF`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        """Leading coefficient, or zero for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coefficient(self, k):
        """Return the coefficient of ``T**k``."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def _lift(self, other):
        """Promote ``other`` to a polynomial over the same field."""
        if isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError('Cannot combine polynomials over {0} and '
                                '{1}.'.format(self.field, other.field))
            return other
        elif isinstance(other, (numbers.Rational, Residue)):
            return Poly(self.field, [other])
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented

        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coefficient(k) + other.coefficient(k)
                                 for k in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

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
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)

        prod = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] += a * b
        return Poly(self.field, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral) or k < 0:
            raise ValueError('Polynomial powers must be nonnegative integers.')
        result = Poly(self.field, [1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        """Euclidean division by a nonzero polynomial."""
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError('Polynomial division by zero.')

        rem = list(self.coeffs)
        quot = [self.field.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = self.field.one / other.lead
        shift = len(other.coeffs) - 1
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + shift] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b

        return Poly(self.field, quot), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate the polynomial at ``x`` by Horner's rule."""
        result = self.field.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def scale(self, value):
        """Return the polynomial multiplied by the scalar ``value``."""
        value = self.field(value)
        return Poly(self.field, [value * c for c in self.coeffs])

    def shift(self, k):
        """Return the polynomial multiplied by ``T**k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError('Shift must be nonnegative.')
        if not self.coeffs:
            return self
        return Poly(self.field, [0] * k + list(self.coeffs))

    def derivative(self):
        """Return the formal derivative d/dT."""
        return Poly(self.field, [k * c for k, c in enumerate(self.coeffs)][1:])

    def taylor_shift(self, alpha):
        """Return the polynomial ``g`` with ``g(S) = f(S + alpha)``."""
        alpha = self.field(alpha)
        linear = Poly(self.field, [alpha, 1])
        result = Poly(self.field)
        for c in reversed(self.coeffs):
            result = result * linear + c
        return result

    def ord_at(self, alpha):
        """Return the order of vanishing at ``alpha``, ``POS_INF`` for zero."""
        if not self.coeffs:
            return POS_INF
        shifted = self.taylor_shift(alpha)
        return next(k for k, c in enumerate(shifted.coeffs) if c)

    def reverse(self, degree):
        """Return ``T**degree * f(1/T)``, a polynomial when degree >= deg f."""
        if self.coeffs and degree < self.degree:
            raise ValueError('Reversal degree {0} is below the degree {1}.'
                             ''.format(degree, self.degree))
        if not self.coeffs:
            return self
        return Poly(self.field, [self.coefficient(degree - k)
                                 for k in range(degree + 1)])

    def map(self, field):
        """Return the polynomial with coefficients converted to ``field``."""
        return Poly(field, self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        elif isinstance(other, (numbers.Rational, Residue)):
            return self.degree <= 0 and self.coefficient(0) == other
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return 'Poly({0!r}, [{1}])'.format(
            self.field, ', '.join(self.field.format(c) for c in self.coeffs))

    def __str__(self):
        return self.format()

    def format(self, variable='T'):
        """Return the polynomial as an expression such as ``T^2 - 1/2*T``."""
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue

            c_str = self.field.format(c)
            negative = c_str.startswith('-')
            if negative:
                c_str = c_str[1:]

            if k == 0:
                body = c_str
            else:
                mono = variable if k == 1 else '{0}^{1}'.format(variable, k)
                body = mono if c_str == '1' else '{0}*{1}'.format(c_str, mono)
            terms.append((negative, body))

        if not terms:
            return '0'

        negative, body = terms[0]
        out = '-' + body if negative else body
        for negative, body in terms[1:]:
            out += (' - ' if negative else ' + ') + body
        return out

    def todict(self):
        """Return the JSON form, most significant coefficient first."""
        return OrderedDict([
            ('lead_exp', self.degree if self.coeffs else None),
            ('coeffs', [self.field.format(c) for c in reversed(self.coeffs)]),
        ])

    @classmethod
    def fromdict(cls, field, data):
        """Create a polynomial from its JSON form."""
        field = field_from_tag(field)
        coeffs = [field.parse(str(c)) for c in data.get('coeffs', [])]
        lead = data.get('lead_exp')
        if lead is None:
            if any(coeffs):
                raise ValueError('Nonzero polynomial has no lead_exp.')
            return cls(field)
        if lead + 1 < len(coeffs):
            raise ValueError('Polynomial lists {0} coefficients below degree '
                             '{1}.'.format(len(coeffs), lead))
        coeffs += [field.zero] * (lead + 1 - len(coeffs))
        return cls(field, list(reversed(coeffs)))
