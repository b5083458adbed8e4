"""Exact coefficient fields.

Two fields are supported: the rationals, whose elements are
``fractions.Fraction`` values, and the prime fields, whose elements are
``Residue`` values.  A field object is a small immutable tag which converts,
parses and formats its own elements; it is passed explicitly to every
constructor that needs one.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numbers
import re
from fractions import Fraction

from ffpgn.errors import ParseError
from ffpgn.fpy import fmtrational, fmtresidue, pyrational, pyresidue


def is_prime(p):
    """Return ``True`` if ``p`` is a prime integer."""
    if not isinstance(p, numbers.Integral) or p < 2:
        return False
    if p % 2 == 0:
        return p == 2

    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue(object):
    """Element of the prime field with ``p`` elements."""

    __slots__ = ('value', 'p')

    def __init__(self, value, p):
        """Create the residue of ``value`` modulo ``p``."""
        self.value = int(value) % p
        self.p = p

    def _coerce(self, other):
        """Return the integer representative of ``other``, if compatible."""
        if isinstance(other, Residue):
            if other.p != self.p:
                raise TypeError('Cannot combine residues modulo {0} and {1}.'
                                ''.format(self.p, other.p))
            return other.value
        elif isinstance(other, numbers.Integral):
            return int(other) % self.p
        elif isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError('{0} is not defined modulo {1}.'
                                        ''.format(other, self.p))
            return (other.numerator
                    * pow(other.denominator, -1, self.p)) % self.p
        else:
            return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError('Division by zero modulo {0}.'
                                    ''.format(self.p))
        return Residue(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError('Division by zero modulo {0}.'
                                    ''.format(self.p))
        return Residue(v * pow(self.value, -1, self.p), self.p)

    def __pow__(self, k):
        if k < 0:
            if self.value == 0:
                raise ZeroDivisionError('Division by zero modulo {0}.'
                                        ''.format(self.p))
            return Residue(pow(pow(self.value, -1, self.p), -k, self.p),
                           self.p)
        return Residue(pow(self.value, k, self.p), self.p)

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        try:
            v = self._coerce(other)
        except (TypeError, ZeroDivisionError):
            return False
        if v is NotImplemented:
            return NotImplemented
        return self.value == v

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return 'Residue({0}, {1})'.format(self.value, self.p)

    def __str__(self):
        return str(self.value)


class Rationals(object):
    """The field of rational numbers, with ``Fraction`` elements."""

    characteristic = 0

    def __call__(self, value):
        """Convert ``value`` to an element of the field."""
        if isinstance(value, Fraction):
            return value
        elif isinstance(value, Residue):
            raise TypeError('Residue {0} is not a rational number.'
                            ''.format(value))
        elif isinstance(value, numbers.Rational):
            return Fraction(value)
        elif isinstance(value, str):
            return pyrational(value)
        else:
            raise TypeError('Cannot convert {0!r} to a rational number.'
                            ''.format(value))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def tag(self):
        """Return the field tag used in documents."""
        return 'Q'

    def parse(self, v_str):
        """Convert a coefficient string to a field element."""
        return pyrational(v_str)

    def format(self, value):
        """Convert a field element to its coefficient string."""
        return fmtrational(value)

    def random_element(self, rng, bound=3):
        """Return a small random rational using the generator ``rng``."""
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash('Q')

    def __repr__(self):
        return 'Rationals()'

    def __str__(self):
        return self.tag


class PrimeField(object):
    """The field of residues modulo a prime ``p``."""

    def __init__(self, p):
        """Create the prime field of ``p`` elements."""
        if not isinstance(p, numbers.Integral) or isinstance(p, bool):
            raise TypeError('Field characteristic must be an integer.')
        if not is_prime(p):
            raise ValueError('Field characteristic {0} is not prime.'
                             ''.format(p))
        self.p = int(p)

    @property
    def characteristic(self):
        return self.p

    def __call__(self, value):
        """Convert ``value`` to an element of the field."""
        if isinstance(value, Residue):
            if value.p != self.p:
                raise TypeError('Residue modulo {0} is not an element of '
                                'F_{1}.'.format(value.p, self.p))
            return value
        elif isinstance(value, numbers.Integral):
            return Residue(value, self.p)
        elif isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ValueError('{0} is not defined modulo {1}.'
                                 ''.format(value, self.p))
            return Residue(value.numerator
                           * pow(value.denominator, -1, self.p), self.p)
        elif isinstance(value, str):
            return Residue(pyresidue(value, self.p), self.p)
        else:
            raise TypeError('Cannot convert {0!r} to a residue modulo {1}.'
                            ''.format(value, self.p))

    @property
    def zero(self):
        return Residue(0, self.p)

    @property
    def one(self):
        return Residue(1, self.p)

    @property
    def tag(self):
        """Return the field tag used in documents."""
        return 'Fp:{0}'.format(self.p)

    def parse(self, v_str):
        """Convert a coefficient string to a field element."""
        return Residue(pyresidue(v_str, self.p), self.p)

    def format(self, value):
        """Convert a field element to its coefficient string."""
        return fmtresidue(value)

    def random_element(self, rng, bound=None):
        """Return a uniformly random residue using the generator ``rng``."""
        return Residue(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('Fp', self.p))

    def __repr__(self):
        return 'PrimeField({0})'.format(self.p)

    def __str__(self):
        return self.tag


prime_tag_re = re.compile(r'^\s*(?:Fp:|F_?|GF\()\s*(\d+)\s*\)?\s*$')


def field_from_tag(tag):
    """Return the field named by ``tag``.

    >>> field_from_tag('Q')
    Rationals()
    >>> field_from_tag('Fp:5')
    PrimeField(5)

    Field objects are returned unchanged.
    """
    if isinstance(tag, (Rationals, PrimeField)):
        return tag

    if not isinstance(tag, str):
        raise TypeError('Field tag must be a string.')

    if tag.strip() in ('Q', 'QQ'):
        return Rationals()

    match = prime_tag_re.match(tag)
    if not match:
        raise ParseError('{0} is not a valid field tag; use Q or Fp:<p>.'
                         ''.format(tag))

    try:
        return PrimeField(int(match.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc))
