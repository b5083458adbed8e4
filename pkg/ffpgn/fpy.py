"""Conversion of coefficient strings to field scalars and back.

The functions in this module convert the string representation of field
scalars, as they appear in JSON documents and on the command line, into
Python values.  Rational numbers are written ``num/den`` (or as a bare
integer) and residues modulo a prime are written as decimal integers.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import re
from fractions import Fraction

from ffpgn.errors import ParseError

rational_re = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$')


def pyrational(v_str):
    """Convert string repr of a rational coefficient to ``Fraction``."""
    assert isinstance(v_str, str)

    match = rational_re.match(v_str)
    if not match:
        raise ParseError('{0} is not a valid rational coefficient.'
                         ''.format(v_str))

    num, den = match.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise ParseError('{0} has a zero denominator.'.format(v_str))

    return Fraction(int(num), den)


def pyresidue(v_str, p):
    """Convert string repr of a residue to its representative in [0, p)."""
    assert isinstance(v_str, str)
    assert isinstance(p, int)

    value = pyrational(v_str)
    if value.denominator % p == 0:
        raise ParseError('{0} is not defined modulo {1}.'.format(v_str, p))

    return value.numerator * pow(value.denominator, -1, p) % p


def pyint(v_str):
    """Convert string repr of an integer, rejecting fractions."""
    try:
        return int(v_str)
    except (TypeError, ValueError):
        raise ParseError('{0} is not a valid integer.'.format(v_str))


def pyintlist(v_str):
    """Convert a comma-separated list of integers such as ``2,2,1``."""
    assert isinstance(v_str, str)

    items = [s for s in v_str.split(',') if s.strip()]
    if not items:
        raise ParseError('{0} contains no integers.'.format(v_str))

    return [pyint(s) for s in items]


def fmtrational(value):
    """Format a rational scalar as ``num/den``, or ``num`` if integral."""
    return str(Fraction(value))


def fmtresidue(value):
    """Format a residue as its decimal representative."""
    return str(int(value))
