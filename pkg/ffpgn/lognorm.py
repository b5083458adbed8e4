"""Log-scale norms.

Every absolute value handled by ffpgn lies in e^Z, and is stored as its
integer exponent.  The zero vector has norm ``NEG_INF``.  A value whose
known coefficients all vanish has an ``Indeterminate`` norm, which records
only an upper bound.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from ffpgn.errors import PrecisionError

NEG_INF = float('-inf')
POS_INF = float('inf')


class Indeterminate(object):
    """Norm of a truncated value whose known coefficients all vanish.

    The true log-norm is at most ``bound``.  Indeterminate norms are not
    ordered against integers; use ``certify`` before comparing.
    """

    __slots__ = ('bound',)

    def __init__(self, bound):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, Indeterminate) and other.bound == self.bound

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('Indeterminate', self.bound))

    def __repr__(self):
        return 'Indeterminate({0})'.format(self.bound)


def certify(norm, what='norm'):
    """Return ``norm``, or raise ``PrecisionError`` if it is indeterminate."""
    if isinstance(norm, Indeterminate):
        raise PrecisionError('The {0} is at most e^{1} and cannot be '
                             'certified; increase the precision.'
                             ''.format(what, norm.bound))
    return norm


def max_norm(norms):
    """Return the largest of ``norms``.

    The result is indeterminate only if an indeterminate entry could exceed
    every determinate entry.
    """
    known = [v for v in norms if not isinstance(v, Indeterminate)]
    bounds = [v.bound for v in norms if isinstance(v, Indeterminate)]

    top = max(known) if known else NEG_INF
    if bounds and top < max(bounds):
        return Indeterminate(max(bounds))
    return top


def fmtnorm(norm):
    """Format a log-norm for JSON output."""
    if isinstance(norm, Indeterminate):
        return {'indeterminate': norm.bound}
    elif norm == NEG_INF:
        return '-inf'
    elif norm == POS_INF:
        return 'inf'
    return int(norm)
