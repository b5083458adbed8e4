"""Exterior algebra on F[T]^n and K_inf^n.

Plücker coordinates of ``x_1 ^ ... ^ x_m`` are listed in lexicographic
order of the index sets ``i_1 < ... < i_m``.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from itertools import combinations

from ffpgn.errors import PreconditionError
from ffpgn.linalg import det, entry_norm, is_zero, zero_like
from ffpgn.lognorm import (Indeterminate, NEG_INF, POS_INF, certify,
                           max_norm)

# Defect reported for linearly dependent families
DEPENDENT = POS_INF


def log_norm(vec):
    """Return the maximum log-norm of the entries of ``vec``."""
    return max_norm([entry_norm(x) for x in vec])


def index_sets(n, m):
    """Return the lexicographic list of m-subsets of ``range(n)``."""
    return list(combinations(range(n), m))


def wedge(vectors, n):
    """Return the Plücker coordinates of the wedge product of ``vectors``."""
    m = len(vectors)
    if m < 1 or m > n:
        raise ValueError('Cannot wedge {0} vectors in dimension {1}.'
                         ''.format(m, n))
    for v in vectors:
        if len(v) != n:
            raise ValueError('Vector of length {0} does not lie in dimension '
                             '{1}.'.format(len(v), n))

    coords = []
    for cols in combinations(range(n), m):
        coords.append(det([[v[c] for c in cols] for v in vectors]))
    return tuple(coords)


def hadamard_defect(vectors):
    """Return ``sum(log|x_i|) - log|x_1 ^ ... ^ x_m|``.

    The defect is nonnegative, and zero exactly for orthogonal families.
    ``DEPENDENT`` is returned when the wedge product vanishes.
    """
    norms = []
    for v in vectors:
        norm = certify(log_norm(v), 'vector norm')
        if norm == NEG_INF:
            raise PreconditionError('zero-vector',
                                    'Hadamard defect of a family with a zero '
                                    'vector.')
        norms.append(norm)

    top = log_norm(wedge(vectors, len(vectors[0])))
    if top == NEG_INF:
        return DEPENDENT
    return sum(norms) - certify(top, 'wedge norm')


def projective_distance(x, y):
    """Return the log of the projective distance between ``x`` and ``y``.

    The result is at most 0, and ``NEG_INF`` for proportional vectors.  If
    the wedge product cannot be certified, an ``Indeterminate`` bound is
    returned.
    """
    nx = certify(log_norm(x), 'norm of x')
    ny = certify(log_norm(y), 'norm of y')
    if nx == NEG_INF or ny == NEG_INF:
        raise PreconditionError('zero-vector',
                                'Projective distance to the zero vector.')

    top = log_norm(wedge([x, y], len(x)))
    if top == NEG_INF:
        return NEG_INF
    elif isinstance(top, Indeterminate):
        return Indeterminate(top.bound - nx - ny)
    return top - nx - ny


def contract(u, omega, m):
    """Return the interior product of the grade-m coordinates ``omega``.

    On a decomposable ``v_1 ^ ... ^ v_m`` the result is
    ``sum((-1)**(j+1) * (u . v_j) * v_1 ^ ... (omit v_j) ... ^ v_m)``.
    With this sign rule, contracting ``e_1 ^ e_n`` by ``e_n`` gives ``-e_1``,
    not ``+e_1``.
    """
    n = len(u)
    if m < 1 or m > n:
        raise ValueError('Grade {0} is out of range in dimension {1}.'
                         ''.format(m, n))

    grade_m = index_sets(n, m)
    if len(omega) != len(grade_m):
        raise ValueError('Grade {0} coordinates in dimension {1} have {2} '
                         'entries, not {3}.'
                         ''.format(m, n, len(grade_m), len(omega)))

    index = dict((cols, k) for k, cols in enumerate(grade_m))
    result = []
    for J in index_sets(n, m - 1):
        total = None
        for i in range(n):
            if i in J:
                continue
            I = tuple(sorted(J + (i,)))
            w = omega[index[I]]
            if is_zero(w) or is_zero(u[i]):
                continue

            term = u[i] * w
            if I.index(i) % 2:
                term = -term
            total = term if total is None else total + term

        result.append(zero_like(u[0]) if total is None else total)

    return tuple(result)
