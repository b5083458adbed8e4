"""Exact linear algebra over F and over F[T].

Vectors are tuples of ``Poly``, ``LaurentSeries`` or field scalars, and
matrices are sequences of such rows.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numbers

from ffpgn.errors import PreconditionError
from ffpgn.fields import Residue
from ffpgn.laurent import LaurentSeries
from ffpgn.lognorm import NEG_INF
from ffpgn.poly import Poly


def is_zero(entry):
    """Return ``True`` if ``entry`` is known to be exactly zero."""
    if isinstance(entry, LaurentSeries):
        return entry.exact and not entry.coeffs
    elif isinstance(entry, Poly):
        return not entry
    return entry == 0


def zero_like(entry):
    """Return an exact zero of the same kind as ``entry``."""
    if isinstance(entry, LaurentSeries):
        return LaurentSeries(entry.field, [], 0, 0, exact=True)
    elif isinstance(entry, Poly):
        return Poly(entry.field)
    return entry * 0


def entry_norm(entry):
    """Return the log-norm at infinity of a single vector entry."""
    if isinstance(entry, LaurentSeries):
        return entry.log_norm()
    elif isinstance(entry, Poly):
        return entry.degree
    elif isinstance(entry, (numbers.Rational, Residue)):
        return NEG_INF if entry == 0 else 0
    raise TypeError('Cannot take the norm of {0!r}.'.format(entry))


def dot(x, y):
    """Return the scalar product ``x . y``."""
    if len(x) != len(y):
        raise ValueError('Vectors of length {0} and {1} cannot be '
                         'multiplied.'.format(len(x), len(y)))

    total = None
    for a, b in zip(x, y):
        if is_zero(a) or is_zero(b):
            continue
        term = a * b
        total = term if total is None else total + term

    if total is None:
        series = [v for v in (x[0], y[0]) if isinstance(v, LaurentSeries)]
        return zero_like(series[0] if series else x[0])
    return total


def identity(field, n):
    """Return the rows of the n x n identity matrix over F[T]."""
    return tuple(unit_vector(field, n, j) for j in range(n))


def unit_vector(field, n, j):
    """Return the standard basis vector e_{j+1} of F[T]^n."""
    return tuple(Poly(field, [1]) if i == j else Poly(field)
                 for i in range(n))


def det(rows):
    """Return the determinant of a square matrix by Laplace expansion.

    Entries known to be exactly zero are skipped, so that a determinant of
    polynomials mixed with exact series remains exact.
    """
    rows = [list(row) for row in rows]
    size = len(rows)
    if size == 0 or any(len(row) != size for row in rows):
        raise ValueError('Determinant requires a nonempty square matrix.')

    if size == 1:
        return rows[0][0]

    total = None
    for j, entry in enumerate(rows[0]):
        if is_zero(entry):
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term

    if total is None:
        return zero_like(rows[0][0])
    return total


def minor(rows, i, j):
    """Return the matrix with row ``i`` and column ``j`` removed."""
    return [list(row[:j]) + list(row[j + 1:])
            for r, row in enumerate(rows) if r != i]


def nullspace(rows, field, ncols=None):
    """Return a basis of the solutions of ``M x = 0`` over ``field``.

    The matrix is brought to reduced row echelon form; each free column
    contributes one basis vector with a 1 in that column.  The basis has
    ``ncols - rank`` vectors.
    """
    mat = [[field(c) for c in row] for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0

    pivots = []
    for col in range(ncols):
        r = len(pivots)
        if r == len(mat):
            break

        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue

        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.one / mat[r][col]
        mat[r] = [c * inv for c in mat[r]]
        for i, row in enumerate(mat):
            if i != r and row[col]:
                f = row[col]
                mat[i] = [a - f * b for a, b in zip(row, mat[r])]
        pivots.append(col)

    basis = []
    pivot_set = set(pivots)
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in enumerate(pivots):
            v[pc] = -mat[row][fc]
        basis.append(v)

    return basis


def rank(rows):
    """Return the rank of a polynomial matrix over the fraction field.

    Rows are reduced by fraction-free elimination, ``p * row - c * pivot``,
    against the pivot rows found so far.
    """
    pivots = []
    for row in rows:
        row = list(row)
        for col, prow in pivots:
            lead = row[col]
            if lead:
                row = [prow[col] * a - lead * b for a, b in zip(row, prow)]

        col = next((j for j, c in enumerate(row) if c), None)
        if col is not None:
            pivots.append((col, row))
            if len(pivots) == len(row):
                break

    return len(pivots)


def unimodular_dual(rows):
    """Return the dual basis of a basis of A^n.

    The rows ``x*_i`` of the result satisfy ``x*_i . x_j = delta_ij``.  The
    determinant of ``rows`` must be a nonzero constant.
    """
    rows = [list(row) for row in rows]
    size = len(rows)
    delta = det(rows)
    if not isinstance(delta, Poly) or delta.degree != 0:
        raise PreconditionError('det-not-unit',
                                'Determinant {0} is not a unit of F[T]; the '
                                'rows do not form a basis.'.format(delta))

    field = delta.field
    inv = field.one / delta.lead
    if size == 1:
        return ((Poly(field, [inv]),),)

    dual = []
    for i in range(size):
        dual_row = []
        for j in range(size):
            cofactor = det(minor(rows, i, j)).scale(inv)
            dual_row.append(-cofactor if (i + j) % 2 else cofactor)
        dual.append(tuple(dual_row))

    return tuple(dual)


def vec_todict(vec):
    """Return the JSON form of a vector of polynomials or series."""
    return [entry.todict() for entry in vec]


def mat_todict(rows):
    """Return the JSON form of a polynomial matrix."""
    return [vec_todict(row) for row in rows]


def laurentvec_fromdict(field, data):
    """Create a vector of Laurent series from its JSON form."""
    return tuple(LaurentSeries.fromdict(field, entry) for entry in data)
