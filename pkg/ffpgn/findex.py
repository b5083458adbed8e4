"""Column-major iterator of Padé index tuples with bounded sum.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""

MODES = ('all', 'sorted', 'diagonal', 'balanced')


class RhoIndex(object):
    """Iterator of index tuples rho in N^n, rho != 0, with sum(rho) <= total.

    The first index varies fastest.  The ``mode`` restricts the tuples to
    sorted ones (``rho_1 <= ... <= rho_n``), diagonal ones
    (``rho_1 = ... = rho_n``) or balanced ones (sorted with
    ``rho_n <= rho_1 + 1``).
    """

    def __init__(self, n, total, mode='all'):
        """Initialise the index iterator."""
        if n < 1:
            raise ValueError('Index tuples need at least one entry.')
        if mode not in MODES:
            raise ValueError('Unknown index mode {0}; use one of {1}.'
                             ''.format(mode, ', '.join(MODES)))

        self.n = n
        self.total = total
        self.mode = mode

        self.current = [0] * n
        self.done = total < 1

    def __iter__(self):
        """Declare object as iterator."""
        return self

    def __next__(self):
        """Iterate to the next admissible index tuple."""
        while not self.done:
            self._advance()
            if not self.done and self.admissible(self.current):
                return tuple(self.current)
        raise StopIteration

    def _advance(self):
        for rank in range(self.n):
            if sum(self.current) < self.total:
                self.current[rank] += 1
                return
            self.current[rank] = 0
        self.done = True

    def admissible(self, rho):
        """Return ``True`` if ``rho`` belongs to the index mode."""
        if self.mode == 'all':
            return True

        ordered = all(a <= b for a, b in zip(rho, rho[1:]))
        if self.mode == 'sorted':
            return ordered
        elif self.mode == 'diagonal':
            return len(set(rho)) == 1
        return ordered and rho[-1] <= rho[0] + 1


def realizer_index(i, n):
    """Return ``rho_i`` with ``rho_ij = ceil((i + j - n) / n)``."""
    return tuple(-((n - i - j) // n) for j in range(1, n + 1))
