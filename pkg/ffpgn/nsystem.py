"""Integer n-systems: profiles, switch data, validation and rendering.

A profile stores the sorted values ``P(0), ..., P(Q)`` of a map on the
integer grid.  Between consecutive integers every n-system is affine with
exactly one rising component, so these values determine it.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import OrderedDict, namedtuple

# Placeholder for the rising index of the final row of a CSV export
NO_RISE = '—'


class Profile(object):
    """Integer-grid values of a map [0, Q] -> Z^n with sorted entries."""

    def __init__(self, values, n=None):
        """Create a profile from the rows ``P(0), ..., P(Q)``."""
        self.values = tuple(tuple(int(x) for x in row) for row in values)
        if not self.values:
            raise ValueError('A profile needs at least the row P(0).')

        if n is None:
            n = len(self.values[0])
        self.n = n

    @property
    def Q(self):
        """Horizon of the profile.

        :type: ``int``
        """
        return len(self.values) - 1

    def __getitem__(self, q):
        return self.values[q]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return 'Profile(n={0}, Q={1})'.format(self.n, self.Q)

    def truncate(self, Q):
        """Return the profile restricted to [0, Q]."""
        if Q > self.Q:
            raise ValueError('Profile of horizon {0} cannot be read up to '
                             '{1}.'.format(self.Q, Q))
        return Profile(self.values[:Q + 1], self.n)

    def todict(self):
        """Return the JSON form of the profile."""
        return OrderedDict([
            ('n', self.n),
            ('Q', self.Q),
            ('values', [list(row) for row in self.values]),
        ])

    @classmethod
    def fromdict(cls, data):
        """Create a profile from its JSON form."""
        try:
            values = data['values']
        except KeyError:
            raise ValueError('Profile document has no values.')

        profile = cls(values, data.get('n'))
        if 'Q' in data and data['Q'] != profile.Q:
            raise ValueError('Profile declares Q={0} but lists {1} rows.'
                             ''.format(data['Q'], len(profile)))
        return profile


class Violation(object):
    """First failed condition of a profile or of switch data."""

    def __init__(self, q, condition, message):
        self.q = q
        self.condition = condition
        self.message = message

    def __repr__(self):
        return 'Violation({0!r}, {1!r})'.format(self.q, self.condition)

    def __str__(self):
        return 'q={0}: {1}: {2}'.format(self.q, self.condition, self.message)

    def todict(self):
        return OrderedDict([
            ('q', self.q),
            ('condition', self.condition),
            ('message', self.message),
        ])


def rising_index(a, b):
    """Return the 1-based index j with ``b = a + e_j``, or ``None``."""
    diff = [y - x for x, y in zip(a, b)]
    if len(a) != len(b) or sorted(diff) != [0] * (len(diff) - 1) + [1]:
        return None
    return diff.index(1) + 1


def validate_profile(profile):
    """Check the n-system conditions on the integer grid.

    Return ``None`` if the profile is valid, or a ``Violation`` naming the
    first failing q and condition.  The conditions are the row shape, the
    start ``P(0) = 0``, nonnegative sorted rows, ``sum(P(q)) = q`` (S1),
    unit increments (S2) and the crossing rule (S3).
    """
    n = profile.n
    values = profile.values
    r_prev = None

    for q, row in enumerate(values):
        if len(row) != n:
            return Violation(q, 'shape', 'Row has {0} entries instead of {1}.'
                             ''.format(len(row), n))

        if q == 0 and any(row):
            return Violation(q, 'start', 'P(0) is not the zero vector.')

        if any(x < 0 for x in row):
            return Violation(q, 'nonnegative', 'Row has a negative entry.')

        if any(row[j] > row[j + 1] for j in range(n - 1)):
            return Violation(q, 'sorted', 'Row {0} is not sorted.'
                             ''.format(list(row)))

        if sum(row) != q:
            return Violation(q, 'S1', 'Row sums to {0}, not {1}.'
                             ''.format(sum(row), q))

        if q == 0:
            continue

        r = rising_index(values[q - 1], row)
        if r is None:
            return Violation(q, 'S2', 'P({0}) - P({1}) is not a basis vector.'
                             ''.format(q, q - 1))

        if r_prev is not None and r > r_prev:
            block = values[q - 1][r_prev - 1:r]
            if len(set(block)) != 1:
                return Violation(q - 1, 'S3', 'Rise moves from index {0} to '
                                 '{1} across unequal values {2}.'
                                 ''.format(r_prev, r, list(block)))
        r_prev = r

    return None


def check_monotone(profile):
    """Check that every component is non-decreasing with slope at most 1.

    This is ``L_j(q1) <= L_j(q2) <= q2 - q1 + L_j(q1)``, which reduces to
    increments in {0, 1} between consecutive integers.
    """
    for q in range(1, len(profile.values)):
        for j, (a, b) in enumerate(zip(profile[q - 1], profile[q])):
            if b - a not in (0, 1):
                return Violation(q, 'monotone', 'Component {0} moves by {1}.'
                                 ''.format(j + 1, b - a))
    return None


def extremal(n, Q):
    """Return the extremal n-system ``(floor(q/n), ..., ceil(q/n))``."""
    if n < 2:
        raise ValueError('Extremal systems need n >= 2.')

    values = []
    for q in range(Q + 1):
        m, r = divmod(q, n)
        values.append((m,) * (n - r) + (m + 1,) * r)
    return Profile(values, n)


SwitchRecord = namedtuple('SwitchRecord', ['q', 'k', 'l'])


class SwitchData(object):
    """Switch times with their rising and landing indices.

    ``records[i] = (q_i, k_i, l_i)`` with ``records[0] = (0, n, n)``.  A
    ``horizon`` of ``None`` means that the last rising segment continues
    forever.
    """

    def __init__(self, n, records, horizon=None):
        self.n = n
        self.records = tuple(SwitchRecord(*(int(v) for v in rec))
                             for rec in records)
        self.horizon = horizon

    def __len__(self):
        return len(self.records)

    def __eq__(self, other):
        if not isinstance(other, SwitchData):
            return NotImplemented
        return (self.n == other.n and self.records == other.records
                and self.horizon == other.horizon)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'SwitchData(n={0}, s={1}, horizon={2})'.format(
            self.n, len(self.records), self.horizon)

    def todict(self):
        """Return the JSON form of the switch data."""
        return OrderedDict([
            ('n', self.n),
            ('horizon', self.horizon),
            ('switches', [OrderedDict([('q', r.q), ('k', r.k), ('l', r.l)])
                          for r in self.records]),
        ])

    @classmethod
    def fromdict(cls, data):
        """Create switch data from its JSON form."""
        try:
            n = int(data['n'])
            switches = data['switches']
        except KeyError as exc:
            raise ValueError('Switch document is missing the {0} field.'
                             ''.format(exc))

        records = []
        for rec in switches:
            if isinstance(rec, dict):
                records.append((rec['q'], rec['k'], rec.get('l',
                                                            rec.get('ell'))))
            else:
                records.append(tuple(rec))
        return cls(n, records, data.get('horizon'))


def _segment_value(base, record, q):
    """Evaluate the segment started by ``record`` at ``q``."""
    others = list(base)
    rising = others.pop(record.k - 1)
    return tuple(sorted(others + [q - record.q + rising]))


def switch_points(switches):
    """Return the values ``P(q_i)`` at every switch time."""
    points = [(0,) * switches.n]
    for prev, rec in zip(switches.records, switches.records[1:]):
        points.append(_segment_value(points[-1], prev, rec.q))
    return points


def validate_switches(switches):
    """Check the switch data conditions; return ``None`` or a Violation."""
    n = switches.n
    recs = switches.records
    if not recs or tuple(recs[0]) != (0, n, n):
        return Violation(0, 'start', 'The first record must be (0, {0}, {0}).'
                         ''.format(n))

    base = (0,) * n
    for prev, rec in zip(recs, recs[1:]):
        if rec.q <= prev.q:
            return Violation(rec.q, 'increasing',
                             'Switch times must increase strictly.')

        if not 1 <= rec.k < rec.l <= n:
            return Violation(rec.q, 'indices', 'Indices k={0}, l={1} do not '
                             'satisfy 1 <= k < l <= {2}.'
                             ''.format(rec.k, rec.l, n))

        if rec.l < prev.k:
            return Violation(rec.q, 'landing-index', 'Landing index {0} is '
                             'below the previous rising index {1}.'
                             ''.format(rec.l, prev.k))

        point = _segment_value(base, prev, rec.q)
        landing = rec.q - prev.q + base[prev.k - 1]
        if point[rec.l - 1] != landing:
            return Violation(rec.q, 'landing-value', 'P_{0}({1}) = {2} but '
                             'the rising segment reaches {3}.'
                             ''.format(rec.l, rec.q, point[rec.l - 1],
                                       landing))

        if not point[rec.k - 1] < point[rec.l - 1]:
            return Violation(rec.q, 'rising', 'P_{0}({2}) is not below '
                             'P_{1}({2}).'.format(rec.k, rec.l, rec.q))
        base = point

    if switches.horizon is not None and switches.horizon < recs[-1].q:
        return Violation(recs[-1].q, 'horizon', 'Switch time lies beyond '
                         'the horizon {0}.'.format(switches.horizon))

    return None


def eval_switches(switches, Q):
    """Return the profile on [0, Q] described by the switch data."""
    violation = validate_switches(switches)
    if violation:
        raise ValueError('Invalid switch data: {0}'.format(violation))

    if switches.horizon is not None and Q > switches.horizon:
        raise ValueError('Switch data is only known up to {0}, not {1}.'
                         ''.format(switches.horizon, Q))

    recs = switches.records
    points = switch_points(switches)
    values = []
    i = 0
    for q in range(Q + 1):
        while i + 1 < len(recs) and recs[i + 1].q <= q:
            i += 1
        values.append(_segment_value(points[i], recs[i], q))

    return Profile(values, switches.n)


def to_switches(profile):
    """Return the canonical switch data of a valid profile.

    A switch is recorded at q when the next rise starts from a value other
    than the one reached by the current rising segment.  The landing index
    is the largest index holding that value.
    """
    violation = validate_profile(profile)
    if violation:
        raise ValueError('Invalid profile: {0}'.format(violation))

    n = profile.n
    values = profile.values
    records = [SwitchRecord(0, n, n)]
    start_q, start_val = 0, 0

    for q in range(profile.Q):
        r = rising_index(values[q], values[q + 1])
        reached = q - start_q + start_val
        row = values[q]
        if row[r - 1] != reached:
            ell = max(j for j in range(1, n + 1) if row[j - 1] == reached)
            records.append(SwitchRecord(q, r, ell))
            start_q, start_val = q, row[r - 1]

    return SwitchData(n, records, horizon=profile.Q)


def cf_profile(degrees, Q):
    """Return the 2-system of continued fraction degrees ``0 < d_1 < ...``.

    On ``[d_{i-1} + d_i, d_i + d_{i+1}]`` the profile is the sorted pair
    ``(d_i, q - d_i)``.  After the last listed degree the final segment
    continues without end.
    """
    ds = [0] + [int(d) for d in degrees]
    if any(a >= b for a, b in zip(ds, ds[1:])):
        raise ValueError('Degrees must increase strictly from 0.')

    values = []
    i = 0
    for q in range(Q + 1):
        while i + 1 < len(ds) and q > ds[i] + ds[i + 1]:
            i += 1
        values.append(tuple(sorted((ds[i], q - ds[i]))))

    return Profile(values, 2)


def random_profile(n, Q, rng):
    """Return a random valid profile on [0, Q].

    Each step raises a random admissible index: the top of its block of
    equal values, and, when moving to a larger index than the previous
    step, one that satisfies (S3).
    """
    row = [0] * n
    values = [tuple(row)]
    r_prev = None
    for _ in range(Q):
        choices = []
        for r in range(1, n + 1):
            if r < n and row[r - 1] == row[r]:
                continue
            if (r_prev is not None and r > r_prev
                    and len(set(row[r_prev - 1:r])) != 1):
                continue
            choices.append(r)

        r = rng.choice(choices)
        row[r - 1] += 1
        values.append(tuple(row))
        r_prev = r

    return Profile(values, n)


def random_switches(n, count, rng):
    """Return random valid switch data with at most ``count`` switches."""
    profile = random_profile(n, 4 * n * (count + 1), rng)
    canonical = to_switches(profile)
    return SwitchData(n, canonical.records[:count + 1], horizon=None)


def combined_graph_export(profile, fmt='csv', unit=20):
    """Render the combined graph of a profile as CSV or SVG text.

    CSV rows are ``q, P_1(q), ..., P_n(q), r`` with ``r`` the index that
    rises on [q, q + 1].  The SVG draws one polyline per component, one
    path per rising segment of the switch data, and a dot at each switch.
    """
    violation = validate_profile(profile)
    if violation:
        raise ValueError('Invalid profile: {0}'.format(violation))

    if fmt == 'csv':
        lines = []
        for q, row in enumerate(profile.values):
            if q < profile.Q:
                rise = rising_index(row, profile[q + 1])
            else:
                rise = NO_RISE
            lines.append(','.join(str(v) for v in (q,) + row + (rise,)))
        return '\n'.join(lines) + '\n'

    elif fmt == 'svg':
        return _svg(profile, unit)

    raise ValueError('Graph format must be csv or svg, not {0}.'.format(fmt))


def _svg(profile, unit):
    """Draw the combined graph as an SVG document."""
    Q = profile.Q
    top = max(profile[Q]) if profile.values else 0
    margin = unit
    width = Q * unit + 2 * margin
    height = top * unit + 2 * margin

    def xy(q, v):
        return '{0},{1}'.format(margin + q * unit, height - margin - v * unit)

    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="{0}" '
           'height="{1}" viewBox="0 0 {0} {1}">'.format(width, height)]

    for j in range(profile.n):
        points = ' '.join(xy(q, row[j]) for q, row in enumerate(profile))
        out.append('  <polyline class="component" fill="none" '
                   'stroke="#888" points="{0}"/>'.format(points))

    switches = to_switches(profile)
    recs = switches.records
    points = switch_points(switches)
    for i, rec in enumerate(recs):
        if rec.q >= Q:
            continue
        end = recs[i + 1].q if i + 1 < len(recs) else Q
        start = points[i][rec.k - 1]
        out.append('  <path class="rising" fill="none" stroke="#000" '
                   'd="M {0} L {1}"/>'.format(xy(rec.q, start),
                                              xy(end, start + end - rec.q)))

    for i, rec in enumerate(recs[1:], start=1):
        x, y = xy(rec.q, points[i][rec.k - 1]).split(',')
        out.append('  <circle class="switch" cx="{0}" cy="{1}" r="2"/>'
                   ''.format(x, y))

    out.append('</svg>')
    return '\n'.join(out) + '\n'
