"""The ffpgn expression and document parser.

The ``Parser`` object converts polynomial expressions into ``Poly`` values
and reads ffpgn documents into the objects they describe.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import json
import os
import warnings

from ffpgn.document import SCHEMA, Document, has_yaml
from ffpgn.errors import ParseError
from ffpgn.fields import Rationals, field_from_tag
from ffpgn.minima import UnitPoint
from ffpgn.nsystem import Profile, SwitchData
from ffpgn.poly import Poly
from ffpgn.tokenizer import Tokenizer

if has_yaml:
    import yaml


class Parser(object):
    """Polynomial expression and document parser."""

    def __init__(self):
        """Create the parser object."""
        # Token management
        self.tokens = None
        self.token = None
        self.prior_token = None

        # Configuration
        self._field = Rationals()
        self._variable = 'T'

    @property
    def field(self):
        """Coefficient field of parsed polynomials.

        :type: ``Rationals``, ``PrimeField`` or field tag ``str``
        :default: ``Rationals()``

        The field may be set by its tag.

        >>> parser = ffpgn.Parser()
        >>> parser.field = 'Fp:5'
        >>> parser.reads('7*T + 1')
        Poly(PrimeField(5), [1, 2])
        """
        return self._field

    @field.setter
    def field(self, value):
        """Validate and set the coefficient field."""
        if not isinstance(value, str) and not hasattr(value, 'tag'):
            raise TypeError('field attribute must be a field or a field tag.')
        self._field = field_from_tag(value)

    @property
    def variable(self):
        """Name of the indeterminate.

        :type: ``str``
        :default: ``'T'``
        """
        return self._variable

    @variable.setter
    def variable(self, value):
        """Validate and set the indeterminate name."""
        if not isinstance(value, str):
            raise TypeError('variable attribute must be a string.')
        if not value.isidentifier():
            raise ValueError('{0!r} is not a valid variable name.'
                             ''.format(value))
        self._variable = value

    def reads(self, expr):
        """Parse a polynomial expression and return a ``Poly``.

        >>> parser = ffpgn.Parser()
        >>> parser.reads('-(2 + T)')
        Poly(Rationals(), [-2, -1])
        """
        if not isinstance(expr, str):
            raise TypeError('Expression must be a string.')

        tokenizer = Tokenizer()
        self.tokens = iter([t for t in tokenizer.parse(expr)
                            if not t.isspace()])
        self.prior_token = None
        self.token = None
        self._update_tokens()

        if self.token is None:
            raise ParseError('Empty expression.')

        value = self._parse_sum()
        if self.token is not None:
            raise ParseError('Unexpected token {0!r} in {1!r}.'
                             ''.format(self.token, expr))
        return value

    def read_vector(self, text, sep=';'):
        """Parse a ``sep``-separated list of expressions.

        >>> parser = ffpgn.Parser()
        >>> parser.read_vector('-1; T^2 + 1')
        (Poly(Rationals(), [-1]), Poly(Rationals(), [1, 0, 1]))
        """
        parts = [p for p in text.split(sep)]
        if not parts or any(not p.strip() for p in parts):
            raise ParseError('Empty entry in the vector {0!r}.'.format(text))
        return tuple(self.reads(p) for p in parts)

    def read_scalars(self, text, sep=','):
        """Parse a ``sep``-separated list of field scalars."""
        try:
            return [self.field.parse(p.strip()) for p in text.split(sep)]
        except ValueError as exc:
            raise ParseError(str(exc))

    def read(self, path):
        """Read an ffpgn document and return the object it describes.

        Profiles, switch data and unit points are returned as ``Profile``,
        ``SwitchData`` and ``UnitPoint``; other kinds as a ``Document``.

        >>> parser = ffpgn.Parser()
        >>> profile = parser.read('extremal2.json')
        """
        is_file = hasattr(path, 'read')
        fmt = 'json'
        if not is_file:
            _, ext = os.path.splitext(path)
            if ext in ('.yaml', '.yml'):
                fmt = 'yaml'

        if fmt == 'yaml' and not has_yaml:
            raise ParseError('YAML module could not be found; install '
                             'PyYAML or use the ffpgn[yaml] package.')

        doc_file = path if is_file else open(path, 'r')
        try:
            if fmt == 'yaml':
                data = yaml.safe_load(doc_file)
            else:
                data = json.load(doc_file)
        except ValueError as exc:
            raise ParseError('{0} is not a valid document: {1}'
                             ''.format(getattr(doc_file, 'name', path), exc))
        finally:
            if not is_file:
                doc_file.close()

        return self.decode(data)

    def decode(self, data):
        """Convert decoded JSON data into an ffpgn object."""
        if not isinstance(data, dict):
            raise ParseError('Document must be a JSON object.')

        if 'schema' not in data:
            warnings.warn('ffpgn: warning: document has no schema header; '
                          'assuming {0}.'.format(SCHEMA))
        elif data['schema'] != SCHEMA:
            raise ParseError('Unsupported document schema {0}.'
                             ''.format(data['schema']))

        kind = data.get('kind', _guess_kind(data))
        try:
            if kind == 'profile':
                return Profile.fromdict(data)
            elif kind == 'switches':
                return SwitchData.fromdict(data)
            elif kind == 'laurent_vec':
                return UnitPoint.fromdict(data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError('Malformed {0} document: {1}'.format(kind, exc))

        doc = Document(kind)
        doc.update((k, v) for k, v in data.items()
                   if k not in ('schema', 'kind'))
        return doc

    def _parse_sum(self):
        value = self._parse_product()
        while self.token in ('+', '-'):
            op = self.token
            self._update_tokens()
            rhs = self._parse_product()
            value = value + rhs if op == '+' else value - rhs
        return value

    def _parse_product(self):
        value = self._parse_unary()
        while self.token in ('*', '/'):
            op = self.token
            self._update_tokens()
            rhs = self._parse_unary()
            if op == '*':
                value = value * rhs
            else:
                if not rhs or rhs.degree != 0:
                    raise ParseError('Division is only defined by nonzero '
                                     'constants.')
                value = value.scale(self.field.one / rhs.lead)
        return value

    def _parse_unary(self):
        if self.token == '-':
            self._update_tokens()
            return -self._parse_unary()
        elif self.token == '+':
            self._update_tokens()
            return self._parse_unary()
        return self._parse_power()

    def _parse_power(self):
        base = self._parse_atom()
        if self.token == '^':
            self._update_tokens()
            if self.token == '-':
                raise ParseError('Negative exponents are not polynomials.')
            if self.token is None or not self.token.isdigit():
                raise ParseError('Exponent must be a nonnegative integer.')
            exponent = int(self.token)
            self._update_tokens()
            return base ** exponent
        return base

    def _parse_atom(self):
        token = self.token
        if token is None:
            raise ParseError('Expression ends unexpectedly.')

        if token == '(':
            self._update_tokens()
            value = self._parse_sum()
            if self.token != ')':
                raise ParseError('Missing closing parenthesis.')
            self._update_tokens()
            return value

        elif token.isdigit():
            self._update_tokens()
            return Poly(self.field, [self.field.parse(token)])

        elif token == self.variable:
            self._update_tokens()
            return Poly.monomial(self.field, 1)

        raise ParseError('Unexpected token {0!r}.'.format(token))

    def _update_tokens(self):
        """Advance to the next token."""
        self.prior_token, self.token = self.token, next(self.tokens, None)


def _guess_kind(data):
    if 'values' in data:
        return 'profile'
    elif 'switches' in data:
        return 'switches'
    elif 'entries' in data:
        return 'laurent_vec'
    return 'report'
