"""Polynomial expression tokenizer.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import string

from ffpgn.errors import ParseError


class Tokenizer(object):
    """Tokenizer of polynomial expressions such as ``-(2 + T)`` or
    ``1/2*T^3``."""

    punctuation = '+-*/^(),;'

    def __init__(self):
        self.characters = None
        self.char = None
        self.idx = None

    def parse(self, expr):
        """Split an expression into tokens; whitespace runs are kept."""
        tokens = []

        self.characters = iter(expr)
        self.idx = -1
        self.update_chars()

        while self.char is not None:
            if self.char in string.whitespace:
                token = self._take(lambda c: c in string.whitespace)
            elif self.char.isdigit():
                token = self._take(str.isdigit)
            elif self.char.isalpha() or self.char == '_':
                token = self._take(lambda c: c.isalnum() or c == '_')
            elif self.char in Tokenizer.punctuation:
                token = self.char
                self.update_chars()
            else:
                raise ParseError('Unexpected character {0!r} at position {1} '
                                 'of {2!r}.'.format(self.char, self.idx,
                                                    expr))
            tokens.append(token)

        return tokens

    def _take(self, accept):
        """Consume the run of characters satisfying ``accept``."""
        run = []
        while self.char is not None and accept(self.char):
            run.append(self.char)
            self.update_chars()
        return ''.join(run)

    def update_chars(self):
        """Advance to the next character; ``None`` marks the end."""
        self.char = next(self.characters, None)
        self.idx += 1
