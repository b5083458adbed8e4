"""Exception types raised by ffpgn.

Every exception derives from a built-in type so that callers may catch the
broad category (``ValueError`` or ``AssertionError``) without importing this
module.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""


class PrecisionError(ValueError):
    """A norm or coefficient could not be certified at the working precision."""


class ParseError(ValueError):
    """An expression, field tag or document could not be read."""


class PreconditionError(ValueError):
    """An operation was called with inputs outside its domain.

    The ``name`` attribute is a short machine-readable label of the violated
    condition, such as ``'omega-not-distinct'``.
    """

    def __init__(self, name, message):
        super(PreconditionError, self).__init__(message)
        self.name = name


class BasisStepError(PreconditionError):
    """A condition of the basis exchange step failed.

    ``state`` holds the serialized basis at the time of failure.
    """

    def __init__(self, name, message, state=None):
        super(BasisStepError, self).__init__(name, message)
        self.state = state


class VerificationError(AssertionError):
    """A computed result failed one of its certified identities."""
