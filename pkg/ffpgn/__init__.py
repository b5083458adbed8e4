"""Parametric geometry of numbers over function fields.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from ffpgn.document import Document
from ffpgn.parser import Parser

__version__ = '0.3.0'


def read(doc_path, field=None):
    """Read an ffpgn document and return the object it describes.

    File object usage:

    >>> with open('extremal2.json') as doc_file:
    >>>     profile = ffpgn.read(doc_file)

    File path usage:

    >>> profile = ffpgn.read('extremal2.json')

    Profiles, switch data and unit points are returned as ``Profile``,
    ``SwitchData`` and ``UnitPoint``; other documents as a ``Document``.
    This function is equivalent to the ``read`` function of the ``Parser``
    object.

    >>> parser = ffpgn.Parser()
    >>> profile = parser.read(doc_file)
    """
    parser = Parser()
    if field is not None:
        parser.field = field
    return parser.read(doc_path)


def reads(expr, field=None):
    """Parse a polynomial expression and return a ``Poly``.

    >>> ffpgn.reads('T^2 - 1/2')
    Poly(Rationals(), [-1/2, 0, 1])
    >>> ffpgn.reads('7*T + 1', field='Fp:5')
    Poly(PrimeField(5), [1, 2])
    """
    parser = Parser()
    if field is not None:
        parser.field = field
    return parser.reads(expr)


def write(obj, doc_path, force=False, fmt=None):
    """Write a profile, switch data, point or document to a path or file.

    Objects with a ``todict`` method are wrapped in a ``Document`` of the
    matching kind.

    >>> ffpgn.write(profile, 'profile.json')
    >>> ffpgn.write(profile, 'profile.svg')

    By default, ``write`` will not overwrite an existing file.  To override
    this, use the ``force`` flag.
    """
    if isinstance(obj, Document):
        doc = obj
    else:
        doc = Document(_kind_of(obj), obj.todict())

    if fmt is not None:
        doc.format = fmt
    doc.write(doc_path, force=force)


def _kind_of(obj):
    from ffpgn.minima import UnitPoint
    from ffpgn.nsystem import Profile, SwitchData

    if isinstance(obj, Profile):
        return 'profile'
    elif isinstance(obj, SwitchData):
        return 'switches'
    elif isinstance(obj, UnitPoint):
        return 'laurent_vec'
    return 'report'
