"""Versioned output documents.

A ``Document`` is an ordered mapping whose first keys are the ``schema``
header and the document ``kind``.  It is written as JSON, as YAML when
PyYAML is installed, or, for documents holding a profile, rendered as a CSV
table or an SVG drawing of the combined graph.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import json
import os
from collections import OrderedDict

from ffpgn.nsystem import Profile, combined_graph_export
try:
    import yaml
    has_yaml = True

    # Preserve ordering in YAML output
    represent_dict_order = (lambda self, data:
                            self.represent_mapping('tag:yaml.org,2002:map',
                                                   data.items()))
    yaml.add_representer(OrderedDict, represent_dict_order)

except ImportError:
    has_yaml = False

SCHEMA = 'ffpgn/1'

KINDS = ('profile', 'switches', 'laurent_vec', 'certificate', 'construction',
         'pade', 'scan', 'realizers', 'adelic', 'corollary', 'universality',
         'report')

FORMATS = ('json', 'yaml', 'csv', 'svg')

EXTENSIONS = {
    '.json': 'json',
    '.yaml': 'yaml',
    '.yml': 'yaml',
    '.csv': 'csv',
    '.svg': 'svg',
}


class Document(OrderedDict):
    """ffpgn output document.

    >>> doc = Document('profile', profile.todict())
    >>> doc.write('profile.json')
    """

    def __init__(self, kind='report', *args, **kwds):
        """Create a document of the given ``kind``."""
        if kind not in KINDS:
            raise ValueError('Unknown document kind {0}; use one of {1}.'
                             ''.format(kind, ', '.join(KINDS)))

        super(Document, self).__init__()
        self['schema'] = SCHEMA
        self['kind'] = kind
        self.update(*args, **kwds)

        self._indent = 4
        self._sort_keys = False
        self._format = None

    @property
    def kind(self):
        """Document kind.

        :type: ``str``
        """
        return self['kind']

    @property
    def indent(self):
        """Indentation width of JSON output.

        :type: ``int``
        :default: 4
        """
        return self._indent

    @indent.setter
    def indent(self, value):
        """Validate and set the indent width."""
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError('Indentation must be an integer.')
        if value < 0:
            raise ValueError('Indentation spacing must be nonnegative.')
        self._indent = value

    @property
    def sort_keys(self):
        """Sort the keys of JSON and YAML output.

        :type: ``bool``
        :default: ``False``

        The ``schema`` and ``kind`` keys are written first only when the keys
        are not sorted.
        """
        return self._sort_keys

    @sort_keys.setter
    def sort_keys(self, value):
        """Validate and set the key sorting flag."""
        if not isinstance(value, bool):
            raise TypeError('sort_keys attribute must be a logical type.')
        self._sort_keys = value

    @property
    def format(self):
        """Output format, one of json, yaml, csv or svg.

        :type: ``str`` or ``None``
        :default: ``None``

        When unset, ``write`` infers the format from the file extension and
        falls back to JSON.
        """
        return self._format

    @format.setter
    def format(self, value):
        """Validate and set the output format."""
        if value is not None and not isinstance(value, str):
            raise TypeError('format attribute must be a string.')
        if value is not None and value not in FORMATS:
            raise ValueError('Output format must be one of {0}, not {1}.'
                             ''.format(', '.join(FORMATS), value))
        self._format = value

    def todict(self):
        """Return the document as a plain dict tree."""
        return json.loads(json.dumps(self), object_pairs_hook=OrderedDict)

    def dumps(self, fmt=None):
        """Return the document text in the format ``fmt``."""
        fmt = fmt or self.format or 'json'

        if fmt == 'json':
            return json.dumps(self, indent=self.indent,
                              sort_keys=self.sort_keys,
                              separators=(',', ': ')) + '\n'

        elif fmt == 'yaml':
            if not has_yaml:
                raise ValueError('YAML module could not be found; install '
                                 'PyYAML or use the ffpgn[yaml] package.')
            return yaml.dump(self.todict(), default_flow_style=False,
                             sort_keys=self.sort_keys)

        elif fmt in ('csv', 'svg'):
            return combined_graph_export(self.profile(), fmt)

        raise ValueError('Output format must be one of {0}, not {1}.'
                         ''.format(', '.join(FORMATS), fmt))

    def profile(self):
        """Return the profile held by the document."""
        data = self.get('profile', self)
        if 'values' not in data:
            raise ValueError('A {0} document holds no profile to render.'
                             ''.format(self.kind))
        return Profile.fromdict(data)

    def write(self, path, force=False):
        """Write the document to a file path or a file object.

        By default, ``write`` will not overwrite an existing file.

        >>> doc.write('profile.json', force=True)
        """
        is_file = hasattr(path, 'write')
        if not force and not is_file and os.path.isfile(path):
            raise IOError('File {0} already exists.'.format(path))

        fmt = self.format
        if fmt is None and not is_file:
            _, ext = os.path.splitext(path)
            fmt = EXTENSIONS.get(ext)
        text = self.dumps(fmt)

        doc_file = path if is_file else open(path, 'w')
        try:
            doc_file.write(text)
        finally:
            if not is_file:
                doc_file.close()
