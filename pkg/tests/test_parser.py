import os
import sys
import unittest
import warnings
from fractions import Fraction

try:
    import yaml
    has_yaml = True
except ImportError:
    has_yaml = False

# Include parent path in case we are running within the tests directory
sys.path.insert(1, '../')
import ffpgn
import ffpgn.document
import ffpgn.parser
from ffpgn.document import SCHEMA, Document
from ffpgn.errors import ParseError
from ffpgn.fields import PrimeField, Rationals
from ffpgn.minima import UnitPoint
from ffpgn.nsystem import Profile, SwitchData, cf_profile, extremal
from ffpgn.poly import Poly


class Test(unittest.TestCase):

    def setUp(self):
        # Move to test directory if running from setup.py
        if os.path.basename(os.getcwd()) != 'tests':
            os.chdir('tests')

        self.Q = Rationals()
        self.parser = ffpgn.Parser()

        for fname in ('tmp.json', 'tmp.yaml', 'tmp.csv'):
            if os.path.isfile(fname):
                os.remove(fname)

    def poly(self, *coeffs):
        return Poly(self.Q, coeffs)

    # Support functions
    def assert_parse_error(self, expr):
        self.assertRaises(ParseError, self.parser.reads, expr)

    # Expressions
    def test_reads(self):
        self.assertEqual(self.parser.reads('-(2 + T)'), self.poly(-2, -1))
        self.assertEqual(self.parser.reads('T^2 - 1/2'),
                         self.poly(Fraction(-1, 2), 0, 1))
        self.assertEqual(self.parser.reads('(T + 1)^2'), self.poly(1, 2, 1))
        self.assertEqual(self.parser.reads('2*T^3 + T'),
                         self.poly(0, 1, 0, 2))
        self.assertEqual(self.parser.reads('  +T\t'), self.poly(0, 1))
        self.assertEqual(self.parser.reads('0'), Poly(self.Q))

    def test_reads_prime_field(self):
        self.parser.field = 'Fp:5'
        self.assertEqual(self.parser.field, PrimeField(5))
        self.assertEqual(self.parser.reads('7*T + 1'),
                         Poly(PrimeField(5), [1, 2]))
        self.assertEqual(ffpgn.reads('T/2', field='F5'),
                         Poly(PrimeField(5), [0, 3]))

    def test_reads_variable(self):
        self.parser.variable = 'x'
        self.assertEqual(self.parser.reads('x^2 - 1'), self.poly(-1, 0, 1))
        self.assert_parse_error('T')

    def test_reads_errors(self):
        for expr in ('', '2T', 'T^-1', '1/T', '(T', '1.5', 'x', 'T^', '1/0',
                     'T +'):
            self.assert_parse_error(expr)
        self.assertRaises(TypeError, self.parser.reads, 5)

    def test_parser_config_errors(self):
        with self.assertRaises(TypeError):
            self.parser.field = 5
        with self.assertRaises(ParseError):
            self.parser.field = 'R'
        with self.assertRaises(TypeError):
            self.parser.variable = 1
        with self.assertRaises(ValueError):
            self.parser.variable = '1x'

    def test_read_vector(self):
        vec = self.parser.read_vector('-1; T^2 + 1')
        self.assertEqual(vec, (self.poly(-1), self.poly(1, 0, 1)))
        vec = self.parser.read_vector('T,1', ',')
        self.assertEqual(vec, (self.poly(0, 1), self.poly(1)))
        self.assertRaises(ParseError, self.parser.read_vector, '1;;2')

    def test_read_scalars(self):
        self.assertEqual(self.parser.read_scalars('1, -1/2'),
                         [1, Fraction(-1, 2)])
        self.parser.field = 'Fp:5'
        self.assertEqual(self.parser.read_scalars('3,1/2'), [3, 3])
        self.assertRaises(ParseError, self.parser.read_scalars, '1/5')

    # Documents
    def test_read_profile(self):
        self.assertEqual(ffpgn.read('extremal2.json'), extremal(2, 6))
        self.assertEqual(ffpgn.read('cf_profile.json'), cf_profile([1, 3], 6))

        with open('extremal2.json') as doc_file:
            self.assertEqual(self.parser.read(doc_file), extremal(2, 6))

    def test_read_switches(self):
        switches = ffpgn.read('extremal2_switches.json')
        self.assertIsInstance(switches, SwitchData)
        self.assertEqual(switches.n, 2)
        self.assertEqual(len(switches), 5)
        self.assertIsNone(switches.horizon)

    def test_read_point(self):
        u = ffpgn.read('e3.json')
        self.assertIsInstance(u, UnitPoint)
        self.assertEqual(u.field, self.Q)

    def test_read_no_schema(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            profile = ffpgn.read('noschema.json')
            self.assertEqual(len(w), 1)
            self.assertIn('no schema', str(w[0].message))
        self.assertEqual(profile, Profile([(0, 0), (0, 1), (1, 1)]))

    def test_decode(self):
        doc = self.parser.decode({'schema': SCHEMA, 'kind': 'adelic',
                                  'margin': 0})
        self.assertIsInstance(doc, Document)
        self.assertEqual(doc.kind, 'adelic')
        self.assertEqual(doc['margin'], 0)

        doc = self.parser.decode({'schema': SCHEMA, 'margin': 2})
        self.assertEqual(doc.kind, 'report')

    def test_decode_errors(self):
        self.assertRaises(ParseError, self.parser.decode, [1, 2])
        self.assertRaises(ParseError, self.parser.decode,
                          {'schema': 'ffpgn/2', 'values': [[0, 0]]})
        self.assertRaises(ParseError, self.parser.decode,
                          {'schema': SCHEMA, 'kind': 'profile', 'Q': 3,
                           'values': [[0, 0]]})
        self.assertRaises(ParseError, self.parser.decode,
                          {'schema': SCHEMA, 'kind': 'switches', 'n': 2})

    def test_read_invalid_json(self):
        with open('tmp.json', 'w') as tmp_file:
            tmp_file.write('{"schema": ')
        try:
            self.assertRaises(ParseError, ffpgn.read, 'tmp.json')
        finally:
            os.remove('tmp.json')

    def test_read_missing_yaml(self):
        orig_has_yaml = ffpgn.parser.has_yaml
        ffpgn.parser.has_yaml = False
        try:
            self.assertRaises(ParseError, ffpgn.read, 'missing.yaml')
        finally:
            ffpgn.parser.has_yaml = orig_has_yaml

    # Output
    def test_document(self):
        doc = Document('profile', extremal(2, 2).todict())
        self.assertEqual(list(doc.keys())[:3], ['schema', 'kind', 'n'])
        text = doc.dumps()
        self.assertTrue(text.startswith('{\n    "schema": "ffpgn/1",\n'
                                        '    "kind": "profile",\n'))
        self.assertEqual(doc.profile(), extremal(2, 2))
        self.assertTrue(doc.dumps('csv').startswith('0,0,0,2'))

        self.assertRaises(ValueError, Document, 'bogus')
        self.assertRaises(ValueError, Document('report').profile)

    def test_document_config(self):
        doc = Document('report', margin=0)
        doc.indent = 2
        self.assertTrue(doc.dumps().startswith('{\n  "schema"'))
        doc.sort_keys = True
        self.assertTrue(doc.dumps().startswith('{\n  "kind"'))

        with self.assertRaises(TypeError):
            doc.indent = '4'
        with self.assertRaises(ValueError):
            doc.indent = -1
        with self.assertRaises(TypeError):
            doc.sort_keys = 1
        with self.assertRaises(ValueError):
            doc.format = 'png'
        with self.assertRaises(TypeError):
            doc.format = 1

    def test_nested_profile(self):
        doc = Document('report', profile=extremal(3, 3).todict())
        self.assertEqual(doc.profile(), extremal(3, 3))

    def test_write_read(self):
        profile = extremal(3, 7)
        ffpgn.write(profile, 'tmp.json')
        try:
            self.assertEqual(ffpgn.read('tmp.json'), profile)
            self.assertRaises(IOError, ffpgn.write, profile, 'tmp.json')
            ffpgn.write(extremal(2, 3), 'tmp.json', force=True)
            self.assertEqual(ffpgn.read('tmp.json'), extremal(2, 3))
        finally:
            os.remove('tmp.json')

    def test_write_point(self):
        u = ffpgn.read('e3.json')
        ffpgn.write(u, 'tmp.json')
        try:
            self.assertEqual(ffpgn.read('tmp.json'), u)
        finally:
            os.remove('tmp.json')

    def test_write_csv(self):
        ffpgn.write(extremal(2, 3), 'tmp.csv')
        try:
            with open('tmp.csv') as csv_file:
                lines = csv_file.read().splitlines()
            self.assertEqual(lines[0], '0,0,0,2')
        finally:
            os.remove('tmp.csv')

    def test_write_file(self):
        with open('tmp.json', 'w') as tmp_file:
            ffpgn.write(extremal(2, 2), tmp_file, fmt='svg')
            self.assertFalse(tmp_file.closed)
        try:
            with open('tmp.json') as svg_file:
                self.assertTrue(svg_file.read().startswith('<svg'))
        finally:
            os.remove('tmp.json')

    def test_dumps_missing_yaml(self):
        orig_has_yaml = ffpgn.document.has_yaml
        ffpgn.document.has_yaml = False
        try:
            self.assertRaises(ValueError, Document('report').dumps, 'yaml')
        finally:
            ffpgn.document.has_yaml = orig_has_yaml

    if has_yaml:
        def test_yaml_write_read(self):
            profile = extremal(2, 4)
            ffpgn.write(profile, 'tmp.yaml')
            try:
                with open('tmp.yaml') as yaml_file:
                    data = yaml.safe_load(yaml_file)
                self.assertEqual(data['schema'], SCHEMA)
                self.assertEqual(ffpgn.read('tmp.yaml'), profile)
            finally:
                os.remove('tmp.yaml')

        def test_yaml_key_order(self):
            text = Document('report', margin=0).dumps('yaml')
            self.assertEqual(text.splitlines()[0], 'schema: ffpgn/1')


if __name__ == '__main__':
    unittest.main()
