import json
import os
import sys
import unittest
import warnings
from io import StringIO

# Include parent path in case we are running within the tests directory
sys.path.insert(1, '../')
import ffpgn
import ffpgn.cli
from ffpgn.construct import cf_point
from ffpgn.nsystem import extremal
from ffpgn.poly import Poly
from ffpgn.fields import Rationals


class Test(unittest.TestCase):

    def setUp(self):
        # Move to test directory if running from setup.py
        if os.path.basename(os.getcwd()) != 'tests':
            os.chdir('tests')

        self.exit_code = None
        for fname in ('tmp.json', 'tmp.svg', 'tmp_cf.json'):
            if os.path.isfile(fname):
                os.remove(fname)

    # Support functions
    def get_cli_output(self, args, get_stderr=False):
        argv_in, stdout_in, stderr_in = sys.argv, sys.stdout, sys.stderr

        sys.argv = args
        sys.stdout = StringIO()
        sys.stderr = StringIO()

        self.exit_code = 0
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('always')
                ffpgn.cli.parse()
        except SystemExit as exc:
            self.exit_code = exc.code or 0

        sys.stdout.seek(0)
        stdout = sys.stdout.read()
        sys.stdout.close()

        sys.stderr.seek(0)
        stderr = sys.stderr.read()
        sys.stderr.close()

        sys.argv, sys.stdout, sys.stderr = argv_in, stdout_in, stderr_in

        if get_stderr:
            return stderr
        else:
            return stdout

    def get_cli_doc(self, args):
        return json.loads(self.get_cli_output(args))

    # General
    def test_cli_help(self):
        out = self.get_cli_output(['ffpgn'])
        self.assertTrue(out.startswith('usage: ffpgn'))
        self.assertEqual(self.exit_code, 0)

    def test_cli_version(self):
        out = self.get_cli_output(['ffpgn', '--version'])
        self.assertEqual(out, 'ffpgn {0}\n'.format(ffpgn.__version__))

    def test_cli_bad_command(self):
        err = self.get_cli_output(['ffpgn', 'bogus'], get_stderr=True)
        self.assertIn('ffpgn: error:', err)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    def test_cli_bad_format(self):
        cmd = ['ffpgn', 'graph', '--extremal', '2', '-f', 'blah']
        err = self.get_cli_output(cmd, get_stderr=True)
        target_str = ("ffpgn: error: format must be one of the following: "
                      "('json', 'yaml', 'csv', 'svg')\n")
        self.assertEqual(err, target_str)
        self.assertEqual(self.exit_code, 3)

    def test_cli_missing_yaml(self):
        orig_has_yaml = ffpgn.cli.has_yaml
        ffpgn.cli.has_yaml = False

        cmd = ['ffpgn', 'graph', '--extremal', '2', '--Q', '2', '-f', 'yaml']
        err = self.get_cli_output(cmd, get_stderr=True)

        target_str = (
            'ffpgn: error: YAML module could not be found.\n'
            '  To enable YAML support, install PyYAML or use the ffpgn[yaml] '
            'package.\n'
        )
        self.assertEqual(err, target_str)
        self.assertEqual(self.exit_code, 3)

        ffpgn.cli.has_yaml = orig_has_yaml

    # Minima
    def test_cli_minima_file(self):
        doc = self.get_cli_doc(['ffpgn', 'minima', '--u', 'e3.json',
                                '--Q', '3'])
        self.assertEqual(doc['schema'], 'ffpgn/1')
        self.assertEqual(doc['kind'], 'profile')
        self.assertEqual(doc['values'], [[0, 0, q] for q in range(4)])

    def test_cli_minima_generator(self):
        doc = self.get_cli_doc(['ffpgn', 'minima', '--gen', 'exp:0,1',
                                '--Q', '6'])
        self.assertEqual(doc['values'],
                         [list(row) for row in extremal(2, 6)])

    def test_cli_minima_cf(self):
        doc = self.get_cli_doc(['ffpgn', 'minima', '--cf', 'T,T,T',
                                '--Q', '6', '--certify'])
        self.assertEqual(doc['values'],
                         [list(row) for row in extremal(2, 6)])
        self.assertEqual(len(doc['certificates']), 7)

    def test_cli_minima_precision(self):
        cmd = ['ffpgn', 'minima', '--gen', 'exp:0,1', '--Q', '6', '--prec',
               '3']
        err = self.get_cli_output(cmd, get_stderr=True)
        self.assertTrue(err.startswith('ffpgn: error: Precision 3 cannot'))
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PRECISION)

    def test_cli_minima_no_point(self):
        err = self.get_cli_output(['ffpgn', 'minima'], get_stderr=True)
        self.assertIn('No point given', err)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    def test_cli_bad_generator(self):
        cmd = ['ffpgn', 'minima', '--gen', 'sin:1']
        self.get_cli_output(cmd, get_stderr=True)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    # Graphs and validation
    def test_cli_graph_csv(self):
        cmd = ['ffpgn', 'graph', '--extremal', '2', '--Q', '3', '-f', 'csv']
        out = self.get_cli_output(cmd)
        self.assertEqual(out.splitlines()[0], '0,0,0,2')
        self.assertEqual(len(out.splitlines()), 4)

    def test_cli_graph_svg_output(self):
        cmd = ['ffpgn', 'graph', '--switches', 'extremal2_switches.json',
               '--Q', '6', '-o', 'tmp.svg']
        self.get_cli_output(cmd)
        try:
            with open('tmp.svg') as svg_file:
                self.assertTrue(svg_file.read().startswith('<svg'))
        finally:
            os.remove('tmp.svg')

    def test_cli_graph_json(self):
        cmd = ['ffpgn', 'graph', '--profile', 'cf_profile.json', '--json']
        doc = self.get_cli_doc(cmd)
        self.assertEqual(doc['Q'], 6)

    def test_cli_validate(self):
        doc = self.get_cli_doc(['ffpgn', 'validate', 'extremal2.json'])
        self.assertTrue(doc['valid'])
        self.assertEqual(self.exit_code, 0)

        doc = self.get_cli_doc(['ffpgn', 'validate',
                                'extremal2_switches.json'])
        self.assertTrue(doc['valid'])

        doc = self.get_cli_doc(['ffpgn', 'validate', 'bad_profile.json'])
        self.assertFalse(doc['valid'])
        self.assertEqual(doc['violation']['condition'], 'S1')
        self.assertEqual(doc['violation']['q'], 3)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_VERIFY)

    def test_cli_validate_missing_file(self):
        cmd = ['ffpgn', 'validate', 'no_such_file.json']
        err = self.get_cli_output(cmd, get_stderr=True)
        self.assertTrue(err.startswith('ffpgn: error:'))
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    # Construction
    def test_cli_construct(self):
        cmd = ['ffpgn', 'construct', 'extremal2_switches.json', '--N', '8',
               '--verify', '--modp', '5']
        doc = self.get_cli_doc(cmd)
        self.assertEqual(doc['kind'], 'construction')
        self.assertTrue(doc['exact'])
        self.assertTrue(doc['verified'])
        self.assertTrue(doc['universality']['agree'])
        self.assertEqual(self.exit_code, 0)

    def test_cli_construct_invalid(self):
        cmd = ['ffpgn', 'construct', 'extremal2.json']
        self.get_cli_output(cmd, get_stderr=True)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    # Approximants
    def test_cli_pade(self):
        doc = self.get_cli_doc(['ffpgn', 'pade', '--gen', 'exp:0,1',
                                '--rho', '2,2'])
        self.assertTrue(doc['normal'])
        self.assertEqual(doc['order'], 3)
        self.assertEqual(doc['system']['tag'], 'exp')
        self.assertNotIn('witness', doc)

    def test_cli_pade_bad_rho(self):
        for rho in ('2,x', ','):
            cmd = ['ffpgn', 'pade', '--gen', 'exp:0,1', '--rho', rho]
            err = self.get_cli_output(cmd, get_stderr=True)
            self.assertIn('ffpgn: error:', err)
            self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

        cmd = ['ffpgn', 'minima', '--gen', 'log:two']
        self.get_cli_output(cmd, get_stderr=True)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PARSE)

    def test_cli_pade_series(self):
        doc = self.get_cli_doc(['ffpgn', 'pade', '--series', '1;1+T^3',
                                '--rho', '1,1'])
        self.assertFalse(doc['normal'])
        self.assertEqual(len(doc['witness']), 2)

    def test_cli_scan(self):
        doc = self.get_cli_doc(['ffpgn', 'scan', '--gen', 'exp:0,1', '--R',
                                '4'])
        self.assertEqual(doc['scanned'], 14)
        self.assertEqual(doc['non_normal'], [])

        doc = self.get_cli_doc(['ffpgn', 'scan', '--gen', 'exp:0,1,2', '--R',
                                '6', '--mode', 'diagonal'])
        self.assertEqual(doc['scanned'], 2)

    def test_cli_realizers(self):
        doc = self.get_cli_doc(['ffpgn', 'realizers', '--gen', 'exp:0,1',
                                '--imax', '2'])
        self.assertEqual(len(doc['realizers']), 2)
        self.assertEqual(doc['realizers'][1]['rho'], [1, 1])

    # Product inequalities
    def test_cli_adelic(self):
        cmd = ['ffpgn', 'adelic', '--a=-1;1', '--omega', '0,1', '--S', '0',
               '--remark', '--steps']
        doc = self.get_cli_doc(cmd)
        self.assertEqual(doc['margin'], 0)
        self.assertTrue(doc['holds'])
        self.assertEqual(doc['remark_margin'], 0)
        self.assertEqual(doc['proof_steps'], {'0': []})
        self.assertEqual(self.exit_code, 0)

    def test_cli_corollary(self):
        cmd = ['ffpgn', 'adelic', '--a=-1;1', '--omega', '0,1', '--corollary']
        doc = self.get_cli_doc(cmd)
        self.assertEqual(doc['kind'], 'corollary')
        self.assertTrue(doc['holds'])

    def test_cli_adelic_precondition(self):
        cmd = ['ffpgn', 'adelic', '--a', 'T;1', '--omega', '1,1']
        err = self.get_cli_output(cmd, get_stderr=True)
        self.assertTrue(err.startswith('ffpgn: error: Exponents'))
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PRECONDITION)

    def test_cli_field_environment(self):
        os.environ['FFPGN_FIELD'] = 'Fp:7'
        try:
            cmd = ['ffpgn', 'adelic', '--a', 'T;1', '--omega', '0,1']
            err = self.get_cli_output(cmd, get_stderr=True)
        finally:
            del os.environ['FFPGN_FIELD']
        self.assertIn('FFPGN_FIELD', err)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PRECONDITION)

    # Dual and compound minima
    def test_cli_dual(self):
        doc = self.get_cli_doc(['ffpgn', 'dual', '--u', 'e3.json', '--Q', '3',
                                '--tilde', '1'])
        self.assertTrue(doc['duality_ok'])
        self.assertEqual(doc['dual']['values'][3], [-3, 0, 0])
        self.assertEqual(doc['tilde']['values'], [[0, 0, 0], [-2, 1, 1]])

    def test_cli_compound(self):
        doc = self.get_cli_doc(['ffpgn', 'compound', '--u', 'e3.json', '--Q',
                                '3', '--direct'])
        self.assertEqual(doc['compound'], [[0, q, q] for q in range(4)])
        self.assertTrue(doc['direct_ok'])
        self.assertEqual(doc['violations'], [])
        self.assertEqual(self.exit_code, 0)

        doc = self.get_cli_doc(['ffpgn', 'compound', '--u', 'e3.json', '--Q',
                                '2', '--realizers'])
        self.assertEqual([r['q'] for r in doc['realizers']], [0, 1, 2])
        last = doc['realizers'][2]['realizers']
        self.assertEqual([r['value'] for r in last], [0, 2, 2])
        self.assertEqual(len(last[0]['wedge']), 3)
        self.assertEqual(self.exit_code, 0)

    def test_cli_sweep(self):
        cmd = ['ffpgn', 'sweep', '--n', '2', '--count', '2', '--Q', '4',
               '--field', 'Fp:5', '--seed', '3']
        doc = self.get_cli_doc(cmd)
        self.assertEqual(doc['count'], 2)
        self.assertEqual(doc['failures'], [])

    # Continued fractions
    def test_cli_cf(self):
        T = Poly.monomial(Rationals(), 1)
        ffpgn.write(cf_point(8, [T, T]).u, 'tmp_cf.json')
        try:
            doc = self.get_cli_doc(['ffpgn', 'cf', '--u', 'tmp_cf.json',
                                    '--depth', '2'])
        finally:
            os.remove('tmp_cf.json')
        self.assertEqual(doc['quotients'],
                         [{'lead_exp': 1, 'coeffs': ['1', '0']}] * 2)

    def test_cli_cf_implicit_entry(self):
        cmd = ['ffpgn', 'cf', '--u', 'e3.json']
        err = self.get_cli_output(cmd, get_stderr=True)
        self.assertIn('--entry', err)
        self.assertEqual(self.exit_code, ffpgn.cli.EXIT_PRECONDITION)


if __name__ == '__main__':
    unittest.main()
