"""Command line interface to ffpgn.

Every command writes an ffpgn document, JSON by default, to the output path
or to stdout.  Errors are reported on stderr with a stable exit code:
0 success, 2 precision, 3 parse, 4 verification, 5 precondition.

:copyright: Copyright 2024 the ffpgn developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details
"""
import argparse
import os
import random
import sys
import warnings
from collections import OrderedDict

import ffpgn
from ffpgn import adelic, construct, minima, nsystem, pade
from ffpgn.document import FORMATS, Document, has_yaml
from ffpgn.errors import (ParseError, PrecisionError, PreconditionError,
                          VerificationError)
from ffpgn.fields import field_from_tag
from ffpgn.fpy import pyint, pyintlist
from ffpgn.linalg import vec_todict
from ffpgn.parser import Parser

EXIT_PRECISION = 2
EXIT_PARSE = 3
EXIT_VERIFY = 4
EXIT_PRECONDITION = 5

GENERATORS = ('exp', 'binomial', 'log')


class RunConfig(object):
    """Settings shared by every command."""

    def __init__(self):
        self._field = field_from_tag('Q')
        self._precision = None
        self._horizon = 10
        self._seed = 0
        self._jobs = 1
        self._output = None
        self._format = None

    @property
    def field(self):
        """Coefficient field.

        :type: ``Rationals`` or ``PrimeField``
        :default: ``Rationals()``, or the field named by ``FFPGN_FIELD``
        """
        return self._field

    @field.setter
    def field(self, value):
        """Set the field from a field object or tag."""
        self._field = field_from_tag(value)

    @property
    def precision(self):
        """Working precision of generated points.

        :type: ``int``
        :default: ``horizon + 1``
        """
        if self._precision is None:
            return self.horizon + 1
        return self._precision

    @precision.setter
    def precision(self, value):
        """Validate and set the precision."""
        if value is not None:
            if not isinstance(value, int):
                raise TypeError('precision must be an integer.')
            if value < 1:
                raise ValueError('precision must be positive.')
        self._precision = value

    @property
    def horizon(self):
        """Largest q of computed profiles.

        :type: ``int``
        :default: 10
        """
        return self._horizon

    @horizon.setter
    def horizon(self, value):
        """Validate and set the horizon."""
        if not isinstance(value, int):
            raise TypeError('horizon must be an integer.')
        if value < 0:
            raise ValueError('horizon must be nonnegative.')
        self._horizon = value

    @property
    def seed(self):
        """Seed of randomized commands.

        :type: ``int``
        :default: 0
        """
        return self._seed

    @seed.setter
    def seed(self, value):
        if not isinstance(value, int):
            raise TypeError('seed must be an integer.')
        self._seed = value

    @property
    def jobs(self):
        """Number of worker processes.

        :type: ``int``
        :default: 1
        """
        return self._jobs

    @jobs.setter
    def jobs(self, value):
        if not isinstance(value, int):
            raise TypeError('jobs must be an integer.')
        if value < 1:
            raise ValueError('jobs must be positive.')
        self._jobs = value

    @property
    def output(self):
        """Output path, or ``None`` for stdout.

        :type: ``str`` or ``None``
        """
        return self._output

    @output.setter
    def output(self, value):
        if value is not None and not isinstance(value, str):
            raise TypeError('output must be a path string.')
        self._output = value

    @property
    def format(self):
        """Output format.

        :type: ``str`` or ``None``
        :default: ``None`` (from the output extension, else json)
        """
        return self._format

    @format.setter
    def format(self, value):
        if value is not None and value not in FORMATS:
            raise ValueError('format must be one of the following: {0}'
                             ''.format(FORMATS))
        self._format = value

    def require_precision(self):
        """Raise ``PrecisionError`` unless precision >= horizon + 1."""
        if self.precision < self.horizon + 1:
            raise PrecisionError('Precision {0} cannot certify profiles up to '
                                 'Q={1}; use at least {2}.'
                                 ''.format(self.precision, self.horizon,
                                           self.horizon + 1))


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the parse error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print('ffpgn: error: {0}'.format(message), file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _series_tag(tag):
    """Split a generator tag such as ``exp:0,1,2``."""
    name, _, params = tag.partition(':')
    if name not in GENERATORS or not params:
        raise ParseError('{0} is not a generator tag; use exp:<omegas>, '
                         'binomial:<omegas> or log:<n>.'.format(tag))
    return name, params


def _system(tag, terms, config, parser):
    """Return the ``SeriesSystem`` of a generator tag with ``terms`` terms."""
    name, params = _series_tag(tag)
    if name == 'log':
        return pade.log_system(pyint(params), terms, config.field)

    omegas = parser.read_scalars(params)
    if name == 'exp':
        return pade.exp_system(omegas, terms, config.field)
    return pade.binomial_system(omegas, terms, config.field)


def _unit_point(args, config, parser):
    """Return the unit point named by --u, --gen or --cf."""
    if getattr(args, 'u', None):
        point = parser.read(args.u)
        if not isinstance(point, minima.UnitPoint):
            raise ParseError('{0} does not hold a unit point.'.format(args.u))
        return point

    prec = config.precision
    if getattr(args, 'gen', None):
        return _system(args.gen, prec + 1, config, parser).at_infinity()

    if getattr(args, 'cf', None):
        quotients = parser.read_vector(args.cf, ',')
        return construct.cf_point(prec, quotients, field=config.field).u

    raise ParseError('No point given; use --u, --gen or --cf.')


def _add_point_args(sub):
    group = sub.add_mutually_exclusive_group()
    group.add_argument('--u', help='unit point document (laurent_vec)')
    group.add_argument('--gen', help='generator tag, e.g. exp:0,1,2')
    group.add_argument('--cf', help='partial quotients of xi, e.g. T,T,T')


def cmd_minima(args, config, parser):
    """Successive minima profile of a unit point."""
    config.require_precision()
    u = _unit_point(args, config, parser)
    Q = config.horizon
    profile = minima.minima_profile(u, Q, config.jobs)

    doc = Document('profile', profile.todict())
    if args.certify:
        certs = [minima.minima_certificate(u, q, row)
                 for q, row in enumerate(profile)]
        doc['certificates'] = [c.todict() for c in certs]
    return doc, 0


def cmd_construct(args, config, parser):
    """Unit point with prescribed switch data."""
    switches = parser.read(args.switches)
    if not isinstance(switches, nsystem.SwitchData):
        raise ParseError('{0} does not hold switch data.'
                         ''.format(args.switches))

    result = construct.construct_point(switches, args.N, config.field)
    construct.verify_construction(result)
    doc = Document('construction', result.todict())
    code = 0

    if args.verify:
        top = args.N - 1
        if switches.horizon is not None:
            top = min(top, switches.horizon)
        found = minima.minima_profile(result.u, top, config.jobs)
        want = nsystem.eval_switches(switches, top)
        if found != want:
            raise VerificationError('Minima of the constructed point differ '
                                    'from the switch data.')
        doc['verified'] = True

    if args.modp:
        report = construct.universality_reduce(switches, args.modp, args.N)
        doc['universality'] = report
        if not report['agree']:
            code = EXIT_VERIFY
    return doc, code


def cmd_pade(args, config, parser):
    """Hermite-Padé approximant at one index tuple."""
    rho = pyintlist(args.rho)
    terms = sum(rho) + pade.GUARD
    if args.series:
        system = pade.SeriesSystem(parser.read_vector(args.series))
    else:
        system = _system(args.gen, terms, config, parser)

    sol = pade.pade_solve(system, rho)
    normal, witness = pade.normality(sol)

    doc = Document('pade', sol.todict())
    doc['system'] = system.describe()
    doc['normal'] = normal
    if witness is not None:
        doc['witness'] = vec_todict(witness)
    return doc, 0


def cmd_scan(args, config, parser):
    """Normality scan over index tuples of bounded sum."""
    terms = args.R + pade.GUARD
    if args.series:
        system = pade.SeriesSystem(parser.read_vector(args.series))
    else:
        system = _system(args.gen, terms, config, parser)

    report = pade.perfect_scan(system, args.R, args.mode, config.jobs)
    return Document('scan', report.todict()), 0


def cmd_realizers(args, config, parser):
    """Points realizing the minima of an exponential system."""
    _warn_jobs(config)
    name, params = _series_tag(args.gen)
    if name == 'log':
        n = _system(args.gen, 1, config, parser).n
    else:
        n = len(parser.read_scalars(params))
    terms = args.imax + n - 1 + pade.GUARD
    system = _system(args.gen, terms, config, parser)
    realizers = pade.realizer_sequence(system, args.imax)

    doc = Document('realizers')
    doc['system'] = system.describe()
    doc['realizers'] = [r.todict() for r in realizers]
    return doc, 0


def cmd_adelic(args, config, parser):
    """Margins of the product inequalities."""
    _warn_jobs(config)
    a = parser.read_vector(args.a)
    omegas = parser.read_scalars(args.omega)

    if args.corollary:
        report = adelic.corollary_checks(a, omegas, config.field)
        doc = Document('corollary', report)
    else:
        points = parser.read_scalars(args.S)
        report = adelic.adelic_report(a, omegas, points, field=config.field)
        if args.remark:
            report['remark_margin'] = adelic.remark_margin(
                a, omegas, points, field=config.field)
        if args.steps:
            report['proof_steps'] = OrderedDict(
                (config.field.format(alpha),
                 adelic.proof_step_checks(a, omegas, alpha,
                                          field=config.field))
                for alpha in points)
        doc = Document('adelic', report)

    return doc, 0 if report['holds'] else EXIT_VERIFY


def cmd_graph(args, config, parser):
    """Combined graph of an n-system."""
    _warn_jobs(config)
    Q = config.horizon
    if args.extremal:
        profile = nsystem.extremal(args.extremal, Q)
    elif args.switches:
        profile = nsystem.eval_switches(parser.read(args.switches), Q)
    elif args.profile:
        profile = parser.read(args.profile)
    else:
        raise ParseError('No system given; use --extremal, --switches or '
                         '--profile.')

    if not isinstance(profile, nsystem.Profile):
        raise ParseError('Input does not hold a profile.')
    return Document('profile', profile.todict()), 0


def cmd_validate(args, config, parser):
    """Check a profile or switch data document."""
    _warn_jobs(config)
    data = parser.read(args.file)
    if isinstance(data, nsystem.Profile):
        violation = nsystem.validate_profile(data)
    elif isinstance(data, nsystem.SwitchData):
        violation = nsystem.validate_switches(data)
    else:
        raise ParseError('{0} holds neither a profile nor switch data.'
                         ''.format(args.file))

    doc = Document('report')
    doc['valid'] = violation is None
    doc['violation'] = violation.todict() if violation else None
    return doc, 0 if violation is None else EXIT_VERIFY


def cmd_dual(args, config, parser):
    """Dual and normalized dual profiles."""
    _warn_jobs(config)
    config.require_precision()
    u = _unit_point(args, config, parser)
    Q = config.horizon

    primal = minima.minima_profile(u, Q)
    dual = minima.dual_profile(u, Q)
    mirrored = all(dual[q] == tuple(-v for v in reversed(primal[q]))
                   for q in range(Q + 1))

    doc = Document('report')
    doc['profile'] = primal.todict()
    doc['dual'] = dual.todict()
    doc['duality_ok'] = mirrored
    if args.tilde is not None:
        doc['tilde'] = minima.tilde_profile(u, args.tilde).todict()
    return doc, 0 if mirrored else EXIT_VERIFY


def cmd_compound(args, config, parser):
    """Compound minima from subset sums, optionally computed directly."""
    _warn_jobs(config)
    config.require_precision()
    u = _unit_point(args, config, parser)
    Q, m = config.horizon, args.m

    profile = minima.minima_profile(u, Q)
    rows = [minima.compound_profile(row, m) for row in profile]
    violations = [minima.compound_identities(row, comp, m)
                  for row, comp in zip(profile, rows)]
    violations = [v.todict() for v in violations if v]
    slope = minima.slope_change_check(profile, m) if m < u.n else None
    if slope:
        violations.append(slope.todict())

    doc = Document('report')
    doc['m'] = m
    doc['compound'] = [list(row) for row in rows]
    if args.direct:
        direct = minima.compound_direct(u, m, Q)
        doc['direct_ok'] = list(direct) == rows
        if not doc['direct_ok']:
            violations.append(OrderedDict([('condition', 'direct'),
                                           ('message', 'Direct compound '
                                            'minima differ.')]))
    if args.realizers:
        doc['realizers'] = [
            OrderedDict([('q', q), ('realizers', [
                OrderedDict([('value', value), ('wedge', vec_todict(w))])
                for value, w in minima.compound_realizers(
                    minima.minima_certificate(u, q, row), m, u)])])
            for q, row in enumerate(profile)]
    doc['violations'] = violations
    return doc, EXIT_VERIFY if violations else 0


def _sweep_job(args):
    field_tag, n, prec, Q, seed = args
    rng = random.Random(seed)
    u = minima.random_unit_point(field_from_tag(field_tag), n, prec, rng)
    violation = nsystem.validate_profile(minima.minima_profile(u, Q))
    return None if violation is None else violation.todict()


def cmd_sweep(args, config, parser):
    """Random check that minima profiles are n-systems."""
    config.require_precision()
    rng = random.Random(config.seed)
    tasks = [(config.field.tag, args.n, config.precision, config.horizon,
              rng.randrange(2 ** 32)) for _ in range(args.count)]

    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_sweep_job, tasks))
    else:
        results = [_sweep_job(task) for task in tasks]

    failures = [OrderedDict([('seed', task[-1]), ('violation', v)])
                for task, v in zip(tasks, results) if v]
    doc = Document('report')
    doc['count'] = args.count
    doc['n'] = args.n
    doc['failures'] = failures
    return doc, EXIT_VERIFY if failures else 0


def cmd_cf(args, config, parser):
    """Continued fraction expansion of a point entry."""
    _warn_jobs(config)
    u = parser.read(args.u)
    if not isinstance(u, minima.UnitPoint):
        raise ParseError('{0} does not hold a unit point.'.format(args.u))

    if args.entry is not None:
        if not 1 <= args.entry <= u.n:
            raise ValueError('Entry {0} is out of range for n={1}.'
                             ''.format(args.entry, u.n))
        xi = u[args.entry - 1]
    elif u.n == 2:
        xi = -u[0]
    else:
        raise PreconditionError('not-cf-point', 'Only points (-xi, 1) have '
                                'an implicit entry; use --entry.')

    quotients = construct.cf_expand(xi, args.depth)
    doc = Document('report')
    doc['quotients'] = [a.todict() for a in quotients]
    return doc, 0


def _warn_jobs(config):
    if config.jobs > 1:
        warnings.warn('ffpgn: warning: this command runs in a single '
                      'process; --jobs is ignored.')


def _common_flags():
    """Return the parser of the flags shared by every command."""
    common = argparse.ArgumentParser(add_help=False)

    common.add_argument('--field', action='store',
                        help="coefficient field, Q or Fp:<p> "
                        "(default: $FFPGN_FIELD or Q)")
    common.add_argument('--prec', type=int,
                        help="precision of generated points (default: Q+1)")
    common.add_argument('--Q', type=int, default=10,
                        help="largest q of computed profiles")
    common.add_argument('--seed', type=int, default=0,
                        help="seed of randomized commands")
    common.add_argument('--output', '-o', action='store',
                        help="output path (default: stdout)")
    common.add_argument('--format', '-f', action='store',
                        help="output format (json, yaml, csv or svg)")
    common.add_argument('--json', action='store_true',
                        help="force JSON output")
    common.add_argument('--jobs', type=int, default=1,
                        help="worker processes for parallel sweeps")
    return common


def _build_parser():
    parser = ArgumentParser(prog='ffpgn')

    parser.add_argument('--version', action='version',
                        version='ffpgn {0}'.format(ffpgn.__version__))

    common = _common_flags()
    subs = parser.add_subparsers(dest='command')

    sub = subs.add_parser('minima', parents=[common],
                          help=cmd_minima.__doc__)
    _add_point_args(sub)
    sub.add_argument('--certify', action='store_true')
    sub.set_defaults(func=cmd_minima)

    sub = subs.add_parser('construct', parents=[common],
                          help=cmd_construct.__doc__)
    sub.add_argument('switches')
    sub.add_argument('--N', type=int, default=8)
    sub.add_argument('--verify', action='store_true')
    sub.add_argument('--modp', type=int)
    sub.set_defaults(func=cmd_construct)

    for name, func in (('pade', cmd_pade), ('scan', cmd_scan)):
        sub = subs.add_parser(name, parents=[common],
                              help=func.__doc__)
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument('--gen')
        group.add_argument('--series', help='polynomials, e.g. "1;1+T"')
        if name == 'pade':
            sub.add_argument('--rho', required=True)
        else:
            sub.add_argument('--R', type=int, required=True)
            sub.add_argument('--mode', default='all',
                             choices=('all', 'sorted', 'diagonal',
                                      'balanced'))
        sub.set_defaults(func=func)

    sub = subs.add_parser('realizers', parents=[common],
                          help=cmd_realizers.__doc__)
    sub.add_argument('--gen', required=True)
    sub.add_argument('--imax', type=int, default=4)
    sub.set_defaults(func=cmd_realizers)

    sub = subs.add_parser('adelic', parents=[common],
                          help=cmd_adelic.__doc__)
    sub.add_argument('--a', required=True)
    sub.add_argument('--omega', required=True)
    sub.add_argument('--S', default='0')
    sub.add_argument('--corollary', action='store_true')
    sub.add_argument('--remark', action='store_true')
    sub.add_argument('--steps', action='store_true')
    sub.set_defaults(func=cmd_adelic)

    sub = subs.add_parser('graph', parents=[common],
                          help=cmd_graph.__doc__)
    sub.add_argument('--extremal', type=int)
    sub.add_argument('--switches')
    sub.add_argument('--profile')
    sub.set_defaults(func=cmd_graph)

    sub = subs.add_parser('validate', parents=[common],
                          help=cmd_validate.__doc__)
    sub.add_argument('file')
    sub.set_defaults(func=cmd_validate)

    sub = subs.add_parser('dual', parents=[common],
                          help=cmd_dual.__doc__)
    _add_point_args(sub)
    sub.add_argument('--tilde', type=int)
    sub.set_defaults(func=cmd_dual)

    sub = subs.add_parser('compound', parents=[common],
                          help=cmd_compound.__doc__)
    _add_point_args(sub)
    sub.add_argument('--m', type=int, default=2)
    sub.add_argument('--direct', action='store_true')
    sub.add_argument('--realizers', action='store_true')
    sub.set_defaults(func=cmd_compound)

    sub = subs.add_parser('sweep', parents=[common],
                          help=cmd_sweep.__doc__)
    sub.add_argument('--n', type=int, default=3)
    sub.add_argument('--count', type=int, default=10)
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser('cf', parents=[common],
                          help=cmd_cf.__doc__)
    sub.add_argument('--u', required=True)
    sub.add_argument('--entry', type=int)
    sub.add_argument('--depth', type=int)
    sub.set_defaults(func=cmd_cf)

    return parser


def _config(args):
    config = RunConfig()

    field = args.field
    if field is None and os.environ.get('FFPGN_FIELD'):
        field = os.environ['FFPGN_FIELD']
        warnings.warn('ffpgn: warning: using field {0} from FFPGN_FIELD.'
                      ''.format(field))
    if field is not None:
        config.field = field

    config.horizon = args.Q
    config.precision = args.prec
    config.seed = args.seed
    config.jobs = args.jobs
    config.output = args.output
    config.format = 'json' if args.json else args.format
    return config


def _fail(message, code):
    print('ffpgn: error: {0}'.format(message), file=sys.stderr)
    sys.exit(code)


def parse():
    """Parse the command line input arguments and run the command."""
    argparser = _build_parser()

    if len(sys.argv) == 1:
        argparser.print_help()
        sys.exit()

    args = argparser.parse_args()
    if not getattr(args, 'func', None):
        _fail('no command given.', EXIT_PARSE)

    try:
        config = _config(args)
        if config.format == 'yaml' and not has_yaml:
            print('ffpgn: error: YAML module could not be found.',
                  file=sys.stderr)
            print('  To enable YAML support, install PyYAML or use the '
                  'ffpgn[yaml] package.', file=sys.stderr)
            sys.exit(EXIT_PARSE)

        parser = Parser()
        parser.field = config.field
        doc, code = args.func(args, config, parser)

        doc.format = config.format
        if config.output:
            doc.write(config.output, force=True)
        else:
            sys.stdout.write(doc.dumps())

    except PrecisionError as exc:
        _fail(exc, EXIT_PRECISION)
    except VerificationError as exc:
        _fail(exc, EXIT_VERIFY)
    except PreconditionError as exc:
        _fail(exc, EXIT_PRECONDITION)
    except (ParseError, ValueError, TypeError, IOError) as exc:
        _fail(exc, EXIT_PARSE)

    if code:
        sys.exit(code)
