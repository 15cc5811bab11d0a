"""qlattice command line interface.

Every command writes one self-contained report. The echoed configuration
reproduces the results payload when re-run.

Example:
    $ python -m qlattice bound intersecting-k-sperner-q q=2 n=5 k=2
    $ python -m qlattice search subspaces q=2 n=5 k=2 --property intersecting --compare ekr-q
    $ python -m qlattice conjecture emc-q q=2 n=4..5 k=2 s=1..2 --format csv
"""
import argparse
import sys
import time
import warnings
from collections import OrderedDict
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from qlattice.configs import ConfigFile
from qlattice.configuration import CONFIG
from qlattice.constants import (
    EXIT_EXHAUSTED, EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, SUBSETS, SUBSPACES,
)
from qlattice.covering_lym import (
    audit_t_covering, boolean_isomorphism_check, build_covering, lym_check,
)
from qlattice.error import (
    CapExceeded, MissingParameter, NotOptimal, ParseError, PreconditionFailed,
    QLatticeError, ResourceExhausted, SideConditionViolated, UsageError,
)
from qlattice.extremal_search import (
    CONJECTURES, SearchProblem, build_full_levels, build_star,
    check_equality_characterization, explore_conjecture, level_ground,
    max_family, resolve_conjecture_id,
)
from qlattice.family_properties import (
    IntersectingKSperner, KSperner, LIntersecting, MatchingAtMost, PropertySpec,
    Sperner, TIntersecting, UniformDim, parse_property,
)
from qlattice.finite_field import make_field
from qlattice.logging import get_logger, quiet_dependency_loggers, setup_logging
from qlattice.qcombinatorics import THEOREMS, theorem_bound, threshold_n0
from qlattice.report import OUTPUT_FORMATS, make_report, render
from qlattice.serialization import parse_element, read_family_file, write_family_file
from qlattice.utils import parse_values, update_dict_recursively


__all__ = ['RunConfig', 'cli', 'main', 'run']


LOGGER = get_logger(__name__)

LIST_PARAMETERS = {'L', 'K', 'dims'}
"""Parameters which are always lists."""

KIND_ALIASES = {
    'sets': SUBSETS,
    'subsets': SUBSETS,
    'subspaces': SUBSPACES,
}
"""Command line family kinds."""


class RunConfig(NamedTuple):

    """Everything a command run depends on."""

    command: str
    arguments: Tuple[str, ...]
    """Positional command arguments (theorem id, kind, file, ...)."""

    parameters: Dict[str, Any]
    caps: Dict[str, int]
    threads: int
    seed: int
    output_format: str
    output: Optional[str] = None
    options: Dict[str, Any] = {}
    """Command specific flags."""

    def echo(self) -> OrderedDict:
        """Configuration echo for the report. Output path is left out so that
        equal runs give equal reports.
        """
        return OrderedDict([
            ('command', self.command),
            ('arguments', list(self.arguments)),
            ('parameters', self.parameters),
            ('caps', self.caps),
            ('threads', self.threads),
            ('seed', self.seed),
            ('options', self.options),
        ])


class CommandOutcome(NamedTuple):
    results: Any
    provenance: List[Dict[str, Any]]
    exit_code: int = EXIT_OK


def parse_parameters(tokens: Sequence[str]) -> Dict[str, Any]:
    """Parse ``key=value`` tokens. Values support ranges ``4..6``, lists
    ``1,2`` and rationals ``1/2``. Single values are unwrapped except for
    list parameters.

    Raises:
        UsageError: Malformed token.

    Example:
        >>> parse_parameters(['q=2', 'n=4..5', 'eps=1/2', 'L=1'])
        {'q': 2, 'n': [4, 5], 'eps': Fraction(1, 2), 'L': [1]}
    """
    params = {}
    for token in tokens:
        key, sep, text = token.partition('=')
        if not sep or not key or not text:
            raise UsageError(f'Expected key=value, got {token!r}')

        try:
            values = parse_values(text)
        except ValueError:
            values = [text]

        if key in LIST_PARAMETERS or len(values) > 1:
            params[key] = values
        else:
            params[key] = values[0]

    return params


def _split_arguments(tokens: Sequence[str]) -> Tuple[List[str], Dict[str, Any]]:
    positional = [t for t in tokens if '=' not in t]
    params = parse_parameters([t for t in tokens if '=' in t])
    return positional, params


def _require(params: Dict[str, Any], *names: str):
    missing = [name for name in names if name not in params]
    if missing:
        raise MissingParameter(f'Missing parameters: {", ".join(missing)}')


def _scalar(params: Dict[str, Any], name: str) -> Any:
    value = params[name]
    if isinstance(value, list):
        raise UsageError(f'Parameter {name} has to be a single value, not {value}')

    return value


def _kind(text: str) -> str:
    if text not in KIND_ALIASES:
        raise UsageError(f'Unknown family kind {text!r}. Choose from {", ".join(KIND_ALIASES)}')

    return KIND_ALIASES[text]


def property_parameters(spec: PropertySpec) -> Dict[str, Any]:
    """Theorem parameters implied by a property.

    Example:
        >>> property_parameters(parse_property('intersecting+k-sperner:2'))
        {'k': 2}
    """
    params = {}
    for part in spec.parts():
        if isinstance(part, (KSperner, IntersectingKSperner)):
            params['k'] = part.k
        elif isinstance(part, MatchingAtMost):
            params['s'] = part.s
        elif isinstance(part, TIntersecting):
            params['t'] = part.t
        elif isinstance(part, LIntersecting):
            params['L'] = list(part.L)
        elif isinstance(part, UniformDim):
            params['K'] = list(part.K)
        elif hasattr(part, 'd'):
            params['d'] = part.d

    return params


def _lym_chain_bound(spec: PropertySpec) -> Optional[int]:
    """Chain bound k if the property is of intersecting k-Sperner type."""
    for part in spec.parts():
        if isinstance(part, (KSperner, IntersectingKSperner)):
            return part.k

        if isinstance(part, Sperner):
            return 1

    return None


def cmd_bound(run: RunConfig) -> CommandOutcome:
    """Exact bound value with side condition diagnostics."""
    if len(run.arguments) != 1:
        raise UsageError('bound needs exactly one theorem id')

    strict = run.options.get('strict', False)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', SideConditionViolated)
        bound = theorem_bound(run.arguments[0], run.parameters, strict=strict)

    results = OrderedDict([
        ('bound', bound),
        ('side_conditions_hold', bound.side_conditions_hold),
        ('description', THEOREMS[bound.theorem_id].description),
    ])
    provenance = [{'theorem_id': bound.theorem_id, 'parameters': bound.parameters}]
    return CommandOutcome(results, provenance)


def cmd_check(run: RunConfig) -> CommandOutcome:
    """Property verdict for a family file plus its LYM sum when applicable."""
    if len(run.arguments) != 1:
        raise UsageError('check needs exactly one family file')

    spec = parse_property(run.options['property'])
    fam = read_family_file(run.arguments[0])
    verdict = spec.check(fam)
    if not verdict.holds:
        LOGGER.info('%s violated by %s', spec, verdict.witness)

    results = OrderedDict([
        ('property', spec.to_string()),
        ('family', OrderedDict([('kind', fam.kind), ('n', fam.n), ('q', fam.q), ('size', len(fam))])),
        ('profile', fam.profile.counts),
        ('verdict', verdict),
    ])
    k = _lym_chain_bound(spec)
    if k is not None and fam.level_set and min(fam.level_set) >= 1 and max(fam.level_set) <= fam.n // 2:
        results['lym'] = lym_check(fam, k=k, strict=run.options.get('strict', False))

    return CommandOutcome(results, [], EXIT_OK if verdict.holds else EXIT_VIOLATED)


def _search_dims(params: Dict[str, Any]) -> List[int]:
    if 'dims' in params:
        return list(params['dims'])

    if 'k' in params:
        k = params['k']
        return list(k) if isinstance(k, list) else [k]

    raise MissingParameter('search needs k=<level> or dims=<levels>')


def cmd_search(run: RunConfig) -> CommandOutcome:
    """Exact maximum family, optionally compared with a theorem bound."""
    if len(run.arguments) != 1:
        raise UsageError('search needs exactly one family kind (sets or subspaces)')

    kind = _kind(run.arguments[0])
    params = run.parameters
    _require(params, 'n')
    n = _scalar(params, 'n')
    q = _scalar(params, 'q') if kind == SUBSPACES else None
    if kind == SUBSPACES and q is None:
        raise MissingParameter('Subspace search needs q')

    spec = parse_property(run.options['property'])
    ground = level_ground(kind, n, _search_dims(params), q=q, cap=run.caps['ENUMERATION_CAP'])
    compare = run.options.get('compare')
    theoremParams = dict(property_parameters(spec))
    theoremParams.update(params)
    prune = run.options.get('prune_with_bound', False)
    if prune and not compare:
        raise UsageError('--prune-with-bound needs --compare')

    hint = None
    provenance = []
    if compare:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', SideConditionViolated)
            hint = theorem_bound(compare, theoremParams)

        provenance.append({'theorem_id': hint.theorem_id, 'parameters': hint.parameters})

    # Pruning with the compared bound is opt-in
    problem = SearchProblem(
        ground=ground,
        spec=spec,
        bound_hint=hint if prune else None,
        node_cap=run.caps['NODE_CAP'],
        witness_cap=run.caps['WITNESS_CAP'],
        threads=run.threads,
        symmetry=run.options.get('symmetry', False),
    )
    results = OrderedDict([
        ('property', spec.to_string()),
        ('ground_size', len(ground)),
        ('pruned_with_bound', prune),
    ])
    try:
        result = max_family(problem)
    except ResourceExhausted as err:
        results['search'] = err.partial
        results['exhausted'] = str(err)
        return CommandOutcome(results, provenance, EXIT_EXHAUSTED)

    results['search'] = result
    if hint is not None:
        comparison = OrderedDict([
            ('bound', hint),
            ('tight', result.max_size == hint.value),
            ('within_bound', result.max_size <= hint.value),
        ])
        try:
            comparison['equality'] = check_equality_characterization(result, hint.theorem_id, theoremParams)
        except NotOptimal as err:
            comparison['equality'] = None
            comparison['note'] = str(err)

        results['comparison'] = comparison
        if not comparison['within_bound']:
            LOGGER.warning('Maximum %d exceeds %s bound %s', result.max_size, hint.theorem_id, hint.value)
            return CommandOutcome(results, provenance, EXIT_VIOLATED)

    return CommandOutcome(results, provenance)


def cmd_audit_covering(run: RunConfig) -> CommandOutcome:
    """Exhaustive t-covering audit plus the Boolean isomorphism check."""
    _require(run.parameters, 'q', 'n')
    q = _scalar(run.parameters, 'q')
    n = _scalar(run.parameters, 'n')
    cov = build_covering(make_field(q), n, cap=run.caps['COVERING_CAP'])
    audit = audit_t_covering(cov)
    bases = cov.bases if run.options.get('all_bases') else cov.bases[:1]
    failing = [b for b in bases if not boolean_isomorphism_check(cov, b).passed]
    results = OrderedDict([
        ('audit', audit),
        ('passed', audit.passed),
        ('isomorphism', OrderedDict([
            ('checked', len(bases)),
            ('failing', failing),
        ])),
    ])
    ok = audit.passed and not failing
    return CommandOutcome(results, [], EXIT_OK if ok else EXIT_VIOLATED)


def cmd_thresholds(run: RunConfig) -> CommandOutcome:
    """Explicit thresholds for the set and, given q, the subspace side."""
    params = run.parameters
    _require(params, 'k')
    epsilon = params.get('eps', params.get('epsilon', 1))
    ks = params['k'] if isinstance(params['k'], list) else [params['k']]
    epsilons = epsilon if isinstance(epsilon, list) else [epsilon]
    qs = params.get('q')
    qs = qs if isinstance(qs, list) else ([qs] if qs is not None else [])
    rows = []
    for k in ks:
        for eps in epsilons:
            rows.append(threshold_n0('sets', k, eps, horizon=run.caps['THRESHOLD_HORIZON'],
                                     search_limit=run.caps['THRESHOLD_SEARCH_LIMIT']))
            for q in qs:
                rows.append(threshold_n0('subspaces', k, eps, q=q, horizon=run.caps['THRESHOLD_HORIZON'],
                                         search_limit=run.caps['THRESHOLD_SEARCH_LIMIT']))

    ok = all(row.n0 is not None and row.verified for row in rows)
    return CommandOutcome(OrderedDict([('rows', rows)]), [], EXIT_OK if ok else EXIT_EXHAUSTED)


def cmd_conjecture(run: RunConfig) -> CommandOutcome:
    """Conjecture table over a parameter grid."""
    if len(run.arguments) != 1:
        raise UsageError(f'conjecture needs one id out of {", ".join(CONJECTURES)}')

    conjectureId = resolve_conjecture_id(run.arguments[0])
    grid = {
        key: value if isinstance(value, list) else [value]
        for key, value in run.parameters.items()
    }
    rows = explore_conjecture(
        conjectureId, grid, threads=run.threads, node_cap=run.caps['NODE_CAP'],
        cap=run.caps['ENUMERATION_CAP'],
    )
    provenance = [
        {'theorem_id': CONJECTURES[conjectureId].theorem_id, 'parameters': row.parameters}
        for row in rows
    ]
    statuses = [row.status for row in rows]
    if 'VIOLATION' in statuses:
        code = EXIT_VIOLATED
    elif 'unknown' in statuses:
        code = EXIT_EXHAUSTED
    else:
        code = EXIT_OK

    return CommandOutcome(OrderedDict([('conjecture', conjectureId), ('rows', rows)]), provenance, code)


def cmd_build(run: RunConfig) -> CommandOutcome:
    """Write a star or full-level family to a family file."""
    if len(run.arguments) != 2:
        raise UsageError('build needs a construction (star or full-levels) and a family kind')

    construction, kindName = run.arguments
    kind = _kind(kindName)
    params = run.parameters
    _require(params, 'n', 'k')
    n, k = _scalar(params, 'n'), _scalar(params, 'k')
    q = _scalar(params, 'q') if kind == SUBSPACES else None
    if construction == 'star':
        center = run.options.get('center')
        if center is None:
            raise UsageError('build star needs --center')

        fam = build_star(kind, n, k, q, parse_element(kind, n, q, center))
    elif construction == 'full-levels':
        fam = build_full_levels(kind, n, k, q, side=params.get('side', 'upper'))
    else:
        raise UsageError(f'Unknown construction {construction!r}')

    target = run.options.get('family_output')
    if target:
        write_family_file(fam, target)

    return CommandOutcome(OrderedDict([('family', fam), ('size', len(fam))]), [])


COMMANDS = {
    'bound': cmd_bound,
    'check': cmd_check,
    'search': cmd_search,
    'audit-covering': cmd_audit_covering,
    'thresholds': cmd_thresholds,
    'conjecture': cmd_conjecture,
    'build': cmd_build,
}
"""Command name -> implementation."""


def cli(args=None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(prog='qlattice', description='Exact extremal bounds on Boolean and linear lattices.')
    parser.add_argument('command', choices=sorted(COMMANDS), help='command to run')
    parser.add_argument('arguments', nargs='*', help='positional arguments and key=value parameters')
    parser.add_argument('--property', type=str, default=None, help='property, e.g. intersecting+k-sperner:2')
    parser.add_argument('--compare', type=str, default=None, help='theorem id to compare search results with')
    parser.add_argument('--center', type=str, default=None, help='star center encoding for build')
    parser.add_argument('-o', '--family-output', type=str, default=None, help='family file written by build')
    parser.add_argument('--symmetry', default=False, action='store_true', help='fix the first member up to symmetry')
    parser.add_argument('--prune-with-bound', default=False, action='store_true', help='prune the search with the --compare bound')
    parser.add_argument('--strict', default=False, action='store_true', help='raise on side condition / precondition failures')
    parser.add_argument('--all-bases', default=False, action='store_true', help='isomorphism check for every basis')
    parser.add_argument('--format', type=str, default=None, choices=OUTPUT_FORMATS, help='report format')
    parser.add_argument('--output', type=str, default=None, help='report file (stdout by default)')
    parser.add_argument('--threads', type=int, default=None, help='worker processes')
    parser.add_argument('--seed', type=int, default=None, help='random seed')
    parser.add_argument('--cap', type=int, default=None, help='enumeration cap')
    parser.add_argument('--node-cap', type=int, default=None, help='search nodes per root subtree')
    parser.add_argument('--witness-cap', type=int, default=None, help='reported maximum families')
    parser.add_argument('--config', type=str, default=None, help='config file (yaml, toml, ini or json)')
    parser.add_argument('--log-level', type=str, default='WARNING', help='logging level')
    parser.add_argument('--timing', default=False, action='store_true', help='include wall-clock timing')
    return parser.parse_args(args)


def _positive(name: str, value: int) -> int:
    if value is None or int(value) < 1:
        raise UsageError(f'{name} has to be positive, not {value}')

    return int(value)


def make_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file and command line flags. Flags win."""
    settings = {
        'General': dict(CONFIG['General']),
        'Caps': dict(CONFIG['Caps']),
    }
    if args.config:
        configFile = ConfigFile(args.config)
        update_dict_recursively(settings, configFile.to_dict())

    caps = settings['Caps']
    for name, value in [
            ('ENUMERATION_CAP', args.cap),
            ('NODE_CAP', args.node_cap),
            ('WITNESS_CAP', args.witness_cap),
        ]:
        if value is not None:
            caps[name] = value

    caps = {name: _positive(name, value) for name, value in sorted(caps.items())}
    general = settings['General']
    threads = _positive('threads', args.threads if args.threads is not None else general['THREADS'])
    seed = args.seed if args.seed is not None else int(general['SEED'])
    fmt = args.format or general['OUTPUT_FORMAT']
    if fmt not in OUTPUT_FORMATS:
        raise UsageError(f'Unknown output format {fmt!r}')

    arguments, parameters = _split_arguments(args.arguments)
    options = {
        key: value for key, value in [
            ('property', args.property),
            ('compare', args.compare),
            ('center', args.center),
            ('family_output', args.family_output),
            ('symmetry', args.symmetry),
            ('prune_with_bound', args.prune_with_bound),
            ('strict', args.strict),
            ('all_bases', args.all_bases),
        ]
        if value
    }
    if args.command in {'check', 'search'} and 'property' not in options:
        raise UsageError(f'{args.command} needs --property')

    return RunConfig(
        command=args.command,
        arguments=tuple(arguments),
        parameters=parameters,
        caps=caps,
        threads=threads,
        seed=seed,
        output_format=fmt,
        output=args.output,
        options=options,
    )


def run(config: RunConfig, timing: bool = False) -> Tuple[str, int]:
    """Execute a command.

    Returns:
        Rendered report and exit code.
    """
    startTime = time.perf_counter()
    outcome = COMMANDS[config.command](config)
    duration = time.perf_counter() - startTime if timing else None
    report = make_report(config.command, config.echo(), outcome.results, outcome.provenance, duration)
    return render(report, config.output_format), outcome.exit_code


def _error_report(config: Optional[RunConfig], args: argparse.Namespace, err: Exception) -> str:
    echo = config.echo() if config else {}
    fmt = config.output_format if config else (args.format or 'json')
    report = make_report(args.command, echo, {'error': type(err).__name__, 'message': str(err)})
    return render(report, fmt)


def main(args=None) -> int:
    """Command line entry point. Returns the exit code."""
    try:
        args = cli(args)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_USAGE

    setup_logging(args.log_level.upper())
    quiet_dependency_loggers()
    config = None
    try:
        config = make_run_config(args)
        text, code = run(config, timing=args.timing)
    except (UsageError, ParseError, MissingParameter, ValueError) as err:
        LOGGER.error('%s', err)
        text, code = _error_report(config, args, err), EXIT_USAGE
    except (PreconditionFailed, SideConditionViolated) as err:
        LOGGER.error('%s', err)
        text, code = _error_report(config, args, err), EXIT_VIOLATED
    except (CapExceeded, ResourceExhausted) as err:
        LOGGER.error('%s', err)
        text, code = _error_report(config, args, err), EXIT_EXHAUSTED
    except QLatticeError as err:
        LOGGER.error('%s: %s', type(err).__name__, err)
        text, code = _error_report(config, args, err), EXIT_USAGE

    if args.output:
        with open(args.output, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    return code


if __name__ == '__main__':
    sys.exit(main())
