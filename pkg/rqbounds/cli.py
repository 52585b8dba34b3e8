"""
Command-line frontend.

    rqbounds bounds --matrix A.mtx --vector y.mtx [--ref-vector x.mtx] [--format json]
    rqbounds verify [--trials N] [--dims MIN..MAX] [--seed S] [--field real|complex] [--workers W]
                    [--suite identities|full]
    rqbounds example {davis-kahan,sin-theta,tightness} [--n N] [--eps E] [--shifted] [--seed S]

Reports go to stdout, log messages to stderr. Exit status: 0 when every
evaluated bound holds and every check passes, 1 on a certification failure,
2 on an input error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

from rqbounds.bounds import BoundReport, bound_catalogue
from rqbounds.config import CONFIG
from rqbounds.errors import CertificationError, ConvergenceError, InputError, NotHermitianError
from rqbounds.experiments import (
    ExperimentResult,
    davis_kahan,
    invariant_subspace_tightness,
    random_verification,
    sin_theta_counterexample,
)
from rqbounds.mmio import read_matrix, read_vector
from rqbounds.report import build_payload, certified, to_json, to_text
from rqbounds.utils import Stopwatch


log = logging.getLogger(__name__)

DEFAULTS = CONFIG['defaults']

BANNER = """
+==================================================================+
    :: RAYLEIGH QUOTIENT BOUNDS ::
+------------------------------------------------------------------+
"""


class Command(str, Enum):
    BOUNDS = 'bounds'
    VERIFY = 'verify'
    EXAMPLE = 'example'


class ExitStatus(int, Enum):
    OK = 0
    CERTIFICATION_FAILURE = 1
    INPUT_ERROR = 2


EXAMPLES = ('davis-kahan', 'sin-theta', 'tightness')


@dataclass
class RunConfig:
    """
    Everything `run` needs; unset experiment parameters fall back to the
    `[defaults]` tables of the configuration.
    """
    command: Command
    matrix_path: Path | None = None
    vector_path: Path | None = None
    ref_vector_path: Path | None = None
    format: str = DEFAULTS['cli']['format']
    trials: int | None = None
    dim_min: int | None = None
    dim_max: int | None = None
    seed: int | None = None
    field: str | None = None
    workers: int | None = None
    suite: str | None = None
    example_name: str | None = None
    n: int | None = None
    eps: float | None = None
    shifted: bool = False

    def __post_init__(self):
        self.command = Command(self.command)
        if self.format not in ('text', 'json'):
            raise InputError(f"unknown format {self.format!r}")
        if self.command is Command.BOUNDS and (self.matrix_path is None or self.vector_path is None):
            raise InputError("bounds requires --matrix and --vector")
        if self.command is Command.EXAMPLE and self.example_name not in EXAMPLES:
            raise InputError(f"example requires one of {', '.join(EXAMPLES)}, got {self.example_name!r}")

    def overrides(self, *names: str) -> dict[str, Any]:
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}


# region commands
def run_bounds(config: RunConfig) -> tuple[dict[str, Any], list[BoundReport], None]:
    A = read_matrix(config.matrix_path)
    y = read_vector(config.vector_path)
    x = None if config.ref_vector_path is None else read_vector(config.ref_vector_path)
    if len(y) != A.dim:
        raise InputError(f"vector has length {len(y)}, operator has dimension {A.dim}")

    inputs = {
        'matrix': str(config.matrix_path),
        'vector': str(config.vector_path),
        'operator_kind': A.kind.value,
        'dimension': A.dim,
    }
    if config.ref_vector_path is not None:
        inputs['ref_vector'] = str(config.ref_vector_path)
    return inputs, bound_catalogue(A, y, x), None


def run_verify(config: RunConfig) -> tuple[dict[str, Any], list[BoundReport], ExperimentResult]:
    kwargs = config.overrides('trials', 'dim_min', 'dim_max', 'seed', 'field', 'workers', 'suite')
    inputs = DEFAULTS['verify'] | kwargs
    # worker count does not change the output
    inputs = {k: v for k, v in inputs.items() if k != 'workers'}
    result = random_verification(**kwargs)
    return inputs, result.reports, result


def run_example(config: RunConfig) -> tuple[dict[str, Any], list[BoundReport], ExperimentResult]:
    match config.example_name:
        case 'davis-kahan':
            kwargs = config.overrides('n', 'eps') | ({'shifted': True} if config.shifted else {})
            inputs = DEFAULTS['davis_kahan'] | kwargs
            result = davis_kahan(**kwargs)
        case 'sin-theta':
            inputs = {}
            result = sin_theta_counterexample()
        case 'tightness':
            kwargs = config.overrides('seed')
            inputs = {'seed': 0} | DEFAULTS['tightness'] | kwargs
            result = invariant_subspace_tightness(**kwargs)
    return {'example': config.example_name} | inputs, result.reports, result


DISPATCH = {
    Command.BOUNDS: run_bounds,
    Command.VERIFY: run_verify,
    Command.EXAMPLE: run_example,
}


def run(config: RunConfig, out: TextIO | None = None) -> int:
    """
    Execute a command and write its report to `out` (stdout by default).

    Returns:
    - int: Exit status, see `ExitStatus`.
    """
    out = sys.stdout if out is None else out
    stopwatch = Stopwatch(config.command.value)
    try:
        inputs, reports, experiment = DISPATCH[config.command](config)
    except (InputError, NotHermitianError) as err:
        log.error("%s", err)
        return ExitStatus.INPUT_ERROR
    except ConvergenceError as err:
        log.error("%s", err)
        return ExitStatus.CERTIFICATION_FAILURE
    except CertificationError as err:
        # zero vectors and similar invalid inputs that survive parsing
        log.error("%s", err)
        return ExitStatus.INPUT_ERROR
    stopwatch.split('compute')

    payload = build_payload(config.command.value, inputs, reports, experiment)
    out.write(to_json(payload) if config.format == 'json' else to_text(payload))
    stopwatch.total()

    if not certified(payload):
        failed = [r['bound_name'] for r in payload['reports'] if not r['skipped'] and not r['holds']]
        if experiment is not None:
            failed += experiment.failed_checks()
        log.error("certification failed: %s", ', '.join(failed))
        return ExitStatus.CERTIFICATION_FAILURE
    return ExitStatus.OK


# region parsing
def parse_dims(text: str) -> tuple[int, int]:
    """
    Parse `MIN..MAX` (or a single `N`) into a dimension range.

    Examples:
    >>> parse_dims('2..12')
    (2, 12)
    """
    low, sep, high = text.partition('..')
    try:
        dims = (int(low), int(high if sep else low))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN..MAX, got {text!r}") from None
    return dims


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='rqbounds',
        description='Certify Rayleigh quotient error bounds for Hermitian operators',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'json'], default=DEFAULTS['cli']['format'])
    sub = parser.add_subparsers(dest='command', required=True)

    bounds = sub.add_parser('bounds', parents=[common], help='Evaluate every bound for a vector')
    bounds.add_argument('--matrix', type=Path, required=True, help='Matrix Market file')
    bounds.add_argument('--vector', type=Path, required=True, help='Approximate eigenvector')
    bounds.add_argument('--ref-vector', type=Path, help='Reference eigenvector x')

    verify = sub.add_parser('verify', parents=[common], help='Randomized invariant checks')
    verify.add_argument('--trials', type=int)
    verify.add_argument('--dims', type=parse_dims, help='MIN..MAX')
    verify.add_argument('--seed', type=int)
    verify.add_argument('--field', choices=['real', 'complex'])
    verify.add_argument('--workers', type=int)
    verify.add_argument('--suite', choices=['identities', 'full'])

    example = sub.add_parser('example', parents=[common], help='Reproduce a worked example')
    example.add_argument('name', choices=EXAMPLES)
    example.add_argument('--n', type=int)
    example.add_argument('--eps', type=float)
    example.add_argument('--shifted', action='store_true')
    example.add_argument('--seed', type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    dims = getattr(args, 'dims', None) or (None, None)
    return RunConfig(
        command = args.command,
        matrix_path = getattr(args, 'matrix', None),
        vector_path = getattr(args, 'vector', None),
        ref_vector_path = getattr(args, 'ref_vector', None),
        format = args.format,
        trials = getattr(args, 'trials', None),
        dim_min = dims[0],
        dim_max = dims[1],
        seed = getattr(args, 'seed', None),
        field = getattr(args, 'field', None),
        workers = getattr(args, 'workers', None),
        suite = getattr(args, 'suite', None),
        example_name = getattr(args, 'name', None),
        n = getattr(args, 'n', None),
        eps = getattr(args, 'eps', None),
        shifted = getattr(args, 'shifted', False),
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level = CONFIG['logging']['level'],
        format = CONFIG['logging']['format'],
        stream = sys.stderr,
    )
    print(BANNER, file=sys.stderr)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(ExitStatus.OK if exc.code == 0 else ExitStatus.INPUT_ERROR)

    try:
        config = config_from_args(args)
    except InputError as err:
        log.error("%s", err)
        return ExitStatus.INPUT_ERROR
    return int(run(config))


if __name__ == '__main__':
    sys.exit(main())
