"""
Serialization of bound reports and experiment results.

to_json():
    Stable key order, floats with 17 significant digits, non-finite as null.
to_text():
    Human-readable rendering through the jinja2 template `report.txt`.
"""

import json
import math
from dataclasses import asdict
from typing import Any

from jinja2 import Environment, FileSystemLoader

from rqbounds import __version__
from rqbounds.bounds import BoundReport
from rqbounds.config import get_paths_from_config
from rqbounds.experiments import ExperimentResult


REPORT_KEYS = ['bound_name', 'lhs', 'rhs', 'holds', 'equality', 'skipped', 'reason', 'ingredients']


# region payload
def report_record(report: BoundReport) -> dict[str, Any]:
    record = asdict(report)
    out = {key: record[key] for key in REPORT_KEYS}
    if report.lower is not None:
        out['lower'] = report.lower
    return out


def build_payload(
    command: str,
    inputs: dict[str, Any],
    reports: list[BoundReport],
    experiment: ExperimentResult | None = None,
) -> dict[str, Any]:
    """
    Assemble the report document.

    Schema: {tool_version, command, inputs, reports: [{bound_name, lhs, rhs,
    holds, equality, skipped, reason, ingredients}], experiment?}
    """
    payload = {
        'tool_version': __version__,
        'command': command,
        'inputs': inputs,
        'reports': [report_record(r) for r in reports],
    }
    if experiment is not None:
        payload['experiment'] = {
            'name': experiment.name,
            'passed': experiment.passed,
            'scalars': experiment.scalars,
            'checks': experiment.checks,
            'notes': experiment.notes,
        }
        if experiment.table is not None:
            payload['experiment']['table'] = experiment.table.reset_index().to_dict(orient='records')
    return payload


def certified(payload: dict[str, Any]) -> bool:
    """All evaluated bounds hold and every experiment check passed."""
    holds = all(r['holds'] for r in payload['reports'] if not r['skipped'])
    experiment = payload.get('experiment')
    return holds and (experiment is None or experiment['passed'])


# region json
def format_float(value: float) -> str:
    """17 significant digits, always recognizable as a float; non-finite values become null."""
    if not math.isfinite(value):
        return 'null'
    text = f"{value:.17g}"
    if not any(c in text for c in '.en'):
        text += '.0'
    return text


def _encode(value: Any, level: int, indent: int) -> str:
    pad = ' ' * (indent * (level + 1))
    end = ' ' * (indent * level)
    match value:
        case bool() | None:
            return json.dumps(value)
        case float():
            return format_float(value)
        case int():
            return str(value)
        case str():
            return json.dumps(value, ensure_ascii=False)
        case dict():
            if not value:
                return '{}'
            items = [f"{pad}{json.dumps(str(k))}: {_encode(v, level + 1, indent)}" for k, v in value.items()]
            return '{\n' + ',\n'.join(items) + '\n' + end + '}'
        case list() | tuple():
            if not value:
                return '[]'
            items = [f"{pad}{_encode(v, level + 1, indent)}" for v in value]
            return '[\n' + ',\n'.join(items) + '\n' + end + ']'
        case _ if hasattr(value, 'item'):
            # numpy scalars
            return _encode(value.item(), level, indent)
        case _:
            raise TypeError(f"Cannot serialize {type(value)}")


def to_json(payload: dict[str, Any], indent: int = 2) -> str:
    return _encode(payload, 0, indent) + '\n'


# region text
def get_environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(get_paths_from_config('templates')),
        trim_blocks=True,
        lstrip_blocks=True,
    )
    env.filters['num'] = lambda v: 'n/a' if v is None else f"{v:.12g}"
    env.filters['firstline'] = lambda s: '' if not s else str(s).splitlines()[0]
    return env


ENV: Environment = get_environment()


def to_text(payload: dict[str, Any], env: Environment | None = None) -> str:
    env = ENV if env is None else env
    template = env.get_template('report.txt')
    return template.render(**payload, certified=certified(payload))
