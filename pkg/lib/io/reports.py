"""JSON reports, experiment configs and circuit files."""

from logging import getLogger
from pathlib import Path
from typing import Any, Final, FrozenSet, Union

from anyio import Path as AsyncPath
from orjson import (
    OPT_INDENT_2,
    OPT_NON_STR_KEYS,
    OPT_SERIALIZE_NUMPY,
    dumps,
    loads,
)

from ..errors import ConfigError, WorkbenchError
from ..models.report import ExperimentConfig, ExperimentReport
from ..models.topology import NativeCircuit
from ..transpiler.formats import (
    Document,
    from_json,
    from_qasm,
    to_json,
    to_qasm,
)

#
logger = getLogger('IO')

PathLike = Union[str, Path]
QASM_SUFFIXES: Final[FrozenSet[str]] = frozenset({'.qasm'})


def _default(value: Any, /) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError('Cannot serialize %r.' % type(value).__name__)


def dump_json(data: Any, /) -> bytes:
    return dumps(
        data,
        default=_default,
        option=OPT_INDENT_2 | OPT_SERIALIZE_NUMPY | OPT_NON_STR_KEYS,
    )


def dump_report(report: ExperimentReport, /) -> bytes:
    return dump_json(report.to_dict())


async def write_report(report: ExperimentReport, path: PathLike, /) -> Path:
    path = AsyncPath(path)
    try:
        await path.parent.mkdir(parents=True, exist_ok=True)
        await path.write_bytes(dump_report(report))
    except OSError as error:
        raise WorkbenchError(
            'Cannot write report `%s`: %s.' % (path, error)
        ) from error
    logger.info('Wrote the %s report to %s.', report.experiment, path)
    return Path(path)


async def read_json(path: PathLike, /, what: str = 'file') -> Any:
    try:
        return loads(await AsyncPath(path).read_bytes())
    except OSError as error:
        raise ConfigError(
            'Cannot read %s `%s`: %s.' % (what, path, error)
        ) from error
    except ValueError as error:
        raise ConfigError(
            'The %s `%s` is not valid JSON.' % (what, path)
        ) from error


async def read_report(path: PathLike, /) -> ExperimentReport:
    data = await read_json(path, 'report')
    try:
        return ExperimentReport.from_dict(data)
    except (KeyError, TypeError) as error:
        raise ConfigError('Malformed report `%s`.' % path) from error


async def load_config(path: PathLike, /) -> ExperimentConfig:
    """Read an experiment config; unknown keys are rejected."""
    return ExperimentConfig.from_dict(await read_json(path, 'config'))


async def read_circuit(path: PathLike, /) -> Document:
    """Read a JSON circuit or, by the ``.qasm`` suffix, OpenQASM 2 text."""
    path = AsyncPath(path)
    try:
        if path.suffix.lower() in QASM_SUFFIXES:
            return from_qasm(await path.read_text())
        return from_json(await path.read_bytes())
    except OSError as error:
        raise ConfigError(
            'Cannot read circuit `%s`: %s.' % (path, error)
        ) from error


async def write_circuit(circuit: Document, path: PathLike, /) -> Path:
    """Write ``circuit`` in the format the suffix of ``path`` names."""
    path = AsyncPath(path)
    try:
        await path.parent.mkdir(parents=True, exist_ok=True)
        if path.suffix.lower() in QASM_SUFFIXES:
            await path.write_text(to_qasm(circuit))
        else:
            await path.write_bytes(to_json(circuit))
    except OSError as error:
        raise WorkbenchError(
            'Cannot write circuit `%s`: %s.' % (path, error)
        ) from error
    logger.debug(
        'Wrote a %s circuit to %s.',
        'native' if isinstance(circuit, NativeCircuit) else 'logical',
        path,
    )
    return Path(path)
