"""CSV plot series written and read through ``aiocsv``."""

from logging import getLogger
from pathlib import Path
from typing import Any, Dict, List, Union

from aiocsv import AsyncDictReader, AsyncWriter
from anyio import Path as AsyncPath
from anyio import open_file

from ..errors import ConfigError, WorkbenchError
from ..models.report import ExperimentReport
from ..process import report_frame

#
logger = getLogger('IO')

PathLike = Union[str, Path]


async def emit_plot_data(report: ExperimentReport, path: PathLike, /) -> Path:
    """Write one CSV row per report point, header first."""
    path = Path(path)
    frame = report_frame(report)
    rows = frame.astype(object).where(frame.notna(), '').values.tolist()
    try:
        await AsyncPath(path.parent).mkdir(parents=True, exist_ok=True)
        async with await open_file(path, 'w', newline='') as file:
            writer = AsyncWriter(file)
            await writer.writerow(list(frame.columns))
            await writer.writerows(rows)
    except OSError as error:
        raise WorkbenchError(
            'Cannot write plot data `%s`: %s.' % (path, error)
        ) from error
    logger.info(
        '[%s] Wrote %s plot rows to %s.', report.experiment, len(frame), path
    )
    return path


async def read_rows(path: PathLike, /) -> List[Dict[str, Any]]:
    """Read a CSV file with a header row into dictionaries."""
    try:
        async with await open_file(path, 'r', newline='') as file:
            return [dict(_) async for _ in AsyncDictReader(file)]
    except OSError as error:
        raise ConfigError('Cannot read `%s`: %s.' % (path, error)) from error
