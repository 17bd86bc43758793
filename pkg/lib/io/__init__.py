"""Reading and writing reports, configs, circuits and plot data."""

from typing import Final, Tuple

from .reports import (
    dump_report,
    load_config,
    read_circuit,
    read_json,
    read_report,
    write_circuit,
    write_report,
)
from .tables import emit_plot_data, read_rows

__all__: Final[Tuple[str, ...]] = (
    'dump_report',
    'emit_plot_data',
    'load_config',
    'read_circuit',
    'read_json',
    'read_report',
    'read_rows',
    'write_circuit',
    'write_report',
)
