from typing import Any, Dict, Final, Iterable, List, Mapping, Tuple

from pandas import DataFrame

from .models.report import Experiment, ExperimentReport

#
PLOT_COLUMNS: Final[Mapping[Experiment, Tuple[str, ...]]] = {
    Experiment.CHSH: ('theta', 'estimate', 'stderr', 'theory'),
    Experiment.GHZ: ('quantity', 'value', 'stderr', 'theory'),
    Experiment.MERMIN: ('monomial', 'sign', 'estimate', 'stderr', 'theory'),
    Experiment.MAXCUT: ('bitstring', 'probability', 'cut'),
    Experiment.QSCORE: ('size', 'beta', 'beta_stderr', 'passed'),
    Experiment.NEUTRINO: (
        'L_over_E',
        'p_e',
        'p_mu',
        'p_tau',
        'p_e_stderr',
        'p_mu_stderr',
        'p_tau_stderr',
        'theory_e',
        'theory_mu',
        'theory_tau',
    ),
    Experiment.JONES: (
        'theta',
        're_trace',
        're_trace_stderr',
        'im_trace',
        'im_trace_stderr',
        'theory_re',
        'theory_im',
    ),
    Experiment.VQE: ('iteration', 'energy', 'stderr', 'gradient_norm'),
    Experiment.QUTRIT_FIT: ('delay', 'p0', 'p1', 'p2'),
    Experiment.TRANSPILE: ('stage', 'gates', 'two_qubit', 'cz'),
}


def _cell(value: Any, /) -> Any:
    if isinstance(value, (list, tuple, set, frozenset)):
        return '+'.join(map(str, value))
    if isinstance(value, complex):
        return str(value)
    return value


def plot_columns(
    experiment: Experiment,
    points: Iterable[Mapping[str, Any]],
    /,
) -> List[str]:
    """The documented leading columns, then the rest in first-seen order."""
    seen: Dict[str, None] = {}
    for point in points:
        seen.update(dict.fromkeys(point))
    leading = [_ for _ in PLOT_COLUMNS.get(experiment, ()) if _ in seen]
    return leading + [_ for _ in seen if _ not in leading]


def report_frame(report: ExperimentReport, /) -> DataFrame:
    """One row per report point with a stable column order."""
    columns = plot_columns(report.experiment, report.points)
    return DataFrame(
        [[_cell(point.get(_)) for _ in columns] for point in report.points],
        columns=columns or None,
    )


def summary_frame(reports: Iterable[ExperimentReport], /) -> DataFrame:
    """Scalar summary entries of several reports side by side."""
    rows = []
    for report in reports:
        row: Dict[str, Any] = dict(
            experiment=str(report.experiment),
            seed=report.seed,
            elapsed=report.elapsed,
        )
        row.update(
            (key, _cell(value))
            for key, value in report.summary.items()
            if not isinstance(value, Mapping)
        )
        rows.append(row)
    return DataFrame(rows)
