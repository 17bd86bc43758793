from lib.models.report import Experiment, ExperimentConfig, ExperimentReport
from lib.process import plot_columns, report_frame, summary_frame


def test_documented_columns_lead():
    columns = plot_columns(
        Experiment.MAXCUT,
        [dict(cut=1, extra=0, bitstring='001'), dict(probability=0.5)],
    )
    assert columns == ['bitstring', 'probability', 'cut', 'extra']


def test_unknown_columns_keep_their_order():
    assert plot_columns(Experiment.MERMIN, [dict(b=1, a=2)]) == ['b', 'a']


def test_report_frame():
    report = ExperimentReport(
        ExperimentConfig(Experiment.VQE),
        [
            dict(energy=-1.0, iteration=0, theta=(0.1, 0.2)),
            dict(energy=-1.5, iteration=1, theta=(0.3, 0.4)),
        ],
    )
    frame = report_frame(report)
    assert list(frame.columns) == ['iteration', 'energy', 'theta']
    assert frame['theta'].tolist() == ['0.1+0.2', '0.3+0.4']


def test_empty_report_frame():
    assert report_frame(ExperimentReport(ExperimentConfig('mermin'))).empty


def test_summary_frame_skips_nested_entries():
    reports = [
        ExperimentReport(
            ExperimentConfig(Experiment.CHSH, seed=1),
            summary=dict(violations=3, detail=dict(a=1)),
        ).finish(),
        ExperimentReport(
            ExperimentConfig(Experiment.QSCORE),
            summary=dict(qscore=4),
        ).finish(),
    ]
    frame = summary_frame(reports)
    assert frame['experiment'].tolist() == ['chsh', 'qscore']
    assert 'detail' not in frame.columns
    assert frame['violations'].tolist()[0] == 3
    assert frame['seed'].tolist() == [1, 0]
