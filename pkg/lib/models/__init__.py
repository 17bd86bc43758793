from typing import Final, Tuple

from .circuit import Circuit, Gate, GateKind
from .graph import Graph, IsingProblem
from .knot import BraidWord, KnotReport
from .mitigation import (
    MitigatedValue,
    Mitigation,
    MitigationTag,
    RemCalibration,
    RemMode,
)
from .neutrino import MassSplittings, OscillationPoint, PmnsMatrix
from .noise import NoiseProfile, QutritRates, QutritTrace
from .observable import (
    MeasurementSetting,
    Observable,
    PauliString,
    TomographyResult,
)
from .report import Experiment, ExperimentConfig, ExperimentReport
from .results import (
    ChshPoint,
    MerminReport,
    MonomialEstimate,
    QScoreReport,
)
from .state import Counts, QuantumState
from .topology import NativeCircuit, Topology
from .vqe import AimParams, AnsatzState, VqeIteration, VqeTrace

__all__: Final[Tuple[str, ...]] = (
    'Circuit',
    'Gate',
    'GateKind',
    'BraidWord',
    'KnotReport',
    'MitigatedValue',
    'Mitigation',
    'MitigationTag',
    'RemCalibration',
    'RemMode',
    'Graph',
    'IsingProblem',
    'MassSplittings',
    'OscillationPoint',
    'PmnsMatrix',
    'NoiseProfile',
    'QutritRates',
    'QutritTrace',
    'MeasurementSetting',
    'Observable',
    'PauliString',
    'TomographyResult',
    'ChshPoint',
    'MerminReport',
    'MonomialEstimate',
    'QScoreReport',
    'Experiment',
    'ExperimentConfig',
    'ExperimentReport',
    'Counts',
    'QuantumState',
    'NativeCircuit',
    'Topology',
    'AimParams',
    'AnsatzState',
    'VqeIteration',
    'VqeTrace',
)
