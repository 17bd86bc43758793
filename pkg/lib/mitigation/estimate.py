"""The shared estimation pipeline: raw shots, REM, RC and ZNE."""

from logging import getLogger
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from numpy import float64, ndarray, zeros

from ..backend import Backend
from ..models.circuit import Circuit
from ..models.mitigation import (
    MitigatedValue,
    Mitigation,
    MitigationTag,
    RemCalibration,
)
from ..models.observable import Observable, PauliString, Term
from ..models.state import Counts
from ..models.topology import NativeCircuit
from ..observables.grouping import group_qubitwise
from ..observables.measure import measurement_circuit, parity_signs
from ..utils.seeds import derive_seed
from .bootstrap import bootstrap_stderr
from .rem import apply_rem, cached_calibration
from .twirl import pauli_twirl_cz
from .zne import fold_global, zne_extrapolate

#
logger = getLogger('Estimator')


def pool_counts(counts: Iterable[Counts], /) -> Counts:
    table: Dict[str, int] = {}
    for _ in counts:
        for key, value in _.items():
            table[key] = table.get(key, 0) + value
    return Counts(table)


def split_shots(shots: int, parts: int, /) -> List[int]:
    """Spread ``shots`` over ``parts`` runs, the remainder going first."""
    base, remainder = divmod(shots, parts)
    sizes = [base + (_ < remainder) for _ in range(parts)]
    return [_ for _ in sizes if _]


def run_variants(
    native: NativeCircuit,
    shots: int,
    backend: Backend,
    mitigation: Mitigation,
    seed: int,
    /,
) -> Counts:
    """Run ``native``, or its twirled variants when RC is on, and pool.

    The shot budget is shared by the variants.
    """
    if not mitigation.rc:
        return backend.run(native, shots, derive_seed(seed, 'shots'))
    variants = pauli_twirl_cz(native, mitigation.rc, derive_seed(seed, 'rc'))
    budget = split_shots(shots, len(variants))
    return pool_counts(
        backend.run(variant, part, derive_seed(seed, 'shots', index))
        for index, (variant, part) in enumerate(zip(variants, budget))
    )


def readout_calibration(
    native: NativeCircuit,
    backend: Backend,
    mitigation: Mitigation,
    seed: int,
    /,
) -> Optional[RemCalibration]:
    if not mitigation.rem:
        return None
    _, physical = backend.readout_qubits(native)
    return cached_calibration(
        backend, physical, mitigation.rem_mode, mitigation.rem_shots, seed
    )


def counts_distribution(
    counts: Counts,
    calibration: Optional[RemCalibration] = None,
    /,
) -> ndarray:
    if calibration is None:
        return counts.frequencies()
    return apply_rem(counts, calibration)


def estimate_terms(
    circuit: Circuit,
    basis: PauliString,
    terms: Sequence[Term],
    shots: int,
    backend: Backend,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    /,
) -> MitigatedValue:
    """Estimate ``Σ c·⟨P⟩`` over terms measurable in ``basis``."""
    mitigation = mitigation or Mitigation()
    constant = sum(c for c, p in terms if p.is_identity)
    terms = [(c, p) for c, p in terms if not p.is_identity]
    if not terms:
        return MitigatedValue(constant)
    native = backend.compile(measurement_circuit(circuit, basis))
    calibration = readout_calibration(native, backend, mitigation, seed)
    support = basis.support
    signs = zeros(2 ** len(support), dtype=float64)
    for coefficient, pauli in terms:
        signs += coefficient * parity_signs(
            len(support), [support.index(_) for _ in pauli.support]
        )

    def statistic(counts: Counts, /) -> float:
        return float(counts_distribution(counts, calibration) @ signs)

    tags = mitigation.tags - {MitigationTag.ZNE}
    points: List[Tuple[float, float, float]] = []
    for index, scale in enumerate(mitigation.zne or (1,)):
        counts = run_variants(
            fold_global(native, scale),
            shots,
            backend,
            mitigation,
            derive_seed(seed, 'scale', scale),
        )
        stderr = bootstrap_stderr(
            counts,
            statistic,
            mitigation.bootstrap,
            derive_seed(seed, 'bootstrap', scale),
        )
        points.append((scale, statistic(counts), stderr))
        logger.debug(
            '[%s] Basis %s at scale %s: %.4f ± %.4f.',
            index,
            basis,
            scale,
            points[-1][1],
            stderr,
        )
    if len(points) > 1:
        value = zne_extrapolate(points, tags)
    else:
        value = MitigatedValue(points[0][1], points[0][2], tags)
    return value + MitigatedValue(constant) if constant else value


def estimate_pauli(
    circuit: Circuit,
    pauli: PauliString,
    shots: int,
    backend: Backend,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    /,
) -> MitigatedValue:
    return estimate_terms(
        circuit, pauli, [(1.0, pauli)], shots, backend, mitigation, seed
    )


def estimate_observable(
    circuit: Circuit,
    observable: Observable,
    shots: int,
    backend: Backend,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    /,
) -> MitigatedValue:
    """Estimate every qubit-wise group with ``shots`` shots and sum them.

    Groups are independent, so their errors add in quadrature.
    """
    total = MitigatedValue(0.0)
    for index, setting in enumerate(group_qubitwise(observable)):
        total = total + estimate_terms(
            circuit,
            setting.basis,
            setting.terms,
            shots,
            backend,
            mitigation,
            derive_seed(seed, 'setting', index),
        )
    return total


def estimate_distribution(
    circuit: Circuit,
    shots: int,
    backend: Backend,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    /,
) -> Tuple[Counts, ndarray]:
    """Raw counts and the mitigated outcome distribution of ``circuit``.

    Only REM and RC apply to distributions; ZNE settings are ignored.
    """
    mitigation = mitigation or Mitigation()
    if mitigation.zne:
        logger.warning('ZNE does not apply to distributions; skipping it.')
    native = backend.compile(circuit)
    counts = run_variants(native, shots, backend, mitigation, seed)
    calibration = readout_calibration(native, backend, mitigation, seed)
    return counts, counts_distribution(counts, calibration)


def estimate_outcomes(
    circuit: Circuit,
    shots: int,
    backend: Backend,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    /,
) -> Tuple[ndarray, ndarray]:
    """The mitigated outcome distribution with bootstrap error bars."""
    mitigation = mitigation or Mitigation()
    if mitigation.zne:
        logger.warning('ZNE does not apply to distributions; skipping it.')
    native = backend.compile(circuit)
    counts = run_variants(native, shots, backend, mitigation, seed)
    calibration = readout_calibration(native, backend, mitigation, seed)

    def statistic(_: Counts, /) -> ndarray:
        return counts_distribution(_, calibration)

    return statistic(counts), bootstrap_stderr(
        counts,
        statistic,
        mitigation.bootstrap,
        derive_seed(seed, 'bootstrap'),
    )
