"""GHZ preparation, the Mermin polynomial, tomography entropies and the
comparison of calibration sets."""

from itertools import combinations
from logging import getLogger
from math import cos, pi, sqrt
from typing import Any, Dict, Final, Iterable, List, Optional, Tuple, Union

from numpy import abs as nabs, complex128, diag, ndarray, zeros

from ..backend import Backend
from ..mitigation.estimate import estimate_distribution, estimate_pauli
from ..models.circuit import Circuit, Gate
from ..models.mitigation import Mitigation
from ..models.noise import NoiseProfile
from ..models.observable import PauliString, TomographyResult
from ..models.results import MerminReport, MonomialEstimate
from ..models.state import QuantumState
from ..models.topology import DEFAULT_CENTER, DEFAULT_SIZE
from ..observables.entropy import von_neumann_entropy
from ..observables.tomography import project_density, state_tomography
from ..sim import state_fidelity
from ..sim.linalg import reduce_density
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed

#
logger = getLogger('GHZ')

TOMOGRAPHY_SHOTS: Final[int] = 3500
MERMIN_SHOTS: Final[int] = 10_000
FIRST_PAIR: Final[Tuple[int, ...]] = (0, 1)
LAST_TRIPLE: Final[Tuple[int, ...]] = (2, 3, 4)
# (|00⟩⟨00| + |11⟩⟨11|) / 2
GHZ_PAIR: Final[QuantumState] = QuantumState(diag([0.5, 0, 0, 0.5]))


def ghz5_circuit(
    num_qubits: int = DEFAULT_SIZE,
    /,
    center: int = DEFAULT_CENTER,
) -> Circuit:
    """``H`` on ``center`` and a ``CNOT`` from it to every other qubit."""
    return Circuit(
        num_qubits,
        [Gate.h(center)]
        + [Gate.cnot(center, _) for _ in range(num_qubits) if _ != center],
        dict(label='ghz%s' % num_qubits),
    )


def _reduced(
    result: TomographyResult,
    keep: Tuple[int, ...],
    /,
) -> QuantumState:
    """Trace out the linear-inversion estimate first, then clip."""
    rho = result.raw
    if rho is None:
        rho = result.state.density_matrix()
    return QuantumState(
        project_density(reduce_density(rho, keep, result.state.num_qubits))
    )


def ghz_state(num_qubits: int = DEFAULT_SIZE, /) -> QuantumState:
    vector = zeros(2**num_qubits, dtype=complex128)
    vector[0] = vector[-1] = 1 / sqrt(2)
    return QuantumState(vector)


def mermin_monomials(
    num_qubits: int = DEFAULT_SIZE,
    /,
) -> List[Tuple[str, int]]:
    """The ``X``/``Y`` monomials with an even number of ``Y`` and their
    signs, ``+1`` for ``XXXXX``, ``-1`` for two ``Y`` and ``+1`` for four."""
    monomials = []
    for count in range(0, num_qubits + 1, 2):
        for positions in combinations(range(num_qubits), count):
            label = ''.join(
                'Y' if _ in positions else 'X' for _ in range(num_qubits)
            )
            monomials.append((label, (-1) ** (count // 2)))
    return monomials


def monomial_theory(label: str, /) -> float:
    """``⟨GHZ|P|GHZ⟩ = Re(i^k)`` for ``k`` letters ``Y``."""
    return round(cos(label.count('Y') * pi / 2))


async def mermin_estimate(
    shots_per_monomial: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> MerminReport:
    """Measure every monomial separately and sum them with their signs."""
    circuit = ghz5_circuit()

    def run(item: Tuple[str, int], /) -> MonomialEstimate:
        label, sign = item
        logger.info('Estimating monomial %s.', label)
        estimate = estimate_pauli(
            circuit,
            PauliString(label),
            shots_per_monomial,
            backend,
            mitigation,
            derive_seed(seed, 'mermin', label),
        )
        return MonomialEstimate(label, sign, estimate, monomial_theory(label))

    report = MerminReport(
        await parallel_map(run, mermin_monomials(), label='monomial')
    )
    logger.info(
        'Mermin polynomial %.3f ± %.3f (theory %s).',
        report.aggregate.value,
        report.aggregate.stderr,
        report.theory,
    )
    return report


async def ghz_entropies(
    shots_per_setting: int,
    backend: Backend,
    /,
    seed: int = 0,
    rem: bool = True,
) -> Dict[str, Any]:
    """Tomography of the GHZ state with the entropies of the full state,
    of the first pair and of the last three qubits."""
    result = await state_tomography(
        ghz5_circuit(),
        range(DEFAULT_SIZE),
        shots_per_setting,
        backend,
        seed,
        rem,
    )
    pair = _reduced(result, FIRST_PAIR)
    triple = _reduced(result, LAST_TRIPLE)
    entropies = dict(
        entropy_full=von_neumann_entropy(result.state),
        entropy_12=von_neumann_entropy(pair),
        entropy_345=von_neumann_entropy(triple),
        fidelity=state_fidelity(result.state, ghz_state()),
        fidelity_12=state_fidelity(pair, GHZ_PAIR),
        theory_full=0.0,
        theory_12=1.0,
        theory_345=1.0,
        settings=len(result.settings_used),
        shots_per_setting=shots_per_setting,
    )
    logger.info(
        'GHZ entropies %.3f, %.3f, %.3f bits (fidelity %.3f).',
        entropies['entropy_full'],
        entropies['entropy_12'],
        entropies['entropy_345'],
        entropies['fidelity'],
    )
    return entropies


def total_variation(p: ndarray, q: ndarray, /) -> float:
    return float(nabs(p - q).sum() / 2)


async def compare_calibrations(
    profiles: Iterable[Union[NoiseProfile, str]],
    shots: int,
    /,
    seed: int = 0,
    rem_shots: int = 10_000,
) -> List[Dict[str, Any]]:
    """GHZ fidelity and raw against REM outcome distributions per profile."""
    circuit = ghz5_circuit().extend([Gate.measure(*range(DEFAULT_SIZE))])
    ideal = ghz_state().probabilities()

    def run(item: Tuple[int, Union[NoiseProfile, str]], /) -> Dict[str, Any]:
        index, profile = item
        backend = Backend(profile)
        logger.info('[%s] Running GHZ on `%s`.', index, backend.name)
        counts, mitigated = estimate_distribution(
            circuit,
            shots,
            backend,
            Mitigation(rem=True, rem_shots=rem_shots),
            derive_seed(seed, 'calibration', index),
        )
        raw = counts.frequencies(DEFAULT_SIZE)
        state = backend.logical_state(circuit)
        return dict(
            profile=backend.name,
            fidelity=state_fidelity(state, ghz_state()),
            raw_00000=float(raw[0]),
            raw_11111=float(raw[-1]),
            rem_00000=float(mitigated[0]),
            rem_11111=float(mitigated[-1]),
            raw_distance=total_variation(raw, ideal),
            rem_distance=total_variation(mitigated, ideal),
        )

    return await parallel_map(run, enumerate(profiles), label='profile')
