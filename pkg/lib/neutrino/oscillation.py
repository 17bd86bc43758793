"""Three-flavor oscillation on two qubits.

Flavor states are the basis states ``00`` (e), ``01`` (mu), ``10`` (tau)
and ``11`` (a decoupled fictitious flavor). A muon neutrino is moved to the
mass basis, picks up the phases ``S1 ⊗ S2`` and is moved back.
"""

from logging import getLogger
from math import pi
from typing import Final, List, Optional, Tuple

from numpy import argmax, asarray, diag, exp, float64, linspace, ndarray
from scipy.optimize import minimize_scalar

from ..backend import Backend
from ..errors import ConfigError
from ..mitigation.estimate import estimate_outcomes
from ..models.circuit import Circuit, Gate
from ..models.mitigation import Mitigation
from ..models.neutrino import (
    PHASE_CONSTANT,
    MassSplittings,
    OscillationPoint,
    PmnsMatrix,
)
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed

#
logger = getLogger('Neutrino')

DEFAULT_POINTS: Final[int] = 64
DEFAULT_SHOTS: Final[int] = 5000
DEFAULT_LMAX: Final[float] = 16_000.0
MUON_INDEX: Final[int] = 1
# big-endian: the muon state is 01, which one line of the source writes as 10
FLAVOR_NOTE: Final[str] = (
    'muon neutrino prepared as basis index 1 (|01>); outcomes '
    '00=e, 01=mu, 10=tau, 11=x'
)


def evolution_phases(
    L_over_E: float,
    splittings: Optional[MassSplittings] = None,
    /,
) -> Tuple[float, float]:
    """``(φ21, φ31)`` in radians for ``L/E`` in km/GeV."""
    if L_over_E < 0:
        raise ConfigError('L/E must be non-negative, got %r.' % L_over_E)
    splittings = splittings or MassSplittings()
    return (
        PHASE_CONSTANT * splittings.dm21sq * L_over_E,
        PHASE_CONSTANT * splittings.dm31sq * L_over_E,
    )


def oscillation_circuit(
    L_over_E: float,
    /,
    splittings: Optional[MassSplittings] = None,
    pmns: Optional[PmnsMatrix] = None,
) -> Circuit:
    """Prepare the muon state, evolve for ``L/E`` and measure both qubits.

    ``S1 = diag(1, e^{-iφ31})`` acts on qubit 0 and ``S2 = diag(1,
    e^{-iφ21})`` on qubit 1; ``S(φ)`` is ``RZ(-φ)`` up to global phase.
    """
    phi21, phi31 = evolution_phases(L_over_E, splittings)
    u = (pmns or PmnsMatrix()).u_exact
    return Circuit(
        2,
        [
            Gate.x(1),
            Gate.unitary(u.conj().T, 0, 1),
            Gate.rz(-phi31, 0),
            Gate.rz(-phi21, 1),
            Gate.unitary(u, 0, 1),
            Gate.measure(0, 1),
        ],
        dict(label='neutrino', L_over_E=float(L_over_E)),
    )


def flavor_amplitudes(
    L_over_E: float,
    /,
    splittings: Optional[MassSplittings] = None,
    pmns: Optional[PmnsMatrix] = None,
) -> ndarray:
    phi21, phi31 = evolution_phases(L_over_E, splittings)
    u = (pmns or PmnsMatrix()).u_exact
    phases = exp(-1j * asarray([0, phi21, phi31, phi21 + phi31]))
    return u @ diag(phases) @ u.conj().T[:, MUON_INDEX]


def theoretical_probabilities(
    L_over_E: float,
    /,
    splittings: Optional[MassSplittings] = None,
    pmns: Optional[PmnsMatrix] = None,
) -> Tuple[float, float, float]:
    """``|⟨ν_α|U·diag(phases)·U†|ν_μ⟩|²`` for ``α`` in e, mu, tau."""
    probabilities = abs(flavor_amplitudes(L_over_E, splittings, pmns)) ** 2
    return tuple(float(_) for _ in probabilities[:3])


def first_minimum(
    splittings: Optional[MassSplittings] = None,
    /,
    pmns: Optional[PmnsMatrix] = None,
    resolution: int = 4000,
) -> float:
    """The ``L/E`` of the first local minimum of the muon survival.

    A grid over the first two ``φ31`` periods brackets the minimum, which is
    then refined with a bounded scalar search.
    """
    splittings = splittings or MassSplittings()
    horizon = 4 * pi / (PHASE_CONSTANT * splittings.dm31sq)
    grid = linspace(0, horizon, resolution)

    def survival(x: float, /) -> float:
        return theoretical_probabilities(x, splittings, pmns)[MUON_INDEX]

    values = asarray([survival(_) for _ in grid], dtype=float64)
    falling = values[1:-1] < values[:-2]
    rising = values[1:-1] <= values[2:]
    found = falling & rising
    if not found.any():
        raise ConfigError('Muon survival has no minimum below %.1f.' % horizon)
    index = int(argmax(found)) + 1
    result = minimize_scalar(
        survival,
        bounds=(grid[index - 1], grid[index + 1]),
        method='bounded',
        options=dict(xatol=1e-6),
    )
    return float(result.x)


def oscillation_point(
    L_over_E: float,
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    splittings: Optional[MassSplittings] = None,
    pmns: Optional[PmnsMatrix] = None,
) -> OscillationPoint:
    distribution, stderr = estimate_outcomes(
        oscillation_circuit(L_over_E, splittings, pmns),
        shots,
        backend,
        mitigation,
        seed,
    )
    return OscillationPoint(
        L_over_E,
        distribution.clip(0, 1),
        stderr,
        theoretical_probabilities(L_over_E, splittings, pmns),
    )


async def oscillation_scan(
    points: int,
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    lmax: float = DEFAULT_LMAX,
    splittings: Optional[MassSplittings] = None,
    pmns: Optional[PmnsMatrix] = None,
) -> List[OscillationPoint]:
    """Run ``points`` evenly spaced ``L/E`` values in ``[0, lmax]``."""
    if points < 1:
        raise ConfigError('An oscillation scan needs at least one point.')
    if lmax < 0:
        raise ConfigError('`lmax` must be non-negative, got %r.' % lmax)
    pmns = pmns or PmnsMatrix()
    logger.debug('Mixing matrix repaired by %.2e.', pmns.deviation)

    def run(item: Tuple[int, float], /) -> OscillationPoint:
        index, L_over_E = item
        logger.info('[%s] Oscillating at L/E=%.1f km/GeV.', index, L_over_E)
        return oscillation_point(
            L_over_E,
            shots,
            backend,
            mitigation,
            derive_seed(seed, 'neutrino', index),
            splittings,
            pmns,
        )

    return await parallel_map(
        run,
        enumerate(linspace(0, lmax, points).tolist()),
        label='oscillation point',
    )
