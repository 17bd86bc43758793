"""Parameter-shift gradients and the quasi-Newton loops of the VQE.

Exact expectations are minimized by ``scipy``'s L-BFGS-B. Shot estimates
use a limited-memory loop whose line search tolerates the standard error.
"""

from collections import deque
from itertools import count
from logging import getLogger
from math import hypot, pi, sqrt
from typing import (
    Deque,
    Dict,
    Final,
    Iterable,
    List,
    Optional,
    Tuple,
    Union,
)

from anyio import to_thread
from numpy import asarray, float64, ndarray
from numpy.linalg import norm
from scipy.optimize import minimize

from ..backend import Backend
from ..errors import ConfigError
from ..mitigation.estimate import estimate_observable
from ..models.mitigation import MitigatedValue, Mitigation
from ..models.observable import Observable
from ..models.vqe import (
    NUM_PARAMETERS,
    AimParams,
    AnsatzState,
    VqeIteration,
    VqeTrace,
)
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed, make_rng
from .ansatz import ansatz_circuit, exact_energy
from .hamiltonian import (
    Convention,
    build_aim_qubit_hamiltonian,
    exact_ground_energy,
)

#
logger = getLogger('VQE')

DEFAULT_SHOTS: Final[int] = 5000
DEFAULT_ITERATIONS: Final[int] = 200
GRADIENT_TOLERANCE: Final[float] = 1e-3
INITIAL_SCALE: Final[float] = 0.1
MEMORY: Final[int] = 5
ARMIJO: Final[float] = 1e-4
MAX_HALVINGS: Final[int] = 20
CURVATURE_ATOL: Final[float] = 1e-12

Angles = Union[AnsatzState, Iterable[float]]
History = Deque[Tuple[ndarray, ndarray]]
Shift = Tuple[int, int]


def _angles(theta: Angles, /) -> ndarray:
    if isinstance(theta, AnsatzState):
        theta = theta.theta
    return asarray(AnsatzState(theta).theta, dtype=float64)


def energy(
    theta: Angles,
    hamiltonian: Observable,
    shots: Optional[int],
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> MitigatedValue:
    """Measure ``H`` on the ansatz state; ``shots=None`` is exact."""
    if shots is None:
        return MitigatedValue(exact_energy(theta, hamiltonian, backend))
    return estimate_observable(
        ansatz_circuit(theta), hamiltonian, shots, backend, mitigation, seed
    )


def _shifts(size: int, /) -> List[Shift]:
    return [(i, sign) for i in range(size) for sign in (1, -1)]


def _shifted_energy(
    theta: ndarray,
    shift: Shift,
    hamiltonian: Observable,
    shots: Optional[int],
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> float:
    index, sign = shift
    shifted = theta.copy()
    shifted[index] += sign * pi / 2
    return energy(
        shifted,
        hamiltonian,
        shots,
        backend,
        mitigation,
        derive_seed(seed, 'shift', index, 'plus' if sign > 0 else 'minus'),
    ).value


def _shift_rule(values: Iterable[float], /) -> ndarray:
    values = asarray(list(values), dtype=float64).reshape(-1, 2)
    return (values[:, 0] - values[:, 1]) / 2


async def parameter_shift_gradient(
    theta: Angles,
    hamiltonian: Observable,
    shots: Optional[int],
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> ndarray:
    """``(E(θ_i + π/2) - E(θ_i - π/2)) / 2`` for every angle."""
    theta = _angles(theta)
    values = await parallel_map(
        lambda shift: _shifted_energy(
            theta, shift, hamiltonian, shots, backend, mitigation, seed
        ),
        _shifts(len(theta)),
        label='shifted energy',
    )
    return _shift_rule(values)


def _minimize_exact(
    theta: ndarray,
    hamiltonian: Observable,
    backend: Backend,
    max_iters: int,
    tolerance: float,
    /,
) -> List[VqeIteration]:
    """L-BFGS-B on exact energies with parameter-shift gradients."""
    cache: Dict[bytes, Tuple[float, ndarray]] = {}

    def evaluate(x: ndarray, /) -> Tuple[float, ndarray]:
        x = asarray(x, dtype=float64)
        key = x.tobytes()
        if key not in cache:
            cache[key] = (
                energy(x, hamiltonian, None, backend).value,
                _shift_rule(
                    _shifted_energy(x, _, hamiltonian, None, backend)
                    for _ in _shifts(len(x))
                ),
            )
        value, gradient = cache[key]
        return value, gradient.copy()

    def record(x: ndarray, /) -> VqeIteration:
        value, gradient = evaluate(x)
        return VqeIteration(
            tuple(asarray(x, dtype=float64).tolist()),
            value,
            0.0,
            float(norm(gradient)),
        )

    iterations = [record(theta)]
    if not max_iters or iterations[0].gradient_norm < tolerance:
        return iterations
    result = minimize(
        evaluate,
        theta,
        method='L-BFGS-B',
        jac=True,
        callback=lambda x: iterations.append(record(x)),
        # the infinity norm bound implies the Euclidean one
        options=dict(
            maxiter=max_iters,
            gtol=tolerance / sqrt(len(theta)),
            ftol=0.0,
        ),
    )
    logger.debug(
        'L-BFGS-B stopped after %s iterations: %s',
        result.nit,
        result.message,
    )
    return iterations


def _direction(gradient: ndarray, history: History, /) -> ndarray:
    """The two-loop recursion for ``-H⁻¹·g``."""
    q = gradient.copy()
    stack = []
    for s, y in reversed(history):
        rho = 1 / (y @ s)
        alpha = rho * (s @ q)
        q -= alpha * y
        stack.append((rho, alpha, s, y))
    if history:
        s, y = history[-1]
        q *= (s @ y) / (y @ y)
    for rho, alpha, s, y in reversed(stack):
        q += (alpha - rho * (y @ q)) * s
    return -q


async def _minimize_sampled(
    theta: ndarray,
    hamiltonian: Observable,
    shots: int,
    backend: Backend,
    rng_seed: int,
    max_iters: int,
    tolerance: float,
    /,
    mitigation: Optional[Mitigation] = None,
) -> List[VqeIteration]:
    """A backtracking L-BFGS loop on shot estimates.

    Steps are accepted on the Armijo condition, loosened by twice the
    combined standard error of the two energies.
    """
    evaluations = count()

    async def evaluate(theta: ndarray, /) -> MitigatedValue:
        return await to_thread.run_sync(
            lambda: energy(
                theta,
                hamiltonian,
                shots,
                backend,
                mitigation,
                derive_seed(rng_seed, 'energy', next(evaluations)),
            )
        )

    async def differentiate(theta: ndarray, /) -> ndarray:
        return await parameter_shift_gradient(
            theta,
            hamiltonian,
            shots,
            backend,
            mitigation,
            derive_seed(rng_seed, 'gradient', next(evaluations)),
        )

    def record(
        theta: ndarray,
        value: MitigatedValue,
        gradient: ndarray,
        /,
    ) -> VqeIteration:
        return VqeIteration(
            tuple(theta.tolist()),
            value.value,
            value.stderr,
            float(norm(gradient)),
        )

    value = await evaluate(theta)
    gradient = await differentiate(theta)
    iterations = [record(theta, value, gradient)]
    history: History = deque(maxlen=MEMORY)
    for iteration in range(max_iters):
        if norm(gradient) < tolerance:
            break
        direction = _direction(gradient, history)
        slope = gradient @ direction
        if slope >= 0:
            history.clear()
            direction = -gradient
            slope = gradient @ direction
        step = 1.0 if history else min(1.0, 1 / norm(direction))
        for _ in range(MAX_HALVINGS):
            candidate = theta + step * direction
            trial = await evaluate(candidate)
            slack = 2 * hypot(value.stderr, trial.stderr)
            if trial.value <= value.value + ARMIJO * step * slope + slack:
                break
            step /= 2
        else:
            logger.warning(
                '[%s] Line search stalled at E=%.6f.', iteration, value.value
            )
            break
        new_gradient = await differentiate(candidate)
        s, y = candidate - theta, new_gradient - gradient
        if s @ y > CURVATURE_ATOL:
            history.append((s, y))
        theta, value, gradient = candidate, trial, new_gradient
        iterations.append(record(theta, value, gradient))
        logger.debug(
            '[%s] E=%.6f ± %.2g, |g|=%.2e.',
            iteration,
            value.value,
            value.stderr,
            norm(gradient),
        )
    return iterations


async def vqe_optimize(
    p: AimParams,
    shots: Optional[int],
    max_iters: int,
    backend: Backend,
    rng_seed: int,
    /,
    mitigation: Optional[Mitigation] = None,
    convention: Union[Convention, str] = Convention.PRINTED,
    initial: Optional[Angles] = None,
    tolerance: float = GRADIENT_TOLERANCE,
) -> VqeTrace:
    """Minimize the ansatz energy from a seeded start near ``θ = 0``.

    ``shots=None`` runs L-BFGS-B on exact expectations; otherwise the
    sampled loop runs. Both stop once the gradient norm drops below
    ``tolerance`` or after ``max_iters`` steps, and the trace keeps every
    accepted iterate.
    """
    if max_iters < 0:
        raise ConfigError('`max_iters` must be non-negative.')
    hamiltonian = build_aim_qubit_hamiltonian(p, convention)
    if initial is None:
        theta = make_rng(rng_seed, 'initial').normal(
            0, INITIAL_SCALE, NUM_PARAMETERS
        )
    else:
        theta = _angles(initial)
    if shots is None:
        iterations = await to_thread.run_sync(
            _minimize_exact,
            theta,
            hamiltonian,
            backend,
            max_iters,
            tolerance,
        )
    else:
        iterations = await _minimize_sampled(
            theta,
            hamiltonian,
            shots,
            backend,
            rng_seed,
            max_iters,
            tolerance,
            mitigation,
        )
    final = iterations[-1]
    converged = final.gradient_norm < tolerance
    trace = VqeTrace(
        iterations, exact_ground_energy(p, convention), converged
    )
    if not converged:
        logger.warning(
            'VQE stopped after %s iterations with |g|=%.2e; best E=%.6f.',
            len(iterations) - 1,
            final.gradient_norm,
            trace.best.energy,
        )
    logger.info(
        'VQE energy %.6f against exact %.6f.',
        trace.best.energy,
        trace.exact_energy,
    )
    return trace
