"""Markovian relaxation of a qutrit prepared in ``|2⟩``.

``dP2/dt = -(Γ21+Γ20)P2``, ``dP1/dt = Γ21P2 - Γ10P1`` and
``dP0/dt = Γ20P2 + Γ10P1``, solved in closed form.
"""

from logging import getLogger
from typing import Final, Iterable, Optional, Tuple, Union

from numpy import (
    asarray,
    column_stack,
    exp,
    expm1,
    float64,
    isfinite,
    linspace,
    log,
    ndarray,
    polyfit,
    ptp,
    sqrt,
)
from numpy.linalg import cond, inv
from numpy.random import PCG64, Generator
from scipy.optimize import least_squares

from ..errors import FitError, NoiseError
from ..models.noise import QutritRates, QutritTrace

#
logger = getLogger('Qutrit')

MIN_DELAYS: Final[int] = 6
MAX_EVALUATIONS: Final[int] = 2000
MAX_CONDITION: Final[float] = 1e12
FLAT_SPREAD: Final[float] = 1e-9
REFERENCE_LIFETIMES: Final[Tuple[float, float, float]] = (44.4, 35.0, 69.2)


def _growth(rate: float, t: ndarray, /) -> ndarray:
    """``(1 - exp(-rate·t)) / rate``, equal to ``t`` when ``rate`` is 0."""
    if rate == 0:
        return t
    return -expm1(-rate * t) / rate


def qutrit_populations(
    t: Union[float, Iterable[float]],
    rates: QutritRates,
    /,
) -> ndarray:
    """Return ``(P0, P1, P2)`` at ``t`` µs (one row per delay)."""
    t = asarray(t, dtype=float64)
    if (t < 0).any():
        raise NoiseError('Delays must be non-negative.')
    decay = rates.g21 + rates.g20
    p2 = exp(-decay * t)
    # Γ21·(e^{-at} - e^{-bt})/(b - a), finite as b → a
    p1 = rates.g21 * exp(-decay * t) * _growth(rates.g10 - decay, t)
    p0 = 1 - p1 - p2
    return column_stack([p0, p1, p2]) if t.ndim else asarray([p0, p1, p2])


def simulate_qutrit_trace(
    rates: QutritRates,
    delays: Iterable[float],
    /,
    noise: float = 0.0,
    seed: int = 0,
) -> QutritTrace:
    """Closed-form populations with optional Gaussian noise.

    Noisy triples are clipped and renormalized back onto the simplex.
    """
    delays = asarray(list(delays), dtype=float64)
    populations = qutrit_populations(delays, rates)
    if noise:
        rng = Generator(PCG64(seed))
        populations = populations + rng.normal(0, noise, populations.shape)
        populations = populations.clip(0, 1)
        populations /= populations.sum(axis=1, keepdims=True)
    return QutritTrace(delays, populations)


def reference_trace(
    points: int = 30,
    /,
    noise: float = 0.0,
    seed: int = 0,
    horizon: float = 250.0,
) -> QutritTrace:
    """A synthetic trace from the reference lifetimes (44.4, 35.0, 69.2) µs."""
    return simulate_qutrit_trace(
        QutritRates.from_lifetimes(*REFERENCE_LIFETIMES),
        linspace(0, horizon, points),
        noise,
        seed,
    )


def _slope(t: ndarray, values: ndarray, /) -> Optional[float]:
    mask = values > 1e-3
    if mask.sum() < 2:
        return None
    slope = -polyfit(t[mask], log(values[mask]), 1)[0]
    return float(slope) if isfinite(slope) and slope > 0 else None


def initial_rates(trace: QutritTrace, /) -> Tuple[float, float, float]:
    """Guess ``(Γ10, Γ21, Γ20)`` from the decay of ``P2`` and of ``1-P0``."""
    t, populations = trace.delays, trace.populations
    fallback = 1 / max(float(t.max()), 1e-9)
    decay = _slope(t, populations[:, 2]) or fallback
    half = len(t) // 2
    tail = _slope(t[half:], 1 - populations[half:, 0]) or decay
    # the slower of the two processes dominates the tail of 1 - P0
    g10 = tail if abs(tail - decay) > 1e-3 * decay else decay / 2
    share = populations[:, 1].max()
    g21 = decay * min(max(share * 2, 0.1), 0.9)
    return g10, g21, decay - g21


def fit_qutrit_rates(
    trace: QutritTrace,
    /,
    initial: Optional[Tuple[float, float, float]] = None,
) -> QutritRates:
    """Least-squares fit of the three rates to every population.

    The rates are fitted in log space with Levenberg-Marquardt; standard
    errors come from the residual-scaled inverse Fisher matrix.
    """
    t = trace.delays
    if len(set(t.tolist())) < MIN_DELAYS:
        raise NoiseError(
            'A qutrit fit needs at least %s distinct delays.' % MIN_DELAYS
        )
    if ptp(trace.populations, axis=0).max() < FLAT_SPREAD:
        raise FitError('A constant qutrit trace carries no decay.')
    guess = initial or initial_rates(trace)
    logger.debug('Initial qutrit rates: %s.', guess)

    def residuals(x: ndarray, /) -> ndarray:
        rates = QutritRates(*exp(x))
        return (qutrit_populations(t, rates) - trace.populations).ravel()

    try:
        result = least_squares(
            residuals,
            log(asarray(guess, dtype=float64)),
            method='lm',
            max_nfev=MAX_EVALUATIONS,
        )
    except (NoiseError, ValueError, OverflowError) as error:
        raise FitError('Qutrit fit diverged: %s' % error) from error
    report = dict(
        cost=float(result.cost),
        rms=float(sqrt(2 * result.cost / result.fun.size)),
        evaluations=float(result.nfev),
    )
    if not result.success:
        raise FitError('Qutrit fit did not converge.', report)
    fisher = result.jac.T @ result.jac
    condition = cond(fisher)
    if not isfinite(condition) or condition > MAX_CONDITION:
        report['condition'] = float(condition)
        raise FitError('Qutrit rates are not identifiable.', report)
    dof = max(result.fun.size - len(result.x), 1)
    covariance = inv(fisher) * (2 * result.cost / dof)
    rates = exp(result.x)
    stderr = rates * sqrt(covariance.diagonal().clip(0))
    fitted = QutritRates(*rates, stderr=stderr)
    logger.info(
        'Fitted qutrit lifetimes %.2f, %.2f, %.2f µs (rms %.2g).',
        *fitted.lifetimes,
        report['rms'],
    )
    return fitted


def read_qutrit_trace(rows: Iterable[dict], /) -> QutritTrace:
    """Build a trace from ``delay, p0, p1, p2`` records."""
    delays, populations = [], []
    for index, row in enumerate(rows):
        try:
            delays.append(float(row['delay']))
            populations.append([float(row[_]) for _ in ('p0', 'p1', 'p2')])
        except (KeyError, TypeError, ValueError) as error:
            raise NoiseError(
                '[%s] Invalid qutrit trace row %r.' % (index, row)
            ) from error
    return QutritTrace(delays, populations)
