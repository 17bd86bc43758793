"""Zero-noise extrapolation by global unitary folding."""

from logging import getLogger
from typing import Iterable, List, Sequence, Tuple

from numpy import asarray, diag, float64, ones_like, vander
from numpy.linalg import LinAlgError, inv

from ..errors import MitigationError
from ..models.circuit import Gate, GateKind
from ..models.mitigation import MitigatedValue, MitigationTag
from ..models.topology import NativeCircuit
from ..transpiler.decompose import normalize_r

#
logger = getLogger('ZNE')

Point = Tuple[float, float, float]


def _inverse(gate: Gate, /) -> Gate:
    if gate.kind == GateKind.R:
        theta, phi = normalize_r(-gate.params[0], gate.params[1])
        return Gate.r(theta, phi, *gate.qubits)
    return gate.inverse()


def fold_global(native: NativeCircuit, scale: int, /) -> NativeCircuit:
    """Return ``C·(C†·C)^((scale-1)/2)`` with the measurements kept last."""
    if scale < 1 or not scale % 2:
        raise MitigationError(
            'Folding scale must be odd and positive, got %r.' % scale
        )
    if scale == 1:
        return native
    body = native.circuit.without_measurements()
    inverse = [_inverse(_) for _ in reversed(body.gates)]
    gates: List[Gate] = list(body.gates)
    for _ in range((scale - 1) // 2):
        gates += inverse + list(body.gates)
    gates += [_ for _ in native.circuit.gates if _.kind == GateKind.MEASURE]
    return native.replace(native.circuit.replace(gates))


def zne_extrapolate(
    points: Iterable[Sequence[float]],
    /,
    tags: Iterable[MitigationTag] = (),
) -> MitigatedValue:
    """Fit ``(scale, value, stderr)`` points with a polynomial, evaluate at 0.

    The degree is one less than the number of distinct scales, at most two.
    Points are weighted by inverse variance when every stderr is positive.
    """
    points = asarray([tuple(_) for _ in points], dtype=float64)
    if points.ndim != 2 or points.shape[1] != 3:
        raise MitigationError('ZNE points read (scale, value, stderr).')
    scales, values, errors = points.T
    distinct = len(set(scales.tolist()))
    if distinct < 2:
        raise MitigationError('ZNE needs at least two distinct scales.')
    degree = min(distinct - 1, 2)
    design = vander(scales, degree + 1, increasing=True)
    variances = errors**2
    weights = 1 / variances if (variances > 0).all() else ones_like(scales)
    try:
        normal = inv(design.T @ (weights[:, None] * design))
    except LinAlgError as error:
        raise MitigationError('ZNE fit is singular.') from error
    solver = normal @ design.T * weights
    coefficients = solver @ values
    covariance = solver @ diag(variances) @ solver.T
    logger.debug(
        'Extrapolated %s points with degree %s: %s.',
        len(points),
        degree,
        coefficients,
    )
    return MitigatedValue(
        coefficients[0],
        max(float(covariance[0, 0]), 0.0) ** 0.5,
        {*tags, MitigationTag.ZNE},
    )
