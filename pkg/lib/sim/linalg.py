"""Dense linear-algebra kernels shared by the simulators."""

from typing import Iterable, Sequence

from numpy import (
    asarray,
    clip,
    complex128,
    einsum,
    eye,
    moveaxis,
    ndarray,
    real,
    sqrt,
    tensordot,
    zeros_like,
)
from numpy.linalg import eigh, eigvalsh, norm

from ..errors import SimulationError


def _apply(
    tensor: ndarray,
    matrix: ndarray,
    axes: Sequence[int],
    /,
) -> ndarray:
    k = len(axes)
    op = asarray(matrix).reshape((2,) * (2 * k))
    out = tensordot(op, tensor, axes=(tuple(range(k, 2 * k)), tuple(axes)))
    return moveaxis(out, tuple(range(k)), tuple(axes))


def apply_to_vector(
    vector: ndarray,
    matrix: ndarray,
    qubits: Sequence[int],
    num_qubits: int,
    /,
) -> ndarray:
    """Apply ``matrix`` on ``qubits`` of a statevector (or a batch of them
    stacked along a trailing axis)."""
    shape = vector.shape
    tensor = vector.reshape((2,) * num_qubits + shape[1:])
    return _apply(tensor, matrix, qubits).reshape(shape)


def apply_to_density(
    rho: ndarray,
    matrix: ndarray,
    qubits: Sequence[int],
    num_qubits: int,
    /,
) -> ndarray:
    tensor = rho.reshape((2,) * (2 * num_qubits))
    tensor = _apply(tensor, matrix, qubits)
    tensor = _apply(
        tensor, asarray(matrix).conj(), [num_qubits + _ for _ in qubits]
    )
    return tensor.reshape(rho.shape)


def apply_kraus(
    rho: ndarray,
    kraus: Iterable[ndarray],
    qubits: Sequence[int],
    num_qubits: int,
    /,
) -> ndarray:
    out = zeros_like(rho)
    for operator in kraus:
        out += apply_to_density(rho, operator, qubits, num_qubits)
    return out


def embed(matrix: ndarray, qubits: Sequence[int], num_qubits: int, /):
    """Return the full ``2^n x 2^n`` operator of ``matrix`` on ``qubits``."""
    dim = 2**num_qubits
    return apply_to_vector(
        eye(dim, dtype=complex128), matrix, qubits, num_qubits
    )


def reduce_density(
    rho: ndarray,
    keep: Sequence[int],
    num_qubits: int,
    /,
) -> ndarray:
    keep = list(keep)
    if not keep:
        raise SimulationError('Partial trace needs at least one kept qubit.')
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise SimulationError('Kept qubits must be strictly increasing.')
    if keep[0] < 0 or keep[-1] >= num_qubits:
        raise SimulationError('Kept qubits %s out of range.' % keep)
    traced = [_ for _ in range(num_qubits) if _ not in keep]
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    order = (
        keep
        + traced
        + [num_qubits + _ for _ in keep]
        + [num_qubits + _ for _ in traced]
    )
    tensor = rho.reshape((2,) * (2 * num_qubits)).transpose(order)
    return einsum('ajbj->ab', tensor.reshape(dk, dt, dk, dt))


def psd_sqrt(rho: ndarray, /) -> ndarray:
    values, vectors = eigh(rho)
    return (vectors * sqrt(clip(values, 0, None))) @ vectors.conj().T


def uhlmann_fidelity(rho: ndarray, sigma: ndarray, /) -> float:
    root = psd_sqrt(rho)
    values = eigvalsh(root @ sigma @ root)
    return float(clip(sqrt(clip(values, 0, None)).sum() ** 2, 0, 1))


def expectation_value(data: ndarray, operator: ndarray, /) -> float:
    if data.ndim == 1:
        return float(real(data.conj() @ operator @ data))
    return float(real(einsum('ij,ji->', data, operator)))


def phase_distance(a: ndarray, b: ndarray, /) -> float:
    """Operator-norm distance between ``a`` and ``b`` modulo a global phase."""
    overlap = einsum('ij,ij->', asarray(b).conj(), asarray(a))
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(norm(asarray(a) - phase * asarray(b), 2))
