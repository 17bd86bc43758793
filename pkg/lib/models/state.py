from dataclasses import dataclass, field
from typing import Dict, Final, Iterable, Mapping, Optional, Tuple

from numpy import (
    abs as nabs,
    allclose,
    asarray,
    complex128,
    float64,
    int64,
    ndarray,
    outer,
    real,
    trace,
    zeros,
)
from numpy.linalg import eigvalsh, norm

from ..errors import SimulationError
from .._compat import Self

#
STATE_ATOL: Final[float] = 1e-9


@dataclass(init=False, frozen=True)
class QuantumState(object):
    """A statevector or a density matrix over ``num_qubits`` qubits."""

    num_qubits: Final[int]
    data: Final[ndarray] = field(compare=False, repr=False)

    def __init__(
        self: Self,
        /,
        data: Iterable[complex],
        *,
        validate: bool = True,
    ) -> None:
        data = asarray(data, dtype=complex128)
        if data.ndim not in (1, 2) or data.shape[0] < 2:
            raise SimulationError('Invalid state shape %s.' % (data.shape,))
        dim = data.shape[0]
        num_qubits = dim.bit_length() - 1
        if 2**num_qubits != dim or (
            data.ndim == 2 and data.shape != (dim, dim)
        ):
            raise SimulationError(
                'State dimension %s is not a power of two.' % (data.shape,)
            )
        if validate:
            if data.ndim == 1:
                if abs(norm(data) - 1) > STATE_ATOL:
                    raise SimulationError(
                        'Statevector norm is %.12f.' % norm(data)
                    )
            else:
                if not allclose(data, data.conj().T, atol=STATE_ATOL):
                    raise SimulationError('Density matrix is not Hermitian.')
                if abs(real(trace(data)) - 1) > STATE_ATOL:
                    raise SimulationError(
                        'Density matrix trace is %.12f.' % real(trace(data))
                    )
                if eigvalsh(data).min() < -STATE_ATOL:
                    raise SimulationError('Density matrix is not positive.')
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, 'num_qubits', num_qubits)
        object.__setattr__(self, 'data', data)

    @classmethod
    def zero(cls, num_qubits: int, /, *, density: bool = False) -> Self:
        vector = zeros(2**num_qubits, dtype=complex128)
        vector[0] = 1
        return cls(outer(vector, vector) if density else vector)

    @property
    def is_density(self: Self, /) -> bool:
        return self.data.ndim == 2

    @property
    def representation(self: Self, /) -> str:
        return 'density_matrix' if self.is_density else 'statevector'

    def density_matrix(self: Self, /) -> ndarray:
        if self.is_density:
            return self.data
        return outer(self.data, self.data.conj())

    def to_density(self: Self, /) -> 'QuantumState':
        return self if self.is_density else QuantumState(self.density_matrix())

    def probabilities(self: Self, /) -> ndarray:
        """Return Born-rule probabilities over basis indices."""
        if self.is_density:
            probs = real(self.data.diagonal()).clip(0)
        else:
            probs = nabs(self.data) ** 2
        return asarray(probs / probs.sum(), dtype=float64)


@dataclass(init=False, frozen=True)
class Counts(object):
    """Measured bitstrings with their occurrence counts."""

    shots: Final[int]
    table: Final[Mapping[str, int]]

    def __init__(
        self: Self,
        /,
        table: Mapping[str, int],
        shots: Optional[int] = None,
    ) -> None:
        table = {str(k): int(v) for k, v in table.items() if int(v) > 0}
        total = sum(table.values())
        if shots is None:
            shots = total
        if shots < 1 and table:
            raise SimulationError('Counts need at least one shot.')
        if total != shots:
            raise SimulationError(
                'Counts sum to %s, expected %s shots.' % (total, shots)
            )
        if len({len(_) for _ in table}) > 1:
            raise SimulationError('Bitstrings have different lengths.')
        if any(set(_) - {'0', '1'} for _ in table):
            raise SimulationError('Bitstrings must contain only 0 and 1.')
        object.__setattr__(self, 'shots', shots)
        object.__setattr__(self, 'table', dict(sorted(table.items())))

    @classmethod
    def from_array(cls, counts: Iterable[int], num_bits: int, /) -> Self:
        return cls(
            {
                format(index, '0%sb' % num_bits): int(value)
                for index, value in enumerate(counts)
                if value
            }
        )

    @property
    def num_bits(self: Self, /) -> int:
        return len(next(iter(self.table))) if self.table else 0

    def __getitem__(self: Self, key: str, /) -> int:
        return self.table.get(key, 0)

    def items(self: Self, /) -> Iterable[Tuple[str, int]]:
        return self.table.items()

    def to_array(self: Self, num_bits: Optional[int] = None, /) -> ndarray:
        num_bits = self.num_bits if num_bits is None else num_bits
        array = zeros(2**num_bits, dtype=int64)
        for key, value in self.table.items():
            array[int(key, 2)] = value
        return array

    def frequencies(self: Self, num_bits: Optional[int] = None, /) -> ndarray:
        """Return relative frequencies indexed by basis index."""
        if not self.shots:
            raise SimulationError('Counts hold no shots.')
        return self.to_array(num_bits) / self.shots

    def marginal(self: Self, positions: Iterable[int], /) -> 'Counts':
        positions = tuple(positions)
        table: Dict[str, int] = {}
        for key, value in self.table.items():
            bits = ''.join(key[_] for _ in positions)
            table[bits] = table.get(bits, 0) + value
        return Counts(table, self.shots)
