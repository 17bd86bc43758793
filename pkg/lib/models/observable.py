"""Pauli strings, observables and the records estimated from them."""

from dataclasses import dataclass, field
from functools import reduce
from math import isfinite
from typing import (
    Dict,
    Final,
    Iterable,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from numpy import array, complex128, kron, ndarray, zeros

from ..errors import CircuitError
from .state import QuantumState
from .._compat import Self

#
PAULIS: Final[Mapping[str, ndarray]] = {
    'I': array([[1, 0], [0, 1]], dtype=complex128),
    'X': array([[0, 1], [1, 0]], dtype=complex128),
    'Y': array([[0, -1j], [1j, 0]], dtype=complex128),
    'Z': array([[1, 0], [0, -1]], dtype=complex128),
}
for _ in PAULIS.values():
    _.setflags(write=False)


@dataclass(init=False, frozen=True)
class PauliString(object):
    """A tensor product of single-qubit Paulis, letter ``i`` on qubit ``i``."""

    ops: Final[str]

    def __init__(self: Self, /, ops: str) -> None:
        ops = str(ops).strip().upper()
        if not ops:
            raise CircuitError('Pauli string is empty.')
        if set(ops) - set(PAULIS):
            raise CircuitError('Invalid Pauli string %r.' % ops)
        object.__setattr__(self, 'ops', ops)

    @classmethod
    def from_sparse(
        cls,
        letters: Mapping[int, str],
        num_qubits: int,
        /,
    ) -> Self:
        """Build ``{0: 'X', 2: 'Z'}`` on ``num_qubits`` qubits."""
        ops = ['I'] * num_qubits
        for qubit, letter in letters.items():
            if not 0 <= qubit < num_qubits:
                raise CircuitError('Pauli qubit %s out of range.' % qubit)
            ops[qubit] = letter
        return cls(''.join(ops))

    def __str__(self: Self, /) -> str:
        return self.ops

    def __len__(self: Self, /) -> int:
        return len(self.ops)

    @property
    def num_qubits(self: Self, /) -> int:
        return len(self.ops)

    @property
    def support(self: Self, /) -> Tuple[int, ...]:
        return tuple(i for i, _ in enumerate(self.ops) if _ != 'I')

    @property
    def is_identity(self: Self, /) -> bool:
        return not self.support

    def qubitwise_compatible(self: Self, other: 'PauliString', /) -> bool:
        return len(self) == len(other) and all(
            a == b or 'I' in (a, b) for a, b in zip(self.ops, other.ops)
        )

    def merge(self: Self, other: 'PauliString', /) -> 'PauliString':
        """Return the common measurement basis of two compatible strings."""
        if not self.qubitwise_compatible(other):
            raise CircuitError(
                'Pauli strings %s and %s do not commute qubit-wise.'
                % (self, other)
            )
        return PauliString(
            ''.join(b if a == 'I' else a for a, b in zip(self.ops, other.ops))
        )

    def matrix(self: Self, /) -> ndarray:
        return reduce(kron, (PAULIS[_] for _ in self.ops))


Term = Tuple[float, PauliString]


@dataclass(init=False, frozen=True)
class Observable(object):
    """A real-weighted sum of Pauli strings of equal length.

    Duplicate strings are merged on construction, keeping the position of the
    first occurrence. Zero coefficients are kept until :meth:`simplify`.
    """

    terms: Final[Tuple[Term, ...]]

    def __init__(
        self: Self,
        /,
        terms: Iterable[Tuple[float, Union[str, PauliString]]],
    ) -> None:
        merged: Dict[PauliString, float] = {}
        for coefficient, pauli in terms:
            if not isinstance(pauli, PauliString):
                pauli = PauliString(pauli)
            if isinstance(coefficient, complex):
                if coefficient.imag:
                    raise CircuitError(
                        'Coefficient of %s is not real: %r.'
                        % (pauli, coefficient)
                    )
                coefficient = coefficient.real
            coefficient = float(coefficient)
            if not isfinite(coefficient):
                raise CircuitError(
                    'Coefficient of %s is not finite: %r.'
                    % (pauli, coefficient)
                )
            merged[pauli] = merged.get(pauli, 0.0) + coefficient
        if not merged:
            raise CircuitError('Observable has no terms.')
        if len({len(_) for _ in merged}) > 1:
            raise CircuitError('Observable mixes Pauli string lengths.')
        object.__setattr__(
            self, 'terms', tuple((c, p) for p, c in merged.items())
        )

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[object]], /) -> Self:
        """Parse ``[[0.5, "XXII"], ...]`` as read from a config file."""
        terms = []
        for index, pair in enumerate(pairs):
            if len(pair) != 2:
                raise CircuitError(
                    '[%s] Observable term needs a coefficient and a string.'
                    % index
                )
            terms.append((float(pair[0]), str(pair[1])))
        return cls(terms)

    def to_pairs(self: Self, /) -> Tuple[Tuple[float, str], ...]:
        return tuple((c, p.ops) for c, p in self.terms)

    @property
    def num_qubits(self: Self, /) -> int:
        return len(self.terms[0][1])

    @property
    def constant(self: Self, /) -> float:
        return sum(c for c, p in self.terms if p.is_identity)

    def coefficient(self: Self, pauli: Union[str, PauliString], /) -> float:
        pauli = PauliString(str(pauli))
        return next((c for c, p in self.terms if p == pauli), 0.0)

    def simplify(self: Self, /, atol: float = 1e-12) -> 'Observable':
        """Drop terms with negligible coefficients.

        A fully vanishing observable keeps a single zero identity term.
        """
        kept = [(c, p) for c, p in self.terms if abs(c) > atol]
        return Observable(kept or [(0.0, 'I' * self.num_qubits)])

    def matrix(self: Self, /) -> ndarray:
        dim = 2**self.num_qubits
        out = zeros((dim, dim), dtype=complex128)
        for coefficient, pauli in self.terms:
            if coefficient:
                out += coefficient * pauli.matrix()
        return out

    def __add__(self: Self, other: 'Observable', /) -> 'Observable':
        return Observable(self.terms + other.terms)

    def __mul__(self: Self, scale: float, /) -> 'Observable':
        return Observable((scale * c, p) for c, p in self.terms)

    __rmul__ = __mul__


@dataclass(init=False, frozen=True)
class MeasurementSetting(object):
    """A measurement basis together with the terms it estimates."""

    basis: Final[PauliString]
    terms: Final[Tuple[Term, ...]]

    def __init__(
        self: Self,
        /,
        basis: PauliString,
        terms: Iterable[Term] = (),
    ) -> None:
        terms = tuple(terms)
        for _, pauli in terms:
            if not pauli.qubitwise_compatible(basis) or any(
                basis.ops[q] != pauli.ops[q] for q in pauli.support
            ):
                raise CircuitError(
                    'Term %s is not measurable in basis %s.' % (pauli, basis)
                )
        object.__setattr__(self, 'basis', basis)
        object.__setattr__(self, 'terms', terms)


@dataclass(init=False, frozen=True)
class TomographyResult(object):
    """A reconstructed density matrix and the settings behind it."""

    state: Final[QuantumState]
    qubits: Final[Tuple[int, ...]]
    settings_used: Final[Tuple[str, ...]]
    shots_per_setting: Final[int]
    raw: Final[Optional[ndarray]] = field(compare=False, repr=False)

    def __init__(
        self: Self,
        /,
        state: QuantumState,
        qubits: Iterable[int],
        settings_used: Iterable[str],
        shots_per_setting: int,
        raw: Optional[ndarray] = None,
    ) -> None:
        if not state.is_density:
            raise CircuitError('Tomography yields a density matrix.')
        object.__setattr__(self, 'state', state)
        object.__setattr__(self, 'qubits', tuple(qubits))
        object.__setattr__(self, 'settings_used', tuple(settings_used))
        object.__setattr__(self, 'shots_per_setting', shots_per_setting)
        object.__setattr__(self, 'raw', raw)

    @property
    def rho(self: Self, /) -> ndarray:
        return self.state.data
