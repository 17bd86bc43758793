"""The shot-based executor every experiment runs its circuits on."""

from dataclasses import dataclass, field
from logging import Logger, getLogger
from threading import Lock
from typing import (
    Callable,
    Dict,
    Final,
    Hashable,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from numpy import ndarray

from .errors import SimulationError
from .models.circuit import Circuit, GateKind
from .models.noise import NoiseProfile
from .models.state import Counts, QuantumState
from .models.topology import NativeCircuit, Topology
from .noise import confuse_probabilities, evolve, load_profile
from .sim import marginal_probabilities, sample_probabilities
from .sim.gates import rz_matrix
from .sim.linalg import apply_to_density, reduce_density
from .transpiler import transpile
from ._compat import Self

T = TypeVar('T')
Program = Union[Circuit, NativeCircuit]


@dataclass(init=False, frozen=True)
class Backend(object):
    """Transpiles circuits to the star and samples them under a profile.

    Outcome bitstrings list the measured logical qubits in increasing
    order, the first of them as the most significant bit. A circuit without
    measurements reads out every logical qubit.
    """

    profile: Final[NoiseProfile]
    topology: Final[Topology]
    name: Final[str]
    logger: Final[Logger] = field(repr=False, compare=False)
    _cache: Final[Dict[Hashable, object]] = field(repr=False, compare=False)
    _lock: Final[Lock] = field(repr=False, compare=False)

    def __init__(
        self: Self,
        /,
        profile: Union[NoiseProfile, str, None] = None,
        topology: Optional[Topology] = None,
        name: Optional[str] = None,
        *,
        logger_name: Optional[str] = None,
    ) -> None:
        if not isinstance(profile, NoiseProfile):
            profile = load_profile(profile)
        object.__setattr__(self, 'profile', profile)
        object.__setattr__(self, 'topology', topology or Topology.star())
        object.__setattr__(self, 'name', name or profile.label)
        object.__setattr__(
            self, 'logger', getLogger(logger_name or self.__class__.__name__)
        )
        object.__setattr__(self, '_cache', {})
        object.__setattr__(self, '_lock', Lock())

    @classmethod
    def noiseless(cls, topology: Optional[Topology] = None, /) -> Self:
        return cls(NoiseProfile(), topology)

    def compile(
        self: Self,
        circuit: Program,
        /,
        layout: Optional[Sequence[int]] = None,
    ) -> NativeCircuit:
        if isinstance(circuit, NativeCircuit):
            return circuit
        return transpile(circuit, self.topology, layout=layout)

    def readout_qubits(
        self: Self,
        native: NativeCircuit,
        /,
    ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Return the measured logical qubits and their physical wires."""
        inverse = native.inverse_layout()
        measured = native.circuit.measured_qubits
        if not measured:
            logical = tuple(range(native.num_logical))
            return logical, native.physical(logical)
        stray = [_ for _ in measured if _ not in inverse]
        if stray:
            raise SimulationError(
                'Measured physical qubits %s hold no logical qubit.' % stray
            )
        logical = tuple(sorted(inverse[_] for _ in measured))
        return logical, native.physical(logical)

    def logical_state(self: Self, circuit: Program, /) -> QuantumState:
        """The noisy state of the logical qubits, in logical order.

        Residual virtual-Z frames are undone and unused physical qubits are
        traced out. Measurements are ignored.
        """
        if isinstance(circuit, Circuit):
            circuit = circuit.replace(
                _ for _ in circuit.gates if _.kind != GateKind.MEASURE
            )
        native = self.compile(circuit)
        n = native.topology.num_qubits
        rho = evolve(native.circuit, self.profile).density_matrix()
        for qubit, frame in enumerate(native.final_frames):
            if frame:
                rho = apply_to_density(rho, rz_matrix(frame), [qubit], n)
        kept = sorted(native.layout)
        rho = reduce_density(rho, kept, n)
        k = len(kept)
        order = [kept.index(_) for _ in native.layout]
        rho = rho.reshape((2,) * (2 * k)).transpose(
            order + [k + _ for _ in order]
        )
        return QuantumState(rho.reshape(2**k, 2**k))

    def probabilities(
        self: Self,
        circuit: Program,
        /,
        layout: Optional[Sequence[int]] = None,
    ) -> ndarray:
        """The exact outcome distribution, readout confusion included."""
        native = self.compile(circuit, layout)
        _, physical = self.readout_qubits(native)
        state = evolve(native.circuit, self.profile)
        ideal = marginal_probabilities(
            state.probabilities(), physical, state.num_qubits
        )
        return confuse_probabilities(ideal, self.profile, physical)

    def run(
        self: Self,
        circuit: Program,
        shots: int,
        seed: int,
        /,
        layout: Optional[Sequence[int]] = None,
    ) -> Counts:
        if shots < 1:
            raise SimulationError('A run needs at least one shot.')
        counts = sample_probabilities(
            self.probabilities(circuit, layout), shots, seed
        )
        self.logger.debug(
            'Sampled %s shots of %s outcomes on `%s`.',
            shots,
            len(counts.table),
            self.name,
        )
        return counts

    def cached(self: Self, key: Hashable, factory: Callable[[], T], /) -> T:
        """Return ``factory()`` computed once per key and backend."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = factory()
        with self._lock:
            return self._cache.setdefault(key, value)
