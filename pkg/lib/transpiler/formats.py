"""JSON and OpenQASM 2 interchange of circuits.

JSON circuits read ``{"num_qubits", "gates": [{"kind", "qubits", "params",
"matrix"}], "metadata"}``; matrices are nested ``[re, im]`` pairs. Native
circuits add ``topology``, ``layout``, ``initial_layout`` and
``final_frames``. QASM export declares ``r`` through ``u3`` and writes
matrix gates as their native decomposition.
"""

import ast
from math import pi
from operator import add, mul, neg, pos, sub, truediv
from operator import pow as power
from re import compile as re_compile
from typing import Any, Dict, Final, List, Mapping, Tuple, Union

from numpy import array, complex128
from orjson import OPT_INDENT_2, OPT_SERIALIZE_NUMPY, dumps, loads

from ..errors import CircuitError
from ..models.circuit import Circuit, Gate, GateKind
from ..models.topology import NativeCircuit, Topology
from .decompose import decompose_1q, decompose_2q_gates

#
QASM_HEADER: Final[str] = (
    'OPENQASM 2.0;\n'
    'include "qelib1.inc";\n'
    'gate r(theta, phi) a { u3(theta, phi - pi/2, pi/2 - phi) a; }\n'
)
QASM_KINDS: Final[Mapping[str, GateKind]] = {
    str(_): _
    for _ in GateKind
    if _ not in {GateKind.U2, GateKind.U4, GateKind.MEASURE}
}
_BINARY: Final[Mapping[type, object]] = {
    ast.Add: add,
    ast.Sub: sub,
    ast.Mult: mul,
    ast.Div: truediv,
    ast.Pow: power,
}
_UNARY: Final[Mapping[type, object]] = {ast.USub: neg, ast.UAdd: pos}
_DEFINITION = re_compile(r'gate\s+\w+[^{]*\{[^}]*\}')
_STATEMENT = re_compile(r'^(\w+)\s*(?:\(([^)]*)\))?\s*(.*)$')
_OPERAND = re_compile(r'^(\w+)\s*(?:\[\s*(\d+)\s*\])?$')

Document = Union[Circuit, NativeCircuit]


def gate_to_dict(gate: Gate, /) -> Dict[str, Any]:
    data: Dict[str, Any] = dict(
        kind=str(gate.kind),
        qubits=list(gate.qubits),
        params=list(gate.params),
    )
    if gate.matrix is not None:
        data['matrix'] = [
            [[_.real, _.imag] for _ in row] for row in gate.matrix.tolist()
        ]
    return data


def gate_from_dict(data: Mapping[str, Any], /) -> Gate:
    try:
        matrix = data.get('matrix')
        if matrix is not None:
            matrix = array(
                [[complex(re, im) for re, im in row] for row in matrix],
                dtype=complex128,
            )
        return Gate(
            data['kind'],
            data['qubits'],
            data.get('params', ()),
            matrix=matrix,
        )
    except CircuitError:
        raise
    except (KeyError, TypeError, ValueError) as error:
        raise CircuitError('Invalid gate record %r.' % (data,)) from error


def circuit_to_dict(circuit: Document, /) -> Dict[str, Any]:
    if isinstance(circuit, NativeCircuit):
        data = circuit_to_dict(circuit.circuit)
        data['topology'] = dict(
            num_qubits=circuit.topology.num_qubits,
            edges=sorted(list(_) for _ in circuit.topology.edges),
            center=circuit.topology.center,
        )
        data['layout'] = list(circuit.layout)
        data['initial_layout'] = list(circuit.initial_layout)
        data['final_frames'] = list(circuit.final_frames)
        return data
    return dict(
        num_qubits=circuit.num_qubits,
        gates=[gate_to_dict(_) for _ in circuit.gates],
        metadata=dict(circuit.metadata),
    )


def circuit_from_dict(data: Mapping[str, Any], /) -> Document:
    if not isinstance(data, Mapping) or 'num_qubits' not in data:
        raise CircuitError('Circuit record needs `num_qubits`.')
    circuit = Circuit(
        data['num_qubits'],
        (gate_from_dict(_) for _ in data.get('gates', ())),
        data.get('metadata'),
    )
    if 'topology' not in data:
        return circuit
    topology = data['topology']
    return NativeCircuit(
        circuit,
        Topology(
            topology['num_qubits'],
            (tuple(_) for _ in topology['edges']),
            topology.get('center'),
        ),
        data.get('layout'),
        data.get('initial_layout'),
        data.get('final_frames'),
    )


def to_json(circuit: Document, /) -> bytes:
    return dumps(
        circuit_to_dict(circuit), option=OPT_INDENT_2 | OPT_SERIALIZE_NUMPY
    )


def from_json(data: Union[str, bytes], /) -> Document:
    try:
        record = loads(data)
    except ValueError as error:
        raise CircuitError('Invalid circuit JSON: %s.' % error) from error
    return circuit_from_dict(record)


def _format_angle(angle: float, /) -> str:
    return repr(float(angle))


def _gate_lines(gate: Gate, clbits: Mapping[int, int], /) -> List[str]:
    qubits = ','.join('q[%s]' % _ for _ in gate.qubits)
    match gate.kind:
        case GateKind.MEASURE:
            return [
                'measure q[%s] -> c[%s];' % (_, clbits[_])
                for _ in gate.qubits
            ]
        case GateKind.U2:
            gates = decompose_1q(gate.matrix, *gate.qubits)
        case GateKind.U4:
            gates = decompose_2q_gates(gate.matrix, *gate.qubits)
        case _:
            params = ''
            if gate.params:
                params = '(%s)' % ','.join(map(_format_angle, gate.params))
            return ['%s%s %s;' % (gate.kind, params, qubits)]
    return [line for _ in gates for line in _gate_lines(_, clbits)]


def to_qasm(circuit: Document, /) -> str:
    """Return OpenQASM 2 text; qubit ``i`` is ``q[i]``."""
    if isinstance(circuit, NativeCircuit):
        circuit = circuit.circuit
    measured = circuit.measured_qubits
    clbits = {q: i for i, q in enumerate(measured)}
    lines = [QASM_HEADER + 'qreg q[%s];' % circuit.num_qubits]
    if measured:
        lines.append('creg c[%s];' % len(measured))
    for gate in circuit.gates:
        lines += _gate_lines(gate, clbits)
    return '\n'.join(lines) + '\n'


def _evaluate(node: ast.AST, /) -> float:
    match node:
        case ast.Expression(body=body):
            return _evaluate(body)
        case ast.Constant(value=value) if isinstance(value, (int, float)):
            return float(value)
        case ast.Name(id='pi'):
            return pi
        case ast.BinOp(left=left, op=op, right=right) if type(op) in _BINARY:
            return _BINARY[type(op)](_evaluate(left), _evaluate(right))
        case ast.UnaryOp(op=op, operand=operand) if type(op) in _UNARY:
            return _UNARY[type(op)](_evaluate(operand))
    raise CircuitError('Unsupported angle expression.')


def parse_angle(text: str, /) -> float:
    """Evaluate a QASM angle such as ``-3*pi/4``."""
    try:
        tree = ast.parse(text.strip(), mode='eval')
    except SyntaxError as error:
        raise CircuitError('Invalid angle %r.' % text) from error
    return _evaluate(tree)


def _operands(
    text: str,
    register: str,
    size: int,
    index: int,
    /,
) -> Tuple[int, ...]:
    qubits: List[int] = []
    for operand in text.split(','):
        match = _OPERAND.match(operand.strip())
        if match is None or match.group(1) != register:
            raise CircuitError(
                '[%s] Invalid operand %r.' % (index, operand.strip())
            )
        if match.group(2) is None:
            qubits += range(size)
        else:
            qubits.append(int(match.group(2)))
    return tuple(qubits)


def from_qasm(text: str, /) -> Circuit:
    """Parse the OpenQASM 2 subset written by :func:`to_qasm`."""
    body = '\n'.join(_.split('//')[0] for _ in text.splitlines())
    body = _DEFINITION.sub('', body)
    register, size = None, 0
    gates: List[Gate] = []
    for index, statement in enumerate(body.split(';')):
        statement = ' '.join(statement.split())
        if not statement:
            continue
        match = _STATEMENT.match(statement)
        if match is None:
            raise CircuitError(
                '[%s] Invalid statement %r.' % (index, statement)
            )
        name, params, rest = match.groups()
        match name:
            case 'OPENQASM' | 'include' | 'creg':
                continue
            case 'qreg':
                if register is not None:
                    raise CircuitError('Only one quantum register.')
                operand = _OPERAND.match(rest.strip())
                if operand is None or operand.group(2) is None:
                    raise CircuitError('[%s] Invalid register.' % index)
                register, size = operand.group(1), int(operand.group(2))
                continue
        if register is None:
            raise CircuitError('[%s] Gate before `qreg`.' % index)
        if name == 'measure':
            target = rest.split('->')[0]
            gates.append(
                Gate.measure(*_operands(target, register, size, index))
            )
            continue
        if name not in QASM_KINDS:
            raise CircuitError('[%s] Unsupported gate `%s`.' % (index, name))
        gates.append(
            Gate(
                QASM_KINDS[name],
                _operands(rest, register, size, index),
                (parse_angle(_) for _ in params.split(',')) if params else (),
            )
        )
    if register is None:
        raise CircuitError('QASM text declares no quantum register.')
    return Circuit(size, gates)
