import numpy as np
import pytest

from utils.circuit_compiler import Gate, GateKind, ParameterSet, ParameterizedCircuit
from utils.errors import SimulationError
from utils.qsim import (ClassDistribution, class_distribution, crz_target, predict, rx, ry, rz,
                        simulate)

I2 = np.eye(2)
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]])


def _embed(ops, n):
    """Iloczyn Kroneckera, kubit 0 najbardziej znaczący"""
    result = np.array([[1.0]])
    for q in range(n):
        result = np.kron(result, ops.get(q, I2))
    return result


def _dense(gate, n):
    q = gate.qubits
    if gate.kind is GateKind.H:
        return _embed({q[0]: H}, n)
    if gate.kind is GateKind.RX:
        return _embed({q[0]: rx(gate.param)}, n)
    if gate.kind is GateKind.RY:
        return _embed({q[0]: ry(gate.param)}, n)
    if gate.kind is GateKind.RZ:
        return _embed({q[0]: rz(gate.param)}, n)
    if gate.kind is GateKind.POST_SELECT_ZERO:
        return _embed({q[0]: P0}, n)
    if gate.kind is GateKind.PREP_ZERO:
        return np.eye(2 ** n)
    target = X if gate.kind is GateKind.CNOT else np.diag([np.exp(-1j * gate.param), np.exp(1j * gate.param)])
    return _embed({q[0]: P0}, n) + _embed({q[0]: P1, q[1]: target}, n)


def _random_circuit(rng, n, length, postselect=True):
    kinds = [GateKind.H, GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CNOT, GateKind.CRZ]
    if postselect:
        kinds.append(GateKind.POST_SELECT_ZERO)
    gates = []
    for _ in range(length):
        kind = kinds[rng.integers(len(kinds))] if n > 1 else kinds[rng.integers(4)]
        if kind in (GateKind.CNOT, GateKind.CRZ):
            qubits = tuple(int(q) for q in rng.choice(n, size=2, replace=False))
        else:
            qubits = (int(rng.integers(n)),)
        param = float(rng.uniform(0, 2 * np.pi)) if kind in (GateKind.RX, GateKind.RY, GateKind.RZ,
                                                              GateKind.CRZ) else None
        gates.append(Gate(kind, qubits, param))
    return ParameterizedCircuit(n, tuple(gates), (), (0,))


def test_hadamard():
    circuit = ParameterizedCircuit(1, (Gate(GateKind.H, (0,)),), (), (0,))
    np.testing.assert_allclose(simulate(circuit).amplitudes, [2 ** -0.5, 2 ** -0.5])


def test_bell_state():
    gates = (Gate(GateKind.H, (0,)), Gate(GateKind.CNOT, (0, 1)))
    state = simulate(ParameterizedCircuit(2, gates, (), (0, 1)))
    np.testing.assert_allclose(state.amplitudes, [2 ** -0.5, 0, 0, 2 ** -0.5])


def test_qubit_zero_is_most_significant():
    state = simulate(ParameterizedCircuit(2, (Gate(GateKind.RX, (0,), np.pi),), (), (0, 1)))
    np.testing.assert_allclose(np.abs(state.amplitudes), [0, 0, 1, 0], atol=1e-12)


def test_crz_doubles_angle():
    np.testing.assert_allclose(crz_target(0.3), np.diag([np.exp(-0.3j), np.exp(0.3j)]))
    np.testing.assert_allclose(crz_target(np.pi), -np.eye(2), atol=1e-12)


def test_matches_dense_oracle():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        circuit = _random_circuit(rng, n, int(rng.integers(1, 31)))
        expected = np.zeros(2 ** n, dtype=complex)
        expected[0] = 1.0
        for gate in circuit.gates:
            expected = _dense(gate, n) @ expected
        np.testing.assert_allclose(simulate(circuit).amplitudes, expected, atol=1e-10)


def test_unitary_gates_preserve_norm():
    rng = np.random.default_rng(5)
    for _ in range(50):
        circuit = _random_circuit(rng, 4, 25, postselect=False)
        assert simulate(circuit).norm() == pytest.approx(1.0)


def test_postselection_never_increases_norm():
    rng = np.random.default_rng(6)
    circuit = _random_circuit(rng, 4, 40)
    for cut in range(1, len(circuit.gates)):
        before = simulate(ParameterizedCircuit(4, circuit.gates[:cut - 1], (), (0,))).norm()
        after = simulate(ParameterizedCircuit(4, circuit.gates[:cut], (), (0,))).norm()
        assert after <= before + 1e-12


def test_class_distribution_of_zero_state():
    dist = class_distribution(ParameterizedCircuit(1, (Gate(GateKind.PREP_ZERO, (0,)),), (), (0,)))
    assert dist.l0 == pytest.approx(1.0, abs=1e-8)
    assert dist.l0 + dist.l1 == pytest.approx(1.0)


def test_class_distribution_fully_postselected_is_uniform():
    gates = (Gate(GateKind.RX, (1,), np.pi), Gate(GateKind.POST_SELECT_ZERO, (1,)))
    dist = class_distribution(ParameterizedCircuit(2, gates, (), (0,)))
    assert dist.l0 == pytest.approx(0.5)
    assert dist.l1 == pytest.approx(0.5)


def test_class_distribution_plus_state():
    dist = class_distribution(ParameterizedCircuit(2, (Gate(GateKind.H, (1,)),), (), (1,)))
    assert dist.l0 == pytest.approx(0.5)


def test_class_distribution_marginalizes_postselected_qubit():
    gates = (Gate(GateKind.H, (0,)), Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.POST_SELECT_ZERO, (0,)))
    dist = class_distribution(ParameterizedCircuit(2, gates, (), (1,)))
    assert dist.l0 == pytest.approx(1.0, abs=1e-8)


def test_class_distribution_needs_single_output():
    with pytest.raises(SimulationError):
        class_distribution(ParameterizedCircuit(2, (), (), (0, 1)))


@pytest.mark.parametrize("l0, l1, label", [(0.9, 0.1, 0), (0.5, 0.5, 0), (0.3, 0.7, 1)])
def test_predict(l0, l1, label):
    assert predict(ClassDistribution(l0, l1)) == label


def test_named_parameters():
    circuit = ParameterizedCircuit(1, (Gate(GateKind.RX, (0,), "w__S__0"),), ("w__S__0",), (0,))
    dist = class_distribution(circuit, ParameterSet(["w__S__0"], [np.pi]), epsilon=0.0)
    assert dist.l1 == pytest.approx(1.0)
    with pytest.raises(SimulationError, match="w__S__0"):
        simulate(circuit)
    with pytest.raises(SimulationError):
        simulate(circuit, {"other": 0.1})


def test_qubit_out_of_range():
    with pytest.raises(SimulationError):
        simulate(ParameterizedCircuit(1, (Gate(GateKind.H, (3,)),), (), (0,)))
