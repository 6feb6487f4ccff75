import json
import math

import numpy as np
import pytest

from utils.circuit_compiler import (Gate, GateKind, ParameterSet, ParameterizedCircuit, bind,
                                    compile_diagram, slot_table, word_ansatz)
from utils.config import AnsatzConfig
from utils.diagram import N_WIRE, S_WIRE, BoxKind, DiagramBuilder, WireType
from utils.errors import CompileError
from utils.models import build_model_diagram
from utils.qsim import simulate
from utils.rewrites import merge_outputs, normalize


def _state_diagram(word="girls", wires=(S_WIRE,)):
    builder = DiagramBuilder()
    outputs = builder.add(BoxKind.WORD_STATE, (), wires, word=word)
    return builder.build(outputs)


def _kinds(circuit):
    return [g.kind for g in circuit.gates]


def test_cap_is_bell_preparation():
    builder = DiagramBuilder()
    outputs = builder.add(BoxKind.CAP, (), (N_WIRE, N_WIRE))
    circuit = compile_diagram(builder.build(outputs))
    assert circuit.qubit_count == 2
    assert _kinds(circuit) == [GateKind.PREP_ZERO, GateKind.PREP_ZERO, GateKind.H, GateKind.CNOT]
    assert circuit.gates[-1].qubits == (0, 1)
    assert circuit.open_outputs == (0, 1)
    assert circuit.slots == ()


def test_single_qubit_word_state():
    circuit = compile_diagram(_state_diagram())
    assert _kinds(circuit) == [GateKind.PREP_ZERO, GateKind.RX, GateKind.RZ, GateKind.RX]
    assert circuit.slots == ("girls__S__0", "girls__S__1", "girls__S__2")


def test_multi_qubit_word_state_uses_iqp_layers():
    circuit = compile_diagram(_state_diagram("ate", (N_WIRE, S_WIRE, N_WIRE)), AnsatzConfig(iqp_layers=2))
    assert _kinds(circuit).count(GateKind.H) == 9
    assert _kinds(circuit)[-3:] == [GateKind.H] * 3
    assert _kinds(circuit).count(GateKind.CRZ) == 4
    assert circuit.slots == tuple(f"ate__NSN__{i}" for i in range(4))



@pytest.mark.parametrize("wires", [(N_WIRE, N_WIRE), (N_WIRE, S_WIRE, N_WIRE)])
def test_multi_qubit_word_state_depends_on_angles(wires):
    circuit = compile_diagram(_state_diagram("ate", wires))
    rng = np.random.default_rng(8)
    probabilities = [np.abs(simulate(circuit, ParameterSet.random(circuit.slots, rng)).amplitudes) ** 2
                     for _ in range(3)]
    uniform = np.full(2 ** len(wires), 2.0 ** -len(wires))
    assert all(not np.allclose(p, uniform) for p in probabilities)
    assert not np.allclose(probabilities[0], probabilities[1])


def test_two_qubit_word_state_amplitudes():
    circuit = compile_diagram(_state_diagram("girls", (N_WIRE, N_WIRE)))
    state = simulate(circuit, ParameterSet(circuit.slots, [0.0])).amplitudes
    np.testing.assert_allclose(state, [1, 0, 0, 0], atol=1e-12)
    state = simulate(circuit, ParameterSet(circuit.slots, [math.pi])).amplitudes
    np.testing.assert_allclose(np.abs(state), [0, 0, 1, 0], atol=1e-12)


def test_word_ansatz_custom_rotations():
    gates = word_ansatz([5], "w", AnsatzConfig(single_qubit_rotations=5))
    assert [g.kind for g in gates] == [GateKind.PREP_ZERO] + [GateKind.RX, GateKind.RZ] * 2 + [GateKind.RX]
    assert all(g.qubits == (5,) for g in gates)


def test_qubits_per_wire():
    circuit = compile_diagram(_state_diagram("girls", (N_WIRE,)), AnsatzConfig(qubits_per_N=2))
    assert circuit.qubit_count == 2
    assert circuit.open_outputs == (0, 1)


def test_spider_and_combine_rz():
    builder = DiagramBuilder()
    left = builder.add(BoxKind.WORD_STATE, (), (S_WIRE,), word="a")[0]
    right = builder.add(BoxKind.WORD_STATE, (), (S_WIRE,), word="b")[0]
    d = builder.build([left, right])

    spider = compile_diagram(merge_outputs(d, "frobenius"))
    assert _kinds(spider)[-2:] == [GateKind.CNOT, GateKind.POST_SELECT_ZERO]
    assert spider.open_outputs == (0,)
    assert spider.postselected() == (1,)

    rz = compile_diagram(merge_outputs(d, "rz"))
    assert _kinds(rz)[-3:] == [GateKind.CRZ, GateKind.H, GateKind.POST_SELECT_ZERO]
    assert rz.gates[-3].qubits == (1, 0)
    assert rz.open_outputs == (0,)
    assert rz.postselected() == (1,)
    assert "CombineRz__0" in rz.slots


def test_compile_rejects_fock_wires():
    builder = DiagramBuilder()
    fock = builder.add(BoxKind.FOCK_ELEMENT, (), (WireType("N", fock=True),), word="john")
    with pytest.raises(CompileError, match="Focka"):
        compile_diagram(builder.build(fock))


def test_require_normal_form():
    builder = DiagramBuilder()
    state = builder.add(BoxKind.WORD_STATE, (), (N_WIRE,), word="girls")[0]
    left, right = builder.add(BoxKind.CAP, (), (N_WIRE, N_WIRE))
    builder.add(BoxKind.CUP, (state, left), ())
    d = builder.build([right])
    assert compile_diagram(d).open_outputs == (2,)
    with pytest.raises(CompileError, match="normalnej"):
        compile_diagram(d, require_normal=True)
    assert compile_diagram(normalize(d), require_normal=True).open_outputs == (0,)


def test_compile_is_deterministic(entries):
    d = build_model_diagram(entries[0], 4, "rz")
    assert compile_diagram(d) == compile_diagram(d)


def test_gate_validation():
    with pytest.raises(CompileError):
        Gate(GateKind.CNOT, (1, 1))
    with pytest.raises(CompileError):
        Gate(GateKind.H, (0,), "theta")
    with pytest.raises(CompileError):
        Gate(GateKind.RX, (0,))


def test_slot_table_order_and_sharing():
    first = compile_diagram(_state_diagram("girls"))
    second = compile_diagram(_state_diagram("men"))
    again = compile_diagram(_state_diagram("girls"))
    assert slot_table([first, second, again]) == first.slots + second.slots
    assert set(first.slots).isdisjoint(second.slots)


def test_bind():
    circuit = compile_diagram(_state_diagram())
    bound = bind(circuit, {slot: math.pi for slot in circuit.slots})
    assert bound.slots == ()
    assert [g.param for g in bound.gates if g.kind is GateKind.RX] == [math.pi, math.pi]
    assert [g.kind for g in bound.gates] == _kinds(circuit)
    other = bind(circuit, {slot: 1.0 for slot in circuit.slots})
    assert [g.qubits for g in other.gates] == [g.qubits for g in bound.gates]
    with pytest.raises(CompileError, match="girls__S__2"):
        bind(circuit, {"girls__S__0": 0.1, "girls__S__1": 0.2})


def test_bind_slotless_circuit():
    circuit = ParameterizedCircuit(1, (Gate(GateKind.H, (0,)),), (), (0,))
    assert bind(circuit, {}) == circuit


def test_parameter_set_wraps_angles():
    theta = ParameterSet(["a", "b"], [7.0, -1.0])
    assert theta["a"] == pytest.approx(7.0 - 2 * math.pi)
    assert theta["b"] == pytest.approx(2 * math.pi - 1.0)
    assert list(theta) == ["a", "b"]
    assert all(0 <= v < 2 * math.pi for v in theta.values)
    with pytest.raises(CompileError):
        ParameterSet(["a"], [1.0, 2.0])


def test_parameter_set_is_copied():
    values = np.array([0.5])
    theta = ParameterSet(["a"], values)
    values[0] = 1.5
    assert theta["a"] == 0.5


def test_circuit_json():
    circuit = compile_diagram(_state_diagram())
    document = json.loads(circuit.to_json())
    assert document["qubit_count"] == 1
    assert document["gates"][1] == {"gate": "Rx", "qubits": [0], "param": "girls__S__0"}
    assert document["open_outputs"] == [0]
