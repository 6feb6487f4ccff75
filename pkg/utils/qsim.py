#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Dokładna symulacja wektora stanu z postselekcją

Kubit 0 to najbardziej znaczący bit indeksu amplitudy. Postselekcja
zeruje gałąź |1⟩ kubitu bez renormalizacji.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.circuit_compiler import Gate, GateKind, ParameterizedCircuit
from utils.errors import SimulationError

EPSILON = 1e-9
TIE_TOLERANCE = 1e-12

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    cos, sin = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[cos, -1j * sin], [-1j * sin, cos]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    cos, sin = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[cos, -sin], [sin, cos]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def crz_target(theta: float) -> np.ndarray:
    """Macierz na celu CRz przy sterowaniu |1⟩: Rz(2θ), okres 2π względem θ"""
    return rz(2 * theta)


_SINGLE = {GateKind.RX: rx, GateKind.RY: ry, GateKind.RZ: rz}


@dataclass(frozen=True)
class Statevector:
    amplitudes: np.ndarray
    qubit_count: int

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_dict(self) -> dict:
        return {
            "qubit_count": self.qubit_count,
            "real": [float(a.real) for a in self.amplitudes],
            "imag": [float(a.imag) for a in self.amplitudes],
        }


@dataclass(frozen=True)
class ClassDistribution:
    l0: float
    l1: float


def _angle(gate: Gate, params: Optional[Mapping]) -> float:
    if isinstance(gate.param, str):
        if params is None or gate.param not in params:
            raise SimulationError(f"Niezwiązany parametr '{gate.param}' w bramce {gate.kind.value}")
        return float(params[gate.param])
    if gate.param is None:
        raise SimulationError(f"Bramka {gate.kind.value} wymaga kąta")
    return float(gate.param)


def apply_single(state: np.ndarray, matrix: np.ndarray, qubit: int) -> np.ndarray:
    """Macierz 2x2 na osi `qubit` tensora stanu o kształcie (2,)*n"""
    return np.moveaxis(np.tensordot(matrix, state, axes=([1], [qubit])), 0, qubit)


def apply_controlled(state: np.ndarray, matrix: np.ndarray, control: int, target: int) -> np.ndarray:
    result = state.copy()
    index = [slice(None)] * state.ndim
    index[control] = 1
    index = tuple(index)
    axis = target if target < control else target - 1
    result[index] = apply_single(state[index], matrix, axis)
    return result


def simulate(circuit: ParameterizedCircuit, params: Optional[Mapping] = None) -> Statevector:
    """
    Symuluje obwód od stanu |0...0⟩

    Args:
        circuit: Obwód (z kątami albo z nazwami parametrów)
        params: Kąty dla nazw parametrów, gdy obwód nie jest związany

    Returns:
        Statevector: amplitudy po wszystkich bramkach, bez renormalizacji

    Raises:
        SimulationError: niezwiązany parametr lub kubit spoza zakresu
    """
    n = circuit.qubit_count
    state = np.zeros((2,) * n, dtype=complex)
    state[(0,) * n] = 1.0
    for gate in circuit.gates:
        for qubit in gate.qubits:
            if not 0 <= qubit < n:
                raise SimulationError(f"Kubit {qubit} poza zakresem 0..{n - 1}")
        kind = gate.kind
        if kind is GateKind.PREP_ZERO:
            # kubity startują w |0⟩
            continue
        if kind in (GateKind.CNOT, GateKind.CRZ) and gate.qubits[0] == gate.qubits[1]:
            raise SimulationError(f"{kind.value}: sterowanie i cel to ten sam kubit")
        if kind is GateKind.H:
            state = apply_single(state, HADAMARD, gate.qubits[0])
        elif kind in _SINGLE:
            state = apply_single(state, _SINGLE[kind](_angle(gate, params)), gate.qubits[0])
        elif kind is GateKind.CNOT:
            state = apply_controlled(state, PAULI_X, *gate.qubits)
        elif kind is GateKind.CRZ:
            state = apply_controlled(state, crz_target(_angle(gate, params)), *gate.qubits)
        elif kind is GateKind.POST_SELECT_ZERO:
            state = state.copy()
            index = [slice(None)] * n
            index[gate.qubits[0]] = 1
            state[tuple(index)] = 0.0
        else:
            raise SimulationError(f"Nieznana bramka {kind}")
    return Statevector(state.reshape(-1), n)


def class_distribution(circuit: ParameterizedCircuit, params: Optional[Mapping] = None,
                       epsilon: float = EPSILON) -> ClassDistribution:
    """
    Reguła Borna na jedynym otwartym kubicie, z wygładzeniem ε

    l_i = |⟨i|ψ⟩|² + ε, następnie normalizacja do sumy 1.

    Raises:
        SimulationError: liczba otwartych kubitów różna od 1
    """
    if len(circuit.open_outputs) != 1:
        raise SimulationError(f"Oczekiwano jednego otwartego kubitu, jest {len(circuit.open_outputs)}")
    state = simulate(circuit, params)
    qubit = circuit.open_outputs[0]
    probabilities = state.probabilities().reshape((2,) * circuit.qubit_count)
    marginal = np.moveaxis(probabilities, qubit, 0).reshape(2, -1).sum(axis=1) + epsilon
    marginal = marginal / marginal.sum()
    return ClassDistribution(float(marginal[0]), float(marginal[1]))


def predict(dist: ClassDistribution) -> int:
    """Klasa o większym prawdopodobieństwie; remis daje 0"""
    if abs(dist.l0 - dist.l1) < TIE_TOLERANCE:
        return 0
    return 0 if dist.l0 > dist.l1 else 1
