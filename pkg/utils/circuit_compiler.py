#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Kompilacja znormalizowanych diagramów do sparametryzowanych obwodów

Stany słów: jeden kubit dostaje obroty Rx Rz Rx, kilka kubitów ścianę
bramek H przed każdą warstwą CRz na sąsiednich parach i zamykającą
ścianę H (ansatz IQP). Cap to stan Bella, cup to pomiar w bazie Bella
z postselekcją, pająk to CNOT z postselekcją jednej nogi. CombineRz
steruje kubitem pierwszego zdania z kubitu drugiego i mierzy drugi.
"""

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from utils.config import AnsatzConfig
from utils.diagram import STATE_KINDS, Box, BoxKind, Diagram
from utils.errors import CompileError
from utils.logger import app_logger
from utils.rewrites import normalize

TWO_PI = 2 * math.pi


class GateKind(Enum):
    H = "H"
    CNOT = "CNOT"
    RX = "Rx"
    RY = "Ry"
    RZ = "Rz"
    CRZ = "CRz"
    PREP_ZERO = "PrepZero"
    POST_SELECT_ZERO = "PostSelectZero"


ROTATIONS = (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CRZ)
TWO_QUBIT = (GateKind.CNOT, GateKind.CRZ)


@dataclass(frozen=True)
class Gate:
    """
    Bramka na kubitach `qubits`

    param: nazwa parametru (str) albo kąt w radianach (float); tylko dla obrotów.
    """

    kind: GateKind
    qubits: Tuple[int, ...]
    param: Union[str, float, None] = None

    def __post_init__(self):
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity or len(set(self.qubits)) != arity:
            raise CompileError(f"{self.kind.value} wymaga {arity} różnych kubitów, otrzymano {self.qubits}")
        if (self.param is None) == (self.kind in ROTATIONS):
            raise CompileError(f"{self.kind.value}: parametr tylko dla obrotów")

    def to_dict(self) -> dict:
        data = {"gate": self.kind.value, "qubits": list(self.qubits)}
        if self.param is not None:
            data["param"] = self.param
        return data


@dataclass(frozen=True)
class ParameterizedCircuit:
    qubit_count: int
    gates: Tuple[Gate, ...]
    slots: Tuple[str, ...]
    open_outputs: Tuple[int, ...]

    def postselected(self) -> Tuple[int, ...]:
        return tuple(sorted({g.qubits[0] for g in self.gates if g.kind is GateKind.POST_SELECT_ZERO}))

    def to_dict(self) -> dict:
        return {
            "qubit_count": self.qubit_count,
            "gates": [g.to_dict() for g in self.gates],
            "slots": list(self.slots),
            "open_outputs": list(self.open_outputs),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


class ParameterSet(Mapping):
    """
    Przypisanie nazwa parametru -> kąt, kąty zawinięte do [0, 2π)

    Wartości są kopiowane przy tworzeniu, więc zbiór nie zmienia się pod
    rękami innych wątków ani procesów.
    """

    def __init__(self, slots: Sequence[str], values):
        self.slots = tuple(slots)
        self.values = np.mod(np.array(values, dtype=float), TWO_PI)
        if self.values.shape != (len(self.slots),):
            raise CompileError(f"Liczba kątów {self.values.shape} nie pasuje do {len(self.slots)} parametrów")
        self._index = {slot: i for i, slot in enumerate(self.slots)}

    @classmethod
    def random(cls, slots: Sequence[str], rng: np.random.Generator) -> "ParameterSet":
        """Kąty losowane jednostajnie z [0, 2π)"""
        return cls(slots, rng.uniform(0.0, TWO_PI, size=len(slots)))

    def updated(self, values) -> "ParameterSet":
        return ParameterSet(self.slots, values)

    def __getitem__(self, slot: str) -> float:
        return float(self.values[self._index[slot]])

    def __iter__(self) -> Iterator[str]:
        return iter(self.slots)

    def __len__(self) -> int:
        return len(self.slots)

    def to_dict(self) -> Dict[str, float]:
        return {slot: float(value) for slot, value in zip(self.slots, self.values)}


def _signature(box: Box, diagram: Diagram) -> str:
    bases = "".join(diagram.types[w].base for w in box.outs)
    if box.kind is BoxKind.ORDER_N_STATE:
        return f"{bases[0]}^{box.n}"
    return bases


def word_ansatz(qubits: Sequence[int], prefix: str, cfg: AnsatzConfig) -> List[Gate]:
    """
    Bramki przygotowujące stan słowa

    Args:
        qubits: Kubity stanu
        prefix: Przedrostek nazw parametrów (słowo i kształt)
        cfg: Konfiguracja ansatzu

    Returns:
        list: PrepZero na każdym kubicie i bramki ansatzu
    """
    gates = [Gate(GateKind.PREP_ZERO, (q,)) for q in qubits]
    if len(qubits) == 1:
        for i in range(cfg.single_qubit_rotations):
            kind = GateKind.RX if i % 2 == 0 else GateKind.RZ
            gates.append(Gate(kind, (qubits[0],), f"{prefix}__{i}"))
        return gates
    index = 0
    for _ in range(cfg.iqp_layers):
        gates.extend(Gate(GateKind.H, (q,)) for q in qubits)
        for control, target in zip(qubits, qubits[1:]):
            gates.append(Gate(GateKind.CRZ, (control, target), f"{prefix}__{index}"))
            index += 1
    # zamykająca warstwa H, bez niej rozkład w bazie Z nie zależy od kątów
    gates.extend(Gate(GateKind.H, (q,)) for q in qubits)
    return gates


def compile_diagram(d: Diagram, cfg: AnsatzConfig = AnsatzConfig(),
                    require_normal: bool = False) -> ParameterizedCircuit:
    """
    Kompiluje diagram do obwodu

    Pary cap-cup niewyprostowanego diagramu dają stany i pomiary Bella,
    więc wynik różni się od postaci normalnej tylko skalarem.

    Args:
        d: Diagram bez wejść i drutów Focka
        cfg: Konfiguracja ansatzu
        require_normal: Odrzuca diagram, który normalize jeszcze zmienia

    Returns:
        ParameterizedCircuit: obwód z tablicą parametrów i otwartymi kubitami

    Raises:
        CompileError: wejścia diagramu, drut Focka, nieobsługiwane pudełko,
            postać nienormalna przy require_normal
    """
    if d.inputs:
        raise CompileError("Diagram do kompilacji nie może mieć wejść")
    if d.fock_wires():
        raise CompileError("Diagram zawiera druty Focka; najpierw zastosuj fock_shorthand")
    if require_normal and normalize(d) is not d:
        raise CompileError("Diagram nie jest w postaci normalnej; najpierw zastosuj normalize")

    allocated: Dict[int, List[int]] = {}
    gates: List[Gate] = []
    counter = 0

    def allocate(wire):
        nonlocal counter
        size = cfg.qubits_for(d.types[wire].base)
        allocated[wire] = list(range(counter, counter + size))
        counter += size
        return allocated[wire]

    for box in d.boxes:
        kind = box.kind
        if kind in STATE_KINDS:
            qubits = [q for w in box.outs for q in allocate(w)]
            gates.extend(word_ansatz(qubits, f"{box.word}__{_signature(box, d)}", cfg))
        elif kind is BoxKind.CAP:
            left, right = (allocate(w) for w in box.outs)
            for a, b in zip(left, right):
                gates += [Gate(GateKind.PREP_ZERO, (a,)), Gate(GateKind.PREP_ZERO, (b,)),
                          Gate(GateKind.H, (a,)), Gate(GateKind.CNOT, (a, b))]
        elif kind is BoxKind.CUP:
            left, right = (allocated[w] for w in box.ins)
            for a, b in zip(left, right):
                gates += [Gate(GateKind.CNOT, (a, b)), Gate(GateKind.H, (a,)),
                          Gate(GateKind.POST_SELECT_ZERO, (a,)), Gate(GateKind.POST_SELECT_ZERO, (b,))]
        elif kind is BoxKind.SPIDER:
            if len(box.ins) != 2 or len(box.outs) != 1:
                raise CompileError(f"Obsługiwane są tylko pająki 2 -> 1, jest {len(box.ins)} -> {len(box.outs)}")
            left, right = (allocated[w] for w in box.ins)
            for a, b in zip(left, right):
                gates += [Gate(GateKind.CNOT, (a, b)), Gate(GateKind.POST_SELECT_ZERO, (b,))]
            allocated[box.outs[0]] = left
        elif kind is BoxKind.COMBINE_RZ:
            left, right = (allocated[w] for w in box.ins)
            # kontrolą jest kubit drugiego zdania, otwarty zostaje kubit pierwszego
            for i, (a, b) in enumerate(zip(left, right)):
                gates += [Gate(GateKind.CRZ, (b, a), f"{box.slots[0]}__{i}"), Gate(GateKind.H, (b,)),
                          Gate(GateKind.POST_SELECT_ZERO, (b,))]
            allocated[box.outs[0]] = left
        elif kind is BoxKind.SWAP:
            allocated[box.outs[0]] = allocated[box.ins[1]]
            allocated[box.outs[1]] = allocated[box.ins[0]]
        elif kind is BoxKind.PROMOTE:
            if cfg.qubits_per_N != cfg.qubits_per_S:
                raise CompileError("Promocja N -> S wymaga qubits_per_N == qubits_per_S")
            allocated[box.outs[0]] = allocated[box.ins[0]]
        else:
            raise CompileError(f"Nie można skompilować pudełka {box.label()}")

    slots = []
    for gate in gates:
        if isinstance(gate.param, str) and gate.param not in slots:
            slots.append(gate.param)
    open_outputs = tuple(q for w in d.outputs for q in allocated[w])
    circuit = ParameterizedCircuit(counter, tuple(gates), tuple(slots), open_outputs)
    _check_circuit(circuit)
    app_logger.log_compile(circuit.qubit_count, len(circuit.gates), len(circuit.slots))
    return circuit


def _check_circuit(circuit: ParameterizedCircuit):
    postselected = set(circuit.postselected())
    for qubit in range(circuit.qubit_count):
        if (qubit in postselected) == (qubit in circuit.open_outputs):
            raise CompileError(f"Kubit {qubit} musi być albo otwarty, albo postselekcjonowany")


def slot_table(circuits: Sequence[ParameterizedCircuit]) -> Tuple[str, ...]:
    """
    Globalna lista parametrów (kolejność pierwszego wystąpienia)

    Ten sam wyraz w tym samym kształcie ma w każdym obwodzie te same nazwy
    parametrów, więc dzieli kąty między obwodami.
    """
    seen: Dict[str, None] = {}
    for circuit in circuits:
        for slot in circuit.slots:
            seen.setdefault(slot, None)
    return tuple(seen)


def bind(c: ParameterizedCircuit, params: Mapping) -> ParameterizedCircuit:
    """
    Podstawia kąty za nazwy parametrów; struktura obwodu się nie zmienia

    Raises:
        CompileError: brak kąta dla któregoś parametru
    """
    missing = [slot for slot in c.slots if slot not in params]
    if missing:
        raise CompileError(f"Brak wartości parametrów: {', '.join(missing)}")
    gates = tuple(replace(g, param=float(params[g.param])) if isinstance(g.param, str) else g
                  for g in c.gates)
    return ParameterizedCircuit(c.qubit_count, gates, (), c.open_outputs)
