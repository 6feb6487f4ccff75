#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Diagramy strunowe jako sieć połączeń

Każdy drut ma numer i typ (N albo S, zwykły albo Focka). Drut jest
produkowany dokładnie raz (wejście diagramu albo wyjście pudełka) i
konsumowany dokładnie raz (wejście pudełka albo wyjście diagramu).
Pudełka są trzymane w porządku topologicznym: stany słów u góry, wyjścia
diagramu na dole.
"""

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import DiagramError, LexiconError
from utils.sllm_logic import (Atom, Bang, Formula, LeftDiv, LexicalEntry,
                              Lexicon, Nabla, Product, ProofTree, RightDiv,
                              RuleTag, check_proof, format_formula, move)


@dataclass(frozen=True)
class WireType:
    """Typ drutu: baza N/S, fock=True dla przestrzeni Focka T_k0(V)"""

    base: str
    fock: bool = False

    def __str__(self):
        return f"T({self.base})" if self.fock else self.base


N_WIRE = WireType("N")
S_WIRE = WireType("S")


class BoxKind(Enum):
    WORD_STATE = "WordState"
    FOCK_ELEMENT = "FockElement"
    ORDER_N_STATE = "OrderNState"
    CUP = "Cup"
    CAP = "Cap"
    SWAP = "Swap"
    PROJECTION = "Projection"
    SPIDER = "Spider"
    COMBINE_RZ = "CombineRz"
    PROMOTE = "Promote"


STATE_KINDS = (BoxKind.WORD_STATE, BoxKind.FOCK_ELEMENT, BoxKind.ORDER_N_STATE)


@dataclass(frozen=True)
class Box:
    """
    Pudełko diagramu

    ins/outs to numery drutów (kolejność od lewej do prawej). word i role
    opisują stany słów, n to liczba kopii (Projection, OrderNState), slots
    to nazwy parametrów (CombineRz).
    """

    kind: BoxKind
    ins: Tuple[int, ...] = ()
    outs: Tuple[int, ...] = ()
    word: str = ""
    role: str = ""
    n: int = 0
    slots: Tuple[str, ...] = ()

    def relabel(self, mapping: Dict[int, int]) -> "Box":
        return replace(self,
                       ins=tuple(mapping.get(w, w) for w in self.ins),
                       outs=tuple(mapping.get(w, w) for w in self.outs))

    def label(self) -> str:
        if self.kind in STATE_KINDS:
            return f"{self.kind.value}({self.word})"
        if self.n:
            return f"{self.kind.value}({self.n})"
        return self.kind.value


@dataclass(frozen=True)
class Diagram:
    """Niemutowalny diagram; tworzony wyłącznie przez make_diagram"""

    boxes: Tuple[Box, ...]
    types: Tuple[WireType, ...]
    inputs: Tuple[int, ...] = ()
    outputs: Tuple[int, ...] = ()

    def output_types(self) -> Tuple[WireType, ...]:
        return tuple(self.types[w] for w in self.outputs)

    def count(self, kind: BoxKind) -> int:
        return sum(1 for box in self.boxes if box.kind is kind)

    def producers(self) -> Dict[int, Optional[int]]:
        """drut -> indeks pudełka (None dla wejścia diagramu)"""
        result: Dict[int, Optional[int]] = {w: None for w in self.inputs}
        for index, box in enumerate(self.boxes):
            for wire in box.outs:
                result[wire] = index
        return result

    def consumers(self) -> Dict[int, Optional[int]]:
        """drut -> indeks pudełka (None dla wyjścia diagramu)"""
        result: Dict[int, Optional[int]] = {w: None for w in self.outputs}
        for index, box in enumerate(self.boxes):
            for wire in box.ins:
                result[wire] = index
        return result

    def fock_wires(self) -> List[int]:
        return [w for w, t in enumerate(self.types) if t.fock]

    def to_dict(self) -> dict:
        producers, consumers = self.producers(), self.consumers()
        connections = []
        for wire, wire_type in enumerate(self.types):
            source, sink = producers[wire], consumers[wire]
            connections.append({
                "wire": wire,
                "type": str(wire_type),
                "from": "input" if source is None else
                        {"box": source, "port": self.boxes[source].outs.index(wire)},
                "to": "output" if sink is None else
                      {"box": sink, "port": self.boxes[sink].ins.index(wire)},
            })
        boxes = []
        for index, box in enumerate(self.boxes):
            data = {"index": index, "kind": box.kind.value, "ins": list(box.ins), "outs": list(box.outs)}
            if box.word:
                data["word"] = box.word
            if box.role:
                data["role"] = box.role
            if box.n:
                data["n"] = box.n
            if box.slots:
                data["slots"] = list(box.slots)
            boxes.append(data)
        return {
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "boxes": boxes,
            "connections": connections,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Konstrukcja i walidacja
# ---------------------------------------------------------------------------

def make_diagram(boxes: Sequence[Box], types, inputs: Sequence[int] = (),
                 outputs: Sequence[int] = ()) -> Diagram:
    """
    Buduje diagram w postaci kanonicznej i sprawdza jego poprawność

    Druty są przenumerowane w kolejności powstawania (wejścia, potem wyjścia
    kolejnych pudełek), więc równe sieci dają równe obiekty Diagram.

    Args:
        boxes: Pudełka w porządku topologicznym
        types: Typy drutów indeksowane starymi numerami (lista albo słownik)
        inputs: Druty wejściowe
        outputs: Druty wyjściowe

    Returns:
        Diagram: kanoniczny, zwalidowany diagram

    Raises:
        DiagramError: drut bez źródła, podwójnie produkowany, błędny typ
    """
    mapping: Dict[int, int] = {}

    def produce(wire):
        if wire in mapping:
            raise DiagramError(f"Drut {wire} jest produkowany więcej niż raz")
        mapping[wire] = len(mapping)

    for wire in inputs:
        produce(wire)
    renamed = []
    for box in boxes:
        for wire in box.ins:
            if wire not in mapping:
                raise DiagramError(f"{box.label()}: drut {wire} nie ma źródła powyżej pudełka")
        for wire in box.outs:
            produce(wire)
        renamed.append(box.relabel(mapping))
    for wire in outputs:
        if wire not in mapping:
            raise DiagramError(f"Wyjście {wire} nie ma źródła")

    new_types: List[WireType] = [None] * len(mapping)
    for old, new in mapping.items():
        new_types[new] = types[old]
    diagram = Diagram(tuple(renamed), tuple(new_types),
                      tuple(mapping[w] for w in inputs),
                      tuple(mapping[w] for w in outputs))
    validate_diagram(diagram)
    return diagram


def validate_diagram(d: Diagram) -> None:
    """
    Sprawdza niezmienniki sieci: każdy port podłączony dokładnie raz,
    porządek topologiczny i zgodność typów

    Raises:
        DiagramError: pierwszy znaleziony problem
    """
    consumed = [0] * len(d.types)
    for box in d.boxes:
        for wire in box.ins:
            consumed[wire] += 1
    for wire in d.outputs:
        consumed[wire] += 1
    for wire, count in enumerate(consumed):
        if count != 1:
            raise DiagramError(f"Drut {wire} ({d.types[wire]}) jest konsumowany {count} razy")

    available = set(d.inputs)
    for box in d.boxes:
        if not all(w in available for w in box.ins):
            raise DiagramError(f"{box.label()}: pudełko przed źródłem swojego wejścia")
        available.update(box.outs)
        _check_box(box, d.types)


def _check_box(box: Box, types: Sequence[WireType]):
    ins = [types[w] for w in box.ins]
    outs = [types[w] for w in box.outs]
    plain = not any(t.fock for t in ins + outs)
    kind = box.kind

    def fail(message):
        raise DiagramError(f"{box.label()}: {message}")

    if kind is BoxKind.WORD_STATE:
        if ins or not outs or not plain:
            fail("stan słowa ma tylko zwykłe wyjścia")
    elif kind is BoxKind.FOCK_ELEMENT:
        if ins or len(outs) != 1 or not outs[0].fock:
            fail("element Focka ma dokładnie jedno wyjście Focka")
    elif kind is BoxKind.ORDER_N_STATE:
        if ins or box.n < 1 or len(outs) != box.n or not plain or len(set(outs)) != 1:
            fail("tensor rzędu n ma n zwykłych wyjść jednego typu")
    elif kind is BoxKind.PROJECTION:
        if len(ins) != 1 or not ins[0].fock:
            fail("wejściem projekcji jest drut Focka")
        if box.n < 1 or len(outs) != box.n or any(t != WireType(ins[0].base) for t in outs):
            fail("projekcja daje n zwykłych drutów tej samej bazy")
    elif kind is BoxKind.CUP:
        if len(ins) != 2 or outs or not plain or ins[0] != ins[1]:
            fail("cup łączy dwa zwykłe druty równego typu")
    elif kind is BoxKind.CAP:
        if ins or len(outs) != 2 or not plain or outs[0] != outs[1]:
            fail("cap tworzy dwa zwykłe druty równego typu")
    elif kind is BoxKind.SWAP:
        if len(ins) != 2 or not plain or outs != [ins[1], ins[0]]:
            fail("swap zamienia miejscami dwa zwykłe druty")
    elif kind is BoxKind.SPIDER:
        if not ins or not plain or len({t.base for t in ins + outs}) != 1:
            fail("wszystkie druty pająka mają wspólną bazę")
    elif kind is BoxKind.COMBINE_RZ:
        if ins != [S_WIRE, S_WIRE] or outs != [S_WIRE] or len(box.slots) != 1:
            fail("CombineRz łączy dwa druty S w jeden, z jednym parametrem")
    elif kind is BoxKind.PROMOTE:
        if ins != [N_WIRE] or outs != [S_WIRE]:
            fail("promocja zamienia drut N na drut S")


class DiagramBuilder:
    """Przyrostowe budowanie diagramu ze świeżymi numerami drutów"""

    def __init__(self):
        self.types: List[WireType] = []
        self.boxes: List[Box] = []

    def add(self, kind: BoxKind, ins: Sequence[int] = (), out_types: Sequence[WireType] = (),
            **attributes) -> Tuple[int, ...]:
        """Dodaje pudełko i zwraca numery jego nowych drutów wyjściowych"""
        outs = []
        for wire_type in out_types:
            self.types.append(wire_type)
            outs.append(len(self.types) - 1)
        self.boxes.append(Box(kind, tuple(ins), tuple(outs), **attributes))
        return tuple(outs)

    def type_of(self, wire: int) -> WireType:
        return self.types[wire]

    def build(self, outputs: Sequence[int]) -> Diagram:
        return make_diagram(self.boxes, self.types, (), outputs)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Diagramy obok siebie: d1 po lewej, d2 po prawej"""
    offset = len(d1.types)
    shifted = [box.relabel({w: w + offset for w in range(len(d2.types))}) for box in d2.boxes]
    return make_diagram(d1.boxes + tuple(shifted), d1.types + d2.types,
                        d1.inputs + tuple(w + offset for w in d2.inputs),
                        d1.outputs + tuple(w + offset for w in d2.outputs))


# ---------------------------------------------------------------------------
# Formuły -> druty
# ---------------------------------------------------------------------------

def formula_wires(formula: Formula) -> List[WireType]:
    """
    Druty formuły: A\\B daje odwrócone druty A (dualne) i druty B,
    B/A daje druty B i odwrócone druty A; ∇ nie zmienia drutów

    Raises:
        DiagramError: ! wewnątrz innej formuły
    """
    if isinstance(formula, Atom):
        return [WireType(formula.name.upper())]
    if isinstance(formula, Product):
        return formula_wires(formula.left) + formula_wires(formula.right)
    if isinstance(formula, LeftDiv):
        return list(reversed(formula_wires(formula.divisor))) + formula_wires(formula.result)
    if isinstance(formula, RightDiv):
        return formula_wires(formula.result) + list(reversed(formula_wires(formula.divisor)))
    if isinstance(formula, Nabla):
        return formula_wires(formula.inner)
    raise DiagramError(f"Formuła {format_formula(formula)} dozwolona tylko jako typ całego słowa")


def boundary_wires(formula: Formula) -> List[WireType]:
    """Druty formuły stojącej samodzielnie; !A z jednym drutem daje drut Focka"""
    if isinstance(formula, Bang):
        inner = formula_wires(formula.inner)
        if len(inner) != 1:
            raise DiagramError(f"!{format_formula(formula.inner)}: obsługiwane są tylko formuły jednodrutowe")
        return [WireType(inner[0].base, fock=True)]
    return formula_wires(formula)


def word_state(builder: DiagramBuilder, entry: LexicalEntry) -> Tuple[int, ...]:
    """Stan słowa: element Focka dla typów !A, w pozostałych przypadkach WordState"""
    if isinstance(entry.formula, Bang):
        return builder.add(BoxKind.FOCK_ELEMENT, (), boundary_wires(entry.formula),
                           word=entry.word, role=entry.role)
    return builder.add(BoxKind.WORD_STATE, (), formula_wires(entry.formula),
                       word=entry.word, role=entry.role)


# ---------------------------------------------------------------------------
# Dowód -> diagram
# ---------------------------------------------------------------------------

_IDENTITY_RULES = (RuleTag.AXIOM, RuleTag.NABLA_L, RuleTag.NABLA_R)


class _ProofInterpreter:
    """
    Interpretuje węzły dowodu jako okablowanie

    Każda formuła poprzednika ma uchwyt: listę drutów, które ją niosą.
    Interpretacja węzła zwraca druty następnika.
    """

    def __init__(self, builder: DiagramBuilder):
        self.builder = builder

    def interpret(self, node: ProofTree, handles: List[List[int]]) -> List[int]:
        rule = node.rule
        ant = node.conclusion.antecedent
        pos = node.position

        if rule is RuleTag.AXIOM:
            return list(handles[0])

        if rule in (RuleTag.NABLA_L, RuleTag.NABLA_R):
            return self.interpret(node.premises[0], handles)

        if rule is RuleTag.PROD_L:
            split = len(formula_wires(ant[pos].left))
            handle = handles[pos]
            opened = handles[:pos] + [handle[:split], handle[split:]] + handles[pos + 1:]
            return self.interpret(node.premises[0], opened)

        if rule is RuleTag.PROD_R:
            cut = len(node.premises[0].conclusion.antecedent)
            return (self.interpret(node.premises[0], handles[:cut]) +
                    self.interpret(node.premises[1], handles[cut:]))

        if rule is RuleTag.LDIV_L:
            argument_proof, rest_proof = node.premises
            start = pos - len(argument_proof.conclusion.antecedent)
            argument = self.interpret(argument_proof, handles[start:pos])
            size = len(argument)
            functor = handles[pos]
            dual, result = functor[:size], functor[size:]
            for i, wire in enumerate(argument):
                self.builder.add(BoxKind.CUP, (wire, dual[size - 1 - i]))
            return self.interpret(rest_proof, handles[:start] + [result] + handles[pos + 1:])

        if rule is RuleTag.RDIV_L:
            argument_proof, rest_proof = node.premises
            end = pos + 1 + len(argument_proof.conclusion.antecedent)
            argument = self.interpret(argument_proof, handles[pos + 1:end])
            size = len(argument)
            functor = handles[pos]
            result, dual = functor[:len(functor) - size], functor[len(functor) - size:]
            for i, wire in enumerate(argument):
                self.builder.add(BoxKind.CUP, (dual[size - 1 - i], wire))
            return self.interpret(rest_proof, handles[:pos] + [result] + handles[end:])

        if rule in (RuleTag.LDIV_R, RuleTag.RDIV_R):
            divisor = node.conclusion.succedent.divisor
            duals, hypothesis = [], []
            for wire_type in formula_wires(divisor):
                left, right = self.builder.add(BoxKind.CAP, (), (wire_type, wire_type))
                duals.append(left)
                hypothesis.append(right)
            duals.reverse()
            if rule is RuleTag.LDIV_R:
                return duals + self.interpret(node.premises[0], [hypothesis] + handles)
            return self.interpret(node.premises[0], handles + [hypothesis]) + duals

        if rule is RuleTag.BANG_L:
            inner = formula_wires(ant[pos].inner)
            copies = self.builder.add(BoxKind.PROJECTION, tuple(handles[pos]),
                                      inner * node.copies, n=node.copies)
            return self.interpret(node.premises[0],
                                  handles[:pos] + [[w] for w in copies] + handles[pos + 1:])

        if rule is RuleTag.BANG_R:
            if not all(n.rule in _IDENTITY_RULES for n in node.premises[0].nodes()):
                raise DiagramError("BangR jest obsługiwane tylko nad dowodem tożsamości")
            return list(handles[0])

        if rule in (RuleTag.PERM, RuleTag.PERM_PRIME):
            return self._permute(node, handles)

        raise DiagramError(f"Nieobsługiwana reguła {rule.value}")

    def _permute(self, node: ProofTree, handles: List[List[int]]) -> List[int]:
        pos, target = node.position, node.target
        moving = list(handles[pos])
        handles = [list(h) for h in handles]
        if node.rule is RuleTag.PERM:
            for index in range(pos + 1, target + 1):
                handles[index] = [self._cross_right(moving, wire) for wire in handles[index]]
        else:
            for index in range(pos - 1, target - 1, -1):
                handles[index] = [self._cross_left(wire, moving) for wire in reversed(handles[index])][::-1]
        handles[pos] = moving
        return self.interpret(node.premises[0], list(move(tuple(handles), pos, target)))

    def _cross_right(self, moving: List[int], wire: int) -> int:
        for j in reversed(range(len(moving))):
            wire, moving[j] = self.builder.add(
                BoxKind.SWAP, (moving[j], wire),
                (self.builder.type_of(wire), self.builder.type_of(moving[j])))
        return wire

    def _cross_left(self, wire: int, moving: List[int]) -> int:
        for j in range(len(moving)):
            moving[j], wire = self.builder.add(
                BoxKind.SWAP, (wire, moving[j]),
                (self.builder.type_of(moving[j]), self.builder.type_of(wire)))
        return wire


def proof_to_diagram(tree: ProofTree, words: Sequence[str], lexicon: Lexicon) -> Diagram:
    """
    Tłumaczy dowód SLLM na diagram strunowy

    Args:
        tree: Dowód akceptowany przez check_proof
        words: Słowa, do których należą kolejne formuły poprzednika
        lexicon: Leksykon z typami i rolami słów

    Returns:
        Diagram: stan (lub element Focka) dla każdego słowa, bez wejść,
        wyjścia zgodne z drutami następnika

    Raises:
        DiagramError: niezgodność dowodu z leksykonem
    """
    check_proof(tree, lexicon.k0)
    antecedent = tree.conclusion.antecedent
    if len(words) != len(antecedent):
        raise DiagramError(f"Dowód ma {len(antecedent)} formuł, a dyskurs {len(words)} słów")

    builder = DiagramBuilder()
    handles = []
    for word, formula in zip(words, antecedent):
        try:
            entry = lexicon.entry(word)
        except LexiconError as e:
            raise DiagramError(e.message)
        if entry.formula != formula:
            raise DiagramError(f"Słowo '{word}' ma typ {format_formula(entry.formula)}, "
                               f"a dowód używa {format_formula(formula)}")
        handles.append(list(word_state(builder, entry)))

    outputs = _ProofInterpreter(builder).interpret(tree, handles)
    diagram = builder.build(outputs)
    if list(diagram.output_types()) != boundary_wires(tree.conclusion.succedent):
        raise DiagramError("Wyjścia diagramu nie odpowiadają następnikowi dowodu")
    return diagram


# ---------------------------------------------------------------------------
# Denotacja jako sieć tensorowa
# ---------------------------------------------------------------------------

def fock_dimension(dimension: int, k0: int) -> int:
    """Wymiar T_k0(V) = V^0 ⊕ V^1 ⊕ ... ⊕ V^k0"""
    return sum(dimension ** i for i in range(k0 + 1))


def projection_tensor(dimension: int, n: int, k0: int) -> np.ndarray:
    """Projekcja T_k0(V) -> V^{⊗n} jako tensor o osiach (Fock, V, ..., V)"""
    if not 1 <= n <= k0:
        raise DiagramError(f"Projekcja rzędu {n} poza zakresem 1..{k0}")
    offset = fock_dimension(dimension, n - 1)
    block = dimension ** n
    result = np.zeros((fock_dimension(dimension, k0), block))
    result[offset:offset + block] = np.eye(block)
    return result.reshape((fock_dimension(dimension, k0),) + (dimension,) * n)


def spider_tensor(dimension: int, legs: int) -> np.ndarray:
    result = np.zeros((dimension,) * legs)
    for i in range(dimension):
        result[(i,) * legs] = 1.0
    return result


def evaluate_diagram(d: Diagram, state_tensor: Callable[[Box], np.ndarray],
                     dims: Optional[Dict[str, int]] = None, k0: int = 2) -> np.ndarray:
    """
    Kontrakcja diagramu bez wejść do tensora o osiach jego wyjść

    Cup i cap to delta Kroneckera, pająk to tensor kopiujący, swap i
    promocja zmieniają tylko etykiety osi. Tensory stanów słów i pudełek
    CombineRz dostarcza state_tensor.

    Args:
        d: Diagram
        state_tensor: Tensor pudełka o osiach (wejścia..., wyjścia...)
        dims: Wymiar drutu dla bazy, domyślnie 2 dla N i S
        k0: Obcięcie przestrzeni Focka

    Returns:
        np.ndarray: tensor o jednej osi na każde wyjście diagramu
    """
    if d.inputs:
        raise DiagramError("Ewaluacja wymaga diagramu bez wejść")
    dims = dims or {"N": 2, "S": 2}
    alias: Dict[int, int] = {}

    def resolve(wire):
        while wire in alias:
            wire = alias[wire]
        return wire

    def dimension(wire):
        wire_type = d.types[wire]
        base = dims[wire_type.base]
        return fock_dimension(base, k0) if wire_type.fock else base

    operands = []
    for box in d.boxes:
        wires = box.ins + box.outs
        if box.kind is BoxKind.SWAP:
            alias[box.outs[0]] = box.ins[1]
            alias[box.outs[1]] = box.ins[0]
            continue
        if box.kind is BoxKind.PROMOTE:
            if dims["N"] != dims["S"]:
                raise DiagramError("Promocja N -> S wymaga równych wymiarów N i S")
            alias[box.outs[0]] = box.ins[0]
            continue
        if box.kind in (BoxKind.CUP, BoxKind.CAP):
            tensor_value = np.eye(dimension(wires[0]))
        elif box.kind is BoxKind.SPIDER:
            tensor_value = spider_tensor(dimension(wires[0]), len(wires))
        elif box.kind is BoxKind.PROJECTION:
            tensor_value = projection_tensor(dims[d.types[box.ins[0]].base], box.n, k0)
        else:
            tensor_value = np.asarray(state_tensor(box))
            expected = tuple(dimension(w) for w in wires)
            if tensor_value.shape != expected:
                raise DiagramError(f"{box.label()}: tensor o kształcie {tensor_value.shape}, oczekiwano {expected}")
        operands.append((tensor_value, [resolve(w) for w in wires]))

    labels: Dict[int, int] = {}
    arguments = []
    for tensor_value, wires in operands:
        arguments.append(tensor_value)
        arguments.append([labels.setdefault(w, len(labels)) for w in wires])
    output = [labels.setdefault(resolve(w), len(labels)) for w in d.outputs]
    if len(labels) > 52:
        raise DiagramError("Diagram ma zbyt wiele drutów do kontrakcji einsum")
    if not operands:
        return np.ones(())
    return np.einsum(*arguments, output, optimize="greedy")
