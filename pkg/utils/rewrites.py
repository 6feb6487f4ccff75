#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Przepisywanie diagramów: zaimek i łącznik jako cap, skrót elementu Focka,
prostowanie drutów (yanking) i łączenie zdań
"""

from typing import Dict, List, Optional, Sequence

from utils.diagram import (S_WIRE, N_WIRE, Box, BoxKind, Diagram, make_diagram,
                           tensor)
from utils.errors import DiagramError
from utils.logger import app_logger

COMBINE_SLOT = "CombineRz"
COMBINATIONS = {"frobenius": BoxKind.SPIDER, "rz": BoxKind.COMBINE_RZ}

# druty stanu łącznika (n\s)/(n/n): podmiot, zdanie, argument i wynik przymiotnika
_COPULA_SHAPE = ("N", "S", "N", "N")


def rewrite_coreference(d: Diagram) -> Diagram:
    """
    Zastępuje każdy stan zaimka (dwa druty tego samego typu) capem

    Raises:
        DiagramError: brak zaimka w diagramie
    """
    boxes = list(d.boxes)
    found = 0
    for index, box in enumerate(boxes):
        if box.kind is not BoxKind.WORD_STATE or box.role != "pronoun":
            continue
        if len(box.outs) != 2 or d.types[box.outs[0]] != d.types[box.outs[1]]:
            raise DiagramError(f"Zaimek '{box.word}' musi mieć dwa druty tego samego typu")
        boxes[index] = Box(BoxKind.CAP, (), box.outs)
        found += 1
    if not found:
        raise DiagramError("Diagram nie zawiera zaimka")
    result = make_diagram(boxes, d.types, d.inputs, d.outputs)
    app_logger.log_rewrite("coreference", len(d.boxes), len(result.boxes))
    return result


def rewrite_copula(d: Diagram) -> Diagram:
    """
    Zastępuje stany łącznika capami

    Podmiot trafia na wejście przymiotnika, a wynik przymiotnika przez
    pudełko Promote na drut zdania łącznika. Diagram bez łącznika wraca
    bez zmian.
    """
    types = list(d.types)
    boxes: List[Box] = []
    rewritten = 0
    for box in d.boxes:
        if box.kind is BoxKind.WORD_STATE and box.role == "copula":
            shape = tuple(types[w].base for w in box.outs)
            if shape == _COPULA_SHAPE:
                subject, sentence, adjective_in, adjective_out = box.outs
                types.append(N_WIRE)
                bridge = len(types) - 1
                boxes.append(Box(BoxKind.CAP, (), (subject, adjective_in)))
                boxes.append(Box(BoxKind.CAP, (), (adjective_out, bridge)))
                boxes.append(Box(BoxKind.PROMOTE, (bridge,), (sentence,)))
                rewritten += 1
                continue
            app_logger.debug(f"Łącznik '{box.word}' o drutach {shape} pozostaje bez zmian")
        boxes.append(box)
    if not rewritten:
        return d
    result = make_diagram(boxes, types, d.inputs, d.outputs)
    app_logger.log_rewrite("copula", len(d.boxes), len(result.boxes))
    return result


def fock_shorthand(d: Diagram) -> Diagram:
    """
    Skleja element Focka z jego projekcją w tensor rzędu n

    Raises:
        DiagramError: element Focka, którego drut nie trafia do projekcji
    """
    consumers = d.consumers()
    boxes: List[Optional[Box]] = list(d.boxes)
    for index, box in enumerate(d.boxes):
        if box.kind is not BoxKind.FOCK_ELEMENT:
            continue
        sink = consumers[box.outs[0]]
        if sink is None or d.boxes[sink].kind is not BoxKind.PROJECTION:
            raise DiagramError(f"Element Focka '{box.word}' nie ma projekcji")
        projection = d.boxes[sink]
        boxes[index] = Box(BoxKind.ORDER_N_STATE, (), projection.outs,
                           word=box.word, role=box.role, n=projection.n)
        boxes[sink] = None
    result = make_diagram([b for b in boxes if b is not None], d.types, d.inputs, d.outputs)
    if result.fock_wires():
        raise DiagramError("Po skrócie pozostały druty Focka")
    app_logger.log_rewrite("fock_shorthand", len(d.boxes), len(result.boxes))
    return result


def toposort(boxes: Sequence[Box], inputs: Sequence[int]) -> Optional[List[Box]]:
    """Stabilny porządek topologiczny; None, gdy sieć ma cykl"""
    available = set(inputs)
    remaining = list(boxes)
    ordered = []
    while remaining:
        for index, box in enumerate(remaining):
            if all(w in available for w in box.ins):
                ordered.append(box)
                available.update(box.outs)
                del remaining[index]
                break
        else:
            return None
    return ordered


def _remove_swaps(d: Diagram) -> Diagram:
    alias: Dict[int, int] = {}
    for box in d.boxes:
        if box.kind is BoxKind.SWAP:
            alias[box.outs[0]] = box.ins[1]
            alias[box.outs[1]] = box.ins[0]
    if not alias:
        return d

    def resolve(wire):
        while wire in alias:
            wire = alias[wire]
        return wire

    boxes = [Box(b.kind, tuple(resolve(w) for w in b.ins), b.outs, b.word, b.role, b.n, b.slots)
             for b in d.boxes if b.kind is not BoxKind.SWAP]
    return make_diagram(boxes, d.types, d.inputs, [resolve(w) for w in d.outputs])


def _yank_once(d: Diagram) -> Optional[Diagram]:
    consumers = d.consumers()
    for cap_index, cap in enumerate(d.boxes):
        if cap.kind is not BoxKind.CAP:
            continue
        for leg in (0, 1):
            bent, straight = cap.outs[leg], cap.outs[1 - leg]
            cup_index = consumers[bent]
            if cup_index is None or d.boxes[cup_index].kind is not BoxKind.CUP:
                continue
            cup = d.boxes[cup_index]
            other = cup.ins[1] if cup.ins[0] == bent else cup.ins[0]
            kept = [b for i, b in enumerate(d.boxes) if i not in (cap_index, cup_index)]
            if other == straight:
                # zamknięta pętla
                return make_diagram(kept, d.types, d.inputs, d.outputs)
            kept = [Box(b.kind, tuple(other if w == straight else w for w in b.ins), b.outs,
                        b.word, b.role, b.n, b.slots) for b in kept]
            ordered = toposort(kept, d.inputs)
            if ordered is None:
                continue
            outputs = [other if w == straight else w for w in d.outputs]
            return make_diagram(ordered, d.types, d.inputs, outputs)
    return None


def normalize(d: Diagram) -> Diagram:
    """
    Usuwa swapy i prostuje pary cap-cup aż do punktu stałego

    Cap, którego drut trafia do cupa, znika razem z tym cupem, a drugi drut
    capa zostaje zastąpiony drugim drutem cupa. Para, której usunięcie
    zamknęłoby cykl, zostaje.

    Returns:
        Diagram: postać normalna; normalize(normalize(d)) == normalize(d)
    """
    current = _remove_swaps(d)
    while True:
        step = _yank_once(current)
        if step is None:
            break
        current = step
    if current is not d:
        app_logger.log_rewrite("normalize", len(d.boxes), len(current.boxes))
    return current


def merge_outputs(d: Diagram, op: str) -> Diagram:
    """
    Łączy dwa wyjścia S diagramu w jedno pająkiem albo pudełkiem CombineRz

    Args:
        d: Diagram z dokładnie dwoma wyjściami S
        op: "frobenius" albo "rz"

    Returns:
        Diagram: z jednym wyjściem S

    Raises:
        DiagramError: złe wyjścia albo nieznane połączenie
    """
    if op not in COMBINATIONS:
        raise DiagramError(f"Nieznane połączenie: {op}")
    if d.output_types() != (S_WIRE, S_WIRE):
        raise DiagramError(f"Połączenie wymaga dwóch wyjść S, diagram ma {len(d.outputs)}: "
                           f"{[str(t) for t in d.output_types()]}")
    types = list(d.types) + [S_WIRE]
    merged = len(types) - 1
    kind = COMBINATIONS[op]
    slots = (COMBINE_SLOT,) if kind is BoxKind.COMBINE_RZ else ()
    box = Box(kind, tuple(d.outputs), (merged,), slots=slots)
    return make_diagram(d.boxes + (box,), types, d.inputs, (merged,))


def combine_sentences(d1: Diagram, d2: Diagram, op: str) -> Diagram:
    """
    Łączy diagramy dwóch zdań, z których każdy ma jedno wyjście S

    Raises:
        DiagramError: zła liczba lub typ wyjść
    """
    for d in (d1, d2):
        if d.output_types() != (S_WIRE,):
            raise DiagramError("Każde zdanie musi mieć dokładnie jedno wyjście S")
    return merge_outputs(tensor(d1, d2), op)
