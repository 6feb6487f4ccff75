#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Trening SPSA na wspólnych parametrach słów

Strata zbioru to średnia binarna entropia krzyżowa po wpisach. SPSA liczy
zaburzenia, gradient i krok w pełnych obrotach (kąt / 2π), kąty obwodów
zostają w radianach.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from utils.circuit_compiler import TWO_PI, ParameterSet, ParameterizedCircuit
from utils.config import SPSAConfig
from utils.errors import TrainingError
from utils.logger import app_logger
from utils.qsim import ClassDistribution, class_distribution, predict

GRADIENT_CLIP = 10.0


def bce_loss(dist: ClassDistribution, label: int) -> float:
    """-log prawdopodobieństwa poprawnej klasy"""
    if label not in (0, 1):
        raise TrainingError(f"Etykieta musi być 0 albo 1, otrzymano {label!r}")
    return -math.log(dist.l1 if label else dist.l0)


@dataclass(frozen=True)
class LossReport:
    loss: float
    accuracy: float


@dataclass(frozen=True)
class CircuitSet:
    """Obwody jednego podziału zbioru danych z etykietami"""

    circuits: Tuple[ParameterizedCircuit, ...]
    labels: Tuple[int, ...]

    def __post_init__(self):
        if len(self.circuits) != len(self.labels):
            raise TrainingError("Liczba obwodów i etykiet musi być równa")

    def __len__(self):
        return len(self.circuits)


class DatasetObjective:
    """Średnia strata i dokładność na podziale dla danych kątów"""

    def __init__(self, split: CircuitSet, slots: Sequence[str]):
        if not len(split):
            raise TrainingError("Pusty podział zbioru danych")
        self.split = split
        self.slots = tuple(slots)
        self.evaluations = 0

    def __call__(self, theta: ParameterSet) -> LossReport:
        if theta.slots != self.slots:
            raise TrainingError(f"Wymiar parametrów {len(theta.slots)} nie pasuje do {len(self.slots)}")
        self.evaluations += 1
        losses, correct = 0.0, 0
        for circuit, label in zip(self.split.circuits, self.split.labels):
            dist = class_distribution(circuit, theta)
            losses += bce_loss(dist, label)
            correct += predict(dist) == label
        return LossReport(losses / len(self.split), correct / len(self.split))


@dataclass
class TrainState:
    """Kąty, historia (strata, dokładność) po iteracjach i stan generatora"""

    theta: ParameterSet
    rng: np.random.Generator
    history: List[Tuple[float, float]] = field(default_factory=list)
    evaluations: int = 0


LossFunction = Callable[[ParameterSet], Union[float, LossReport]]


def _report(value) -> LossReport:
    if isinstance(value, LossReport):
        return value
    return LossReport(float(value), float("nan"))


def gains(spsa: SPSAConfig, k: int) -> Tuple[float, float]:
    """Współczynniki a_k i c_k dla iteracji k (od 0)"""
    a_k = spsa.a / (spsa.stability + k + 1) ** spsa.alpha
    c_k = spsa.c / (k + 1) ** spsa.gamma
    return a_k, c_k


def initial_state(slots: Sequence[str], seed: int) -> TrainState:
    rng = np.random.default_rng(seed)
    return TrainState(ParameterSet.random(slots, rng), rng)


def spsa_step(state: TrainState, k: int, loss_fn: LossFunction, spsa: SPSAConfig) -> TrainState:
    """
    Jeden krok SPSA: dwie ewaluacje straty w Θ ± 2π·c_k·Δ

    a_k, c_k i próg obcięcia gradientu są w obrotach, więc krok w radianach
    to 2π·a_k·g, gdzie g to gradient względem kąta w obrotach.

    Args:
        state: Bieżący stan
        k: Numer iteracji (od 0)
        loss_fn: Strata dla kątów; może zwrócić LossReport z dokładnością
        spsa: Hiperparametry

    Returns:
        TrainState: nowe kąty (zawinięte do [0, 2π)) i historia z wpisem
        średniej straty i dokładności obu ewaluacji
    """
    theta = state.theta.values / TWO_PI
    if theta.size == 0:
        raise TrainingError("Brak parametrów do optymalizacji")
    a_k, c_k = gains(spsa, k)
    delta = state.rng.choice(np.array([-1.0, 1.0]), size=theta.size)
    plus = _report(loss_fn(state.theta.updated(TWO_PI * (theta + c_k * delta))))
    minus = _report(loss_fn(state.theta.updated(TWO_PI * (theta - c_k * delta))))
    gradient = (plus.loss - minus.loss) / (2.0 * c_k * delta)
    gradient = np.clip(gradient, -GRADIENT_CLIP, GRADIENT_CLIP)
    history = state.history + [((plus.loss + minus.loss) / 2, (plus.accuracy + minus.accuracy) / 2)]
    return TrainState(state.theta.updated(TWO_PI * (theta - a_k * gradient)), state.rng, history,
                      state.evaluations + 2)


def train(split: CircuitSet, slots: Sequence[str], spsa: SPSAConfig, cell: str = "") -> TrainState:
    """
    Trenuje kąty na podziale treningowym przez spsa.iterations kroków

    Args:
        split: Obwody treningowe z etykietami
        slots: Globalna tablica parametrów (train + test + val)
        spsa: Hiperparametry, w tym ziarno
        cell: Nazwa komórki eksperymentu do logów

    Returns:
        TrainState: końcowe kąty i historia

    Raises:
        TrainingError: pusty podział
    """
    objective = DatasetObjective(split, slots)
    state = initial_state(slots, spsa.seed)
    app_logger.log_training_start(cell, spsa.seed, len(slots), spsa.iterations)
    for k in range(spsa.iterations):
        state = spsa_step(state, k, objective, spsa)
        app_logger.log_iteration(k, *state.history[-1])
    return state


def evaluate(theta: ParameterSet, split: CircuitSet) -> float:
    """Odsetek wpisów z poprawnie przewidzianą etykietą"""
    if not len(split):
        raise TrainingError("Pusty podział zbioru danych")
    correct = sum(predict(class_distribution(c, theta)) == label
                  for c, label in zip(split.circuits, split.labels))
    return correct / len(split)
