#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Konfiguracja fockflow: ansatz, SPSA, szukanie dowodów i parametry uruchomienia
"""

import os
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from utils.errors import UsageError

MODELS = (1, 2, 3, 4)
COMBINATIONS = ("frobenius", "rz")


@dataclass(frozen=True)
class SearchConfig:
    """Parametry szukania dowodów SLLM"""

    k0: int = 2
    depth_limit: int = 32

    def __post_init__(self):
        if self.k0 < 1:
            raise UsageError("k0 musi być dodatnią liczbą całkowitą")
        if self.depth_limit < 1:
            raise UsageError("Limit głębokości musi być dodatni")


@dataclass(frozen=True)
class AnsatzConfig:
    """
    Schemat parametryzacji obwodów

    Domyślnie jeden kubit na drut N i S, jedna warstwa IQP i trzy rotacje
    (Rx Rz Rx) dla stanów jednokubitowych.
    """

    qubits_per_N: int = 1
    qubits_per_S: int = 1
    iqp_layers: int = 1
    single_qubit_rotations: int = 3

    def __post_init__(self):
        for name in ("qubits_per_N", "qubits_per_S", "iqp_layers", "single_qubit_rotations"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} musi być dodatnie")

    def qubits_for(self, base: str) -> int:
        """Liczba kubitów dla drutu o danym typie bazowym"""
        return self.qubits_per_N if base == "N" else self.qubits_per_S


@dataclass(frozen=True)
class SPSAConfig:
    """
    Hiperparametry SPSA

    a i c są w pełnych obrotach (1.0 = 2π rad). A = None oznacza
    0.01 * liczba iteracji.
    """

    a: float = 0.05
    c: float = 0.06
    A: Optional[float] = None
    alpha: float = 0.602
    gamma: float = 0.101
    iterations: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0:
            raise UsageError("Parametry a i c muszą być dodatnie")
        if self.iterations < 0:
            raise UsageError("Liczba iteracji nie może być ujemna")

    @property
    def stability(self) -> float:
        """Stała stabilności A"""
        return 0.01 * self.iterations if self.A is None else self.A

    def with_seed(self, seed: int) -> "SPSAConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class RunConfig:
    """Parametry pojedynczego uruchomienia eksperymentu"""

    models: Tuple[int, ...] = MODELS
    combinations: Tuple[str, ...] = COMBINATIONS
    seeds: int = 20
    seed: int = 0
    spsa: SPSAConfig = field(default_factory=SPSAConfig)
    ansatz: AnsatzConfig = field(default_factory=AnsatzConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    dataset: str = "generate"
    vocabulary: Optional[str] = None
    out: str = "results"
    dump_diagrams: bool = False
    dump_circuits: bool = False
    dump_state: bool = False

    def __post_init__(self):
        for model in self.models:
            if model not in MODELS:
                raise UsageError(f"Nieznany model: {model} (dozwolone 1-4)")
        for combination in self.combinations:
            if combination not in COMBINATIONS:
                raise UsageError(f"Nieznane połączenie: {combination} (frobenius|rz)")
        if self.seeds < 1:
            raise UsageError("Liczba ziaren musi być dodatnia")


def worker_count() -> int:
    """
    Liczba procesów roboczych z FOCKFLOW_THREADS

    Returns:
        int: limit równoległości (co najmniej 1)
    """
    raw = os.environ.get("FOCKFLOW_THREADS")
    if not raw:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"FOCKFLOW_THREADS musi być liczbą całkowitą, otrzymano '{raw}'")
    if value < 1:
        raise UsageError("FOCKFLOW_THREADS musi być dodatnie")
    return value
