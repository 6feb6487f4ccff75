#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Macierz eksperymentów: modele x połączenia x ziarna

Komórki są kompilowane raz, a przebiegi (komórka, ziarno) idą do puli
procesów. Wyniki są zbierane w stałej kolejności, więc pliki wynikowe nie
zależą od kolejności kończenia procesów.
"""

import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from utils.circuit_compiler import compile_diagram, slot_table
from utils.config import AnsatzConfig, RunConfig, SearchConfig, SPSAConfig, worker_count
from utils.dataset import DatasetEntry, DatasetSplits
from utils.errors import TrainingError
from utils.logger import app_logger
from utils.models import build_model_diagram
from utils.trainer import CircuitSet, evaluate, train


@dataclass(frozen=True)
class Cell:
    model: int
    combination: str

    @property
    def name(self) -> str:
        """M2a dla Frobeniusa, M2b dla CombineRz"""
        return f"M{self.model}{'a' if self.combination == 'frobenius' else 'b'}"


@dataclass(frozen=True)
class CompiledCell:
    cell: Cell
    slots: Tuple[str, ...]
    train: CircuitSet
    test: CircuitSet
    val: CircuitSet


@dataclass(frozen=True)
class SeedResult:
    seed: int
    history: Tuple[Tuple[float, float], ...]
    train_accuracy: float
    val_accuracy: float
    test_accuracy: float
    theta: Tuple[float, ...]


def compile_split(entries: Sequence[DatasetEntry], cell: Cell, ansatz: AnsatzConfig,
                  search: SearchConfig) -> CircuitSet:
    circuits = tuple(compile_diagram(build_model_diagram(e, cell.model, cell.combination, search), ansatz)
                     for e in entries)
    return CircuitSet(circuits, tuple(e.label for e in entries))


def compile_cell(cell: Cell, splits: DatasetSplits, ansatz: AnsatzConfig = AnsatzConfig(),
                 search: SearchConfig = SearchConfig()) -> CompiledCell:
    """Kompiluje wszystkie podziały; tablica parametrów obejmuje train + test + val"""
    train_set = compile_split(splits.train, cell, ansatz, search)
    test_set = compile_split(splits.test, cell, ansatz, search)
    val_set = compile_split(splits.val, cell, ansatz, search)
    slots = slot_table(train_set.circuits + test_set.circuits + val_set.circuits)
    return CompiledCell(cell, slots, train_set, test_set, val_set)


def run_seed(compiled: CompiledCell, spsa: SPSAConfig) -> SeedResult:
    """Jeden przebieg treningu i ewaluacja na trzech podziałach"""
    state = train(compiled.train, compiled.slots, spsa, compiled.cell.name)
    result = SeedResult(
        seed=spsa.seed,
        history=tuple(state.history),
        train_accuracy=evaluate(state.theta, compiled.train),
        val_accuracy=evaluate(state.theta, compiled.val),
        test_accuracy=evaluate(state.theta, compiled.test),
        theta=tuple(float(v) for v in state.theta.values),
    )
    app_logger.log_training_done(compiled.cell.name, spsa.seed, result.train_accuracy, result.test_accuracy)
    return result


@dataclass(frozen=True)
class CellResult:
    cell: Cell
    runs: Tuple[SeedResult, ...]

    def curves(self) -> Dict[str, List[float]]:
        """Średnie i odchylenia straty oraz dokładności po iteracjach"""
        if not self.runs or not self.runs[0].history:
            return {"loss": [], "acc": [], "loss_std": [], "acc_std": []}
        history = np.array([run.history for run in self.runs])
        return {
            "loss": history[:, :, 0].mean(axis=0).tolist(),
            "acc": history[:, :, 1].mean(axis=0).tolist(),
            "loss_std": history[:, :, 0].std(axis=0).tolist(),
            "acc_std": history[:, :, 1].std(axis=0).tolist(),
        }

    def test_accuracies(self) -> np.ndarray:
        return np.array([run.test_accuracy for run in self.runs])

    def to_dict(self) -> dict:
        accuracies = self.test_accuracies()
        return {
            "model": self.cell.model,
            "combination": self.cell.combination,
            "name": self.cell.name,
            "seeds": [run.seed for run in self.runs],
            "curves": self.curves(),
            "test_accuracy_mean": float(accuracies.mean()),
            "test_accuracy_std": float(accuracies.std()),
            "train_accuracy_mean": float(np.mean([run.train_accuracy for run in self.runs])),
            "val_accuracy_mean": float(np.mean([run.val_accuracy for run in self.runs])),
        }


def matrix_cells(run: RunConfig) -> List[Cell]:
    return [Cell(model, combination) for model in run.models for combination in run.combinations]


def run_experiment_matrix(splits: DatasetSplits, run: RunConfig,
                          compiled: Optional[List[CompiledCell]] = None,
                          workers: Optional[int] = None) -> List[CellResult]:
    """
    Trenuje każdą komórkę macierzy dla run.seeds ziaren

    Ziarno i-tego przebiegu to run.seed + i.

    Args:
        splits: Podziały zbioru danych
        run: Konfiguracja uruchomienia
        compiled: Skompilowane komórki (domyślnie kompilowane tutaj)
        workers: Liczba procesów (domyślnie FOCKFLOW_THREADS albo liczba CPU)

    Returns:
        list: wyniki komórek w kolejności modeli i połączeń
    """
    if not splits.train:
        raise TrainingError("Pusty podział treningowy")
    if compiled is None:
        compiled = [compile_cell(cell, splits, run.ansatz, run.search) for cell in matrix_cells(run)]
    workers = worker_count() if workers is None else workers
    jobs = [(c, i, run.spsa.with_seed(run.seed + i)) for c in range(len(compiled)) for i in range(run.seeds)]
    results: Dict[Tuple[int, int], SeedResult] = {}
    progress = tqdm(total=len(jobs), desc="trening", unit="przebieg", disable=not sys.stderr.isatty())

    if workers <= 1 or len(jobs) == 1:
        for c, i, spsa in jobs:
            results[(c, i)] = run_seed(compiled[c], spsa)
            progress.update()
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(run_seed, compiled[c], spsa): (c, i) for c, i, spsa in jobs}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
                progress.update()
    progress.close()

    return [CellResult(cell.cell, tuple(results[(c, i)] for i in range(run.seeds)))
            for c, cell in enumerate(compiled)]


def run_manifest(run: RunConfig) -> dict:
    """Pełna konfiguracja uruchomienia zapisywana obok wyników"""
    manifest = asdict(run)
    manifest["models"] = list(run.models)
    manifest["combinations"] = list(run.combinations)
    manifest["spsa"]["A"] = run.spsa.stability
    return manifest


def write_results(results: Sequence[CellResult], run: RunConfig, out_dir) -> Tuple[Path, Path]:
    """
    Zapisuje results.json i results.csv (jeden wiersz na komórkę i ziarno)

    Returns:
        tuple: ścieżki obu plików
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "results.json"
    document = {"config": run_manifest(run), "results": [r.to_dict() for r in results]}
    json_path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    app_logger.log_file_written(json_path)

    csv_path = out_dir / "results.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(("model", "combination", "seed", "train_accuracy", "val_accuracy",
                         "test_accuracy", "final_loss"))
        for result in results:
            for seed_run in result.runs:
                final_loss = seed_run.history[-1][0] if seed_run.history else ""
                writer.writerow((result.cell.model, result.cell.combination, seed_run.seed,
                                 seed_run.train_accuracy, seed_run.val_accuracy,
                                 seed_run.test_accuracy, final_loss))
    app_logger.log_file_written(csv_path)
    return json_path, csv_path

