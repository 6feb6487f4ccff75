#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Polecenie run: trening macierzy modeli i zapis wyników
"""

import json
from pathlib import Path
from typing import List

from utils.circuit_compiler import ParameterSet
from utils.config import RunConfig
from utils.dataset import (DEFAULT_VOCABULARY, DatasetSplits, generate, load_csv,
                           load_vocabulary, split)
from utils.experiments import (CellResult, CompiledCell, compile_cell, matrix_cells,
                               run_experiment_matrix, write_results)
from utils.logger import app_logger
from utils.models import build_model_diagram
from utils.qsim import simulate


class RunView:
    """Uruchomienie eksperymentu według RunConfig"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.out_dir = Path(config.out)

    def load_splits(self) -> DatasetSplits:
        config = self.config
        if config.dataset == "generate":
            vocabulary = load_vocabulary(config.vocabulary) if config.vocabulary else DEFAULT_VOCABULARY
            return split(generate(vocabulary), config.seed)
        return split(load_csv(config.dataset), config.seed, strict=False)

    def run(self) -> Path:
        """
        Kompiluje komórki, trenuje je i zapisuje results.json i results.csv

        Returns:
            Path: ścieżka results.json
        """
        splits = self.load_splits()
        compiled = [compile_cell(cell, splits, self.config.ansatz, self.config.search)
                    for cell in matrix_cells(self.config)]
        for cell in compiled:
            app_logger.info(f"{cell.cell.name}: {len(cell.slots)} parametrów, "
                            f"maks. {max(c.qubit_count for c in self._circuits(cell))} kubitów")
        if self.config.dump_diagrams:
            self._dump_diagrams(splits, compiled)
        if self.config.dump_circuits:
            self._dump_circuits(compiled)

        results = run_experiment_matrix(splits, self.config, compiled)
        json_path, _ = write_results(results, self.config, self.out_dir)
        if self.config.dump_state:
            self._dump_states(compiled, results)
        return json_path

    @staticmethod
    def _circuits(cell: CompiledCell):
        return cell.train.circuits + cell.test.circuits + cell.val.circuits

    def _write(self, folder: str, name: str, document) -> None:
        path = self.out_dir / folder / f"{name}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        app_logger.log_file_written(path)

    def _dump_diagrams(self, splits: DatasetSplits, compiled: List[CompiledCell]):
        for cell in compiled:
            document = [{"sentence": e.sentence, "label": e.label,
                         "diagram": build_model_diagram(e, cell.cell.model, cell.cell.combination,
                                                        self.config.search).to_dict()}
                        for e in splits.all()]
            self._write("diagrams", cell.cell.name, document)

    def _dump_circuits(self, compiled: List[CompiledCell]):
        for cell in compiled:
            self._write("circuits", cell.cell.name, {
                "slots": list(cell.slots),
                "circuits": [c.to_dict() for c in self._circuits(cell)],
            })

    def _dump_states(self, compiled: List[CompiledCell], results: List[CellResult]):
        """Stany obwodów testowych po treningu pierwszego ziarna"""
        for cell, result in zip(compiled, results):
            first = result.runs[0]
            theta = ParameterSet(cell.slots, first.theta)
            states = [{"label": label, "state": simulate(circuit, theta).to_dict()}
                      for circuit, label in zip(cell.test.circuits, cell.test.labels)]
            self._write("states", cell.cell.name, {"seed": first.seed, "parameters": theta.to_dict(),
                                                   "test_states": states})
