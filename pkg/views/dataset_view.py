#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Polecenie dataset: generowanie i podgląd zbioru danych
"""

from pathlib import Path
from typing import Optional

from utils.dataset import (DEFAULT_VOCABULARY, class_counts, generate, load_csv,
                           load_vocabulary, save_csv, split)


class DatasetView:
    """Generuje zbiór (z podziałami) albo opisuje istniejący plik CSV"""

    def __init__(self, vocabulary_path=None, seed: int = 0, strict: bool = True):
        self.vocabulary = load_vocabulary(vocabulary_path) if vocabulary_path else DEFAULT_VOCABULARY
        self.seed = seed
        self.strict = strict

    def generate(self, out) -> dict:
        """
        Zapisuje dataset.csv oraz train.csv, test.csv, val.csv w katalogu out

        Returns:
            dict: rozmiary i liczności klas zapisanych plików
        """
        out = Path(out)
        entries = generate(self.vocabulary, strict=self.strict)
        splits = split(entries, self.seed, strict=self.strict)
        summary = {"dataset": self._describe(save_csv(entries, out / "dataset.csv"), entries)}
        for name in ("train", "test", "val"):
            part = getattr(splits, name)
            summary[name] = self._describe(save_csv(part, out / f"{name}.csv"), part)
        return summary

    def inspect(self, path, seed: Optional[int] = None) -> dict:
        """Rozmiar, liczności klas, słowa i liczności klas w podziałach"""
        entries = load_csv(path)
        words = sorted({w for e in entries for token in e.tokens for w in token.split()})
        summary = self._describe(Path(path), entries)
        summary["vocabulary"] = words
        summary["vocabulary_size"] = len(words)
        splits = split(entries, self.seed if seed is None else seed, strict=False)
        summary["splits"] = {name: {str(k): v for k, v in class_counts(getattr(splits, name)).items()}
                             for name in ("train", "test", "val")}
        return summary

    @staticmethod
    def _describe(path: Path, entries) -> dict:
        return {
            "path": str(path),
            "size": len(entries),
            "classes": {str(k): v for k, v in class_counts(entries).items()},
        }
