#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hierarchia wyjątków fockflow i kody wyjścia CLI
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class FockflowError(Exception):
    """Bazowy wyjątek aplikacji"""

    exit_code = EXIT_INTERNAL

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class UsageError(FockflowError):
    """Nieprawidłowe argumenty wywołania"""

    exit_code = EXIT_USAGE


class FormulaSyntaxError(FockflowError, ValueError):
    """Błąd składni formuły SLLM"""

    exit_code = EXIT_DATA

    def __init__(self, message, position):
        super().__init__(f"{message} (pozycja {position})")
        self.position = position


class LexiconError(FockflowError, ValueError):
    """Nieznane słowo, pusty dyskurs lub błędny wiersz leksykonu"""

    exit_code = EXIT_DATA


class ProofCheckError(FockflowError, ValueError):
    """Węzeł dowodu nie pasuje do swojej reguły"""

    exit_code = EXIT_DATA

    def __init__(self, message, rule, position=None):
        where = f" na pozycji {position}" if position is not None else ""
        super().__init__(f"{rule}{where}: {message}")
        self.rule = rule
        self.position = position


class DiagramError(FockflowError, ValueError):
    """Niepoprawny diagram lub niespełniony warunek przepisania"""


class CompileError(FockflowError, ValueError):
    """Diagram nie nadaje się do kompilacji albo brak parametru"""


class SimulationError(FockflowError, ValueError):
    """Błąd symulacji wektora stanu"""


class TrainingError(FockflowError, ValueError):
    """Błąd konfiguracji lub przebiegu treningu"""


class DatasetError(FockflowError, ValueError):
    """Błędny plik lub niepoprawna konfiguracja zbioru danych"""

    exit_code = EXIT_DATA


class NoProofError(FockflowError):
    """Strategia szukania nie znalazła dowodu w limicie głębokości"""

    exit_code = EXIT_DATA
