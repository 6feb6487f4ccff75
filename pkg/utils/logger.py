"""
Moduł do logowania działań aplikacji fockflow
"""
import logging
import os
import sys
from datetime import datetime


class AppLogger:
    """Klasa do zarządzania logami aplikacji"""

    def __init__(self, level=None):
        self.logger = logging.getLogger('fockflow')
        self.logger.setLevel(level or os.environ.get('FOCKFLOW_LOG_LEVEL', 'INFO').upper())

        # Usuń istniejące handlery żeby uniknąć duplikatów
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)

        # Handler na stderr - stdout zostaje dla wyników
        console_handler = logging.StreamHandler(sys.stderr)

        # Format logów
        formatter = logging.Formatter(
            '%(asctime)s | %(levelname)s | %(message)s',
            datefmt='%H:%M:%S'
        )
        console_handler.setFormatter(formatter)

        self.logger.addHandler(console_handler)

        # Wyłącz propagację do root logger
        self.logger.propagate = False

    def set_level(self, level):
        """Zmiana poziomu logowania (np. 'DEBUG' dla --verbose)"""
        self.logger.setLevel(level)

    def info(self, message):
        """Log informacyjny"""
        self.logger.info(message)

    def warning(self, message):
        """Log ostrzeżenia"""
        self.logger.warning(message)

    def error(self, message):
        """Log błędu"""
        self.logger.error(message)

    def debug(self, message):
        """Log debug"""
        self.logger.debug(message)

    def log_app_start(self, command):
        """Log uruchomienia aplikacji"""
        self.info(f"fockflow uruchomiony: polecenie '{command}'")
        self.debug("Data: " + datetime.now().strftime("%Y-%m-%d %H:%M:%S"))

    def log_proof_search(self, sequent, k0, depth_limit):
        """Log rozpoczęcia szukania dowodu"""
        self.debug(f"Szukanie dowodu: {sequent} (k0={k0}, głębokość<={depth_limit})")

    def log_proof_result(self, sequent, found, visited):
        """Log wyniku szukania dowodu"""
        status = "znaleziony" if found else "brak dowodu"
        self.debug(f"Dowód {status}: {sequent} (odwiedzone sekwenty: {visited})")

    def log_rewrite(self, rule, before, after):
        """Log zastosowania reguły przepisywania diagramu"""
        self.debug(f"Przepisanie {rule}: {before} -> {after} pudełek")

    def log_compile(self, qubits, gates, slots):
        """Log kompilacji diagramu do obwodu"""
        self.debug(f"Obwód: {qubits} kubitów, {gates} bramek, {slots} parametrów")

    def log_training_start(self, cell, seed, dimension, iterations):
        """Log rozpoczęcia treningu"""
        self.info(f"Trening {cell} (seed={seed}): {dimension} parametrów, {iterations} iteracji")

    def log_iteration(self, k, loss, accuracy):
        """Log pojedynczej iteracji SPSA"""
        self.debug(f"Iteracja {k}: strata={loss:.6f}, dokładność={accuracy:.4f}")

    def log_training_done(self, cell, seed, train_acc, test_acc):
        """Log zakończenia treningu"""
        self.info(f"Koniec treningu {cell} (seed={seed}): train={train_acc:.4f}, test={test_acc:.4f}")

    def log_dataset(self, operation, size, counts):
        """Log operacji na zbiorze danych"""
        self.info(f"Zbiór danych ({operation}): {size} wpisów, klasy {counts}")

    def log_file_written(self, path):
        """Log zapisu pliku wynikowego"""
        self.info(f"Zapisano plik: {path}")

    def log_error(self, operation, error_msg):
        """Log błędu"""
        self.error(f"Błąd podczas {operation}: {error_msg}")


# Globalna instancja loggera
app_logger = AppLogger()
