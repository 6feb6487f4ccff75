#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Zbiór danych do rozwiązywania anafory zaimka "they"

Wpisy powstają z szablonu "The <podmiot> <czasownik> the <dopełnienie>.
They <łącznik> <przymiotnik>." Etykieta 0 oznacza, że zaimek wskazuje
podmiot, 1 że dopełnienie; wynika wyłącznie z przymiotnika.
"""

import csv
import itertools
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from utils.errors import DatasetError
from utils.logger import app_logger

DATASET_SIZE = 144
SPLIT_SIZES = (72, 36, 36)
COLUMNS = ("sentence", "referent", "pronoun", "label")
COMPATIBILITY = {"subject": 0, "object": 1}

_SENTENCE = re.compile(
    r"^\s*the\s+(\w+)\s+(\w+)\s+the\s+(\w+)\s*\.\s*(\w+)\s+(\w+)\s+(\w+)\s*\.\s*$",
    re.IGNORECASE)


@dataclass(frozen=True)
class Vocabulary:
    """Listy słów szablonu; przymiotniki z klasą zgodności subject/object"""

    subjects: Tuple[str, ...]
    objects: Tuple[str, ...]
    transitive_verbs: Tuple[str, ...]
    copulas: Tuple[str, ...]
    adjectives: Tuple[Tuple[str, str], ...]
    pronoun: str = "they"

    def __post_init__(self):
        for name in ("subjects", "objects", "transitive_verbs", "copulas", "adjectives"):
            if not getattr(self, name):
                raise DatasetError(f"Lista słów '{name}' nie może być pusta")
        for adjective, compatibility in self.adjectives:
            if compatibility not in COMPATIBILITY:
                raise DatasetError(f"Przymiotnik '{adjective}': nieznana zgodność '{compatibility}' "
                                   f"(dozwolone subject|object)")

    def label_of(self, adjective: str) -> int:
        for word, compatibility in self.adjectives:
            if word == adjective:
                return COMPATIBILITY[compatibility]
        raise DatasetError(f"Przymiotnik spoza słownika: '{adjective}'")

    def surface_words(self) -> List[str]:
        """Różne słowa występujące w zdaniach (z "the" i zaimkiem)"""
        words = {"the", self.pronoun}
        words.update(self.subjects, self.objects, self.transitive_verbs, self.copulas)
        words.update(adjective for adjective, _ in self.adjectives)
        return sorted(words)


DEFAULT_VOCABULARY = Vocabulary(
    subjects=("girls", "men", "children"),
    objects=("cookies", "pancakes"),
    transitive_verbs=("ate", "enjoyed", "loved"),
    copulas=("were", "looked"),
    adjectives=(("hungry", "subject"), ("starving", "subject"),
                ("tasty", "object"), ("delicious", "object")),
)


def load_vocabulary(path) -> Vocabulary:
    """
    Wczytuje słownik z pliku TOML

    Sekcje [subjects], [objects], [transitive_verbs], [copulas] mają klucz
    words, [pronoun] klucz word, a [adjectives] wiersze `słowo = "subject"`.

    Raises:
        DatasetError: brak pliku lub błędna struktura
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"Plik słownika nie istnieje: {path}")
    try:
        with open(path, "rb") as file:
            data = tomllib.load(file)
    except tomllib.TOMLDecodeError as e:
        raise DatasetError(f"{path}: błędny TOML: {e}")

    def words(section):
        value = data.get(section, {}).get("words")
        if not isinstance(value, list) or not all(isinstance(w, str) for w in value):
            raise DatasetError(f"{path}: sekcja [{section}] wymaga listy words")
        return tuple(w.lower() for w in value)

    adjectives = data.get("adjectives", {})
    if not isinstance(adjectives, dict):
        raise DatasetError(f"{path}: sekcja [adjectives] wymaga wierszy słowo = subject|object")
    return Vocabulary(
        subjects=words("subjects"),
        objects=words("objects"),
        transitive_verbs=words("transitive_verbs"),
        copulas=words("copulas"),
        adjectives=tuple((word.lower(), str(kind)) for word, kind in adjectives.items()),
        pronoun=str(data.get("pronoun", {}).get("word", "they")).lower(),
    )


@dataclass(frozen=True)
class DatasetEntry:
    """
    Para zdań

    s1_tokens to (podmiot, czasownik, dopełnienie), s2_tokens to (zaimek,
    łącznik, przymiotnik); frazy rzeczownikowe są pojedynczymi tokenami
    ("the girls"). referent to goły rzeczownik ("girls").
    """

    s1_tokens: Tuple[str, str, str]
    s2_tokens: Tuple[str, str, str]
    referent: str
    pronoun: str
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise DatasetError(f"Etykieta musi być 0 albo 1, otrzymano {self.label!r}")
        if _noun(self.s1_tokens[self.referent_index]) != self.referent:
            raise DatasetError(f"Referent '{self.referent}' nie zgadza się z etykietą {self.label}")

    @property
    def referent_index(self) -> int:
        """Pozycja referenta w pierwszym zdaniu: 0 podmiot, 2 dopełnienie"""
        return 0 if self.label == 0 else 2

    @property
    def tokens(self) -> Tuple[str, ...]:
        return self.s1_tokens + self.s2_tokens

    @property
    def sentence(self) -> str:
        s1 = " ".join(self.s1_tokens)
        s2 = " ".join(self.s2_tokens)
        return f"{s1[0].upper()}{s1[1:]}. {s2[0].upper()}{s2[1:]}."


def _noun(phrase: str) -> str:
    return phrase.split()[-1]


def _entry(subject, verb, obj, pronoun, copula, adjective, label) -> DatasetEntry:
    referent = subject if label == 0 else obj
    return DatasetEntry((f"the {subject}", verb, f"the {obj}"), (pronoun, copula, adjective),
                        referent, pronoun, label)


def generate(vocab: Vocabulary = DEFAULT_VOCABULARY, strict: bool = True) -> List[DatasetEntry]:
    """
    Generuje wszystkie kombinacje szablonu

    Args:
        vocab: Słownik
        strict: Wymaga dokładnie 144 wpisów zbalansowanych klasowo

    Returns:
        list: wpisy w deterministycznej kolejności
    """
    entries = [
        _entry(subject, verb, obj, vocab.pronoun, copula, adjective, vocab.label_of(adjective))
        for subject, verb, obj, copula, (adjective, _) in itertools.product(
            vocab.subjects, vocab.transitive_verbs, vocab.objects, vocab.copulas, vocab.adjectives)
    ]
    counts = class_counts(entries)
    if strict and (len(entries) != DATASET_SIZE or counts[0] != counts[1]):
        raise DatasetError(f"Słownik daje {len(entries)} wpisów (klasy {counts}), "
                           f"wymagane {DATASET_SIZE} zbalansowanych")
    app_logger.log_dataset("generate", len(entries), counts)
    return entries


def class_counts(entries: Sequence[DatasetEntry]) -> Dict[int, int]:
    counts = {0: 0, 1: 0}
    for entry in entries:
        counts[entry.label] += 1
    return counts


@dataclass(frozen=True)
class DatasetSplits:
    train: Tuple[DatasetEntry, ...]
    test: Tuple[DatasetEntry, ...]
    val: Tuple[DatasetEntry, ...]

    def all(self) -> Tuple[DatasetEntry, ...]:
        return self.train + self.test + self.val


def split(entries: Sequence[DatasetEntry], seed: int, strict: bool = True) -> DatasetSplits:
    """
    Dzieli wpisy na treningowe, testowe i walidacyjne (50/25/25 w każdej klasie)

    Args:
        entries: Wpisy
        seed: Ziarno tasowania
        strict: Wymaga 144 zbalansowanych wpisów i podziału 72/36/36

    Raises:
        DatasetError: zły rozmiar w trybie ścisłym
    """
    counts = class_counts(entries)
    if strict and (len(entries) != DATASET_SIZE or counts[0] != counts[1]):
        raise DatasetError(f"Podział wymaga {DATASET_SIZE} zbalansowanych wpisów, "
                           f"otrzymano {len(entries)} (klasy {counts})")
    rng = np.random.default_rng(seed)
    train, test, val = [], [], []
    for label in (0, 1):
        members = [e for e in entries if e.label == label]
        order = rng.permutation(len(members))
        shuffled = [members[i] for i in order]
        quarter = len(shuffled) // 4
        train.extend(shuffled[:len(shuffled) - 2 * quarter])
        test.extend(shuffled[len(shuffled) - 2 * quarter:len(shuffled) - quarter])
        val.extend(shuffled[len(shuffled) - quarter:])
    return DatasetSplits(tuple(train), tuple(test), tuple(val))


def parse_sentence(sentence: str, pronoun: str = "") -> Tuple[Tuple[str, str, str], Tuple[str, str, str]]:
    """Rozbija "The X v the Y. They c a." na tokeny obu zdań"""
    match = _SENTENCE.match(sentence)
    if not match:
        raise DatasetError(f"Zdanie nie pasuje do szablonu: '{sentence}'")
    subject, verb, obj, them, copula, adjective = (g.lower() for g in match.groups())
    if pronoun and them != pronoun.lower():
        raise DatasetError(f"Zaimek w zdaniu '{them}' różni się od kolumny pronoun '{pronoun}'")
    return (f"the {subject}", verb, f"the {obj}"), (them, copula, adjective)


def save_csv(entries: Sequence[DatasetEntry], path) -> Path:
    """
    Zapisuje wpisy do CSV z nagłówkiem sentence,referent,pronoun,label

    Pola tekstowe są zawsze w cudzysłowach, etykieta jako liczba.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(",".join(COLUMNS) + "\n")
        writer = csv.writer(file, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        for entry in entries:
            writer.writerow((entry.sentence, entry.referent, entry.pronoun, entry.label))
    app_logger.log_file_written(path)
    return path


def load_csv(path) -> List[DatasetEntry]:
    """
    Wczytuje wpisy z CSV

    Raises:
        DatasetError: brak pliku, zły nagłówek, błędny wiersz lub etykieta
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"Plik zbioru danych nie istnieje: {path}")
    entries = []
    with open(path, "r", encoding="utf-8", newline="") as file:
        reader = csv.reader(file)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != COLUMNS:
            raise DatasetError(f"{path}: oczekiwano nagłówka {','.join(COLUMNS)}")
        for number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(COLUMNS):
                raise DatasetError(f"{path}:{number}: oczekiwano {len(COLUMNS)} kolumn, jest {len(row)}")
            sentence, referent, pronoun, label = (c.strip() for c in row)
            if label not in ("0", "1"):
                raise DatasetError(f"{path}:{number}: nieznana etykieta '{label}'")
            try:
                s1, s2 = parse_sentence(sentence, pronoun)
                entries.append(DatasetEntry(s1, s2, referent.lower(), pronoun.lower(), int(label)))
            except DatasetError as e:
                raise DatasetError(f"{path}:{number}: {e.message}")
    app_logger.log_dataset("load", len(entries), class_counts(entries))
    return entries
