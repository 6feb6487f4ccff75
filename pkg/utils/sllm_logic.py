#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rachunek Lambeka z miękkimi podeksponentami (SLLM)

Formuły, sekwenty, drzewa dowodów, sprawdzanie dowodów względem reguł
rachunku sekwentów oraz leksykon przypisujący słowom typy.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from utils.errors import FormulaSyntaxError, LexiconError, ProofCheckError

ATOMS = ("s", "n")


class Formula:
    """Bazowa klasa formuł SLLM (drzewa z atomami w liściach)"""

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Product(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class LeftDiv(Formula):
    """A\\B: czeka na A po lewej, daje B"""

    divisor: Formula
    result: Formula


@dataclass(frozen=True)
class RightDiv(Formula):
    """B/A: czeka na A po prawej, daje B"""

    result: Formula
    divisor: Formula


@dataclass(frozen=True)
class Bang(Formula):
    """!A: magazyn co najwyżej k0 kopii A"""

    inner: Formula


@dataclass(frozen=True)
class Nabla(Formula):
    """∇A (w składni ASCII: @A): formuła, którą wolno przestawiać"""

    inner: Formula


S = Atom("s")
N = Atom("n")


# ---------------------------------------------------------------------------
# Składnia ASCII: atomy s, n; '.' iloczyn; '\' i '/' ilorazy; '!' i '@' prefiksowe
# ---------------------------------------------------------------------------

_PREFIX = {"!": Bang, "@": Nabla}
_INFIX_DIV = ("\\", "/")


class _FormulaParser:
    """Parser zstępujący dla składni formuł"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> Optional[str]:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _take(self) -> str:
        char = self._peek()
        self.pos += 1
        return char

    def parse(self) -> Formula:
        if self._peek() is None:
            raise FormulaSyntaxError("Pusta formuła", 0)
        formula = self._product()
        if self._peek() is not None:
            raise FormulaSyntaxError(f"Nieoczekiwany znak '{self._peek()}'", self.pos)
        return formula

    def _product(self) -> Formula:
        left = self._division()
        if self._peek() == ".":
            self._take()
            right = self._division()
            if self._peek() == ".":
                raise FormulaSyntaxError("Niejednoznaczny iloczyn, dodaj nawiasy", self.pos)
            return Product(left, right)
        return left

    def _division(self) -> Formula:
        left = self._unary()
        operator = self._peek()
        if operator in _INFIX_DIV:
            self._take()
            right = self._unary()
            if self._peek() in _INFIX_DIV:
                raise FormulaSyntaxError("Niejednoznaczne zagnieżdżenie '\\' lub '/', dodaj nawiasy", self.pos)
            return LeftDiv(left, right) if operator == "\\" else RightDiv(left, right)
        return left

    def _unary(self) -> Formula:
        char = self._peek()
        if char in _PREFIX:
            self._take()
            return _PREFIX[char](self._unary())
        if char == "(":
            self._take()
            inner = self._product()
            if self._peek() != ")":
                raise FormulaSyntaxError("Brak nawiasu zamykającego", self.pos)
            self._take()
            return inner
        if char in ATOMS:
            self._take()
            return Atom(char)
        if char is None:
            raise FormulaSyntaxError("Nieoczekiwany koniec formuły", self.pos)
        raise FormulaSyntaxError(f"Nieoczekiwany znak '{char}'", self.pos)


def parse_formula(text: str) -> Formula:
    """
    Parsuje formułę w składni ASCII

    Args:
        text: np. "(n\\s)/n" albo "!@n"

    Returns:
        Formula: jedyne drzewo rozbioru

    Raises:
        FormulaSyntaxError: z pozycją błędu
    """
    return _FormulaParser(text).parse()


def format_formula(formula: Formula) -> str:
    """Wypisuje formułę tak, aby parse_formula odtworzył ją bez zmian"""
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, (Bang, Nabla)):
        symbol = "!" if isinstance(formula, Bang) else "@"
        return symbol + _operand(formula.inner)
    if isinstance(formula, LeftDiv):
        return f"{_operand(formula.divisor)}\\{_operand(formula.result)}"
    if isinstance(formula, RightDiv):
        return f"{_operand(formula.result)}/{_operand(formula.divisor)}"
    if isinstance(formula, Product):
        return f"{_factor(formula.left)}.{_factor(formula.right)}"
    raise TypeError(f"Nieznany typ formuły: {formula!r}")


def _operand(formula: Formula) -> str:
    text = format_formula(formula)
    if isinstance(formula, (Product, LeftDiv, RightDiv)):
        return f"({text})"
    return text


def _factor(formula: Formula) -> str:
    text = format_formula(formula)
    return f"({text})" if isinstance(formula, Product) else text


# ---------------------------------------------------------------------------
# Sekwenty i drzewa dowodów
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    """Γ ⟶ A z uporządkowanym poprzednikiem i pojedynczym następnikiem"""

    antecedent: Tuple[Formula, ...]
    succedent: Formula

    def __str__(self):
        left = ", ".join(format_formula(f) for f in self.antecedent)
        return f"{left} --> {format_formula(self.succedent)}"


def sequent(antecedent: Sequence[Formula], succedent: Formula) -> Sequent:
    return Sequent(tuple(antecedent), succedent)


class RuleTag(Enum):
    """Reguły rachunku sekwentów SLLM"""

    AXIOM = "Axiom"
    LDIV_L = "LDivL"
    LDIV_R = "LDivR"
    RDIV_L = "RDivL"
    RDIV_R = "RDivR"
    PROD_L = "ProdL"
    PROD_R = "ProdR"
    BANG_L = "BangL"
    BANG_R = "BangR"
    NABLA_L = "NablaL"
    NABLA_R = "NablaR"
    PERM = "Perm"
    PERM_PRIME = "PermPrime"


_ARITY = {
    RuleTag.AXIOM: 0,
    RuleTag.LDIV_L: 2,
    RuleTag.RDIV_L: 2,
    RuleTag.PROD_R: 2,
}


@dataclass(frozen=True)
class ProofTree:
    """
    Węzeł dowodu

    position: indeks formuły głównej w poprzedniku wniosku (reguły lewe,
    Perm); target: indeks, na który Perm/Perm' przenosi ∇-formułę w
    przesłance; copies: liczba kopii dla BangL.
    """

    conclusion: Sequent
    rule: RuleTag
    premises: Tuple["ProofTree", ...] = ()
    position: Optional[int] = None
    target: Optional[int] = None
    copies: int = 0

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def nodes(self):
        """Węzły w porządku prefiksowym"""
        yield self
        for premise in self.premises:
            yield from premise.nodes()

    def to_dict(self) -> dict:
        data = {"sequent": str(self.conclusion), "rule": self.rule.value}
        if self.position is not None:
            data["position"] = self.position
        if self.target is not None:
            data["target"] = self.target
        if self.rule is RuleTag.BANG_L:
            data["copies"] = self.copies
        data["premises"] = [p.to_dict() for p in self.premises]
        return data

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)


def parse_sequent(text: str) -> Sequent:
    """Parsuje 'A, B --> C' (zapis używany w JSON dowodów)"""
    if "-->" not in text:
        raise FormulaSyntaxError("Brak '-->' w sekwencie", 0)
    left, right = text.split("-->", 1)
    antecedent = tuple(parse_formula(part) for part in _split_top_level(left)) if left.strip() else ()
    return Sequent(antecedent, parse_formula(right))


def _split_top_level(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return parts


def proof_from_dict(data: dict) -> ProofTree:
    """Odtwarza drzewo dowodu z dokumentu JSON"""
    return ProofTree(
        conclusion=parse_sequent(data["sequent"]),
        rule=RuleTag(data["rule"]),
        premises=tuple(proof_from_dict(p) for p in data.get("premises", [])),
        position=data.get("position"),
        target=data.get("target"),
        copies=data.get("copies", 0),
    )


# ---------------------------------------------------------------------------
# Sprawdzanie dowodów
# ---------------------------------------------------------------------------

def check_proof(tree: ProofTree, k0: int) -> bool:
    """
    Sprawdza, czy każdy węzeł dokładnie realizuje swoją regułę

    Args:
        tree: Drzewo dowodu
        k0: Ograniczenie liczby kopii dla BangL

    Returns:
        bool: True, jeśli dowód jest poprawny

    Raises:
        ProofCheckError: pierwszy (prefiksowo) błędny węzeł
    """
    for node in tree.nodes():
        _check_node(node, k0)
    return True


def _check_node(node: ProofTree, k0: int):
    rule = node.rule
    premises = node.premises
    expected = _ARITY.get(rule, 1)
    if len(premises) != expected:
        raise ProofCheckError(f"oczekiwano {expected} przesłanek, jest {len(premises)}", rule.value, node.position)

    ant = node.conclusion.antecedent
    suc = node.conclusion.succedent

    def fail(message):
        raise ProofCheckError(message, rule.value, node.position)

    def principal(kind):
        pos = node.position
        if pos is None or not 0 <= pos < len(ant):
            fail("brak poprawnej pozycji formuły głównej")
        if not isinstance(ant[pos], kind):
            fail(f"formuła {format_formula(ant[pos])} nie jest typu {kind.__name__}")
        return pos, ant[pos]

    if rule is RuleTag.AXIOM:
        if ant != (suc,):
            fail("aksjomat wymaga postaci A --> A")

    elif rule is RuleTag.LDIV_L:
        pos, formula = principal(LeftDiv)
        gamma = premises[0].conclusion.antecedent
        start = pos - len(gamma)
        if not gamma or start < 0 or ant[start:pos] != gamma:
            fail("kontekst Γ nie stoi bezpośrednio na lewo od A\\B")
        if premises[0].conclusion.succedent != formula.divisor:
            fail("lewa przesłanka nie dowodzi argumentu A")
        rest = ant[:start] + (formula.result,) + ant[pos + 1:]
        if premises[1].conclusion != Sequent(rest, suc):
            fail("prawa przesłanka nie ma postaci Σ1, B, Σ2 --> C")

    elif rule is RuleTag.RDIV_L:
        pos, formula = principal(RightDiv)
        gamma = premises[0].conclusion.antecedent
        end = pos + 1 + len(gamma)
        if not gamma or ant[pos + 1:end] != gamma:
            fail("kontekst Γ nie stoi bezpośrednio na prawo od B/A")
        if premises[0].conclusion.succedent != formula.divisor:
            fail("lewa przesłanka nie dowodzi argumentu A")
        rest = ant[:pos] + (formula.result,) + ant[end:]
        if premises[1].conclusion != Sequent(rest, suc):
            fail("prawa przesłanka nie ma postaci Σ1, B, Σ2 --> C")

    elif rule is RuleTag.LDIV_R:
        if not isinstance(suc, LeftDiv):
            fail("następnik nie jest postaci A\\B")
        if premises[0].conclusion != Sequent((suc.divisor,) + ant, suc.result):
            fail("przesłanka nie ma postaci A, Γ --> B")

    elif rule is RuleTag.RDIV_R:
        if not isinstance(suc, RightDiv):
            fail("następnik nie jest postaci B/A")
        if premises[0].conclusion != Sequent(ant + (suc.divisor,), suc.result):
            fail("przesłanka nie ma postaci Γ, A --> B")

    elif rule is RuleTag.PROD_L:
        pos, formula = principal(Product)
        opened = ant[:pos] + (formula.left, formula.right) + ant[pos + 1:]
        if premises[0].conclusion != Sequent(opened, suc):
            fail("przesłanka nie rozbija A.B na A, B")

    elif rule is RuleTag.PROD_R:
        if not isinstance(suc, Product):
            fail("następnik nie jest iloczynem")
        left, right = premises[0].conclusion, premises[1].conclusion
        if left.succedent != suc.left or right.succedent != suc.right:
            fail("przesłanki nie dowodzą składników iloczynu")
        if not left.antecedent or not right.antecedent or left.antecedent + right.antecedent != ant:
            fail("poprzednik nie jest konkatenacją Γ1, Γ2")

    elif rule is RuleTag.BANG_L:
        pos, formula = principal(Bang)
        if not 1 <= node.copies <= k0:
            fail(f"liczba kopii {node.copies} poza zakresem 1..{k0}")
        copied = ant[:pos] + (formula.inner,) * node.copies + ant[pos + 1:]
        if premises[0].conclusion != Sequent(copied, suc):
            fail("przesłanka nie zastępuje !A przez n kopii A")

    elif rule in (RuleTag.BANG_R, RuleTag.NABLA_R):
        kind = Bang if rule is RuleTag.BANG_R else Nabla
        if len(ant) != 1 or not isinstance(ant[0], kind) or not isinstance(suc, kind):
            fail(f"wymagana postać {kind.__name__}(A) --> {kind.__name__}(B)")
        if premises[0].conclusion != Sequent((ant[0].inner,), suc.inner):
            fail("przesłanka nie ma postaci A --> B")

    elif rule is RuleTag.NABLA_L:
        pos, formula = principal(Nabla)
        stripped = ant[:pos] + (formula.inner,) + ant[pos + 1:]
        if premises[0].conclusion != Sequent(stripped, suc):
            fail("przesłanka nie zdejmuje ∇")

    elif rule in (RuleTag.PERM, RuleTag.PERM_PRIME):
        pos, formula = principal(Nabla)
        target = node.target
        if target is None or not 0 <= target < len(ant):
            fail("brak poprawnej pozycji docelowej")
        if rule is RuleTag.PERM and target <= pos:
            fail("Perm przenosi ∇-formułę w prawo")
        if rule is RuleTag.PERM_PRIME and target >= pos:
            fail("Perm' przenosi ∇-formułę w lewo")
        if premises[0].conclusion != Sequent(move(ant, pos, target), suc):
            fail("przesłanka nie jest przestawieniem ∇-formuły")


def move(items: Tuple, source: int, target: int) -> Tuple:
    """Przenosi element z pozycji source na pozycję target"""
    rest = items[:source] + items[source + 1:]
    return rest[:target] + (items[source],) + rest[target:]


# ---------------------------------------------------------------------------
# Leksykon
# ---------------------------------------------------------------------------

ROLES = ("copula", "pronoun")


@dataclass(frozen=True)
class LexicalEntry:
    word: str
    formula: Formula
    role: str = ""


@dataclass
class Lexicon:
    """Przypisanie słowo -> typ oraz ograniczenie k0"""

    entries: Dict[str, LexicalEntry] = field(default_factory=dict)
    k0: int = 2

    def add(self, word: str, formula, role: str = "") -> "Lexicon":
        if isinstance(formula, str):
            formula = parse_formula(formula)
        if role and role not in ROLES:
            raise LexiconError(f"Nieznana rola '{role}' dla słowa '{word}'")
        key = word.lower()
        if key in self.entries and self.entries[key].formula != formula:
            raise LexiconError(f"Słowo '{word}' ma już inny typ")
        self.entries[key] = LexicalEntry(key, formula, role)
        return self

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries

    def entry(self, word: str) -> LexicalEntry:
        try:
            return self.entries[word.lower()]
        except KeyError:
            raise LexiconError(f"Nieznane słowo: '{word}'")

    def type_of(self, word: str) -> Formula:
        return self.entry(word).formula

    def role_of(self, word: str) -> str:
        return self.entry(word).role

    def max_phrase_length(self) -> int:
        return max((len(w.split()) for w in self.entries), default=1)


def load_lexicon(path, k0: int = 2) -> Lexicon:
    """
    Wczytuje leksykon z pliku tekstowego

    Args:
        path: Plik UTF-8, wiersze `słowo<TAB>typ[<TAB>rola]`, '#' to komentarz
        k0: Ograniczenie liczby kopii

    Returns:
        Lexicon: wczytany leksykon
    """
    path = Path(path)
    if not path.is_file():
        raise LexiconError(f"Plik leksykonu nie istnieje: {path}")
    lexicon = Lexicon(k0=k0)
    with open(path, "r", encoding="utf-8") as file:
        for number, line in enumerate(file, start=1):
            line = line.split("#", 1)[0].rstrip("\n")
            if not line.strip():
                continue
            columns = [c.strip() for c in line.split("\t")]
            if len(columns) not in (2, 3) or not columns[0]:
                raise LexiconError(f"{path}:{number}: oczekiwano 'słowo<TAB>typ[<TAB>rola]'")
            try:
                lexicon.add(columns[0], columns[1], columns[2] if len(columns) == 3 else "")
            except FormulaSyntaxError as e:
                raise LexiconError(f"{path}:{number}: {e.message}")
    return lexicon


def tokenize(text: str, lexicon: Lexicon) -> Tuple[List[str], int]:
    """
    Dzieli tekst na słowa leksykonu (najdłuższe dopasowanie fraz)

    Args:
        text: np. "the dog broke the vase . it was clumsy"
        lexicon: Leksykon z frazami wielowyrazowymi

    Returns:
        tuple: (lista słów, liczba zdań)
    """
    raw = text.lower().replace(".", " . ").split()
    words, sentences, i = [], 0, 0
    open_sentence = False
    longest = lexicon.max_phrase_length()
    while i < len(raw):
        if raw[i] == ".":
            sentences += open_sentence
            open_sentence = False
            i += 1
            continue
        for size in range(min(longest, len(raw) - i), 0, -1):
            phrase = " ".join(raw[i:i + size])
            if "." not in raw[i:i + size] and phrase in lexicon:
                words.append(phrase)
                i += size
                break
        else:
            raise LexiconError(f"Nieznane słowo: '{raw[i]}'")
        open_sentence = True
    sentences += open_sentence
    return words, sentences


def discourse_goal(sentences: int) -> Formula:
    """Cel dla dyskursu: s, s.s, (s.s).s, ..."""
    if sentences < 1:
        raise LexiconError("Pusty dyskurs")
    goal = S
    for _ in range(sentences - 1):
        goal = Product(goal, S)
    return goal


def type_discourse(words: Sequence[str], lexicon: Lexicon, goal: Formula) -> Sequent:
    """
    Buduje sekwent dyskursu: typy słów w kolejności --> cel

    Raises:
        LexiconError: pusty dyskurs albo nieznane słowo
    """
    if not words:
        raise LexiconError("Pusty dyskurs")
    return Sequent(tuple(lexicon.type_of(w) for w in words), goal)
