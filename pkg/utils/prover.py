#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ograniczone szukanie dowodów SLLM wstecz (od wniosku do aksjomatów)

Kolejność prób w każdym węźle: Axiom, ProdR, LDivL, RDivL, ProdL, NablaL,
BangL (rosnąco po liczbie kopii), Perm, Perm', a na końcu reguły prawe.
Perm przenosi ∇-formułę tylko tuż obok formuły ilorazowej, której
argumentem jest ta ∇-formuła.
"""

from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from utils.logger import app_logger
from utils.sllm_logic import (Atom, Bang, Formula, LeftDiv, Nabla, Product,
                              ProofTree, RightDiv, RuleTag, Sequent, move)

Interval = Tuple[int, int]


@lru_cache(maxsize=None)
def _atom_counts(formula: Formula, k0: int) -> Tuple[Tuple[str, Interval], ...]:
    """Bilans wystąpień atomów formuły jako przedziały (! daje 1..k0 kopii)"""
    if isinstance(formula, Atom):
        return ((formula.name, (1, 1)),)
    if isinstance(formula, Product):
        return _merge(_atom_counts(formula.left, k0), _atom_counts(formula.right, k0), 1)
    if isinstance(formula, LeftDiv) or isinstance(formula, RightDiv):
        return _merge(_atom_counts(formula.result, k0), _atom_counts(formula.divisor, k0), -1)
    if isinstance(formula, Nabla):
        return _atom_counts(formula.inner, k0)
    if isinstance(formula, Bang):
        scaled = []
        for name, (lo, hi) in _atom_counts(formula.inner, k0):
            corners = (lo, lo * k0, hi, hi * k0)
            scaled.append((name, (min(corners), max(corners))))
        return tuple(scaled)
    raise TypeError(f"Nieznany typ formuły: {formula!r}")


def _merge(left, right, sign: int) -> Tuple[Tuple[str, Interval], ...]:
    totals: Dict[str, Interval] = dict(left)
    for name, (lo, hi) in right:
        if sign < 0:
            lo, hi = -hi, -lo
        base_lo, base_hi = totals.get(name, (0, 0))
        totals[name] = (base_lo + lo, base_hi + hi)
    return tuple(sorted(totals.items()))


def balanced(seq: Sequent, k0: int) -> bool:
    """
    Warunek konieczny wyprowadzalności: bilans każdego atomu może wynosić 0

    Args:
        seq: Sekwent
        k0: Ograniczenie kopii

    Returns:
        bool: False, gdy sekwent na pewno nie ma dowodu
    """
    totals: Dict[str, Interval] = {}
    for formula in seq.antecedent:
        totals = dict(_merge(tuple(totals.items()), _atom_counts(formula, k0), 1))
    totals = dict(_merge(tuple(totals.items()), _atom_counts(seq.succedent, k0), -1))
    return all(lo <= 0 <= hi for lo, hi in totals.values())


class ProofSearch:
    """
    Deterministyczne szukanie dowodu z pamięcią porażek i sukcesów

    Sekwent, który nie miał dowodu przy głębokości d, nie ma go też przy
    żadnej mniejszej głębokości.
    """

    def __init__(self, k0: int = 2, depth_limit: int = 32):
        if k0 < 1 or depth_limit < 1:
            raise ValueError("k0 i limit głębokości muszą być dodatnie")
        self.k0 = k0
        self.depth_limit = depth_limit
        self._failed: Dict[Sequent, int] = {}
        self._proved: Dict[Sequent, ProofTree] = {}
        self.visited = 0

    def prove(self, seq: Sequent) -> Optional[ProofTree]:
        app_logger.log_proof_search(seq, self.k0, self.depth_limit)
        tree = self._search(seq, self.depth_limit)
        app_logger.log_proof_result(seq, tree is not None, self.visited)
        return tree

    def _search(self, seq: Sequent, depth: int) -> Optional[ProofTree]:
        if depth < 1 or not seq.antecedent:
            return None
        known = self._proved.get(seq)
        if known is not None and known.height() <= depth:
            return known
        if self._failed.get(seq, 0) >= depth:
            return None
        self.visited += 1
        if not balanced(seq, self.k0):
            self._failed[seq] = self.depth_limit
            return None

        for rule, premises, metadata in self._candidates(seq):
            proofs = []
            for premise in premises:
                proof = self._search(premise, depth - 1)
                if proof is None:
                    break
                proofs.append(proof)
            else:
                tree = ProofTree(seq, rule, tuple(proofs), **metadata)
                if known is None or tree.height() < known.height():
                    self._proved[seq] = tree
                return tree
        self._failed[seq] = max(self._failed.get(seq, 0), depth)
        return None

    def _candidates(self, seq: Sequent) -> Iterator[Tuple[RuleTag, List[Sequent], dict]]:
        ant, suc = seq.antecedent, seq.succedent
        size = len(ant)

        if ant == (suc,):
            yield RuleTag.AXIOM, [], {}
            return

        if isinstance(suc, Product):
            for cut in range(1, size):
                yield RuleTag.PROD_R, [Sequent(ant[:cut], suc.left), Sequent(ant[cut:], suc.right)], {}

        for pos, formula in enumerate(ant):
            if isinstance(formula, LeftDiv):
                for start in range(pos - 1, -1, -1):
                    gamma = ant[start:pos]
                    rest = ant[:start] + (formula.result,) + ant[pos + 1:]
                    yield RuleTag.LDIV_L, [Sequent(gamma, formula.divisor), Sequent(rest, suc)], {"position": pos}

        for pos, formula in enumerate(ant):
            if isinstance(formula, RightDiv):
                for end in range(pos + 2, size + 1):
                    gamma = ant[pos + 1:end]
                    rest = ant[:pos] + (formula.result,) + ant[end:]
                    yield RuleTag.RDIV_L, [Sequent(gamma, formula.divisor), Sequent(rest, suc)], {"position": pos}

        for pos, formula in enumerate(ant):
            if isinstance(formula, Product):
                opened = ant[:pos] + (formula.left, formula.right) + ant[pos + 1:]
                yield RuleTag.PROD_L, [Sequent(opened, suc)], {"position": pos}

        for pos, formula in enumerate(ant):
            if isinstance(formula, Nabla):
                stripped = ant[:pos] + (formula.inner,) + ant[pos + 1:]
                yield RuleTag.NABLA_L, [Sequent(stripped, suc)], {"position": pos}

        for pos, formula in enumerate(ant):
            if isinstance(formula, Bang):
                for copies in range(1, self.k0 + 1):
                    copied = ant[:pos] + (formula.inner,) * copies + ant[pos + 1:]
                    yield RuleTag.BANG_L, [Sequent(copied, suc)], {"position": pos, "copies": copies}

        # Perm: ∇A w prawo, tuż przed ∇A\B
        for pos, formula in enumerate(ant):
            if isinstance(formula, Nabla):
                for site in range(pos + 2, size):
                    other = ant[site]
                    if isinstance(other, LeftDiv) and other.divisor == formula:
                        target = site - 1
                        yield RuleTag.PERM, [Sequent(move(ant, pos, target), suc)], {"position": pos, "target": target}

        # Perm': ∇A w lewo, tuż za B/∇A
        for pos, formula in enumerate(ant):
            if isinstance(formula, Nabla):
                for site in range(pos - 2, -1, -1):
                    other = ant[site]
                    if isinstance(other, RightDiv) and other.divisor == formula:
                        target = site + 1
                        yield RuleTag.PERM_PRIME, [Sequent(move(ant, pos, target), suc)], {"position": pos, "target": target}

        if isinstance(suc, LeftDiv):
            yield RuleTag.LDIV_R, [Sequent((suc.divisor,) + ant, suc.result)], {}
        if isinstance(suc, RightDiv):
            yield RuleTag.RDIV_R, [Sequent(ant + (suc.divisor,), suc.result)], {}
        if size == 1 and isinstance(suc, Nabla) and isinstance(ant[0], Nabla):
            yield RuleTag.NABLA_R, [Sequent((ant[0].inner,), suc.inner)], {}
        if size == 1 and isinstance(suc, Bang) and isinstance(ant[0], Bang):
            yield RuleTag.BANG_R, [Sequent((ant[0].inner,), suc.inner)], {}


def prove(seq: Sequent, k0: int = 2, depth_limit: int = 32) -> Optional[ProofTree]:
    """
    Szuka dowodu sekwentu o wysokości co najwyżej depth_limit

    Args:
        seq: Sekwent do udowodnienia
        k0: Maksymalna liczba kopii w BangL
        depth_limit: Limit wysokości drzewa dowodu

    Returns:
        ProofTree albo None, gdy strategia nie znajduje dowodu
    """
    return ProofSearch(k0, depth_limit).prove(seq)
