#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Diagramy czterech modeli eksperymentu

M1: worek słów bez dyskursu, M2: worek słów z połączeniem referenta i
zaimka, M3: gramatyka SLLM bez dyskursu, M4: gramatyka SLLM z dyskursem.
"""

from functools import lru_cache
from typing import List, Sequence

from utils.config import SearchConfig
from utils.dataset import DatasetEntry
from utils.diagram import (S_WIRE, BoxKind, Diagram, DiagramBuilder, WireType,
                           proof_to_diagram)
from utils.errors import DiagramError, NoProofError
from utils.prover import prove
from utils.rewrites import (combine_sentences, fock_shorthand, merge_outputs,
                            normalize, rewrite_copula, rewrite_coreference)
from utils.sllm_logic import Lexicon, ProofTree, Sequent, discourse_goal, type_discourse

MODEL_NAMES = {
    1: "bez gramatyki, bez dyskursu",
    2: "bez gramatyki, z dyskursem",
    3: "gramatyka, bez dyskursu",
    4: "gramatyka i dyskurs",
}

REFERENT_TYPE = "!@n"
NOUN_TYPE = "n"
VERB_TYPE = "(n\\s)/n"
PRONOUN_TYPE = "@n\\n"
COPULA_TYPE = "(n\\s)/(n/n)"
ADJECTIVE_TYPE = "n/n"


def _spider_chain(builder: DiagramBuilder, wires: Sequence[int]) -> int:
    current = wires[0]
    for wire in wires[1:]:
        (current,) = builder.add(BoxKind.SPIDER, (current, wire), (S_WIRE,))
    return current


def _bag_of_words(tokens: Sequence[str]) -> Diagram:
    builder = DiagramBuilder()
    wires = [builder.add(BoxKind.WORD_STATE, (), (S_WIRE,), word=token)[0] for token in tokens]
    return builder.build([_spider_chain(builder, wires)])


def _linked_bag_of_words(entry: DatasetEntry) -> Diagram:
    """Worek słów, w którym druga kopia referenta zastępuje drut zaimka"""
    builder = DiagramBuilder()
    first_sentence: List[int] = []
    spare = None
    for index, token in enumerate(entry.s1_tokens):
        if index == entry.referent_index:
            (fock,) = builder.add(BoxKind.FOCK_ELEMENT, (), (WireType("S", fock=True),), word=token)
            copy, spare = builder.add(BoxKind.PROJECTION, (fock,), (S_WIRE, S_WIRE), n=2)
            first_sentence.append(copy)
        else:
            first_sentence.append(builder.add(BoxKind.WORD_STATE, (), (S_WIRE,), word=token)[0])

    second_sentence: List[int] = []
    for token in entry.s2_tokens:
        if token == entry.pronoun:
            dual, result = builder.add(BoxKind.WORD_STATE, (), (S_WIRE, S_WIRE),
                                       word=token, role="pronoun")
            builder.add(BoxKind.CUP, (spare, dual))
            second_sentence.append(result)
        else:
            second_sentence.append(builder.add(BoxKind.WORD_STATE, (), (S_WIRE,), word=token)[0])

    outputs = [_spider_chain(builder, first_sentence), _spider_chain(builder, second_sentence)]
    diagram = builder.build(outputs)
    return normalize(fock_shorthand(rewrite_coreference(diagram)))


def entry_lexicon(entry: DatasetEntry, discourse: bool, k0: int = 2) -> Lexicon:
    """
    Leksykon pary zdań

    Z dyskursem referent ma typ !∇n, a zaimek ∇n\\n; bez dyskursu oba
    rzeczowniki i zaimek mają typ n.
    """
    subject, verb, obj = entry.s1_tokens
    pronoun, copula, adjective = entry.s2_tokens
    lexicon = Lexicon(k0=k0)
    for index, noun in ((0, subject), (2, obj)):
        referent = discourse and index == entry.referent_index
        lexicon.add(noun, REFERENT_TYPE if referent else NOUN_TYPE)
    lexicon.add(verb, VERB_TYPE)
    lexicon.add(pronoun, PRONOUN_TYPE if discourse else NOUN_TYPE, "pronoun")
    lexicon.add(copula, COPULA_TYPE, "copula")
    lexicon.add(adjective, ADJECTIVE_TYPE)
    return lexicon


@lru_cache(maxsize=None)
def _cached_proof(seq: Sequent, k0: int, depth_limit: int) -> ProofTree:
    tree = prove(seq, k0, depth_limit)
    if tree is None:
        raise NoProofError(f"Brak dowodu dla {seq}")
    return tree


def _grammar_diagram(words: Sequence[str], lexicon: Lexicon, sentences: int,
                     search: SearchConfig) -> Diagram:
    seq = type_discourse(words, lexicon, discourse_goal(sentences))
    tree = _cached_proof(seq, search.k0, search.depth_limit)
    return proof_to_diagram(tree, words, lexicon)


def build_model_diagram(entry: DatasetEntry, model: int, op: str,
                        search: SearchConfig = SearchConfig()) -> Diagram:
    """
    Buduje diagram pary zdań dla jednego z modeli

    Args:
        entry: Wpis zbioru danych
        model: 1, 2, 3 albo 4
        op: "frobenius" albo "rz"
        search: Parametry szukania dowodów (M3, M4)

    Returns:
        Diagram: z jednym wyjściem S

    Raises:
        DiagramError: nieznany model
        NoProofError: brak dowodu (M3, M4)
    """
    if model == 1:
        return combine_sentences(_bag_of_words(entry.s1_tokens), _bag_of_words(entry.s2_tokens), op)

    if model == 2:
        return merge_outputs(_linked_bag_of_words(entry), op)

    if model == 3:
        lexicon = entry_lexicon(entry, discourse=False, k0=search.k0)
        first = _grammar_diagram(entry.s1_tokens, lexicon, 1, search)
        second = _grammar_diagram(entry.s2_tokens, lexicon, 1, search)
        return combine_sentences(normalize(rewrite_copula(first)), normalize(rewrite_copula(second)), op)

    if model == 4:
        lexicon = entry_lexicon(entry, discourse=True, k0=search.k0)
        diagram = _grammar_diagram(entry.tokens, lexicon, 2, search)
        diagram = fock_shorthand(rewrite_copula(rewrite_coreference(diagram)))
        return merge_outputs(normalize(diagram), op)

    raise DiagramError(f"Nieznany model: {model}")
