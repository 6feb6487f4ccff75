#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Polecenie prove: dowód SLLM dyskursu i jego diagram jako JSON
"""

import json
from pathlib import Path
from typing import Optional

from utils.config import SearchConfig
from utils.diagram import BoxKind, Diagram, proof_to_diagram
from utils.errors import NoProofError
from utils.logger import app_logger
from utils.prover import ProofSearch
from utils.rewrites import fock_shorthand, normalize, rewrite_copula, rewrite_coreference
from utils.sllm_logic import discourse_goal, load_lexicon, tokenize, type_discourse

DEFAULT_LEXICON = Path(__file__).resolve().parent.parent / "data" / "discourse_lexicon.tsv"


class ProveView:
    """Dowodzi dyskursu z pliku leksykonu i wypisuje dowód z diagramem"""

    def __init__(self, text: str, lexicon_path=None, search: SearchConfig = SearchConfig(),
                 simplify: bool = False):
        self.text = text
        self.lexicon_path = Path(lexicon_path) if lexicon_path else DEFAULT_LEXICON
        self.search = search
        self.simplify = simplify

    def _simplified(self, diagram: Diagram) -> Diagram:
        if any(b.role == "pronoun" for b in diagram.boxes if b.kind is BoxKind.WORD_STATE):
            diagram = rewrite_coreference(diagram)
        return normalize(fock_shorthand(rewrite_copula(diagram)))

    def run(self, out: Optional[Path] = None) -> dict:
        """
        Buduje dokument {words, sequent, proof, diagram}

        Args:
            out: Opcjonalny plik, do którego trafia dokument

        Returns:
            dict: dokument JSON

        Raises:
            LexiconError: nieznane słowo lub pusty dyskurs
            NoProofError: brak dowodu w limicie głębokości
        """
        lexicon = load_lexicon(self.lexicon_path, self.search.k0)
        words, sentences = tokenize(self.text, lexicon)
        seq = type_discourse(words, lexicon, discourse_goal(sentences))
        search = ProofSearch(self.search.k0, self.search.depth_limit)
        tree = search.prove(seq)
        if tree is None:
            raise NoProofError(f"Brak dowodu dla {seq} (głębokość <= {self.search.depth_limit})")
        app_logger.info(f"Dowód wysokości {tree.height()} po odwiedzeniu {search.visited} sekwentów")

        diagram = proof_to_diagram(tree, words, lexicon)
        if self.simplify:
            diagram = self._simplified(diagram)
        document = {
            "words": words,
            "sequent": str(seq),
            "proof": tree.to_dict(),
            "diagram": diagram.to_dict(),
        }
        if out is not None:
            out = Path(out)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
            app_logger.log_file_written(out)
        return document
