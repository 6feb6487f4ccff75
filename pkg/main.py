#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
fockflow: dowody SLLM, diagramy dyskursu i klasyfikacja zaimków na symulowanych obwodach

Polecenia:
    prove    dowód i diagram dyskursu z leksykonu
    run      trening macierzy modeli M1-M4 x (frobenius, rz)
    dataset  generowanie lub podgląd zbioru danych
"""

import argparse
import json
import sys
from typing import List, Optional

from utils.config import COMBINATIONS, MODELS, RunConfig, SearchConfig, SPSAConfig
from utils.errors import EXIT_DATA, EXIT_INTERNAL, EXIT_OK, FockflowError, UsageError
from utils.logger import app_logger
from views.dataset_view import DatasetView
from views.prove_view import ProveView
from views.run_view import RunView


class CliParser(argparse.ArgumentParser):
    """ArgumentParser zgłaszający UsageError zamiast kończyć proces"""

    def error(self, message):
        raise UsageError(message)


def _add_search_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--k0", type=int, default=2, help="liczba kopii dla !L (domyślnie 2)")
    parser.add_argument("--depth-limit", type=int, default=32, help="limit głębokości dowodu")


def build_parser() -> CliParser:
    parser = CliParser(prog="fockflow", description="Dyskurs SLLM na symulowanych obwodach kwantowych")
    parser.add_argument("--verbose", action="store_true", help="logi DEBUG na stderr")
    commands = parser.add_subparsers(dest="command", parser_class=CliParser)

    prove = commands.add_parser("prove", help="dowód i diagram dyskursu")
    prove.add_argument("text", help='dyskurs, np. "john sleeps . he snores"')
    prove.add_argument("--lexicon", help="plik TSV leksykonu (domyślnie data/discourse_lexicon.tsv)")
    prove.add_argument("--simplify", action="store_true", help="przepisania koreferencji, kopuli i normalizacja")
    prove.add_argument("--out", help="plik wyjściowy JSON (domyślnie stdout)")
    _add_search_flags(prove)

    run = commands.add_parser("run", help="trening macierzy modeli")
    run.add_argument("--model", type=int, action="append", choices=MODELS, help="model 1-4 (powtarzalne)")
    run.add_argument("--combination", action="append", choices=COMBINATIONS, help="frobenius albo rz")
    run.add_argument("--all", action="store_true", help="pełna macierz 4 x 2")
    run.add_argument("--seeds", type=int, default=20, help="liczba ziaren na komórkę")
    run.add_argument("--seed", type=int, default=0, help="ziarno bazowe i ziarno podziału")
    run.add_argument("--iterations", type=int, default=100)
    run.add_argument("--spsa-a", type=float, default=0.05)
    run.add_argument("--spsa-c", type=float, default=0.06)
    run.add_argument("--spsa-A", type=float, default=None, help="domyślnie 0.01 * iteracje")
    run.add_argument("--dataset", default="generate", help="'generate' albo ścieżka CSV")
    run.add_argument("--vocabulary", help="plik TOML słownictwa dla 'generate'")
    run.add_argument("--out", default="results", help="katalog wyników")
    run.add_argument("--dump-diagrams", action="store_true")
    run.add_argument("--dump-circuits", action="store_true")
    run.add_argument("--dump-state", action="store_true")
    _add_search_flags(run)

    dataset = commands.add_parser("dataset", help="zbiór danych")
    actions = dataset.add_subparsers(dest="action", parser_class=CliParser)
    generate = actions.add_parser("generate", help="zapisuje dataset.csv i podziały")
    generate.add_argument("--vocabulary", help="plik TOML słownictwa")
    generate.add_argument("--out", default="data/generated", help="katalog wyjściowy")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--lenient", action="store_true", help="bez wymogu 144 wpisów i równych klas")
    inspect = actions.add_parser("inspect", help="opis pliku CSV")
    inspect.add_argument("path")
    inspect.add_argument("--seed", type=int, default=0)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig z argumentów polecenia run"""
    if args.all and (args.model or args.combination):
        raise UsageError("--all wyklucza --model i --combination")
    if not args.all and not args.model:
        raise UsageError("Podaj --model (1-4) albo --all")
    models = MODELS if args.all else tuple(dict.fromkeys(args.model))
    combinations = COMBINATIONS if args.all or not args.combination else tuple(dict.fromkeys(args.combination))
    return RunConfig(
        models=models,
        combinations=combinations,
        seeds=args.seeds,
        seed=args.seed,
        spsa=SPSAConfig(a=args.spsa_a, c=args.spsa_c, A=args.spsa_A, iterations=args.iterations, seed=args.seed),
        search=SearchConfig(k0=args.k0, depth_limit=args.depth_limit),
        dataset=args.dataset,
        vocabulary=args.vocabulary,
        out=args.out,
        dump_diagrams=args.dump_diagrams,
        dump_circuits=args.dump_circuits,
        dump_state=args.dump_state,
    )


def dispatch(args: argparse.Namespace) -> Optional[dict]:
    if args.command == "prove":
        view = ProveView(args.text, args.lexicon, SearchConfig(k0=args.k0, depth_limit=args.depth_limit),
                         simplify=args.simplify)
        document = view.run(args.out)
        return None if args.out else document

    if args.command == "run":
        json_path = RunView(run_config(args)).run()
        return {"results": str(json_path), "csv": str(json_path.with_suffix(".csv"))}

    if args.command == "dataset":
        if args.action == "generate":
            return DatasetView(args.vocabulary, args.seed, strict=not args.lenient).generate(args.out)
        if args.action == "inspect":
            return DatasetView(seed=args.seed).inspect(args.path)
        raise UsageError("Podaj akcję: generate albo inspect")

    raise UsageError("Podaj polecenie: prove, run albo dataset")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punkt wejścia CLI

    Returns:
        int: kod wyjścia (0 sukces, 1 użycie, 2 dane, 3 błąd wewnętrzny)
    """
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            app_logger.set_level("DEBUG")
        app_logger.log_app_start(args.command)
        document = dispatch(args)
    except FockflowError as e:
        app_logger.log_error(type(e).__name__, e.message)
        return e.exit_code
    except OSError as e:
        app_logger.log_error("plik", str(e))
        return EXIT_DATA
    except Exception as e:
        app_logger.log_error("błąd wewnętrzny", repr(e))
        return EXIT_INTERNAL

    if document is not None:
        print(json.dumps(document, indent=2, ensure_ascii=False))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
