import json

import numpy as np
import pytest

from utils.errors import FormulaSyntaxError, LexiconError, ProofCheckError
from utils.sllm_logic import (N, S, Atom, Bang, LeftDiv, Lexicon, Nabla, Product, ProofTree,
                              RightDiv, RuleTag, check_proof, discourse_goal, format_formula,
                              load_lexicon, move, parse_formula, parse_sequent,
                              proof_from_dict, sequent, tokenize, type_discourse)


def test_parse_atoms_and_connectives():
    assert parse_formula("n\\s") == LeftDiv(N, S)
    assert parse_formula("!@n") == Bang(Nabla(N))
    assert parse_formula("(n\\s)/n") == RightDiv(LeftDiv(N, S), N)
    assert parse_formula("s.s") == Product(S, S)
    assert parse_formula(" ( n \\ s ) / ( n / n ) ") == RightDiv(LeftDiv(N, S), RightDiv(N, N))


@pytest.mark.parametrize("text", ["n\\s/n", "s.s.s", "", "(n", "n)", "x", "n\\"])
def test_parse_rejects(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_parse_error_carries_position():
    with pytest.raises(FormulaSyntaxError) as error:
        parse_formula("n\\s/n")
    assert error.value.position == 3


@pytest.mark.parametrize("text", ["n", "!@n", "@n\\n", "(n\\s)/n", "(n\\s)/(n/n)",
                                  "(s.s).s", "s\\(s.s)", "!(n\\s)", "(s\\s)/s"])
def test_format_reparses(text):
    formula = parse_formula(text)
    assert parse_formula(format_formula(formula)) == formula


def _random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return Atom(str(rng.choice(["n", "s"])))
    choice = rng.integers(5)
    if choice == 3:
        return Nabla(_random_formula(rng, depth - 1))
    if choice == 4:
        return Bang(_random_formula(rng, depth - 1))
    connective = (LeftDiv, RightDiv, Product)[choice]
    return connective(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))


def test_format_reparses_random_formulas():
    rng = np.random.default_rng(21)
    for _ in range(300):
        formula = _random_formula(rng, int(rng.integers(1, 6)))
        text = format_formula(formula)
        assert parse_formula(text) == formula, text
        spaced = " ".join(text)
        assert parse_formula(spaced) == formula, spaced


def test_parse_sequent():
    seq = parse_sequent("!@n, (n\\s)/n, n --> s")
    assert seq.antecedent == (Bang(Nabla(N)), RightDiv(LeftDiv(N, S), N), N)
    assert seq.succedent == S
    assert parse_sequent(str(seq)) == seq


def test_move():
    assert move(("a", "b", "c", "d"), 0, 2) == ("b", "c", "a", "d")
    assert move(("a", "b", "c", "d"), 3, 1) == ("a", "d", "b", "c")


def _john_sleeps():
    """n, n\\s --> s przez LDivL nad dwoma aksjomatami"""
    return ProofTree(sequent([N, LeftDiv(N, S)], S), RuleTag.LDIV_L, (
        ProofTree(sequent([N], N), RuleTag.AXIOM),
        ProofTree(sequent([S], S), RuleTag.AXIOM),
    ), position=1)


def test_check_accepts_ldivl():
    assert check_proof(_john_sleeps(), k0=2)


def test_check_accepts_axiom():
    formula = parse_formula("(n\\s)/n")
    assert check_proof(ProofTree(sequent([formula], formula), RuleTag.AXIOM), k0=2)


def test_check_rejects_wrong_axiom():
    with pytest.raises(ProofCheckError) as error:
        check_proof(ProofTree(sequent([N], S), RuleTag.AXIOM), k0=2)
    assert error.value.rule == "Axiom"


def test_check_rejects_copies_above_bound():
    inner = ProofTree(sequent([Nabla(N)] * 3, N), RuleTag.AXIOM)
    node = ProofTree(sequent([Bang(Nabla(N))], N), RuleTag.BANG_L, (inner,), position=0, copies=3)
    with pytest.raises(ProofCheckError) as error:
        check_proof(node, k0=2)
    assert error.value.rule == "BangL"
    assert "1..2" in str(error.value)


def test_check_reports_first_bad_node():
    bad_leaf = ProofTree(sequent([S], N), RuleTag.AXIOM)
    tree = ProofTree(sequent([N, LeftDiv(N, S)], S), RuleTag.LDIV_L,
                     (ProofTree(sequent([N], N), RuleTag.AXIOM), bad_leaf), position=1)
    with pytest.raises(ProofCheckError, match="Axiom|LDivL"):
        check_proof(tree, k0=2)


def test_check_perm_direction():
    ant = (Nabla(N), N, LeftDiv(Nabla(N), N))
    moved = move(ant, 0, 1)
    premise = ProofTree(sequent(moved, S), RuleTag.AXIOM)
    with pytest.raises(ProofCheckError):
        check_proof(ProofTree(sequent(ant, S), RuleTag.PERM_PRIME, (premise,), position=0, target=1), k0=2)


def test_proof_json_round_trip():
    tree = _john_sleeps()
    restored = proof_from_dict(json.loads(tree.to_json()))
    assert restored == tree
    assert tree.height() == 2
    assert len(list(tree.nodes())) == 3


def test_lexicon_rejects_conflicting_types():
    lexicon = Lexicon().add("john", "n")
    with pytest.raises(LexiconError):
        lexicon.add("John", "!@n")
    with pytest.raises(LexiconError):
        lexicon.add("he", "@n\\n", "subject")


def test_load_lexicon(tmp_path):
    path = tmp_path / "lexicon.tsv"
    path.write_text("# komentarz\njohn\t!@n\nsleeps\tn\\s\nhe\t@n\\n\tpronoun\n\n", encoding="utf-8")
    lexicon = load_lexicon(path, k0=3)
    assert lexicon.k0 == 3
    assert lexicon.type_of("John") == Bang(Nabla(N))
    assert lexicon.role_of("he") == "pronoun"


def test_load_lexicon_errors(tmp_path):
    with pytest.raises(LexiconError):
        load_lexicon(tmp_path / "missing.tsv")
    broken = tmp_path / "broken.tsv"
    broken.write_text("john\tn\\s/n\n", encoding="utf-8")
    with pytest.raises(LexiconError, match="broken.tsv:1"):
        load_lexicon(broken)


def test_tokenize_phrases_and_sentences(discourse_lexicon):
    words, sentences = tokenize("The dog broke the vase. It was clumsy.", discourse_lexicon)
    assert words == ["the dog", "broke", "the vase", "it", "was", "clumsy"]
    assert sentences == 2


def test_tokenize_unknown_word(discourse_lexicon):
    with pytest.raises(LexiconError, match="unicorn"):
        tokenize("john snores unicorn", discourse_lexicon)


def test_discourse_goal():
    assert discourse_goal(1) == S
    assert discourse_goal(2) == Product(S, S)
    assert discourse_goal(3) == Product(Product(S, S), S)
    with pytest.raises(LexiconError):
        discourse_goal(0)


def test_type_discourse(discourse_lexicon):
    seq = type_discourse(["john", "sleeps"], discourse_lexicon, S)
    assert seq == sequent([Bang(Nabla(N)), LeftDiv(N, S)], S)
    with pytest.raises(LexiconError):
        type_discourse([], discourse_lexicon, S)


def test_type_discourse_dog_example(discourse_lexicon):
    words = ["the dog", "broke", "the vase", "It", "was", "clumsy"]
    seq = type_discourse(words, discourse_lexicon, discourse_goal(2))
    assert str(seq) == "!@n, (n\\s)/n, n, @n\\n, (n\\s)/(n/n), n/n --> s.s"
