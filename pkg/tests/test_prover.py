import numpy as np
import pytest

from utils.prover import ProofSearch, balanced, prove
from utils.sllm_logic import (N, S, Atom, Bang, LeftDiv, Nabla, Product, RightDiv, RuleTag,
                              check_proof, discourse_goal, parse_sequent, sequent, tokenize,
                              type_discourse)

DISCOURSES = [
    "john sleeps . he snores",
    "the dog broke the vase . it was clumsy",
    "the cat broke the glass . it was fragile",
    "the ball hit the window and bill caught it",
]


def _discourse_sequent(text, lexicon):
    words, sentences = tokenize(text, lexicon)
    return type_discourse(words, lexicon, discourse_goal(sentences))


def _rules(tree):
    return [node.rule for node in tree.nodes()]


def test_john_sleeps():
    tree = prove(sequent([N, LeftDiv(N, S)], S))
    assert tree is not None
    assert tree.rule is RuleTag.LDIV_L
    assert check_proof(tree, k0=2)


def test_unprovable():
    assert prove(sequent([S], N)) is None
    assert prove(parse_sequent("n, n --> s")) is None


@pytest.mark.parametrize("text", DISCOURSES)
def test_worked_discourses(text, discourse_lexicon):
    seq = _discourse_sequent(text, discourse_lexicon)
    tree = prove(seq, k0=2, depth_limit=32)
    assert tree is not None, text
    assert tree.conclusion == seq
    assert check_proof(tree, k0=2)


def test_subject_anaphora_uses_two_copies_and_perm(discourse_lexicon):
    tree = prove(_discourse_sequent("john sleeps . he snores", discourse_lexicon))
    rules = _rules(tree)
    assert RuleTag.PERM in rules
    assert RuleTag.NABLA_L in rules
    assert [n.copies for n in tree.nodes() if n.rule is RuleTag.BANG_L] == [2]


def test_object_anaphora_needs_no_perm(discourse_lexicon):
    tree = prove(_discourse_sequent("the cat broke the glass . it was fragile", discourse_lexicon))
    assert RuleTag.PERM not in _rules(tree)
    assert RuleTag.PERM_PRIME not in _rules(tree)


def test_copy_bound_blocks_anaphora(discourse_lexicon):
    assert prove(_discourse_sequent("john sleeps . he snores", discourse_lexicon), k0=1) is None


def test_depth_limit():
    seq = sequent([N, LeftDiv(N, S)], S)
    assert prove(seq, depth_limit=1) is None
    assert prove(seq, depth_limit=2) is not None


def test_deterministic(discourse_lexicon):
    seq = _discourse_sequent("the dog broke the vase . it was clumsy", discourse_lexicon)
    assert prove(seq) == prove(seq)


def test_balanced():
    assert balanced(sequent([N, LeftDiv(N, S)], S), k0=2)
    assert not balanced(sequent([N, N, LeftDiv(N, S)], S), k0=2)
    assert balanced(sequent([Bang(N), LeftDiv(N, LeftDiv(N, S))], S), k0=2)


def test_search_counts_visited():
    search = ProofSearch(k0=2, depth_limit=8)
    search.prove(sequent([N, LeftDiv(N, S)], S))
    assert search.visited >= 2


def _random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.35:
        return Atom(str(rng.choice(["n", "s"])))
    choice = rng.integers(5)
    if choice == 0:
        return LeftDiv(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))
    if choice == 1:
        return RightDiv(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))
    if choice == 2:
        return Product(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))
    if choice == 3:
        return Nabla(_random_formula(rng, depth - 1))
    return Bang(_random_formula(rng, depth - 1))


def test_search_is_sound_on_random_sequents():
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(150):
        antecedent = [_random_formula(rng, 2) for _ in range(rng.integers(1, 4))]
        seq = sequent(antecedent, _random_formula(rng, 1))
        tree = prove(seq, k0=2, depth_limit=10)
        if tree is not None:
            found += 1
            assert tree.conclusion == seq
            assert check_proof(tree, k0=2)
            assert all(n.copies <= 2 for n in tree.nodes())
    assert found > 0
