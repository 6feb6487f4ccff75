import pytest

from utils.circuit_compiler import compile_diagram, slot_table
from utils.diagram import S_WIRE, BoxKind
from utils.errors import DiagramError
from utils.models import build_model_diagram, entry_lexicon
from utils.sllm_logic import Bang, N, Nabla


@pytest.mark.parametrize("combination", ["frobenius", "rz"])
@pytest.mark.parametrize("model", [1, 2, 3, 4])
def test_qubit_budget_and_single_output(model, combination, entries):
    for entry in entries:
        d = build_model_diagram(entry, model, combination)
        assert d.output_types() == (S_WIRE,)
        circuit = compile_diagram(d)
        assert circuit.qubit_count <= 10, entry.sentence
        assert len(circuit.open_outputs) == 1


def test_bag_of_words_has_no_cups(entry_by_sentence):
    d = build_model_diagram(entry_by_sentence("The girls ate the cookies. They looked hungry."), 1, "frobenius")
    assert d.count(BoxKind.CUP) == 0
    assert d.count(BoxKind.CAP) == 0
    assert d.count(BoxKind.WORD_STATE) == 6
    assert d.count(BoxKind.SPIDER) == 5


def test_bag_of_words_slot_count(entries):
    frobenius = slot_table([compile_diagram(build_model_diagram(e, 1, "frobenius")) for e in entries])
    rz = slot_table([compile_diagram(build_model_diagram(e, 1, "rz")) for e in entries])
    assert len(frobenius) == 15 * 3
    assert len(rz) == 15 * 3 + 1


def test_shared_word_shares_slots(entries):
    girls = [e for e in entries if e.s1_tokens[0] == "the girls"][:2]
    first, second = (compile_diagram(build_model_diagram(e, 1, "frobenius")) for e in girls)
    shared = {s for s in first.slots if s.startswith("the girls__")}
    assert len(shared) == 3
    assert shared <= set(second.slots)


@pytest.mark.parametrize("sentence, referent", [
    ("The girls ate the cookies. They looked hungry.", "the girls"),
    ("The men enjoyed the pancakes. They were tasty.", "the pancakes"),
])
def test_linked_bag_of_words_links_referent(sentence, referent, entry_by_sentence):
    d = build_model_diagram(entry_by_sentence(sentence), 2, "frobenius")
    linked = [b for b in d.boxes if b.kind is BoxKind.ORDER_N_STATE]
    assert [(b.word, b.n) for b in linked] == [(referent, 2)]
    assert not [b for b in d.boxes if b.role == "pronoun"]
    assert d.count(BoxKind.CUP) == 0


def test_grammar_without_discourse(entry_by_sentence):
    d = build_model_diagram(entry_by_sentence("The girls ate the cookies. They looked hungry."), 3, "rz")
    assert d.count(BoxKind.ORDER_N_STATE) == 0
    assert [b.word for b in d.boxes if b.role == "pronoun"] == ["they"]
    assert not [b for b in d.boxes if b.role == "copula"]
    assert d.boxes[-1].kind is BoxKind.COMBINE_RZ


@pytest.mark.parametrize("sentence", [
    "The girls ate the cookies. They looked hungry.",
    "The men enjoyed the pancakes. They were tasty.",
    "The children loved the cookies. They were starving.",
    "The girls enjoyed the pancakes. They looked delicious.",
])
def test_grammar_with_discourse(sentence, entry_by_sentence):
    entry = entry_by_sentence(sentence)
    d = build_model_diagram(entry, 4, "frobenius")
    states = [b for b in d.boxes if b.kind is BoxKind.ORDER_N_STATE]
    assert [(b.word, b.n) for b in states] == [(entry.s1_tokens[entry.referent_index], 2)]
    assert not [b for b in d.boxes if b.role in ("pronoun", "copula")]
    assert d.count(BoxKind.CAP) == 0
    assert d.count(BoxKind.SWAP) == 0


def test_entry_lexicon_types(entry_by_sentence):
    entry = entry_by_sentence("The men enjoyed the pancakes. They were tasty.")
    discourse = entry_lexicon(entry, discourse=True)
    assert discourse.type_of("the pancakes") == Bang(Nabla(N))
    assert discourse.type_of("the men") == N
    plain = entry_lexicon(entry, discourse=False)
    assert plain.type_of("the pancakes") == N
    assert plain.type_of("they") == N


def test_unknown_model(entries):
    with pytest.raises(DiagramError):
        build_model_diagram(entries[0], 5, "frobenius")
