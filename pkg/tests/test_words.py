"""Word semantics, the relation catalog, derivations, and equivalence."""

from __future__ import annotations

import random

import pytest
from oracles import frac_direct_sum, frac_eq, frac_identity, frac_of_matrix

from hadpi.linalg import ExactMatrix, gen_h, gen_x, gen_z
from hadpi.words import (
    CATALOG,
    RELATION_BY_ID,
    DerivationStep,
    StepError,
    Word,
    WordError,
    apply_step,
    check_derivation,
    embed,
    enumerate_assignments,
    format_derivation,
    format_word,
    parse_derivation,
    parse_word,
    shift,
    verify_relation,
    word_sem,
    words_equiv,
)


def rand_word(rng: random.Random, n: int, max_len: int = 30) -> Word:
    gens = []
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice("ZXH")
        if kind == "Z":
            gens.append(gen_z(rng.randint(1, n)))
        else:
            b, c = sorted(rng.sample(range(1, n + 1), 2))
            gens.append(gen_x(b, c) if kind == "X" else gen_h(b, c))
    return Word(n, tuple(gens))


def test_word_sem_examples():
    assert word_sem(Word(3, ())) == ExactMatrix.identity(3)
    hh = Word(2, (gen_h(1, 2), gen_h(1, 2)))
    assert word_sem(hh).is_identity()
    lhs = Word(2, (gen_z(2), gen_h(1, 2)))
    rhs = Word(2, (gen_h(1, 2), gen_x(1, 2)))
    assert word_sem(lhs) == word_sem(rhs)


def test_word_sem_is_product_homomorphism():
    rng = random.Random(211)
    for _ in range(50):
        n = rng.randint(2, 6)
        w1, w2 = rand_word(rng, n), rand_word(rng, n)
        joined = Word(n, w1.gens + w2.gens)
        assert word_sem(joined) == word_sem(w1) @ word_sem(w2)


def test_word_sem_validates_indices():
    with pytest.raises(WordError):
        word_sem(Word(2, (gen_z(3),)))


def test_shift_examples():
    assert shift(Word(1, (gen_z(1),)), 2) == Word(3, (gen_z(3),))
    assert shift(Word(2, ()), 4) == Word(6, ())


def test_shift_semantics_lemma():
    rng = random.Random(223)
    for _ in range(40):
        n = rng.randint(2, 5)
        m = rng.randint(0, 3)
        w = rand_word(rng, n)
        left = frac_of_matrix(word_sem(shift(w, m)))
        right = frac_direct_sum(frac_identity(m), frac_of_matrix(word_sem(w)))
        assert frac_eq(left, right)


def test_embed_semantics_lemma():
    rng = random.Random(227)
    for _ in range(40):
        n = rng.randint(2, 5)
        m = rng.randint(0, 3)
        w = rand_word(rng, n)
        left = frac_of_matrix(word_sem(embed(w, n + m)))
        right = frac_direct_sum(frac_of_matrix(word_sem(w)), frac_identity(m))
        assert frac_eq(left, right)
    with pytest.raises(WordError):
        embed(Word(4, ()), 3)


def test_catalog_shape():
    assert len(CATALOG) == 22
    assert {r.id for r in CATALOG} == {
        "a1", "a2", "a3", "b1", "b2", "b3", "b4", "b5", "b6",
        "c1", "c2", "c3", "c4", "c5", "d1", "d2", "d3", "d4",
        "e1", "e2", "f1", "f2",
    }
    dims = {r.id: r.min_dim for r in CATALOG}
    assert dims["a1"] == 1 and dims["d4"] == 6 and dims["f1"] == 4
    assert len(RELATION_BY_ID["d3"].lhs) == 12 and len(RELATION_BY_ID["d3"].rhs) == 2


def test_named_relation_instances():
    assert verify_relation(RELATION_BY_ID["d3"], (1, 2, 3, 4), 4)
    assert verify_relation(RELATION_BY_ID["d4"], (1, 2, 3, 4, 5, 6), 6)
    assert verify_relation(RELATION_BY_ID["f2"], (1, 2, 3, 4), 4)


def test_all_relations_at_min_dim_all_assignments():
    for rel in CATALOG:
        n = rel.min_dim
        for idx in enumerate_assignments(rel, n):
            assert verify_relation(rel, idx, n), (rel.id, idx)


def test_relations_random_assignments_larger_ambient():
    rng = random.Random(229)
    for rel in CATALOG:
        for _ in range(5):
            n = rng.randint(rel.min_dim, 7)
            idx = tuple(rng.sample(range(1, n + 1), len(rel.formals)))
            assert verify_relation(rel, idx, n), (rel.id, idx, n)


def test_verify_relation_rejects_bad_indices():
    rel = RELATION_BY_ID["c1"]
    with pytest.raises(WordError):
        verify_relation(rel, (1, 1), 3)
    with pytest.raises(WordError):
        verify_relation(rel, (1, 9), 3)
    with pytest.raises(WordError):
        verify_relation(rel, (1,), 3)


def test_apply_step_examples():
    hh = Word(2, (gen_h(1, 2), gen_h(1, 2)))
    assert apply_step(hh, DerivationStep("a3", "L->R", (1, 2), 0)) == Word(2, ())
    hx = Word(2, (gen_h(1, 2), gen_x(1, 2)))
    zh = apply_step(hx, DerivationStep("d2", "R->L", (1, 2), 0))
    assert zh == Word(2, (gen_z(2), gen_h(1, 2)))
    with pytest.raises(StepError):
        apply_step(hx, DerivationStep("a3", "L->R", (1, 2), 0))
    with pytest.raises(StepError):
        apply_step(hx, DerivationStep("a3", "L->R", (1, 2), 5))
    with pytest.raises(StepError):
        apply_step(hx, DerivationStep("zz", "L->R", (1, 2), 0))
    with pytest.raises(StepError):
        apply_step(hx, DerivationStep("a3", "sideways", (1, 2), 0))


def test_apply_step_insertion_and_preservation():
    # R->L on an involution relation inserts a cancelling pair anywhere
    rng = random.Random(233)
    for _ in range(60):
        n = rng.randint(2, 6)
        w = rand_word(rng, n)
        before = word_sem(w)
        candidates = [r for r in ("a1", "a2", "a3", "f1") if RELATION_BY_ID[r].min_dim <= n]
        rel_id = rng.choice(candidates)
        rel = RELATION_BY_ID[rel_id]
        idx = tuple(rng.sample(range(1, n + 1), len(rel.formals)))
        pos = rng.randint(0, len(w.gens))
        grown = apply_step(w, DerivationStep(rel_id, "R->L", idx, pos))
        assert word_sem(grown) == before
        shrunk = apply_step(grown, DerivationStep(rel_id, "L->R", idx, pos))
        assert shrunk == w


def test_apply_step_reversed_index_instantiation():
    # c4 with the H pattern instantiated through (e2) expansion
    rel = RELATION_BY_ID["e2"]
    w = Word(3, (gen_x(1, 3), gen_h(1, 3), gen_x(1, 3)))
    # lhs H[c,b] with b=1, c=3 normalizes to exactly w's three generators
    collapsed = apply_step(w, DerivationStep("e2", "L->R", (1, 3), 0))
    assert word_sem(collapsed) == word_sem(w)
    assert rel.min_dim == 2


def test_check_derivation():
    w = Word(2, ())
    assert check_derivation(w, [], w)
    # grow then shrink: H H X X  ->  eps
    start = Word(2, (gen_h(1, 2), gen_h(1, 2), gen_x(1, 2), gen_x(1, 2)))
    steps = [
        DerivationStep("a3", "L->R", (1, 2), 0),
        DerivationStep("a2", "L->R", (1, 2), 0),
    ]
    assert check_derivation(start, steps, Word(2, ()))
    assert not check_derivation(start, steps, Word(2, (gen_z(1),)))
    with pytest.raises(StepError, match="step 2"):
        bad = [
            DerivationStep("a3", "L->R", (1, 2), 0),
            DerivationStep("a3", "L->R", (1, 2), 0),
        ]
        check_derivation(start, bad, Word(2, ()))


def test_words_equiv():
    assert words_equiv(Word(1, (gen_z(1), gen_z(1))), Word(1, ()))
    assert not words_equiv(Word(2, (gen_h(1, 2),)), Word(2, (gen_x(1, 2),)))
    hx = (gen_h(1, 2), gen_x(1, 2))
    assert words_equiv(Word(2, hx * 8), Word(2, ()))
    assert not words_equiv(Word(2, hx * 4), Word(2, ()))
    with pytest.raises(WordError):
        words_equiv(Word(2, ()), Word(3, ()))


def test_words_equiv_is_equivalence():
    rng = random.Random(239)
    ws = [rand_word(rng, 3, 12) for _ in range(8)]
    for w in ws:
        assert words_equiv(w, w)
    for w1 in ws:
        for w2 in ws:
            assert words_equiv(w1, w2) == words_equiv(w2, w1)


def test_parse_and_format_word():
    w = parse_word("n=3 Z[1] X[1,2] H[2,3]")
    assert w == Word(3, (gen_z(1), gen_x(1, 2), gen_h(2, 3)))
    assert format_word(w) == "n=3 Z[1] X[1,2] H[2,3]"
    assert parse_word("n=2 eps") == Word(2, ())
    assert parse_word("n=2 ε") == Word(2, ())
    assert format_word(Word(2, ())) == "n=2 eps"
    # multi-line input is fine
    assert parse_word("n=2\nH[1,2]\nH[1,2]") == Word(2, (gen_h(1, 2),) * 2)


def test_parse_word_normalizes_reversed_indices():
    assert parse_word("n=3 X[3,1]") == Word(3, (gen_x(1, 3),))
    assert parse_word("n=3 H[3,1]") == Word(
        3, (gen_x(1, 3), gen_h(1, 3), gen_x(1, 3))
    )


def test_parse_word_errors():
    for bad in [
        "",
        "Z[1]",
        "n=0 Z[1]",
        "n=2 Q[1]",
        "n=2 Z[1,2]",
        "n=2 X[1]",
        "n=2 X[1,1]",
        "n=2 H[1,3]",
        "n=2 Z[0]",
    ]:
        with pytest.raises(WordError):
            parse_word(bad)


def test_word_format_round_trip_random():
    rng = random.Random(241)
    for _ in range(60):
        w = rand_word(rng, rng.randint(2, 6))
        assert parse_word(format_word(w)) == w


def test_derivation_text_round_trip():
    steps = [
        DerivationStep("a3", "L->R", (1, 2), 0),
        DerivationStep("d4", "R->L", (1, 2, 3, 4, 5, 6), 7),
    ]
    text = format_derivation(steps)
    assert text.splitlines()[0] == "step a3 L->R at 0 with a=1,b=2"
    assert parse_derivation(text) == steps
    assert parse_derivation("# comment\n\n" + text) == steps
    for bad in [
        "step a3 L->R at 0 with a=1",
        "step nope L->R at 0 with a=1,b=2",
        "step a3 up at 0 with a=1,b=2",
        "a3 L->R 0 a=1,b=2",
    ]:
        with pytest.raises(WordError):
            parse_derivation(bad)
