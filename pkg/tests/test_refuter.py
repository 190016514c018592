import random
from dataclasses import replace

import pytest

from conftest import refuter_suite
from ratwp.afsa import Afsa, WordPair, accepts, find_accepting_run, find_loop, pump
from ratwp.algebra import fi_eval, fi_eval_walk, make_type, triple
from ratwp.errors import InconclusiveError, InputError
from ratwp.refuter import (
    ACCEPTED_INVALID_PAIR,
    REJECTED_VALID_PAIR,
    RefutationWitness,
    fi_valid_pair,
    random_afsa,
    refute_fi_recognizer,
    universal_afsa,
    verify_witness,
)
from ratwp.wordproblem import cayley_afsa, closure_model, free_monoid_afsa


def test_valid_pair_examples():
    assert fi_valid_pair(1) == ("xXx", "x")
    assert fi_eval("xXx") == fi_eval("x") == triple(0, 1, 1)
    assert fi_valid_pair(3) == ("xxxXXXxxx", "xxx")
    p = fi_valid_pair(5)
    assert len(p.first) == 15
    assert fi_eval_walk(p.first) == fi_eval_walk(p.second) == triple(0, 5, 5)
    with pytest.raises(InputError):
        fi_valid_pair(0)


def test_diagonal_is_refuted_by_rejection():
    diag = free_monoid_afsa("xX")
    w = refute_fi_recognizer(diag)
    assert w.kind == REJECTED_VALID_PAIR
    assert w.pair == ("xxXXxx", "xx")
    assert w.n == 2
    assert verify_witness(diag, w)


def test_universal_is_refuted_by_pumping():
    uni = universal_afsa()
    w = refute_fi_recognizer(uni)
    assert w.kind == ACCEPTED_INVALID_PAIR
    assert w.i >= 1 and w.j >= 0
    assert w.lhs.left == -w.i < 0 == w.rhs.left
    assert w.pair == ("x" * w.n + "X" * (w.n + w.i) + "x" * w.n, "x" * (w.n + w.j))
    assert w.lhs == triple(-w.i, w.n, w.n - w.i)
    assert w.rhs == triple(0, w.n + w.j, w.n + w.j)
    assert verify_witness(uni, w)


def test_cayley_of_finite_quotient_is_refuted_by_pumping():
    a = cayley_afsa(closure_model(make_type((2, 3))))
    w = refute_fi_recognizer(a)
    assert w.kind == ACCEPTED_INVALID_PAIR
    assert w.n == len(a.states) + 1
    assert verify_witness(a, w)


def test_refuter_checks_alphabet():
    with pytest.raises(InputError):
        refute_fi_recognizer(free_monoid_afsa("ab"))


def test_refuter_inconclusive_with_small_n():
    # a three-state chain that reads X's on distinct states never repeats with n = 1
    chain = Afsa(
        frozenset({"a", "b", "c"}),
        "a",
        frozenset({"c"}),
        frozenset("xX"),
        frozenset(
            {
                ("a", "x", "x", "b"),
                ("b", "X", "", "c"),
                ("c", "x", "", "c"),
            }
        ),
    )
    assert accepts(chain, fi_valid_pair(1))
    with pytest.raises(InconclusiveError):
        refute_fi_recognizer(chain, n=1)
    assert verify_witness(chain, refute_fi_recognizer(chain))


def test_verify_rejects_forged_witnesses():
    uni = universal_afsa()
    good = refute_fi_recognizer(uni)
    assert verify_witness(uni, good)
    forged = RefutationWitness(ACCEPTED_INVALID_PAIR, WordPair("xXx", "x"), 1, triple(0, 1, 1), triple(0, 1, 1), 1, 0)
    assert not verify_witness(uni, forged)
    lying = replace(good, lhs=good.rhs)
    assert not verify_witness(uni, lying)

    diag = free_monoid_afsa("xX")
    tampered = replace(good, pair=WordPair("xxXXXxx", "xx"))
    assert not verify_witness(diag, tampered)
    wrong_kind = replace(refute_fi_recognizer(diag), kind=ACCEPTED_INVALID_PAIR)
    assert not verify_witness(diag, wrong_kind)


def test_witness_serialisation_round_trip():
    for a in (universal_afsa(), free_monoid_afsa("xX")):
        w = refute_fi_recognizer(a)
        text = w.dumps()
        assert text.splitlines()[0].startswith("kind: ")
        assert [line.split(":")[0] for line in text.splitlines()] == ["kind", "u", "v", "n", "i", "j", "lhs", "rhs"]
        assert RefutationWitness.loads(text) == w


def test_random_afsa_is_reproducible():
    a = random_afsa(random.Random(3))
    b = random_afsa(random.Random(3))
    assert a == b


@pytest.mark.parametrize("name, afsa", list(refuter_suite().items()))
def test_refuter_soundness(name, afsa):
    w = refute_fi_recognizer(afsa)
    assert verify_witness(afsa, w), name
    if w.kind == ACCEPTED_INVALID_PAIR:
        assert w.i >= 1 and w.lhs != w.rhs


@pytest.mark.parametrize("n", [1, 7, 20])
def test_pumped_arithmetic(n):
    for i in range(1, 21):
        assert fi_eval("x" * n + "X" * (n + i) + "x" * n) == triple(-i, n, n - i)
    for j in range(0, 21):
        assert fi_eval("x" * (n + j)) == triple(0, n + j, n + j)


def test_pumping_in_refuter_runs_is_sound():
    for name, afsa in refuter_suite(n_random=10).items():
        n = len(afsa.states) + 1
        run = find_accepting_run(afsa, fi_valid_pair(n))
        if run is None:
            continue
        loop = find_loop(run, (n, 2 * n))
        for k in range(4):
            assert accepts(afsa, pump(loop, k)), (name, k)


def test_random_suite_exercises_both_witness_kinds():
    kinds = {refute_fi_recognizer(a).kind for name, a in refuter_suite().items() if name.startswith("random")}
    assert kinds == {REJECTED_VALID_PAIR, ACCEPTED_INVALID_PAIR}
