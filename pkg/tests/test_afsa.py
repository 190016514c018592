from itertools import combinations

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import a_then_b_afsa, oracle_accepts
from ratwp.afsa import (
    EPS,
    Afsa,
    Configuration,
    LoopDecomposition,
    Run,
    Transition,
    WordPair,
    accepts,
    enumerate_accepted,
    find_accepting_run,
    find_loop,
    pair_key,
    parse_afsa,
    pump,
    serialize_afsa,
    to_dot,
    words_up_to,
)
from ratwp.errors import InputError, ParseError
from ratwp.refuter import universal_afsa


@st.composite
def automata(draw, alphabet="ab", max_states=4):
    k = draw(st.integers(1, max_states))
    states = [f"q{i}" for i in range(k)]
    labels = [EPS, *alphabet]
    trans = draw(
        st.sets(
            st.tuples(st.sampled_from(states), st.sampled_from(labels), st.sampled_from(labels), st.sampled_from(states)),
            max_size=12,
        )
    )
    finals = draw(st.sets(st.sampled_from(states)))
    return Afsa(frozenset(states), "q0", frozenset(finals), frozenset(alphabet), frozenset(trans))


small_words = st.text(alphabet="ab", max_size=4)


def run_from_steps(afsa, pair, steps):
    u, v = pair
    configs = [Configuration(afsa.start, 0, 0)]
    for t in steps:
        _, p1, p2 = configs[-1]
        configs.append(Configuration(t.target, p1 + bool(t.read1), p2 + bool(t.read2)))
    run = Run(WordPair(*pair), tuple(steps), tuple(configs))
    assert run.is_valid(afsa)
    return run


# -- acceptance -------------------------------------------------------------


def test_accepts_examples(fm_ab):
    assert accepts(fm_ab, ("ab", "ab"))
    assert not accepts(fm_ab, ("ab", "ba"))
    assert accepts(a_then_b_afsa(), ("aa", "b"))


def test_accepts_rejects_foreign_symbols(fm_ab):
    with pytest.raises(InputError):
        accepts(fm_ab, ("ac", "ab"))


def test_accepts_needs_both_tapes_read(fm_ab):
    assert not accepts(fm_ab, ("ab", "a"))
    assert accepts(fm_ab, ("", ""))


def test_eps_cycle_terminates():
    a = Afsa(
        frozenset({"p", "q"}),
        "p",
        frozenset({"q"}),
        frozenset("a"),
        frozenset({("p", EPS, EPS, "p"), ("p", EPS, EPS, "q"), ("q", EPS, EPS, "p"), ("q", "a", EPS, "q")}),
    )
    assert accepts(a, ("aaa", ""))
    assert not accepts(a, ("aaa", "a"))


def test_find_accepting_run_examples(fm_ab, c2_afsa):
    run = find_accepting_run(fm_ab, ("a", "a"))
    assert run.steps == (Transition("q0", "a", "a", "q0"),)
    assert run.configs == (Configuration("q0", 0, 0), Configuration("q0", 1, 1))
    assert find_accepting_run(fm_ab, ("a", "b")) is None
    run = find_accepting_run(c2_afsa, ("g", "ggg"))
    assert run is not None and run.is_valid(c2_afsa) and run.is_accepting(c2_afsa)


def test_find_accepting_run_is_deterministic(c2_afsa):
    runs = {find_accepting_run(c2_afsa, ("ggg", "g")) for _ in range(5)}
    assert len(runs) == 1


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(automata(), small_words, small_words)
def test_accepts_matches_layered_oracle(afsa, u, v):
    assert accepts(afsa, (u, v)) == oracle_accepts(afsa, (u, v))


@settings(max_examples=25, deadline=None)
@given(automata())
def test_accepts_matches_oracle_on_every_small_pair(afsa):
    words = list(words_up_to("ab", 3))
    for u in words:
        for v in words:
            run = find_accepting_run(afsa, (u, v))
            assert (run is not None) == oracle_accepts(afsa, (u, v))
            if run is not None:
                assert run.is_valid(afsa) and run.is_accepting(afsa)


# -- enumeration ------------------------------------------------------------


def test_enumerate_accepted_examples(fm_a, c2_afsa):
    assert enumerate_accepted(fm_a, 2) == [("", ""), ("a", "a"), ("aa", "aa")]
    dead = Afsa(frozenset({"q"}), "q", frozenset(), frozenset("a"), frozenset({("q", "a", "a", "q")}))
    assert enumerate_accepted(dead, 3) == []
    parity = sorted(
        (("g" * i, "g" * j) for i in range(1, 4) for j in range(1, 4) if i % 2 == j % 2),
        key=pair_key,
    )
    assert enumerate_accepted(c2_afsa, 3) == parity


def test_enumerate_accepted_is_sorted(fm_ab):
    pairs = enumerate_accepted(a_then_b_afsa(), 2)
    assert pairs == sorted(pairs, key=pair_key)
    assert ("a", "bb") in pairs and ("b", "") not in pairs


# -- loops and pumping ------------------------------------------------------


def test_find_loop_single_state(fm_a):
    run = find_accepting_run(fm_a, ("aaa", "aaa"))
    loop = find_loop(run, (0, 3))
    assert (loop.consumed1, loop.consumed2) == (1, 1)
    assert loop.loop_end - loop.loop_start == 1


def test_find_loop_none_when_states_distinct():
    chain = Afsa(
        frozenset({"q0", "q1", "q2"}),
        "q0",
        frozenset({"q2"}),
        frozenset("a"),
        frozenset({("q0", "a", EPS, "q1"), ("q1", "a", EPS, "q2")}),
    )
    run = find_accepting_run(chain, ("aa", ""))
    assert find_loop(run, (0, 2)) is None


def test_find_loop_window_checks(fm_a):
    run = find_accepting_run(fm_a, ("aa", "aa"))
    for bad in [(-1, 1), (2, 1), (0, 3)]:
        with pytest.raises(InputError):
            find_loop(run, bad)


def test_find_loop_inside_x_block():
    uni = universal_afsa()
    run = find_accepting_run(uni, ("xxXXxx", "xx"))
    loop = find_loop(run, (2, 4))
    assert loop is not None and loop.consumed1 >= 1
    assert set(run.input.first[run.configs[loop.loop_start].pos1 : run.configs[loop.loop_end].pos1]) == {"X"}


def test_pump_examples(fm_a):
    run = find_accepting_run(fm_a, ("a", "a"))
    loop = LoopDecomposition(run, 0, 1)
    assert pump(loop, 3) == ("aaa", "aaa")
    assert pump(loop, 1) == ("a", "a")

    uni = universal_afsa()
    t1 = {a: Transition("q", a, EPS, "q") for a in "xX"}
    t2 = {a: Transition("q", EPS, a, "q") for a in "xX"}
    steps = [t1["x"], t1["x"], t1["X"], t2["x"], t1["X"], t2["x"], t1["x"], t1["x"]]
    run = run_from_steps(uni, ("xxXXxx", "xx"), steps)
    loop = LoopDecomposition(run, 2, 4)
    assert (loop.consumed1, loop.consumed2) == (1, 1)
    pumped = pump(loop, 2)
    assert pumped == ("xxXXXxx", "xxx")
    assert accepts(uni, pumped)


def _all_loops(run):
    for a, b in combinations(range(len(run.configs)), 2):
        if run.configs[a].state == run.configs[b].state:
            yield LoopDecomposition(run, a, b)


@settings(max_examples=100, deadline=None)
@given(automata(), small_words, small_words)
def test_pumping_is_sound(afsa, u, v):
    run = find_accepting_run(afsa, (u, v))
    if run is None:
        return
    for loop in _all_loops(run):
        assert pump(loop, 1) == run.input
        for k in range(4):
            assert accepts(afsa, pump(loop, k))


# -- text format ------------------------------------------------------------

FM_A_TEXT = "alphabet: a\nstates: q0\nstart: q0\nfinal: q0\ntrans: q0 a a q0\n"


def test_serialize_free_monoid(fm_a):
    assert serialize_afsa(fm_a) == FM_A_TEXT


def test_parse_epsilon_label():
    a = parse_afsa("alphabet: a\nstates: q0\nstart: q0\nfinal: q0\ntrans: q0 a - q0\n")
    assert a.transitions == {Transition("q0", "a", EPS, "q0")}


def test_parse_comments_and_blank_lines():
    text = "# free monoid\n\nalphabet: a   # one symbol\nstates: q0\nstart: q0\nfinal: q0\ntrans: q0 a a q0\n"
    assert parse_afsa(text) == parse_afsa(FM_A_TEXT)


def test_round_trip_cayley(c2_afsa):
    assert parse_afsa(serialize_afsa(c2_afsa)) == c2_afsa


@settings(max_examples=50, deadline=None)
@given(automata())
def test_round_trip_random(afsa):
    assert parse_afsa(serialize_afsa(afsa)) == afsa


@pytest.mark.parametrize(
    "text, line",
    [
        ("alphabet: a\nstates: q0\nstart: q0\ntrans: q0 a q0\n", 4),
        ("alphabet: a\nstates: q0\nstart: q1\n", 3),
        ("alphabet: a\nstates: q0\nstart: q0\ntrans: q0 b a q0\n", 4),
        ("alphabet: a\nstates: q0\nstart: q0\nfinal: q9\n", 4),
        ("alphabet: a\nstates: q0\nstart: q0\nbogus\n", 4),
        ("alphabet: a\nstates: q0\n", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_afsa(text)
    assert info.value.line == line


def test_afsa_validation():
    with pytest.raises(InputError):
        Afsa(frozenset({"q"}), "p", frozenset(), frozenset("a"), frozenset())
    with pytest.raises(InputError):
        Afsa(frozenset({"q"}), "q", frozenset(), frozenset("a"), frozenset({("q", "b", EPS, "q")}))
    with pytest.raises(InputError):
        Afsa(frozenset({"q"}), "q", frozenset({"r"}), frozenset("a"), frozenset())


# -- DOT --------------------------------------------------------------------


def test_dot_free_monoid(fm_a):
    dot = to_dot(fm_a)
    assert dot.count("->") == 1
    assert '"q0" -> "q0" [label="a|a"]' in dot
    assert "doublecircle" in dot


def test_dot_nodes_only():
    a = Afsa(frozenset({"p", "q"}), "p", frozenset(), frozenset("a"), frozenset())
    dot = to_dot(a)
    assert "->" not in dot
    assert dot.count("shape=") == 2


def test_dot_cayley_c2(c2_afsa):
    dot = to_dot(c2_afsa)
    assert dot.count("shape=") == 9
    assert dot.count("->") == len(c2_afsa.transitions) == 18
    assert '[label="-|g"]' in dot
