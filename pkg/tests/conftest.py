import random

import pytest

from ratwp.afsa import EPS, Afsa, Configuration, Transition
from ratwp.algebra import link, make_type
from ratwp.refuter import random_afsa, universal_afsa
from ratwp.wordproblem import (
    cayley_afsa,
    closure_model,
    cyclic_group,
    free_monoid_afsa,
    left_zero,
)


def reachable_by_layers(afsa, pair):
    """Oracle for acceptance: the set of configurations reachable in at most
    ``bound`` steps, grown one step at a time with no search order at all."""
    u, v = pair
    bound = len(afsa.states) * (len(u) + 1) * (len(v) + 1)
    layer = {Configuration(afsa.start, 0, 0)}
    seen = set(layer)
    for _ in range(bound):
        nxt = set()
        for q, p1, p2 in layer:
            for t in afsa.transitions:
                if t.source != q:
                    continue
                if t.read1 != EPS and (p1 >= len(u) or u[p1] != t.read1):
                    continue
                if t.read2 != EPS and (p2 >= len(v) or v[p2] != t.read2):
                    continue
                nxt.add(Configuration(t.target, p1 + bool(t.read1), p2 + bool(t.read2)))
        layer = nxt - seen
        if not layer:
            break
        seen |= layer
    return seen


def oracle_accepts(afsa, pair):
    u, v = pair
    return any(c.state in afsa.finals and c.pos1 == len(u) and c.pos2 == len(v) for c in reachable_by_layers(afsa, pair))


def a_then_b_afsa():
    """q0 final; reads a's from tape 1 and b's from tape 2 in any interleaving."""
    return Afsa(
        frozenset({"q0"}),
        "q0",
        frozenset({"q0"}),
        frozenset("ab"),
        frozenset({Transition("q0", "a", EPS, "q0"), Transition("q0", EPS, "b", "q0")}),
    )


@pytest.fixture
def fm_ab():
    return free_monoid_afsa("ab")


@pytest.fixture
def fm_a():
    return free_monoid_afsa("a")


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def c2_afsa(c2):
    return cayley_afsa(c2)


def finite_suite():
    return {
        "C2": cyclic_group(2),
        "C3": cyclic_group(3),
        "closure(link(2))": closure_model(link(2)),
        "left-zero": left_zero(2),
    }


def refuter_suite(seed=20240601, n_random=50):
    """Candidate recognisers for the free inverse word problem, by name."""
    from ratwp.wordproblem import free_monoid_afsa as diag

    suite = {"diagonal": diag("xX"), "universal": universal_afsa()}
    for r in range(0, 6):
        for s in range(1, 7 - r):
            suite[f"cayley({r},{s})"] = cayley_afsa(closure_model(make_type((r, s))))
    rng = random.Random(seed)
    for k in range(n_random):
        suite[f"random-{k}"] = random_afsa(rng, max_states=4)
    return suite
