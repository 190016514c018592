"""Refute any two-tape automaton claimed to recognise the word problem of the
free monogenic inverse semigroup over ``{x, X}``.

Given a candidate with ``q`` states, take ``n = q + 1`` and the valid pair
``(x^n X^n x^n, x^n)``. Either the candidate rejects it, or an accepting run
revisits a state while reading the ``X`` block; pumping that loop once gives
``(x^n X^(n+i) x^n, x^(n+j))`` with ``i >= 1``. The left word evaluates to
``(-i, n, n-i)``, which never equals a positive power of ``x``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

from .afsa import EPS, Afsa, Transition, WordPair, accepts, find_accepting_run, find_loop, pump
from .algebra import FreeInverseTriple, fi_eval, fi_eval_walk
from .errors import InconclusiveError, InputError, ParseError

__all__ = [
    "REJECTED_VALID_PAIR",
    "ACCEPTED_INVALID_PAIR",
    "FI_ALPHABET",
    "RefutationWitness",
    "fi_valid_pair",
    "refute_fi_recognizer",
    "verify_witness",
    "universal_afsa",
    "random_afsa",
]

REJECTED_VALID_PAIR = "RejectedValidPair"
ACCEPTED_INVALID_PAIR = "AcceptedInvalidPair"
FI_ALPHABET = frozenset("xX")


@dataclass(frozen=True)
class RefutationWitness:
    kind: str
    pair: WordPair
    n: int
    lhs: FreeInverseTriple
    rhs: FreeInverseTriple
    i: Optional[int] = None
    j: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "u": self.pair.first,
            "v": self.pair.second,
            "n": self.n,
            "i": self.i,
            "j": self.j,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }

    def dumps(self) -> str:
        """Key-value text form, one ``key: value`` per line."""
        d = self.to_dict()
        return "".join(f"{k}: {'-' if d[k] is None else d[k]}\n" for k in ("kind", "u", "v", "n", "i", "j", "lhs", "rhs"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "RefutationWitness":
        d = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ParseError(f"expected 'key: value', got {line!r}", lineno)
            d[key.strip()] = value.strip()
        missing = {"kind", "u", "v", "n", "i", "j", "lhs", "rhs"} - set(d)
        if missing:
            raise ParseError(f"witness is missing {sorted(missing)}")

        def opt_int(s):
            return None if s == "-" else int(s)

        try:
            return cls(
                kind=d["kind"],
                pair=WordPair(d["u"], d["v"]),
                n=int(d["n"]),
                i=opt_int(d["i"]),
                j=opt_int(d["j"]),
                lhs=FreeInverseTriple.parse(d["lhs"]),
                rhs=FreeInverseTriple.parse(d["rhs"]),
            )
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def fi_valid_pair(n: int) -> WordPair:
    """``(x^n X^n x^n, x^n)``: both sides are ``(0, n, n)``."""
    if n < 1:
        raise InputError("n must be at least 1")
    pair = WordPair("x" * n + "X" * n + "x" * n, "x" * n)
    assert fi_eval(pair.first) == fi_eval(pair.second) == FreeInverseTriple(0, n, n)
    return pair


def refute_fi_recognizer(afsa: Afsa, n: int | None = None) -> RefutationWitness:
    if afsa.alphabet != FI_ALPHABET:
        raise InputError(f"expected alphabet {{x, X}}, got {sorted(afsa.alphabet)}")
    pigeonhole = n is None or n > len(afsa.states)
    if n is None:
        n = len(afsa.states) + 1
    valid = fi_valid_pair(n)
    run = find_accepting_run(afsa, valid)
    if run is None:
        value = fi_eval(valid.first)
        return RefutationWitness(REJECTED_VALID_PAIR, valid, n, value, value)

    # first visits to tape-1 positions n..2n all lie inside the X block
    loop = find_loop(run, (n, 2 * n))
    if loop is None:
        if pigeonhole:
            raise RuntimeError(f"no repeated state among {n + 1} first visits with {len(afsa.states)} states")
        raise InconclusiveError(f"n={n} does not exceed the {len(afsa.states)} states and no loop was found")

    i, j = loop.consumed1, loop.consumed2
    pumped = pump(loop, 2)
    if pumped != WordPair("x" * n + "X" * (n + i) + "x" * n, "x" * (n + j)):
        raise RuntimeError(f"pumped pair {pumped} has an unexpected shape")
    if not accepts(afsa, pumped):
        raise RuntimeError("pumped pair was rejected; pumping is unsound")
    lhs, rhs = fi_eval(pumped.first), fi_eval(pumped.second)
    if lhs == rhs:
        raise RuntimeError(f"pumped sides agree at {lhs}")
    return RefutationWitness(ACCEPTED_INVALID_PAIR, pumped, n, lhs, rhs, i, j)


def verify_witness(afsa: Afsa, w: RefutationWitness) -> bool:
    """Re-check a witness from scratch, evaluating words by the walk oracle only."""
    u, v = w.pair
    if not u or not v or (set(u) | set(v)) - FI_ALPHABET or afsa.alphabet != FI_ALPHABET:
        return False
    lhs, rhs = fi_eval_walk(u), fi_eval_walk(v)
    if (lhs, rhs) != (w.lhs, w.rhs):
        return False
    if w.kind == REJECTED_VALID_PAIR:
        return lhs == rhs and not accepts(afsa, w.pair)
    if w.kind == ACCEPTED_INVALID_PAIR:
        return lhs != rhs and accepts(afsa, w.pair)
    return False


# ---------------------------------------------------------------------------
# Candidate automata
# ---------------------------------------------------------------------------


def universal_afsa(alphabet=FI_ALPHABET) -> Afsa:
    """One final state that reads anything from either tape."""
    ts = [Transition("q", a, EPS, "q") for a in alphabet] + [Transition("q", EPS, a, "q") for a in alphabet]
    return Afsa(frozenset({"q"}), "q", frozenset({"q"}), frozenset(alphabet), frozenset(ts))


def random_afsa(rng: random.Random, max_states: int = 4, alphabet=FI_ALPHABET, density: float = 0.3) -> Afsa:
    """A random candidate; every label pair is kept with probability ``density``."""
    k = rng.randint(1, max_states)
    states = [f"q{m}" for m in range(k)]
    labels = [EPS, *sorted(alphabet)]
    ts = [
        Transition(p, a, b, q)
        for p in states
        for a in labels
        for b in labels
        for q in states
        if rng.random() < density
    ]
    finals = [q for q in states if rng.random() < 0.5] or [rng.choice(states)]
    return Afsa(frozenset(states), states[0], frozenset(finals), frozenset(alphabet), frozenset(ts))
