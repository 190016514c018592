"""Two-tape asynchronous finite automata.

An automaton reads a pair of words. Each transition consumes at most one
symbol from each tape; the empty label ``EPS`` consumes nothing. A pair is
accepted when some run ends in a final state with both tapes read.

Symbols are single characters and words are plain strings, so ``EPS`` is
the empty string and appending a label to a word "just works".
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import InputError, ParseError

__all__ = [
    "EPS",
    "Transition",
    "WordPair",
    "Configuration",
    "Afsa",
    "Run",
    "LoopDecomposition",
    "accepts",
    "find_accepting_run",
    "enumerate_accepted",
    "find_loop",
    "pump",
    "pair_key",
    "words_up_to",
    "parse_afsa",
    "serialize_afsa",
    "to_dot",
]

EPS = ""
EPS_TOKEN = "-"


class Transition(NamedTuple):
    source: str
    read1: str
    read2: str
    target: str

    def __str__(self):
        return f"{self.source} {self.read1 or EPS_TOKEN} {self.read2 or EPS_TOKEN} {self.target}"


class WordPair(NamedTuple):
    first: str
    second: str


class Configuration(NamedTuple):
    state: str
    pos1: int
    pos2: int


def pair_key(pair: WordPair):
    """Canonical order on word pairs: by lengths, then lexicographically."""
    return (len(pair[0]), len(pair[1]), pair[0], pair[1])


def words_up_to(alphabet: Iterable[str], max_len: int, min_len: int = 0):
    """All words over ``alphabet`` with lengths in ``[min_len, max_len]``, shortest first."""
    symbols = sorted(alphabet)
    layer = [""]
    for length in range(max_len + 1):
        if length >= min_len:
            yield from layer
        layer = [w + a for w in layer for a in symbols]


@dataclass(frozen=True)
class Afsa:
    states: frozenset
    start: str
    finals: frozenset
    alphabet: frozenset
    transitions: frozenset

    def __post_init__(self):
        for name in ("states", "finals", "alphabet"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(
            self, "transitions", frozenset(Transition(*t) for t in self.transitions)
        )
        if self.start not in self.states:
            raise InputError(f"start state {self.start!r} is not a state")
        if not self.finals <= self.states:
            raise InputError(f"final states {sorted(self.finals - self.states)} are not states")
        for a in self.alphabet:
            if len(a) != 1 or a == EPS_TOKEN or a.isspace():
                raise InputError(f"symbols must be single non-blank characters other than '-', got {a!r}")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise InputError(f"transition {t} uses an unknown state")
            for label in (t.read1, t.read2):
                if label != EPS and label not in self.alphabet:
                    raise InputError(f"transition {t} uses symbol {label!r} outside the alphabet")

    @cached_property
    def outgoing(self) -> dict[str, tuple[Transition, ...]]:
        table = {q: [] for q in self.states}
        for t in sorted(self.transitions):
            table[t.source].append(t)
        return {q: tuple(ts) for q, ts in table.items()}

    def check_pair(self, pair: WordPair) -> WordPair:
        pair = WordPair(*pair)
        stray = (set(pair.first) | set(pair.second)) - self.alphabet
        if stray:
            raise InputError(f"symbols {sorted(stray)} are not in the alphabet")
        return pair


@dataclass(frozen=True)
class Run:
    input: WordPair
    steps: tuple[Transition, ...]
    configs: tuple[Configuration, ...]

    def is_accepting(self, afsa: Afsa) -> bool:
        last = self.configs[-1]
        return (
            last.state in afsa.finals
            and last.pos1 == len(self.input.first)
            and last.pos2 == len(self.input.second)
        )

    def is_valid(self, afsa: Afsa) -> bool:
        u, v = self.input
        if len(self.configs) != len(self.steps) + 1:
            return False
        if self.configs[0] != Configuration(afsa.start, 0, 0):
            return False
        for t, here, there in zip(self.steps, self.configs, self.configs[1:]):
            if t not in afsa.transitions or t.source != here.state:
                return False
            if _advance(t, here, u, v) != there:
                return False
        return True


@dataclass(frozen=True)
class LoopDecomposition:
    """A segment ``configs[loop_start:loop_end + 1]`` of a run that returns to its state."""

    run: Run
    loop_start: int
    loop_end: int

    @property
    def consumed1(self) -> int:
        return self.run.configs[self.loop_end].pos1 - self.run.configs[self.loop_start].pos1

    @property
    def consumed2(self) -> int:
        return self.run.configs[self.loop_end].pos2 - self.run.configs[self.loop_start].pos2


def _advance(t: Transition, config: Configuration, u: str, v: str) -> Configuration | None:
    _, p1, p2 = config
    if t.read1:
        if p1 >= len(u) or u[p1] != t.read1:
            return None
        p1 += 1
    if t.read2:
        if p2 >= len(v) or v[p2] != t.read2:
            return None
        p2 += 1
    return Configuration(t.target, p1, p2)


def find_accepting_run(afsa: Afsa, pair: WordPair) -> Run | None:
    """An accepting run on ``pair``, or ``None``.

    Depth-first search over configurations with transitions tried in sorted
    order; each configuration is visited once, so epsilon cycles are harmless
    and the result is reproducible.
    """
    pair = afsa.check_pair(pair)
    u, v = pair
    outgoing = afsa.outgoing
    finals = afsa.finals
    start = Configuration(afsa.start, 0, 0)
    parent = {start: None}
    stack = [start]
    goal = None
    while stack:
        config = stack.pop()
        if config.pos1 == len(u) and config.pos2 == len(v) and config.state in finals:
            goal = config
            break
        succ = []
        for t in outgoing[config.state]:
            nxt = _advance(t, config, u, v)
            if nxt is not None and nxt not in parent:
                parent[nxt] = (config, t)
                succ.append(nxt)
        stack.extend(reversed(succ))
    if goal is None:
        return None
    steps, configs = [], [goal]
    link = parent[goal]
    while link is not None:
        prev, t = link
        steps.append(t)
        configs.append(prev)
        link = parent[prev]
    return Run(pair, tuple(reversed(steps)), tuple(reversed(configs)))


def accepts(afsa: Afsa, pair: WordPair) -> bool:
    return find_accepting_run(afsa, pair) is not None


def enumerate_accepted(afsa: Afsa, max_len: int) -> list[WordPair]:
    if max_len < 0:
        raise InputError("max_len must be nonnegative")
    words = list(words_up_to(afsa.alphabet, max_len))
    found = [WordPair(u, v) for u in words for v in words if accepts(afsa, (u, v))]
    return sorted(found, key=pair_key)


def find_loop(run: Run, window1: tuple[int, int]) -> LoopDecomposition | None:
    """Earliest state repeat among first visits to the tape-1 positions in ``window1``.

    ``window1 = (lo, hi)`` is inclusive. Only the first configuration reaching
    each position is a candidate, so any loop found reads at least one tape-1
    symbol.
    """
    lo, hi = window1
    if not 0 <= lo <= hi <= len(run.input.first):
        raise InputError(f"window {window1} is not inside [0, {len(run.input.first)}]")
    first_visit = {}
    for k, config in enumerate(run.configs):
        if lo <= config.pos1 <= hi and config.pos1 not in first_visit:
            first_visit[config.pos1] = k
    seen = {}
    for pos in sorted(first_visit):
        k = first_visit[pos]
        state = run.configs[k].state
        if state in seen:
            return LoopDecomposition(run, seen[state], k)
        seen[state] = k
    return None


def pump(decomp: LoopDecomposition, k: int) -> WordPair:
    """The input read when the loop is traversed ``k`` times instead of once."""
    if k < 0:
        raise InputError("k must be nonnegative")
    run = decomp.run
    a = run.configs[decomp.loop_start]
    b = run.configs[decomp.loop_end]
    u, v = run.input
    return WordPair(
        u[: a.pos1] + u[a.pos1 : b.pos1] * k + u[b.pos1 :],
        v[: a.pos2] + v[a.pos2 : b.pos2] * k + v[b.pos2 :],
    )


# ---------------------------------------------------------------------------
# Text format and DOT export
# ---------------------------------------------------------------------------


def serialize_afsa(afsa: Afsa) -> str:
    lines = [
        "alphabet: " + " ".join(sorted(afsa.alphabet)),
        "states: " + " ".join(sorted(afsa.states)),
        f"start: {afsa.start}",
        "final: " + " ".join(sorted(afsa.finals)),
    ]
    lines += [f"trans: {t}" for t in sorted(afsa.transitions)]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_afsa(text: str) -> Afsa:
    fields = {}
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        tokens = rest.split()
        if key == "trans":
            if len(tokens) != 4:
                raise ParseError("a transition needs source, two labels and target", lineno)
            src, a, b, dst = tokens
            transitions.append((lineno, Transition(src, "" if a == EPS_TOKEN else a, "" if b == EPS_TOKEN else b, dst)))
        elif key in ("alphabet", "states", "start", "final"):
            if key in fields:
                raise ParseError(f"duplicate '{key}' line", lineno)
            fields[key] = (lineno, tokens)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)

    for key in ("alphabet", "states"):
        if key not in fields:
            raise ParseError(f"missing '{key}' line")
    if "start" not in fields:
        raise ParseError("missing 'start' line")

    alphabet = fields["alphabet"][1]
    for sym in alphabet:
        if len(sym) != 1 or sym == EPS_TOKEN:
            raise ParseError(f"symbol {sym!r} must be one character other than '-'", fields["alphabet"][0])
    states = set(fields["states"][1])
    start_line, start = fields["start"]
    if len(start) != 1:
        raise ParseError("exactly one start state expected", start_line)
    if start[0] not in states:
        raise ParseError(f"unknown state {start[0]!r}", start_line)
    final_line, finals = fields.get("final", (None, []))
    for q in finals:
        if q not in states:
            raise ParseError(f"unknown state {q!r}", final_line)
    for lineno, t in transitions:
        for q in (t.source, t.target):
            if q not in states:
                raise ParseError(f"unknown state {q!r}", lineno)
        for label in (t.read1, t.read2):
            if label and label not in alphabet:
                raise ParseError(f"unknown symbol {label!r}", lineno)
    return Afsa(
        states=frozenset(states),
        start=start[0],
        finals=frozenset(finals),
        alphabet=frozenset(alphabet),
        transitions=frozenset(t for _, t in transitions),
    )


def to_dot(afsa: Afsa, name: str = "afsa") -> str:
    def quote(s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {quote(name)} {{", "  rankdir=LR;"]
    for q in sorted(afsa.states):
        attrs = ["shape=doublecircle" if q in afsa.finals else "shape=circle"]
        if q == afsa.start:
            attrs.append("style=bold")
        lines.append(f"  {quote(q)} [{', '.join(attrs)}];")
    for t in sorted(afsa.transitions):
        label = f"{t.read1 or EPS_TOKEN}|{t.read2 or EPS_TOKEN}"
        lines.append(f"  {quote(t.source)} -> {quote(t.target)} [label={quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
