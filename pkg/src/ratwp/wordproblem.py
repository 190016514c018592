"""Word problems of generated semigroups and automata that recognise them.

A :class:`GeneratedSemigroup` pairs a model (anything with a ``mul`` method
and hashable, comparable elements) with an alphabet and a map from symbols to
generators. Its word problem is the set of pairs of non-empty words that
project to the same element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import algebra
from .afsa import EPS, Afsa, Transition, WordPair, accepts, pair_key, words_up_to
from .algebra import (
    BicyclicElement,
    FiniteSemigroup,
    FreeInverseTriple,
    PartialInjection,
)
from .errors import InputError, ParseError

__all__ = [
    "FiniteModel",
    "BicyclicModel",
    "FreeMonoidModel",
    "FreeInverseModel",
    "PartialInjectionModel",
    "GeneratedSemigroup",
    "WpReport",
    "project",
    "wp_contains",
    "enumerate_wp",
    "free_monoid_afsa",
    "cayley_afsa",
    "check_afsa_against_oracle",
    "kernel_equal_up_to",
    "cyclic_group",
    "left_zero",
    "free_inverse",
    "free_monoid",
    "bicyclic",
    "injection_model",
    "closure_model",
    "parse_model",
    "inline_model",
]


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteModel:
    semigroup: FiniteSemigroup
    kind = "finite"
    finite = True

    def mul(self, a, b):
        return self.semigroup.table[a][b]

    def format(self, a) -> str:
        return self.semigroup.labels[a]


class _InfiniteModel:
    finite = False

    def format(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class BicyclicModel(_InfiniteModel):
    kind = "bicyclic"

    def mul(self, a, b):
        return algebra.bicyclic_mul(a, b)


@dataclass(frozen=True)
class FreeMonoidModel(_InfiniteModel):
    kind = "freemonoid"

    def mul(self, a, b):
        return a + b


@dataclass(frozen=True)
class FreeInverseModel(_InfiniteModel):
    kind = "freeinverse"

    def mul(self, a, b):
        return algebra.fi_mul(a, b)


@dataclass(frozen=True)
class PartialInjectionModel(_InfiniteModel):
    """Partial injections under composition; finite in truth, but not tabulated."""

    kind = "pinj"

    def mul(self, a, b):
        return algebra.pinj_compose(a, b)


@dataclass(frozen=True)
class GeneratedSemigroup:
    model: Any
    gen_map: dict = field(hash=False)

    def __post_init__(self):
        for sym in self.gen_map:
            if not isinstance(sym, str) or len(sym) != 1 or sym == "-":
                raise InputError(f"generator symbols must be single characters, got {sym!r}")
        if not self.gen_map:
            raise InputError("at least one generator is needed")

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.gen_map)

    @property
    def finite(self) -> bool:
        return self.model.finite


@dataclass
class WpReport:
    bound: int
    missed_pairs: list = field(default_factory=list)
    extra_pairs: list = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.missed_pairs and not self.extra_pairs


# ---------------------------------------------------------------------------
# Word problem
# ---------------------------------------------------------------------------


def project(gs: GeneratedSemigroup, w: str):
    if not w:
        raise InputError("words in a word problem must be non-empty")
    try:
        images = [gs.gen_map[a] for a in w]
    except KeyError as exc:
        raise InputError(f"symbol {exc.args[0]!r} is not a generator") from None
    acc = images[0]
    for g in images[1:]:
        acc = gs.model.mul(acc, g)
    return acc


def wp_contains(gs: GeneratedSemigroup, u: str, v: str) -> bool:
    return project(gs, u) == project(gs, v)


def _projections(gs: GeneratedSemigroup, max_len: int) -> dict:
    """Project every non-empty word up to ``max_len``, reusing prefixes."""
    images = {}
    for w in words_up_to(gs.alphabet, max_len, min_len=1):
        if len(w) == 1:
            images[w] = gs.gen_map[w]
        else:
            images[w] = gs.model.mul(images[w[:-1]], gs.gen_map[w[-1]])
    return images


def enumerate_wp(gs: GeneratedSemigroup, max_len: int) -> list[WordPair]:
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    images = _projections(gs, max_len)
    words = list(images)
    pairs = [WordPair(u, v) for u in words for v in words if images[u] == images[v]]
    return sorted(pairs, key=pair_key)


def check_afsa_against_oracle(afsa: Afsa, gs: GeneratedSemigroup, max_len: int) -> WpReport:
    if afsa.alphabet != gs.alphabet:
        raise InputError("automaton and semigroup use different alphabets")
    images = _projections(gs, max_len)
    report = WpReport(max_len)
    for u in images:
        for v in images:
            valid = images[u] == images[v]
            accepted = accepts(afsa, (u, v))
            if valid and not accepted:
                report.missed_pairs.append(WordPair(u, v))
            elif accepted and not valid:
                report.extra_pairs.append(WordPair(u, v))
    report.missed_pairs.sort(key=pair_key)
    report.extra_pairs.sort(key=pair_key)
    return report


def kernel_equal_up_to(gs1: GeneratedSemigroup, gs2: GeneratedSemigroup, max_len: int):
    """``None`` if the two word problems agree on all pairs up to ``max_len``,
    else the first pair (canonical order) on which they differ."""
    if gs1.alphabet != gs2.alphabet:
        raise InputError("generated semigroups use different alphabets")
    im1 = _projections(gs1, max_len)
    im2 = _projections(gs2, max_len)
    # canonical order is (len u, len v, u, v); words_up_to is already length-then-lex
    words = list(im1)
    by_len = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    for lu in sorted(by_len):
        for lv in sorted(by_len):
            for u in by_len[lu]:
                for v in by_len[lv]:
                    if (im1[u] == im1[v]) != (im2[u] == im2[v]):
                        return WordPair(u, v)
    return None


# ---------------------------------------------------------------------------
# Automata
# ---------------------------------------------------------------------------


def free_monoid_afsa(alphabet) -> Afsa:
    alphabet = frozenset(alphabet)
    if not alphabet:
        raise InputError("alphabet must be non-empty")
    return Afsa(
        states=frozenset({"q0"}),
        start="q0",
        finals=frozenset({"q0"}),
        alphabet=alphabet,
        transitions=frozenset(Transition("q0", a, a, "q0") for a in alphabet),
    )


BOTTOM = "_"


def cayley_afsa(gs: GeneratedSemigroup) -> Afsa:
    """Product of two copies of the right Cayley graph, one per tape.

    State ``"s,t"`` records the projections of the prefixes read so far
    (``_`` before anything is read); finals are the states ``"s,s"``.
    """
    if not isinstance(gs.model, FiniteModel):
        raise InputError("the Cayley automaton needs a finite (tabulated) model")
    sg = gs.model.semigroup
    names = [BOTTOM] + [str(k) for k in range(sg.size)]

    def step(s, a):
        g = gs.gen_map[a]
        return str(g) if s == BOTTOM else str(sg.table[int(s)][g])

    states = [f"{s},{t}" for s in names for t in names]
    transitions = []
    for s in names:
        for t in names:
            for a in gs.alphabet:
                transitions.append(Transition(f"{s},{t}", a, EPS, f"{step(s, a)},{t}"))
                transitions.append(Transition(f"{s},{t}", EPS, a, f"{s},{step(t, a)}"))
    return Afsa(
        states=frozenset(states),
        start=f"{BOTTOM},{BOTTOM}",
        finals=frozenset(f"{k},{k}" for k in range(sg.size)),
        alphabet=gs.alphabet,
        transitions=frozenset(transitions),
    )


# ---------------------------------------------------------------------------
# Ready-made generated semigroups
# ---------------------------------------------------------------------------


def cyclic_group(k: int, symbol: str = "g") -> GeneratedSemigroup:
    if k < 1:
        raise InputError("group order must be positive")
    table = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
    return GeneratedSemigroup(FiniteModel(FiniteSemigroup(table)), {symbol: 1 % k})


def left_zero(k: int = 2, symbols: str = "ab") -> GeneratedSemigroup:
    """``k`` elements with ``xy = x``; symbol ``symbols[i]`` maps to element ``i``."""
    table = tuple(tuple(a for _ in range(k)) for a in range(k))
    return GeneratedSemigroup(FiniteModel(FiniteSemigroup(table)), {s: i for i, s in enumerate(symbols[:k])})


def free_inverse() -> GeneratedSemigroup:
    return GeneratedSemigroup(FreeInverseModel(), {"x": algebra.GENERATOR, "X": algebra.GENERATOR_INVERSE})


def free_monoid(alphabet) -> GeneratedSemigroup:
    return GeneratedSemigroup(FreeMonoidModel(), {a: a for a in sorted(alphabet)})


def bicyclic() -> GeneratedSemigroup:
    return GeneratedSemigroup(BicyclicModel(), {"b": BicyclicElement(0, 1), "c": BicyclicElement(1, 0)})


def injection_model(u: PartialInjection) -> GeneratedSemigroup:
    """``x -> u``, ``X -> u^-1`` inside the semigroup of partial injections."""
    return GeneratedSemigroup(PartialInjectionModel(), {"x": u, "X": algebra.pinj_invert(u)})


def closure_model(u: PartialInjection, cap: int = 100_000) -> GeneratedSemigroup:
    """The inverse closure ``[u]`` tabulated as a finite semigroup, ``x -> u``, ``X -> u^-1``."""
    elements = algebra.inverse_closure(u, cap)
    sg = FiniteSemigroup.from_elements(elements, algebra.pinj_compose, [str(e) for e in elements])
    index = {e: k for k, e in enumerate(elements)}
    return GeneratedSemigroup(FiniteModel(sg), {"x": index[u], "X": index[algebra.pinj_invert(u)]})


def inline_model(name: str) -> GeneratedSemigroup:
    """Resolve names like ``freeinverse``, ``bicyclic``, ``freemonoid:a,b``, ``c2``, ``leftzero``, ``type:2,3``."""
    name = name.strip()
    if name == "freeinverse":
        return free_inverse()
    if name == "bicyclic":
        return bicyclic()
    if name == "leftzero":
        return left_zero()
    if name.startswith("freemonoid:"):
        symbols = [s.strip() for s in name.split(":", 1)[1].split(",") if s.strip()]
        return free_monoid(symbols)
    if name.startswith("type:"):
        r, _, s = name.split(":", 1)[1].partition(",")
        try:
            params = algebra.MonogenicTypeParams(int(r), int(s))
        except ValueError:
            raise InputError(f"bad type name {name!r}") from None
        return closure_model(algebra.make_type(params))
    if len(name) > 1 and name[0] == "c" and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise InputError(f"unknown inline model {name!r}")


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------


def _parse_element(kind: str, text: str, lineno: int, finite_sg=None, closure=None):
    try:
        if kind == "bicyclic":
            return BicyclicElement.parse(text)
        if kind == "freeinverse":
            return FreeInverseTriple.parse(text)
        if kind == "freemonoid":
            if not text:
                raise ParseError("free monoid generators must be non-empty words")
            return text
        if kind == "pinj":
            return PartialInjection.parse(text)
        if kind == "finite":
            if closure is not None:
                return closure[PartialInjection.parse(text)]
            return finite_sg.index_of(text)
    except KeyError:
        raise ParseError(f"{text!r} is not in the closure", lineno) from None
    except InputError as exc:
        raise ParseError(str(exc), lineno) from None
    raise ParseError(f"unknown model kind {kind!r}", lineno)


def parse_model(text: str) -> GeneratedSemigroup:
    """Read a model file.

    ::

        model: finite          # finite | bicyclic | freemonoid | freeinverse | pinj
        elements: e g          # finite only: element labels, in table order
        row: e g               # finite only: one row of the Cayley table per element
        row: g e
        gen: g -> g

    A finite model may instead give ``closure: <injection>`` to tabulate the
    inverse closure of a partial injection; its ``gen`` values are then
    injections in ``n; i->j, ...`` form.
    """
    kind = None
    labels = None
    rows = []
    closure_of = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        if key == "model":
            if kind is not None:
                raise ParseError("duplicate 'model' line", lineno)
            if rest not in ("finite", "bicyclic", "freemonoid", "freeinverse", "pinj"):
                raise ParseError(f"unknown model kind {rest!r}", lineno)
            kind = rest
        elif key == "elements":
            labels = rest.split()
        elif key == "row":
            rows.append((lineno, rest.split()))
        elif key == "closure":
            try:
                closure_of = PartialInjection.parse(rest)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
        elif key == "gen":
            sym, arrow, value = rest.partition("->")
            if not arrow:
                raise ParseError("expected 'gen: symbol -> element'", lineno)
            gens.append((lineno, sym.strip(), value.strip()))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if kind is None:
        raise ParseError("missing 'model' line")

    finite_sg = closure = None
    if kind == "finite":
        if closure_of is not None:
            elements = algebra.inverse_closure(closure_of)
            finite_sg = FiniteSemigroup.from_elements(elements, algebra.pinj_compose, [str(e) for e in elements])
            closure = {e: k for k, e in enumerate(elements)}
        else:
            if labels is None:
                raise ParseError("finite model needs an 'elements' line")
            index = {lab: k for k, lab in enumerate(labels)}
            if len(index) != len(labels):
                raise ParseError("element labels must be distinct")
            if len(rows) != len(labels):
                raise ParseError(f"expected {len(labels)} rows, got {len(rows)}")
            table = []
            for lineno, row in rows:
                if len(row) != len(labels):
                    raise ParseError(f"row has {len(row)} entries, expected {len(labels)}", lineno)
                try:
                    table.append(tuple(index[e] for e in row))
                except KeyError as exc:
                    raise ParseError(f"unknown element {exc.args[0]!r}", lineno) from None
            try:
                finite_sg = FiniteSemigroup(tuple(table), tuple(labels))
            except InputError as exc:
                raise ParseError(str(exc)) from None
        model = FiniteModel(finite_sg)
    else:
        model = {
            "bicyclic": BicyclicModel,
            "freemonoid": FreeMonoidModel,
            "freeinverse": FreeInverseModel,
            "pinj": PartialInjectionModel,
        }[kind]()

    gen_map = {}
    for lineno, sym, value in gens:
        if len(sym) != 1 or sym == "-":
            raise ParseError(f"generator symbol must be one character, got {sym!r}", lineno)
        if sym in gen_map:
            raise ParseError(f"generator {sym!r} defined twice", lineno)
        gen_map[sym] = _parse_element(kind, value, lineno, finite_sg, closure)
    if not gen_map:
        raise ParseError("no 'gen' lines")
    if kind == "pinj":
        grounds = {g.ground for g in gen_map.values()}
        if len(grounds) > 1:
            raise ParseError("generators act on different ground sets")
    return GeneratedSemigroup(model, gen_map)
