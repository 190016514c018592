"""Concrete models of the semigroups that show up around monogenic inverse semigroups.

Contents:

* :class:`FiniteSemigroup` -- a multiplication table over indexed elements.
* :class:`BicyclicElement` -- normal forms ``c^i b^j`` of Mon<b, c | bc = 1>.
* :class:`FreeInverseTriple` -- the interval model of the free monogenic
  inverse semigroup: a walk on the integers summarised by its leftmost
  reach ``-l``, rightmost reach ``n`` and endpoint ``m``.
* :class:`PartialInjection` -- partial bijections of ``{1..ground}``
  (finite links, cycles and their strongly disjoint unions).
* :class:`ShiftInjection` -- the maps ``i -> i + d`` on ``{i >= t}``, used
  for forward and backward links on the naturals.

Composition is always written left to right: ``compose(f, g)`` applies ``f``
first and then ``g``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Sequence, Union

from .errors import CapExceeded, InputError, ParseError

__all__ = [
    "FiniteSemigroup",
    "BicyclicElement",
    "FreeInverseTriple",
    "PartialInjection",
    "ShiftInjection",
    "MonogenicTypeParams",
    "FWD",
    "EMPTY_SHIFT",
    "GENERATOR",
    "GENERATOR_INVERSE",
    "triple",
    "fi_mul",
    "fi_inverse",
    "fi_eval",
    "fi_eval_walk",
    "bicyclic_mul",
    "bicyclic_eval",
    "bicyclic_eval_rewrite",
    "pinj_compose",
    "pinj_invert",
    "pinj_power",
    "link",
    "cycle",
    "empty_injection",
    "strongly_disjoint_union",
    "shift_compose",
    "forward_link",
    "backward_link",
    "inverse_closure",
    "index_period",
    "make_type",
]


# ---------------------------------------------------------------------------
# Finite semigroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup given by its Cayley table.

    ``table[a][b]`` is the index of the product of elements ``a`` and ``b``.
    ``labels`` are display names for the elements; they default to the
    indices themselves. Associativity is checked on construction.
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        size = len(self.table)
        if size == 0:
            raise InputError("a semigroup needs at least one element")
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(k) for k in range(size)))
        if len(self.labels) != size or len(set(self.labels)) != size:
            raise InputError("labels must be distinct, one per element")
        for row in table:
            if len(row) != size or any(not 0 <= v < size for v in row):
                raise InputError("Cayley table must be square with entries in range")
        bad = self.associativity_failure()
        if bad is not None:
            raise InputError(f"table is not associative at {bad}")

    @classmethod
    def from_elements(
        cls,
        elements: Sequence[Hashable],
        mul: Callable,
        labels: Sequence[str] | None = None,
    ) -> "FiniteSemigroup":
        index = {e: k for k, e in enumerate(elements)}
        try:
            table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
        except KeyError as exc:
            raise InputError("elements are not closed under multiplication") from exc
        if labels is None:
            labels = [str(k) for k in range(len(elements))]
        return cls(table, tuple(labels))

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown element {label!r}") from None

    def associativity_failure(self):
        t = self.table
        n = len(t)
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                return (a, b, c)
        return None


# ---------------------------------------------------------------------------
# Bicyclic monoid
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class BicyclicElement:
    """The normal form ``c^i b^j``."""

    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise InputError(f"bicyclic exponents must be nonnegative, got ({self.i}, {self.j})")

    def __mul__(self, other: "BicyclicElement") -> "BicyclicElement":
        return bicyclic_mul(self, other)

    def __str__(self):
        return f"c^{self.i} b^{self.j}"

    @classmethod
    def parse(cls, text: str) -> "BicyclicElement":
        m = re.fullmatch(r"\s*c\^(\d+)\s+b\^(\d+)\s*", text)
        if not m:
            raise ParseError(f"not a bicyclic element: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def bicyclic_mul(p: BicyclicElement, q: BicyclicElement) -> BicyclicElement:
    cancel = min(p.j, q.i)
    return BicyclicElement(p.i + q.i - cancel, p.j + q.j - cancel)


_BICYCLIC_LETTERS = {"b": BicyclicElement(0, 1), "c": BicyclicElement(1, 0)}


def bicyclic_eval(word: str) -> BicyclicElement:
    """Fold :func:`bicyclic_mul` over the letters of a word in ``{b, c}``."""
    acc = BicyclicElement()
    for letter in word:
        try:
            acc = bicyclic_mul(acc, _BICYCLIC_LETTERS[letter])
        except KeyError:
            raise InputError(f"bicyclic words use only 'b' and 'c', got {letter!r}") from None
    return acc


def bicyclic_eval_rewrite(word: str) -> BicyclicElement:
    """Normal form by deleting ``bc`` factors until none is left."""
    if set(word) - {"b", "c"}:
        raise InputError(f"bicyclic words use only 'b' and 'c', got {word!r}")
    while "bc" in word:
        word = word.replace("bc", "")
    # what remains has no b before a c
    i = word.count("c")
    return BicyclicElement(i, len(word) - i)


# ---------------------------------------------------------------------------
# Free monogenic inverse semigroup
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FreeInverseTriple:
    """Element ``(-l, n, m)`` of the free monogenic inverse semigroup.

    Stored with ``l >= 0``; the printed form shows the leftmost reach ``-l``.
    """

    l: int
    n: int
    m: int

    def __post_init__(self):
        if self.l < 0 or self.n < 0 or not self.n + self.l > 0 or not -self.l <= self.m <= self.n:
            raise InputError(f"invalid triple (-{self.l},{self.n},{self.m})")

    @property
    def left(self) -> int:
        return -self.l

    def __mul__(self, other: "FreeInverseTriple") -> "FreeInverseTriple":
        return fi_mul(self, other)

    def __str__(self):
        return f"({-self.l},{self.n},{self.m})"

    def as_coords(self) -> tuple[int, int, int]:
        return (-self.l, self.n, self.m)

    @property
    def is_idempotent(self) -> bool:
        return self.m == 0

    @classmethod
    def parse(cls, text: str) -> "FreeInverseTriple":
        m = re.fullmatch(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*", text)
        if not m:
            raise ParseError(f"not a triple: {text!r}")
        return triple(*(int(g) for g in m.groups()))


def triple(left: int, n: int, m: int) -> FreeInverseTriple:
    """Build a triple from its printed coordinates ``(left, n, m)`` with ``left <= 0``."""
    if left > 0:
        raise InputError(f"left coordinate must be <= 0, got {left}")
    return FreeInverseTriple(-left, n, m)


GENERATOR = FreeInverseTriple(0, 1, 1)
GENERATOR_INVERSE = FreeInverseTriple(1, 0, -1)


def fi_mul(x: FreeInverseTriple, y: FreeInverseTriple) -> FreeInverseTriple:
    # second walk starts where the first ended: shift its reach by x.m
    return FreeInverseTriple(max(x.l, y.l - x.m), max(x.n, x.m + y.n), x.m + y.m)


def fi_inverse(x: FreeInverseTriple) -> FreeInverseTriple:
    return FreeInverseTriple(x.l + x.m, x.n - x.m, -x.m)


_FI_LETTERS = {"x": GENERATOR, "X": GENERATOR_INVERSE}


def _check_fi_word(word: str) -> None:
    if not word:
        raise InputError("free inverse words must be non-empty")
    if set(word) - {"x", "X"}:
        raise InputError(f"free inverse words use only 'x' and 'X', got {word!r}")


def fi_eval(word: str) -> FreeInverseTriple:
    """Left fold of :func:`fi_mul` over a word in ``x`` and ``X`` (``X`` is ``x^-1``)."""
    _check_fi_word(word)
    acc = _FI_LETTERS[word[0]]
    for letter in word[1:]:
        acc = fi_mul(acc, _FI_LETTERS[letter])
    return acc


def fi_eval_walk(word: str) -> FreeInverseTriple:
    """Evaluate a word as a walk on the integers: (min prefix sum, max prefix sum, final sum).

    Shares no code with :func:`fi_mul`, so the two can check each other.
    """
    _check_fi_word(word)
    pos = lo = hi = 0
    for letter in word:
        pos += 1 if letter == "x" else -1
        lo = min(lo, pos)
        hi = max(hi, pos)
    return FreeInverseTriple(-lo, hi, pos)


# ---------------------------------------------------------------------------
# Partial injections on a finite ground set
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PartialInjection:
    """An injective partial map on ``{1, ..., ground}``.

    ``pairs`` holds the arrows ``(i, j)`` sorted by source; equality is
    extensional equality of the map together with the ground size.
    """

    ground: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted((int(a), int(b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        if self.ground < 0:
            raise InputError("ground size must be nonnegative")
        sources = [a for a, _ in pairs]
        targets = [b for _, b in pairs]
        if len(set(sources)) != len(sources):
            raise InputError("partial injection has a repeated source")
        if len(set(targets)) != len(targets):
            raise InputError("partial injection is not injective")
        if any(not 1 <= p <= self.ground for p in sources + targets):
            raise InputError(f"points must lie in 1..{self.ground}")

    @classmethod
    def from_mapping(cls, ground: int, mapping: dict[int, int]) -> "PartialInjection":
        return cls(ground, tuple(mapping.items()))

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def __call__(self, point: int) -> int | None:
        return self.mapping.get(point)

    def __mul__(self, other: "PartialInjection") -> "PartialInjection":
        return pinj_compose(self, other)

    def __str__(self):
        arrows = ", ".join(f"{a}->{b}" for a, b in self.pairs)
        return f"{self.ground}; {arrows}" if arrows else f"{self.ground};"

    @classmethod
    def parse(cls, text: str) -> "PartialInjection":
        head, sep, rest = text.partition(";")
        if not sep:
            raise ParseError(f"expected 'ground; i->j, ...', got {text!r}")
        try:
            ground = int(head)
        except ValueError:
            raise ParseError(f"bad ground size {head.strip()!r}") from None
        pairs = []
        for arrow in filter(None, (a.strip() for a in rest.split(","))):
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", arrow)
            if not m:
                raise ParseError(f"bad arrow {arrow!r}")
            pairs.append((int(m.group(1)), int(m.group(2))))
        return cls(ground, tuple(pairs))


def pinj_compose(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    """Apply ``f`` then ``g``."""
    if f.ground != g.ground:
        raise InputError(f"ground sizes differ: {f.ground} vs {g.ground}")
    gm = g.mapping
    return PartialInjection(f.ground, tuple((a, gm[b]) for a, b in f.pairs if b in gm))


def pinj_invert(f: PartialInjection) -> PartialInjection:
    return PartialInjection(f.ground, tuple((b, a) for a, b in f.pairs))


def pinj_power(f: PartialInjection, k: int) -> PartialInjection:
    if k < 1:
        raise InputError("powers start at 1 in a semigroup")
    acc = f
    for _ in range(k - 1):
        acc = pinj_compose(acc, f)
    return acc


def empty_injection(ground: int) -> PartialInjection:
    return PartialInjection(ground)


def link(r: int) -> PartialInjection:
    """Finite link of length ``r``: ``1 -> 2 -> ... -> r`` on ``r`` points."""
    if r < 1:
        raise InputError("a finite link needs at least one point")
    return PartialInjection(r, tuple((i, i + 1) for i in range(1, r)))


def cycle(s: int) -> PartialInjection:
    """The permutation ``1 -> 2 -> ... -> s -> 1`` of order ``s``."""
    if s < 1:
        raise InputError("a cycle needs at least one point")
    return PartialInjection(s, tuple((i, i % s + 1) for i in range(1, s + 1)))


def strongly_disjoint_union(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    """Place ``g`` on fresh points after ``f``'s ground set and take the union."""
    shift = f.ground
    moved = tuple((a + shift, b + shift) for a, b in g.pairs)
    return PartialInjection(f.ground + g.ground, f.pairs + moved)


# ---------------------------------------------------------------------------
# Shift maps on the naturals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ShiftInjection:
    """The map ``i -> i + d`` on ``{i >= t}`` (points are ``1, 2, ...``).

    ``EMPTY_SHIFT`` (``t = d = 0``) stands for the empty map.
    """

    t: int
    d: int

    def __post_init__(self):
        if (self.t, self.d) == (0, 0):
            return
        if self.t < 1 or self.t + self.d < 1:
            raise InputError(f"invalid shift map (t={self.t}, d={self.d})")

    @property
    def is_empty(self) -> bool:
        return self.t == 0

    def __call__(self, point: int) -> int | None:
        if self.is_empty or point < self.t:
            return None
        return point + self.d

    def __mul__(self, other: "ShiftInjection") -> "ShiftInjection":
        return shift_compose(self, other)


EMPTY_SHIFT = ShiftInjection(0, 0)


def forward_link() -> ShiftInjection:
    return ShiftInjection(1, 1)


def backward_link() -> ShiftInjection:
    return ShiftInjection(2, -1)


def shift_compose(f: ShiftInjection, g: ShiftInjection) -> ShiftInjection:
    """Apply ``f`` then ``g``."""
    if f.is_empty or g.is_empty:
        return EMPTY_SHIFT
    return ShiftInjection(max(f.t, g.t - f.d), f.d + g.d)


# ---------------------------------------------------------------------------
# Monogenic inverse semigroups
# ---------------------------------------------------------------------------


def inverse_closure(u: PartialInjection, cap: int = 100_000) -> tuple[PartialInjection, ...]:
    """The inverse semigroup ``[u]`` generated by ``u``, sorted.

    Raises :class:`CapExceeded` (carrying the elements found so far) once more
    than ``cap`` elements turn up.
    """
    if cap < 1:
        raise InputError("cap must be at least 1")
    gens = (u, pinj_invert(u))
    seen = set()
    queue = deque()
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    # every element is a product of generators, so right multiplication by them suffices
    while queue:
        if len(seen) > cap:
            raise CapExceeded(f"closure has more than {cap} elements", tuple(sorted(seen)))
        elem = queue.popleft()
        for g in gens:
            prod = pinj_compose(elem, g)
            if prod not in seen:
                seen.add(prod)
                queue.append(prod)
    if len(seen) > cap:
        raise CapExceeded(f"closure has more than {cap} elements", tuple(sorted(seen)))
    return tuple(sorted(seen))


def index_period(u: PartialInjection) -> tuple[int, int]:
    """Least ``r, s >= 1`` with ``u^r == u^(r+s)``."""
    first_seen = {}
    power, k = u, 1
    while power not in first_seen:
        first_seen[power] = k
        power, k = pinj_compose(power, u), k + 1
    r = first_seen[power]
    return r, k - r


FWD = "Fwd"


@dataclass(frozen=True)
class MonogenicTypeParams:
    """Isomorphism type ``(r, s)`` of a monogenic inverse semigroup; ``s`` may be ``FWD``."""

    r: int
    s: Union[int, str]

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise InputError(f"r must be a nonnegative integer, got {self.r!r}")
        if self.s != FWD and (not isinstance(self.s, int) or self.s < 1):
            raise InputError(f"s must be a positive integer or {FWD!r}, got {self.s!r}")

    def __str__(self):
        return f"({self.r},{self.s})"


def make_type(params: MonogenicTypeParams | tuple, truncation: int = 1) -> PartialInjection:
    """Canonical generator for a Preston type.

    ``(r, s)`` gives a link of length ``r`` beside an ``s``-cycle (just the cycle
    when ``r == 0``). ``(r, Fwd)`` replaces the forward link by a finite link
    with ``truncation`` points. A product of ``k`` factors acts on the points
    ``p <= truncation - k`` exactly as the infinite forward link does.
    """
    if not isinstance(params, MonogenicTypeParams):
        params = MonogenicTypeParams(*params)
    r, s = params.r, params.s
    if s == FWD:
        if truncation < 1:
            raise InputError("truncation must be at least 1")
        tail = link(truncation)
        return tail if r == 0 else strongly_disjoint_union(link(r), tail)
    return cycle(s) if r == 0 else strongly_disjoint_union(link(r), cycle(s))
