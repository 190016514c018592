"""Rational word problems: two-tape automata, monogenic inverse semigroup
models, and a refuter for automata claiming to recognise the word problem of
the free monogenic inverse semigroup."""

from .errors import CapExceeded, InconclusiveError, InputError, ParseError

__version__ = "0.1.0"

__all__ = ["CapExceeded", "InconclusiveError", "InputError", "ParseError"]
