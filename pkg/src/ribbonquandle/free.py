"""The free quandle on a set of generator symbols.

An element is a class of pairs ``(a, w)`` with ``a`` a generator and ``w`` a
word in the free group, where ``(a, w) ~ (a, a^k w)``.  The stored
representative has ``w`` freely reduced and not starting with ``a`` or
``a'``, so equality of elements is equality of the stored pairs.

Text syntax: ``a`` or ``a ^ w1 w2' ...`` where an apostrophe marks an
inverse letter, e.g. ``x ^ y z'`` is ``(x, y z⁻¹)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError, UnboundGeneratorError
from .quandle import FiniteQuandle

Letter = tuple[str, int]
Word = tuple[Letter, ...]

SYMBOL_RE = re.compile(r"[A-Za-z0-9_]+")


def check_symbol(name: str) -> str:
    if not isinstance(name, str) or not SYMBOL_RE.fullmatch(name):
        raise DomainError(f"invalid generator symbol {name!r}")
    return name


def reduce_word(letters: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise DomainError(f"letter exponent must be ±1, got {e!r}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def word_symbols(word: Sequence[Letter]) -> set[str]:
    return {g for g, _ in word}


def format_word(word: Sequence[Letter]) -> str:
    return " ".join(g if e == 1 else g + "'" for g, e in word)


def parse_word(text: str) -> Word:
    letters = []
    for tok in text.split():
        inv = tok.endswith("'")
        name = tok[:-1] if inv else tok
        if not SYMBOL_RE.fullmatch(name):
            raise ParseError(f"bad word letter {tok!r}")
        letters.append((name, -1 if inv else 1))
    return reduce_word(letters)


@dataclass(frozen=True, order=True)
class FreeQuandleElement:
    base: str
    word: Word = ()

    def __post_init__(self):
        check_symbol(self.base)
        w = reduce_word(self.word)
        i = 0
        while i < len(w) and w[i][0] == self.base:
            i += 1
        object.__setattr__(self, "word", w[i:])

    def symbols(self) -> set[str]:
        return {self.base} | word_symbols(self.word)

    def is_generator(self) -> bool:
        return not self.word

    def __rshift__(self, other):  # x >> y  is  x ▷ y
        return rack_op(self, other)

    def __lshift__(self, other):  # x << y  is  x ◁ y
        return inv_rack_op(self, other)

    def __str__(self):
        if not self.word:
            return self.base
        return f"{self.base} ^ {format_word(self.word)}"

    def __repr__(self):
        return f"FreeQuandleElement({str(self)!r})"

    def to_json(self) -> dict:
        return {"base": self.base, "word": [[g, e] for g, e in self.word]}

    @classmethod
    def from_json(cls, data) -> "FreeQuandleElement":
        if isinstance(data, str):
            return parse_element(data)
        try:
            word = [(str(g), int(e)) for g, e in data.get("word", [])]
            return normalize(data["base"], word)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad element {data!r}: {exc}") from exc


def normalize(generator: str, word: Iterable[Letter] = ()) -> FreeQuandleElement:
    """Canonical representative of the class of ``(generator, word)``."""
    return FreeQuandleElement(generator, tuple(word))


def gen(name: str) -> FreeQuandleElement:
    return FreeQuandleElement(check_symbol(name))


def rack_op(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    """``(a, w) ▷ (b, z) = (a, w z⁻¹ b z)``."""
    return normalize(x.base, x.word + invert_word(y.word) + ((y.base, 1),) + y.word)


def inv_rack_op(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    """``(a, w) ◁ (b, z) = (a, w z⁻¹ b⁻¹ z)``."""
    return normalize(x.base, x.word + invert_word(y.word) + ((y.base, -1),) + y.word)


def parse_element(text: str) -> FreeQuandleElement:
    """Parse ``a`` or ``a ^ w``; see module docstring."""
    head, sep, tail = text.partition("^")
    base = head.strip()
    if not SYMBOL_RE.fullmatch(base):
        raise ParseError(f"bad element base {base!r} in {text!r}")
    if sep and not tail.strip():
        raise ParseError(f"empty word after '^' in {text!r}")
    return normalize(base, parse_word(tail))


def act(q: FiniteQuandle, value: int, word: Sequence[Letter], assignment: Mapping[str, int]) -> int:
    op, inv = q.op, q.inv_op
    for g, e in word:
        try:
            y = assignment[g]
        except KeyError:
            raise UnboundGeneratorError(g) from None
        value = op[value][y] if e == 1 else inv[value][y]
    return value


def act_inverse(q: FiniteQuandle, value: int, word: Sequence[Letter], assignment: Mapping[str, int]) -> int:
    return act(q, value, invert_word(word), assignment)


def evaluate(x: FreeQuandleElement, assignment: Mapping[str, int], target: FiniteQuandle) -> int:
    """Image of ``x`` under the homomorphism extending ``assignment``."""
    try:
        start = assignment[x.base]
    except KeyError:
        raise UnboundGeneratorError(x.base) from None
    return act(target, start, x.word, assignment)
