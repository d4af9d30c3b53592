"""Words in the generators x_0, x_1, x_2, ... and the canonical normal form.

The group is generated by x_0 and x_1 subject to the two commutator
relations checked in verify_defining_relations; equivalently, by all the
x_i with x_i^(x_j) = x_{i+1} whenever j < i.  Every element has a unique
normal form

    x_{i_1}^{a_1} ... x_{i_k}^{a_k} * (x_{j_1}^{b_1} ... x_{j_l}^{b_l})^-1

with ascending i's and j's and positive exponents, read directly off the
reduced tree diagram (see normal_form).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .elements import (
    Element,
    IDENTITY,
    commutator,
    conjugate,
    generator,
    invert,
    multiply,
    power,
)

MAX_EXPANDED_LETTERS = 100_000


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class GroupWord:
    """Letters (generator index, nonzero exponent), adjacent indices distinct."""

    letters: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, letters) -> "GroupWord":
        out: list[tuple[int, int]] = []
        for i, e in letters:
            if i < 0:
                raise ValueError("generator index must be nonnegative")
            if not e:
                continue
            while out and out[-1][0] == i:
                e += out.pop()[1]
            if e:
                out.append((i, e))
        return cls(tuple(out))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def times(self, other: "GroupWord") -> "GroupWord":
        return GroupWord.of(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def repeat(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse().repeat(-k)
        if abs(k) * len(self.letters) > MAX_EXPANDED_LETTERS:
            raise ValueError("expanded word would be unreasonably long")
        out = GroupWord(())
        for _ in range(k):
            out = out.times(self)
        return out

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return self.times(other)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return "*".join(
            f"x{i}" + (f"^{e}" if e != 1 else "") for i, e in self.letters
        )


_TOKEN_RE = re.compile(r"\s*(?:(x\d+)|(\d+)|(-)|(\*)|(\^)|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        start = m.start(m.lastindex)
        tok = m.group(m.lastindex)
        kind = ("gen", "int", "minus", "star", "caret", "open", "close")[
            m.lastindex - 1
        ]
        tokens.append((kind, tok, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> GroupWord:
        w = self.product()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", pos)
        return w

    def product(self) -> GroupWord:
        out = self.term()
        while True:
            kind, _, _ = self.peek()
            if kind == "star":
                self.take()
                out = out.times(self.term())
            elif kind in ("gen", "open"):
                out = out.times(self.term())
            else:
                return out

    def term(self) -> GroupWord:
        out = self.primary()
        while self.peek()[0] == "caret":
            self.take()
            kind, tok, pos = self.peek()
            if kind == "minus":
                self.take()
                kind2, tok2, pos2 = self.peek()
                if kind2 != "int":
                    raise ParseError("expected digits after '-'", pos2)
                self.take()
                out = out.repeat(-int(tok2))
            elif kind == "int":
                self.take()
                out = out.repeat(int(tok))
            elif kind == "open":
                self.take()
                by = self.product()
                self.expect("close", "expected ')'")
                out = by.inverse().times(out).times(by)  # conjugation a^(b)
            else:
                raise ParseError("expected an integer or '(' after '^'", pos)
        return out

    def primary(self) -> GroupWord:
        kind, tok, pos = self.take()
        if kind == "gen":
            return GroupWord(((int(tok[1:]), 1),))
        if kind == "open":
            out = self.product()
            self.expect("close", "expected ')'")
            return out
        raise ParseError(f"expected a generator or '(', got {tok or 'end'!r}", pos)

    def expect(self, kind, message):
        k, _, pos = self.peek()
        if k != kind:
            raise ParseError(message, pos)
        self.take()


def parse_expression(text: str) -> GroupWord:
    """Parse "x0^2*x1", "x1^(x0)", "(x0^2*x1)^3", juxtaposition, "e"."""
    if text.strip() == "e":
        return GroupWord(())
    return _Parser(text).parse()


def element_of(word: GroupWord) -> Element:
    out = IDENTITY
    for i, e in word.letters:
        out = multiply(out, power(generator(i), e))
    return out


def _leaf_exponents(leaves: list[str]) -> list[int]:
    # Exponent of a leaf: its count of trailing zeros, less one when the
    # stripped word lies on the tree's right arm (empty or all ones).
    out = []
    for w in leaves:
        core = w.rstrip("0")
        z = len(w) - len(core)
        if "0" in core:
            out.append(z)
        else:
            out.append(max(z - 1, 0))
    return out


def normal_form(f: Element) -> GroupWord:
    """The unique canonical word for f.

    Convention (pinned by the x0/x1/y round trips): the positive part is
    read off the source tree and the negative part off the target tree.
    Leaf k with exponent e contributes x_k^e; positive letters ascend,
    negative letters descend.
    """
    pos = _leaf_exponents([u for u, _ in f.pairs])
    neg = _leaf_exponents([v for _, v in f.pairs])
    letters = [(k, e) for k, e in enumerate(pos) if e]
    letters += [(k, -e) for k, e in reversed(list(enumerate(neg))) if e]
    return GroupWord.of(letters)


def verify_defining_relations(max_index: int = 8) -> bool:
    """Check the two defining relations and x_i^(x_j) = x_{i+1} for j < i."""
    x0, x1 = generator(0), generator(1)
    a = multiply(x0, invert(x1))
    for j in (1, 2):
        b = conjugate(x1, power(x0, j))
        if commutator(a, b) != IDENTITY:
            return False
    for i in range(1, max_index + 1):
        for j in range(0, i):
            if conjugate(generator(i), generator(j)) != generator(i + 1):
                return False
    return True
