"""Finite binary words and exact dyadic rationals in [0, 1].

A word is a plain str over {"0", "1"}; the empty word prints as "e" in
all textual I/O.  The word u addresses the half-open dyadic interval
[.u000..., .u111...] of width 2^-|u|, so extending a word refines its
interval.  Dyadics are kept in canonical form (odd numerator, or the
endpoints 0 and 1) and all arithmetic is exact.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

MAX_WORD_LENGTH = 24

_WORD_RE = re.compile(r"[01]*\Z")


class CapacityError(Exception):
    """A configured size budget (word length, element count) was exceeded."""


def check_word(u: str) -> str:
    if not isinstance(u, str) or not _WORD_RE.match(u):
        raise ValueError(f"not a binary word: {u!r}")
    return u


def append(u: str, w: str, limit: int | None = MAX_WORD_LENGTH) -> str:
    """Concatenate two binary words, enforcing the length cap."""
    check_word(u)
    check_word(w)
    if limit is not None and len(u) + len(w) > limit:
        raise CapacityError(
            f"word of length {len(u) + len(w)} exceeds the cap of {limit}"
        )
    return u + w


def is_prefix(u: str, v: str) -> bool:
    """True iff u is a (not necessarily proper) prefix of v."""
    check_word(u)
    check_word(v)
    return v.startswith(u)


def word_to_text(u: str) -> str:
    return u if u else "e"


def word_from_text(text: str, limit: int | None = MAX_WORD_LENGTH) -> str:
    text = text.strip()
    if text == "e":
        return ""
    if not text or not _WORD_RE.match(text):
        raise ValueError(f"expected a word over 0/1 (or 'e'), got {text!r}")
    if limit is not None and len(text) > limit:
        raise CapacityError(f"word of length {len(text)} exceeds the cap of {limit}")
    return text


@functools.total_ordering
@dataclass(frozen=True)
class Dyadic:
    """num / 2**exp in [0, 1], canonical: num odd, or (0, 0) / (1, 0)."""

    num: int
    exp: int

    def __post_init__(self):
        num, exp = self.num, self.exp
        if num < 0 or exp < 0:
            raise ValueError("dyadic outside [0, 1]")
        while num and num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        if num > (1 << exp):
            raise ValueError("dyadic outside [0, 1]")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_bits(cls, bits: str) -> "Dyadic":
        """Value of the finite expansion .bits (empty string is 0)."""
        check_word(bits)
        return cls(int(bits, 2) if bits else 0, len(bits))

    def bits(self) -> str:
        """Finite binary expansion; only defined for values < 1."""
        if self.num == 1 and self.exp == 0:
            raise ValueError("1 has no finite expansion starting 0.")
        if self.exp == 0:
            return ""
        return format(self.num, f"0{self.exp}b")

    def __lt__(self, other: "Dyadic") -> bool:
        return self.num << other.exp < other.num << self.exp

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        if self.exp == 1:
            return f"{self.num}/2"
        return f"{self.num}/2^{self.exp}"

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Accepts "0", "1", "p/q" with q a power of two, or "p/2^k"."""
        text = text.strip()
        m = re.fullmatch(r"(\d+)\s*/\s*2\^(\d+)", text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = re.fullmatch(r"(\d+)\s*/\s*(\d+)", text)
        if m:
            p, q = int(m.group(1)), int(m.group(2))
            if q < 1 or q & (q - 1):
                raise ValueError(f"denominator {q} is not a power of two")
            return cls(p, q.bit_length() - 1)
        if re.fullmatch(r"\d+", text):
            return cls(int(text), 0)
        raise ValueError(f"cannot parse dyadic: {text!r}")


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def interval_of(u: str) -> tuple[Dyadic, Dyadic]:
    """Endpoints of the dyadic interval addressed by u."""
    check_word(u)
    if not u:
        return (ZERO, ONE)
    return (Dyadic(int(u, 2), len(u)), Dyadic(int(u, 2) + 1, len(u)))
