"""Elements of Thompson's group F as reduced tree diagrams.

An element is the ordered branch-pair list of its reduced diagram: pairs
(u_i, v_i) of binary words where the u_i, read left to right, are the
branches of one full binary tree (a complete prefix code in ascending
order) and likewise the v_i.  The element maps the dyadic interval
addressed by u_i linearly (slope 2^(|u_i|-|v_i|)) onto the one addressed
by v_i.  Composition is left to right: multiply(f, g) applies f first,
so (f*g)(t) = g(f(t)), and if f has the branch pair u -> v while g has
v -> w, the product has u -> w.

Two elements are equal iff their reduced branch-pair lists are equal,
which makes Element hashable and usable for exact deduplication.
"""

from __future__ import annotations

import functools
from bisect import bisect_left
from dataclasses import dataclass

from .words import Dyadic, ONE, check_word, word_from_text, word_to_text


class MalformedDiagram(ValueError):
    """The given branch pairs do not describe a valid tree diagram."""


Pair = tuple[str, str]


@dataclass(frozen=True)
class Element:
    pairs: tuple[Pair, ...]

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __invert__(self) -> "Element":
        return invert(self)

    def __pow__(self, k: int) -> "Element":
        return power(self, k)

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{word_to_text(u)}->{word_to_text(v)}" for u, v in self.pairs
        )
        return f"Element[{inner}]"


IDENTITY = Element((("", ""),))


def identity() -> Element:
    return IDENTITY


def _is_tree(words: list[str]) -> bool:
    # A complete prefix code listed left to right folds down to the root.
    stack: list[str] = []
    for w in words:
        stack.append(w)
        while (
            len(stack) >= 2
            and stack[-1].endswith("1")
            and stack[-2].endswith("0")
            and stack[-1][:-1] == stack[-2][:-1]
        ):
            stack[-2:] = [stack[-1][:-1]]
    return stack == [""]


def reduce_pairs(pairs: list[Pair]) -> list[Pair]:
    """Cancel common carets; the result is the unique reduced diagram."""
    out: list[Pair] = []
    for p in pairs:
        out.append(p)
        while len(out) >= 2:
            u0, v0 = out[-2]
            u1, v1 = out[-1]
            if (
                u0.endswith("0")
                and u1.endswith("1")
                and u0[:-1] == u1[:-1]
                and v0.endswith("0")
                and v1.endswith("1")
                and v0[:-1] == v1[:-1]
            ):
                out[-2:] = [(u0[:-1], v0[:-1])]
            else:
                break
    return out


def from_pairs(pairs) -> Element:
    """Validate branch pairs (any order), reduce, and build the element."""
    plist = [(check_word(u), check_word(v)) for u, v in pairs]
    if not plist:
        raise MalformedDiagram("a diagram needs at least one branch pair")
    plist.sort()
    srcs = [u for u, _ in plist]
    tgts = [v for _, v in plist]
    if len(set(srcs)) != len(srcs):
        raise MalformedDiagram("duplicate source branch")
    if not _is_tree(srcs):
        raise MalformedDiagram("sources are not the branches of one full tree")
    if not _is_tree(tgts):
        raise MalformedDiagram(
            "targets (in source order) are not the branches of one full tree"
        )
    return Element(tuple(reduce_pairs(plist)))


def multiply(f: Element, g: Element) -> Element:
    """Compose left to right: the result maps t to g(f(t))."""
    gp = g.pairs
    gsrc = [s for s, _ in gp]
    out: list[Pair] = []
    for u, v in f.pairs:
        i = bisect_left(gsrc, v)
        if i < len(gsrc) and gsrc[i] == v:
            out.append((u, gp[i][1]))
        elif i < len(gsrc) and gsrc[i].startswith(v):
            # v sits above several g-sources: refine f's branch.
            while i < len(gsrc) and gsrc[i].startswith(v):
                s, t = gp[i]
                out.append((u + s[len(v) :], t))
                i += 1
        else:
            # v extends exactly one g-source (complete prefix code).
            s, t = gp[i - 1]
            assert v.startswith(s)
            out.append((u, t + v[len(s) :]))
    return Element(tuple(reduce_pairs(out)))


def invert(f: Element) -> Element:
    # Swapping a reduced diagram leaves it reduced; only the order changes.
    return Element(tuple(sorted((v, u) for u, v in f.pairs)))


def power(f: Element, k: int) -> Element:
    if k < 0:
        return invert(power(f, -k))
    acc = IDENTITY
    for _ in range(k):
        acc = multiply(acc, f)
    return acc


def conjugate(a: Element, b: Element) -> Element:
    """a^b = b^-1 * a * b (left-to-right products)."""
    return multiply(multiply(invert(b), a), b)


def commutator(a: Element, b: Element) -> Element:
    """[a, b] = a^-1 * b^-1 * a * b."""
    return multiply(multiply(invert(a), invert(b)), multiply(a, b))


def _matching_pair(f: Element, base: str, fill: str) -> Pair:
    # The unique branch whose source prefixes the infinite word base.fill^oo.
    for u, v in f.pairs:
        if len(u) <= len(base):
            if base.startswith(u):
                return u, v
        elif u.startswith(base) and u[len(base) :] == fill * (len(u) - len(base)):
            return u, v
    raise AssertionError("a complete prefix code matches every infinite word")


def evaluate(f: Element, t: Dyadic) -> Dyadic:
    """Exact image of the dyadic t in [0, 1] under f."""
    if t == ONE:
        return ONE
    bits = t.bits()
    u, v = _matching_pair(f, bits, "0")
    tail = bits[len(u) :]
    return Dyadic.from_bits(v + tail)


def slope_log2(f: Element, endpoint: str) -> int:
    """log2 of the one-sided slope at an endpoint, "0+" or "1-"."""
    if endpoint == "0+":
        u, v = f.pairs[0]
    elif endpoint == "1-":
        u, v = f.pairs[-1]
    else:
        raise ValueError(f"endpoint must be '0+' or '1-', got {endpoint!r}")
    return len(u) - len(v)


def slope_log2_at(f: Element, alpha: Dyadic, side: str) -> int:
    """log2 of the one-sided slope at an interior dyadic point."""
    if not Dyadic(0, 0) < alpha < ONE:
        raise ValueError("point must lie strictly inside (0, 1)")
    bits = alpha.bits()  # canonical, so it ends in '1'
    if side == "right":
        u, v = _matching_pair(f, bits, "0")
    elif side == "left":
        u, v = _matching_pair(f, bits[:-1] + "0", "1")
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return len(u) - len(v)


def in_derived_subgroup(f: Element) -> bool:
    """True iff f has slope 1 at both endpoints of [0, 1]."""
    return slope_log2(f, "0+") == 0 and slope_log2(f, "1-") == 0


def has_branch_pair(f: Element, u: str, v: str) -> bool:
    """True iff some (possibly unreduced) diagram of f has the pair u -> v."""
    check_word(u)
    check_word(v)
    srcs = [s for s, _ in f.pairs]
    i = bisect_left(srcs, u)
    if i < len(srcs) and srcs[i] == u:
        return f.pairs[i][1] == v
    if i > 0 and u.startswith(srcs[i - 1]):
        s, t = f.pairs[i - 1]
        return v == t + u[len(s) :]
    # u sits above the leaves: f must map the whole subtree affinely onto v.
    found = False
    for s, t in f.pairs[i:]:
        if not s.startswith(u):
            break
        found = True
        if t != v + s[len(u) :]:
            return False
    return found


@functools.cache
def generator(i: int) -> Element:
    """The standard generator x_i (x_{i+1} = x_0^-i x_1 x_0^i for i >= 1)."""
    if i < 0:
        raise ValueError("generator index must be nonnegative")
    arm = "1" * i
    pairs = [("1" * j + "0", "1" * j + "0") for j in range(i)]
    pairs += [(arm + "00", arm + "0"), (arm + "01", arm + "10"), (arm + "1", arm + "11")]
    return Element(tuple(pairs))


def generating_pair() -> tuple[Element, Element]:
    """The two-element generating set (x0, x0^2 x1) whose powers are studied here."""
    x = generator(0)
    return x, multiply(power(x, 2), generator(1))


def power_subgroup_generators(m: int, n: int) -> tuple[Element, Element]:
    """(x^m, y^n) for the generating pair (x, y)."""
    if m < 1 or n < 1:
        raise ValueError("exponents must be positive")
    x, y = generating_pair()
    return power(x, m), power(y, n)


def format_branch_pairs(f: Element) -> str:
    """One "u -> v" line per branch pair ("e" is the empty word)."""
    return "\n".join(
        f"{word_to_text(u)} -> {word_to_text(v)}" for u, v in f.pairs
    ) + "\n"


def parse_branch_pairs(text: str) -> Element:
    """Inverse of format_branch_pairs; validates and reduces."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise MalformedDiagram(f"line {lineno}: expected 'u -> v', got {raw!r}")
        try:
            u = word_from_text(parts[0], limit=None)
            v = word_from_text(parts[1], limit=None)
        except ValueError as exc:
            raise MalformedDiagram(f"line {lineno}: {exc}") from exc
        pairs.append((u, v))
    return from_pairs(pairs)


def _tree_to_dot(lines: list[str], words: list[str], prefix: str, title: str) -> None:
    lines.append(f"  subgraph cluster_{prefix} {{")
    lines.append(f'    label="{title}";')
    nodes = {""}
    for w in words:
        for k in range(1, len(w) + 1):
            nodes.add(w[:k])
    leaf_index = {w: i for i, w in enumerate(words)}

    def node_id(w):
        return f"{prefix}_{w or 'e'}"

    for w in sorted(nodes, key=lambda s: (len(s), s)):
        if w in leaf_index:
            lines.append(f'    {node_id(w)} [shape=box, label="{leaf_index[w]}"];')
        else:
            lines.append(f'    {node_id(w)} [shape=point, label=""];')
    for w in sorted(nodes, key=lambda s: (len(s), s)):
        if w:
            lines.append(f'    {node_id(w[:-1])} -> {node_id(w)} [label="{w[-1]}"];')
    lines.append("  }")


def to_dot(f: Element) -> str:
    """DOT rendering of the source and target trees, edges labeled 0/1."""
    lines = ["digraph tree_diagram {"]
    _tree_to_dot(lines, [u for u, _ in f.pairs], "src", "source tree")
    _tree_to_dot(lines, [v for _, v in f.pairs], "tgt", "target tree")
    lines.append("}")
    return "\n".join(lines) + "\n"
