"""Bounded saturation of branch-word equivalence relations.

Words of length at most `depth` form a complete binary trie.  Seed pairs
declare two words equivalent; closure propagates every merge to same-bit
children whenever both children are still inside the trie.  The result is
the least congruence (in that bounded sense) containing the seeds.  It is
a fixpoint, so the outcome is independent of processing order; exported
representatives are shortlex-minimal, which for the node numbering used
here is simply the smallest node index.

Node numbering: word w <-> int("1" + w, 2).  Length-l words occupy
[2^l, 2^(l+1)), children of x are 2x and 2x+1, and numeric order on nodes
coincides with shortlex order on words.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import gcd

from .elements import Element, IDENTITY, invert, multiply
from .words import CapacityError, check_word


class WordPartition:
    """Union-find over trie nodes with child-congruence propagation."""

    def __init__(self, depth: int, explain: bool = False):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        self.depth = depth
        n = 1 << (depth + 1)
        # flat arrays keep depth ~24 tries within a few hundred MB
        self._parent = array("l", range(n))
        self._size = array("l", [1]) * n
        self._limit = 1 << depth  # nodes >= limit have no children
        # one member with children per class (0 = none); merging two classes
        # that both have one must join the children of those two members,
        # otherwise pairs bridged by a depth-boundary word never propagate
        self._shallow = array("l", range(self._limit)) + array(
            "l", [0]
        ) * self._limit
        self._classes = n - 1  # node 0 is unused
        self._reps: dict[int, int] | None = None
        self._seeds: list[tuple[int, int]] = []
        self._explain = explain
        # explanation forest: parent 0 = root; edge x -> _eparent[x] carries
        # (fact, rev) where fact justifies the merge and rev records whether
        # the edge runs against the fact's source -> target direction
        self._eparent = [0] * n if explain else None
        self._ereason: list | None = [None] * n if explain else None

    def node(self, word: str) -> int:
        check_word(word)
        if len(word) > self.depth:
            raise ValueError(f"word longer than trie depth {self.depth}: {word!r}")
        return int("1" + word, 2)

    @staticmethod
    def word_of(node: int) -> str:
        return bin(node)[3:]

    @property
    def num_classes(self) -> int:
        return self._classes

    def _find(self, x: int) -> int:
        p = self._parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def same_class(self, u: str, v: str) -> bool:
        return self._find(self.node(u)) == self._find(self.node(v))

    def merge(self, u: str, v: str) -> None:
        """Declare u ~ v and restore closure."""
        a, b = self.node(u), self.node(v)
        fact = ("seed", len(self._seeds))
        self._seeds.append((a, b))
        work: list[tuple[int, int]] = []
        self._union(a, b, fact, work)
        self._drain(work)

    def _union(self, a: int, b: int, fact, work) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return
        sa, sb = self._size[ra], self._size[rb]
        top, sub = (ra, rb) if sa >= sb else (rb, ra)
        s1, s2 = self._shallow[ra], self._shallow[rb]
        self._parent[sub] = top
        self._size[top] = sa + sb
        self._shallow[top] = s1 or s2
        self._classes -= 1
        self._reps = None
        if self._explain:
            # attach the smaller explanation tree under the larger one
            if sa >= sb:
                self._reroot(b)
                self._eparent[b] = a
                self._ereason[b] = (fact, True)
            else:
                self._reroot(a)
                self._eparent[a] = b
                self._ereason[a] = (fact, False)
        if s1 and s2:
            work.append((s1, s2))

    def _drain(self, work) -> None:
        while work:
            x, y = work.pop()  # both have children by construction
            self._union(2 * x, 2 * y, ("child", x, y), work)
            self._union(2 * x + 1, 2 * y + 1, ("child", x, y), work)

    def _reroot(self, x: int) -> None:
        path = [x]
        while self._eparent[path[-1]]:
            path.append(self._eparent[path[-1]])
        edges = [self._ereason[c] for c in path[:-1]]
        for (child, parent), (fact, rev) in zip(zip(path, path[1:]), edges):
            self._eparent[parent] = child
            self._ereason[parent] = (fact, not rev)
        self._eparent[x] = 0
        self._ereason[x] = None

    def _rep_map(self) -> dict[int, int]:
        if self._reps is None:
            reps: dict[int, int] = {}
            for x in range(1, len(self._parent)):
                r = self._find(x)
                if r not in reps:
                    reps[r] = x  # ascending scan: first hit is shortlex-min
            self._reps = reps
        return self._reps

    def rep(self, word: str) -> str:
        return self.word_of(self._rep_map()[self._find(self.node(word))])

    def class_of(self, word: str) -> list[str]:
        r = self._find(self.node(word))
        return [
            self.word_of(x)
            for x in range(1, len(self._parent))
            if self._find(x) == r
        ]

    def export(self, full: bool = False) -> dict:
        """Map each class representative to its size (or to all members)."""
        reps = self._rep_map()
        if full:
            out: dict[str, list[str]] = {self.word_of(v): [] for v in reps.values()}
            for x in range(1, len(self._parent)):
                out[self.word_of(reps[self._find(x)])].append(self.word_of(x))
            return out
        counts: dict[str, int] = {self.word_of(v): 0 for v in reps.values()}
        for x in range(1, len(self._parent)):
            counts[self.word_of(reps[self._find(x)])] += 1
        return counts

    # -- explanations -----------------------------------------------------

    def _edge_path(self, a: int, b: int) -> list[tuple]:
        """Edges (fact, forward) along the explanation path from a to b."""
        if not self._explain:
            raise ValueError("partition was built without explanations")
        if self._find(a) != self._find(b):
            raise ValueError("words are not in the same class")
        up_a = [a]
        while self._eparent[up_a[-1]]:
            up_a.append(self._eparent[up_a[-1]])
        pos = {x: i for i, x in enumerate(up_a)}
        down = [b]
        while down[-1] not in pos:
            down.append(self._eparent[down[-1]])
        steps = []
        for x in up_a[: pos[down[-1]]]:
            fact, rev = self._ereason[x]
            steps.append((fact, not rev))
        for x in reversed(down[:-1]):
            fact, rev = self._ereason[x]
            steps.append((fact, rev))
        return steps

    def explain(self, u: str, v: str) -> list[tuple]:
        """Proof steps for u ~ v: ("seed", i) or ("child", x, y) facts."""
        return [fact for fact, _ in self._edge_path(self.node(u), self.node(v))]


def saturate(pairs, depth: int, explain: bool = False) -> WordPartition:
    """Close the seed pairs under child congruence on the depth-L trie."""
    part = WordPartition(depth, explain=explain)
    for u, v in pairs:
        part.merge(u, v)
    return part


def witness_product(part: WordPartition, elements, u: str, v: str) -> Element:
    """An element of <elements> carrying branch u -> v, read off the proof.

    elements[i] must be the element whose branch pair seeded merge i, in
    the order the pairs were given to saturate.  Seed facts contribute the
    element (or its inverse); child facts defer to the parents' witness.
    """
    memo: dict[tuple[int, int], Element] = {}

    def elem(a: int, b: int) -> Element:
        if a == b:
            return IDENTITY
        key = (a, b)
        if key in memo:
            return memo[key]
        out = IDENTITY
        for fact, forward in part._edge_path(a, b):
            if fact[0] == "seed":
                step = elements[fact[1]]
            else:
                step = elem(fact[1], fact[2])
            out = multiply(out, step if forward else invert(step))
        memo[(a, b)] = out
        memo[(b, a)] = invert(out)
        return out

    return elem(part.node(u), part.node(v))


# -- relation systems for the power subgroups -----------------------------


@dataclass(frozen=True)
class RelationSystem:
    """Named list of seed instances (source word, target word, schema kind)."""

    name: str
    m: int
    n: int
    depth: int
    instances: tuple[tuple[str, str, str], ...]

    @property
    def pairs(self) -> list[tuple[str, str]]:
        return [(u, v) for u, v, _ in self.instances]

    def saturated(self, explain: bool = False) -> WordPartition:
        return saturate(self.pairs, self.depth, explain=explain)


def k_system(m: int, n: int, depth: int) -> RelationSystem:
    """Seed system for the subgroup generated by the m-th and n-th powers.

    Instances whose longer side exceeds the trie depth are skipped whole;
    nothing is ever truncated.
    """
    if m < 1 or n < 1:
        raise ValueError("powers must be positive")
    g = gcd(m, n)
    raw: list[tuple[str, str, str]] = []
    k = 1
    while k + g + 1 <= depth:
        raw.append(("0" * k + "1", "0" * (k + g) + "1", "shift0"))
        raw.append(("1" * k + "0", "1" * (k + g) + "0", "shift1"))
        k += 1
    for k in range(1, g + 1):
        raw.append(("0" * k + "1", "1" * (g + 1 - k) + "0", "mirror"))
    for k in range(1, n + 1):
        raw.append(("0" * 2 * k + "10", "1" * (1 + 3 * (n - k)) + "0", "even10"))
        raw.append(("0" * 2 * k + "11", "1" * (2 + 3 * (n - k)) + "0", "even11"))
        raw.append(("0" * (2 * k - 1) + "1", "1" * (3 * (n - k + 1)) + "0", "odd1"))
    seen = set()
    instances = []
    for u, v, kind in raw:
        if max(len(u), len(v)) > depth or (u, v) in seen:
            continue
        seen.add((u, v))
        instances.append((u, v, kind))
    return RelationSystem(f"powers({m},{n})", m, n, depth, tuple(instances))


# -- deriving seed pairs from actual subgroup elements ---------------------


def element_ball(generators, radius: int, budget: int = 100_000) -> list[Element]:
    """All products of at most `radius` generators or inverses, BFS order."""
    letters: list[Element] = []
    for gen in generators:
        for h in (gen, invert(gen)):
            if h not in letters:
                letters.append(h)
    seen: dict[Element, None] = {IDENTITY: None}
    frontier = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for f in frontier:
            for h in letters:
                fh = multiply(f, h)
                if fh not in seen:
                    if len(seen) >= budget:
                        raise CapacityError(
                            f"element ball exceeded budget of {budget}"
                        )
                    seen[fh] = None
                    nxt.append(fh)
        if not nxt:
            break
        frontier = nxt
    return list(seen)


def branch_pairs_of_elements(elements, max_len: int):
    """Distinct nontrivial branch pairs fitting the trie, each with one
    element carrying it."""
    found: dict[tuple[str, str], Element] = {}
    for f in elements:
        for u, v in f.pairs:
            if u != v and len(u) <= max_len and len(v) <= max_len:
                found.setdefault((u, v), f)
    return [(u, v, f) for (u, v), f in sorted(found.items())]


def subgroup_branch_pairs(generators, radius: int, depth: int,
                          budget: int = 100_000) -> list[tuple[str, str]]:
    """Branch pairs carried by products of at most `radius` generators."""
    ball = element_ball(generators, radius, budget)
    return [(u, v) for u, v, _ in branch_pairs_of_elements(ball, depth)]


# -- sufficiency probes ----------------------------------------------------


def check_suffice(part: WordPartition, r_max: int | None = None,
                  s_max: int | None = None) -> bool:
    """Probe the collapse pattern that forces one class of mixed words.

    Requires 1^r 0 ~ 10 and 0^s 1 ~ 01 through the stated bounds, plus the
    local cluster 01 ~ 10 ~ 010 ~ 011.
    """
    d = part.depth
    if r_max is None:
        r_max = d - 1
    if s_max is None:
        s_max = d - 1
    if r_max + 1 > d or s_max + 1 > d:
        raise ValueError("bound exceeds trie depth")
    for w in ("10", "010", "011"):
        if not part.same_class("01", w):
            return False
    for r in range(1, r_max + 1):
        if not part.same_class("1" * r + "0", "10"):
            return False
    for s in range(1, s_max + 1):
        if not part.same_class("0" * s + "1", "01"):
            return False
    return True


def all_mixed_equivalent(part: WordPartition, max_len: int = 10) -> bool:
    """True when every word of length <= max_len with both digits shares a class."""
    if not 2 <= max_len <= part.depth:
        raise ValueError("max_len must be between 2 and the trie depth")
    base = part._find(part.node("01"))
    for ell in range(2, max_len + 1):
        top = 1 << ell
        for bits in range(1, top - 1):
            if part._find(top | bits) != base:
                return False
    return True
