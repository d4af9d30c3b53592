import random

import pytest

from oracles import closure_classes, partition_key
from thompsonf.elements import generating_pair, has_branch_pair, power
from thompsonf.saturation import (
    RelationSystem,
    WordPartition,
    all_mixed_equivalent,
    branch_pairs_of_elements,
    check_suffice,
    element_ball,
    k_system,
    saturate,
    subgroup_branch_pairs,
    witness_product,
)
from thompsonf.words import CapacityError


def random_words(rng, depth, count):
    out = []
    for _ in range(count):
        n = rng.randrange(0, depth + 1)
        out.append("".join(rng.choice("01") for _ in range(n)))
    return out


def engine_partition_key(part: WordPartition, depth: int):
    reps = {}
    words = [""]
    layer = [""]
    for _ in range(depth):
        layer = [w + c for w in layer for c in "01"]
        words += layer
    for w in words:
        reps[w] = part.rep(w)
    return partition_key(reps)


def test_node_word_round_trip():
    part = WordPartition(4)
    for w in ("", "0", "1", "0110", "1111"):
        assert part.word_of(part.node(w)) == w
    with pytest.raises(ValueError):
        part.node("01101")  # deeper than the trie


def test_merge_basics():
    part = WordPartition(3)
    assert part.num_classes == 15
    assert not part.same_class("0", "1")
    part.merge("0", "1")
    assert part.same_class("0", "1")
    # children merged through the congruence, grandchildren too
    assert part.same_class("00", "10")
    assert part.same_class("011", "111")
    assert part.num_classes == 15 - 7
    # representative is the shortlex least member
    assert part.rep("111") == "011"
    assert part.rep("0") == "0"
    assert sorted(part.class_of("10")) == ["00", "10"]


def test_saturation_matches_closure_oracle():
    rng = random.Random(20260815)
    for trial in range(30):
        depth = rng.randrange(2, 7)
        pairs = list(
            zip(
                random_words(rng, depth, rng.randrange(1, 6)),
                random_words(rng, depth, rng.randrange(1, 6)),
            )
        )
        part = saturate(pairs, depth)
        oracle = closure_classes(pairs, depth)
        assert engine_partition_key(part, depth) == partition_key(oracle), (
            trial,
            depth,
            pairs,
        )


def test_saturation_matches_oracle_on_power_systems():
    for m, n, depth in ((1, 1, 6), (2, 3, 6), (3, 2, 5), (2, 2, 6)):
        system = k_system(m, n, depth)
        part = saturate(system.pairs, depth)
        oracle = closure_classes(system.pairs, depth)
        assert engine_partition_key(part, depth) == partition_key(oracle)


def test_congruence_fixpoint_invariant():
    # after saturation, equivalent inner words have equivalent children
    for m, n, depth in ((1, 1, 7), (2, 3, 7)):
        part = k_system(m, n, depth).saturated()
        words = [""]
        layer = [""]
        for _ in range(depth - 1):
            layer = [w + c for w in layer for c in "01"]
            words += layer
        for i, u in enumerate(words):
            for v in words[i + 1 :]:
                if part.same_class(u, v):
                    assert part.same_class(u + "0", v + "0")
                    assert part.same_class(u + "1", v + "1")


def test_merge_monotone_and_deterministic():
    rng = random.Random(31)
    for _ in range(10):
        depth = rng.randrange(3, 6)
        pairs = list(
            zip(random_words(rng, depth, 4), random_words(rng, depth, 4))
        )
        extra = (rng.choice("01") * 2, rng.choice("01"))
        base = saturate(pairs, depth)
        again = saturate(pairs, depth)
        assert base.export(full=True) == again.export(full=True)
        more = saturate(pairs + [extra], depth)
        assert more.num_classes <= base.num_classes
        for u, v in pairs:
            assert more.same_class(u, v)


def test_k_system_frozen_instances():
    system = k_system(2, 3, 6)
    assert system.name == "powers(2,3)"
    assert (system.m, system.n, system.depth) == (2, 3, 6)
    assert system.pairs == [
        ("01", "001"),
        ("10", "110"),
        ("001", "0001"),
        ("110", "1110"),
        ("0001", "00001"),
        ("1110", "11110"),
        ("00001", "000001"),
        ("11110", "111110"),
        ("01", "10"),
        ("000010", "11110"),
        ("000011", "111110"),
        ("001", "0001"),  # dedup keeps first occurrence only
    ][:11] + [("000001", "1110")]
    for u, v in system.pairs:
        assert len(u) <= 6 and len(v) <= 6


def test_k_system_instances_witnessed_in_subgroup():
    # every schema instance merges under the relation generated by actual
    # subgroup elements, and the recorded proof composes to an element of
    # the subgroup carrying exactly that branch pair
    for m, n in ((1, 1), (2, 3)):
        x, y = generating_pair()
        ball = element_ball([power(x, m), power(y, n)], 6)
        rows = branch_pairs_of_elements(ball, max_len=14)
        pairs = [(u, v) for u, v, _ in rows]
        carriers = [e for _, _, e in rows]
        part = saturate(pairs, 14, explain=True)
        for u, v in k_system(m, n, 14).pairs:
            assert part.same_class(u, v), (m, n, u, v)
            w = witness_product(part, carriers, u, v)
            assert has_branch_pair(w, u, v), (m, n, u, v)


def test_witness_products_random_pairs():
    rng = random.Random(37)
    x, y = generating_pair()
    ball = element_ball([power(x, 2), power(y, 3)], 5)
    rows = branch_pairs_of_elements(ball, max_len=10)
    part = saturate([(u, v) for u, v, _ in rows], 10, explain=True)
    carriers = [e for _, _, e in rows]
    merged = [ws for ws in part.export(full=True).values() if len(ws) > 1]
    for _ in range(100):
        words = rng.choice(merged)
        u, v = rng.sample(words, 2)
        w = witness_product(part, carriers, u, v)
        assert has_branch_pair(w, u, v), (u, v)


def test_explain_requires_flag():
    part = saturate([("0", "1")], 3)
    with pytest.raises(ValueError):
        part.explain("0", "1")


def test_element_ball():
    x, y = generating_pair()
    ball = element_ball([x], 1)
    assert len(ball) == 3
    assert set(ball) == {x, ~x, x * ~x}
    assert len(element_ball([x, y], 2)) == 17
    assert len(element_ball([], 5)) == 1
    with pytest.raises(CapacityError):
        element_ball([x], 6, budget=3)


def test_subgroup_branch_pairs():
    x, y = generating_pair()
    pairs = subgroup_branch_pairs([x, y], radius=1, depth=8)
    assert ("00", "0") in pairs and ("01", "10") in pairs and ("1", "11") in pairs
    assert ("000", "0") in pairs  # from y
    assert pairs == sorted(pairs)
    for u, v in pairs:
        assert u != v
        assert len(u) <= 8 and len(v) <= 8
    deeper = subgroup_branch_pairs([x, y], radius=2, depth=8)
    assert set(pairs) <= set(deeper)


def test_check_suffice_and_mixed_classes():
    part = k_system(1, 1, 10).saturated()
    assert check_suffice(part)
    assert all_mixed_equivalent(part, max_len=8)
    # shift families alone keep the 0-side and 1-side words apart forever
    seeds = [("0" * k + "1", "0" * (k + 1) + "1") for k in range(1, 7)]
    seeds += [("1" * k + "0", "1" * (k + 1) + "0") for k in range(1, 7)]
    shifts = saturate(seeds, 8)
    assert shifts.same_class("10", "11110")
    assert shifts.same_class("01", "00001")
    assert not shifts.same_class("01", "10")
    assert not check_suffice(shifts)
    assert not all_mixed_equivalent(shifts, max_len=6)
    # explicit bounds narrow what is demanded
    assert check_suffice(part, r_max=3, s_max=3)


def test_relation_system_saturated_wrapper():
    system = k_system(1, 1, 6)
    assert isinstance(system, RelationSystem)
    part = system.saturated()
    assert part.same_class("01", "10")
    assert part.same_class("0011", "1100") == part.same_class("1100", "0011")
    wit = system.saturated(explain=True)
    assert wit.explain("01", "10") != []


def test_branch_pairs_of_elements():
    x, y = generating_pair()
    rows = branch_pairs_of_elements([x, y], max_len=4)
    assert all(len(u) <= 4 and len(v) <= 4 and u != v for u, v, _ in rows)
    assert ("00", "0", x) in rows
    assert ("01", "1110", y) in rows
    # identity contributes nothing: its only pair has u == v
    assert branch_pairs_of_elements([x * ~x], max_len=4) == []
