import random

import pytest

from thompsonf.elements import (
    IDENTITY,
    generating_pair,
    generator,
    invert,
    multiply,
    power,
)
from thompsonf.presentation import (
    GroupWord,
    ParseError,
    element_of,
    normal_form,
    parse_expression,
    verify_defining_relations,
)


def random_word(rng, max_len=8, max_gen=5) -> GroupWord:
    letters = [
        (rng.randrange(0, max_gen + 1), rng.choice((-2, -1, 1, 2)))
        for _ in range(rng.randrange(0, max_len + 1))
    ]
    return GroupWord.of(letters)


def test_group_word_normalization():
    assert GroupWord.of([(0, 1), (0, 1)]).letters == ((0, 2),)
    assert GroupWord.of([(0, 1), (0, -1)]).letters == ()
    # cancellation cascades through the gap it opens
    assert GroupWord.of([(0, 1), (1, 1), (1, -1), (0, 1)]).letters == ((0, 2),)
    assert GroupWord.of([(2, 0)]).letters == ()
    assert GroupWord.of([]).is_identity
    with pytest.raises(ValueError):
        GroupWord.of([(-1, 1)])


def test_group_word_algebra():
    rng = random.Random(101)
    for _ in range(200):
        a = random_word(rng)
        b = random_word(rng)
        assert a.times(a.inverse()).is_identity
        assert a.inverse().inverse() == a
        assert (a * b).inverse() == b.inverse() * a.inverse()
        assert a.repeat(3) == a * a * a
        assert a.repeat(-2) == (a * a).inverse()
        assert a.repeat(0).is_identity
    with pytest.raises(ValueError):
        GroupWord.of([(0, 1)]).repeat(10**9)


def test_group_word_str():
    assert str(GroupWord.of([])) == "e"
    assert str(GroupWord.of([(0, 2), (1, 1)])) == "x0^2*x1"
    assert str(GroupWord.of([(3, -1)])) == "x3^-1"


def test_parse_expression_frozen():
    assert parse_expression("x0^2*x1").letters == ((0, 2), (1, 1))
    assert parse_expression("e").is_identity
    assert parse_expression(" x2 ").letters == ((2, 1),)
    assert parse_expression("x0^-2").letters == ((0, -2),)
    assert parse_expression("x0 x1").letters == ((0, 1), (1, 1))
    assert parse_expression("(x0*x1)^2").letters == ((0, 1), (1, 1), (0, 1), (1, 1))
    assert parse_expression("x0*x0^-1").is_identity
    # conjugation sugar: a^(b) = b^-1 a b
    assert element_of(parse_expression("x1^(x0)")) == generator(2)
    assert element_of(parse_expression("x1^(x0^3)")) == generator(4)
    assert parse_expression("(x0)^(x1)^2").letters == parse_expression(
        "(x1^-1*x0*x1)^2"
    ).letters


def test_parse_expression_errors():
    for text, pos in (
        ("x0^", 3),
        ("x0 + x1", 3),
        ("x^2", 0),
        ("(x0", 3),
        ("x0^(x1", 6),
        ("", 0),
        ("3", 0),
        ("x0**x1", 3),
    ):
        with pytest.raises(ParseError) as err:
            parse_expression(text)
        assert err.value.position == pos


def test_element_of_is_homomorphism():
    x, y = generating_pair()
    assert element_of(parse_expression("x0^2*x1")) == y
    assert element_of(GroupWord.of([])) == IDENTITY
    rng = random.Random(103)
    for _ in range(150):
        a = random_word(rng, max_len=6)
        b = random_word(rng, max_len=6)
        assert element_of(a * b) == multiply(element_of(a), element_of(b))
        assert element_of(a.inverse()) == invert(element_of(a))


def test_normal_form_frozen():
    x, y = generating_pair()
    assert str(normal_form(x)) == "x0"
    assert str(normal_form(IDENTITY)) == "e"
    assert str(normal_form(y)) == "x0^2*x1"
    assert str(normal_form(power(y, 2))) == "x0^4*x1*x4"
    assert str(normal_form(invert(x))) == "x0^-1"
    assert str(normal_form(generator(3))) == "x3"
    assert str(normal_form(multiply(generator(2), invert(generator(5))))) == "x2*x5^-1"


def test_normal_form_round_trip():
    rng = random.Random(107)
    for _ in range(200):
        f = element_of(random_word(rng))
        w = normal_form(f)
        assert element_of(w) == f
        # positive letters ascend, then negative letters descend
        split = [e < 0 for _, e in w.letters]
        assert split == sorted(split)
        pos = [i for i, e in w.letters if e > 0]
        neg = [i for i, e in w.letters if e < 0]
        assert pos == sorted(pos)
        assert neg == sorted(neg, reverse=True)


def test_defining_relations():
    assert verify_defining_relations()
    assert verify_defining_relations(max_index=3)
    # the two finite-presentation relators, spelled out
    x0, x1 = generator(0), generator(1)
    a = multiply(x0, invert(x1))
    for k in (1, 2):
        c = multiply(multiply(invert(power(x0, k)), x1), power(x0, k))
        lhs = multiply(multiply(invert(a), invert(c)), multiply(a, c))
        assert lhs == IDENTITY
