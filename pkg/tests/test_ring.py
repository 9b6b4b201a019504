"""Ring arithmetic against an independent exact oracle.

The oracle represents values as p + q*sqrt(2) with exact Fractions p, q.
It shares no code or representation with hadpi.ring (no numerator/exponent
split, no canonicalization), so agreement is a genuine cross-check.
"""

from __future__ import annotations

import random

import pytest
from oracles import FracRT2, oracle_lde

from hadpi.ring import (
    Dyadic,
    Residue,
    RingError,
    RingInt,
    dyadic,
    format_dyadic,
    format_ringint,
    lde,
    parse_dyadic,
    parse_ringint,
)


def rand_dyadic(rng: random.Random) -> Dyadic:
    return dyadic(
        RingInt(rng.randint(-99, 99), rng.randint(-99, 99)), rng.randint(0, 12)
    )


def test_ringint_examples():
    assert RingInt(1, 0) + RingInt(0, 1) == RingInt(1, 1)
    assert RingInt(0, 0) + RingInt(-7, 3) == RingInt(-7, 3)
    assert RingInt(2, 3) + RingInt(-2, -3) == RingInt(0, 0)
    assert RingInt(0, 1) * RingInt(0, 1) == RingInt(2, 0)
    assert RingInt(1, 1) * RingInt(1, -1) == RingInt(-1, 0)
    assert RingInt(1, 0) * RingInt(5, -4) == RingInt(5, -4)


def test_dyadic_reduce_examples():
    assert dyadic(RingInt(2, 0), 2) == Dyadic(RingInt(1, 0), 0)
    assert dyadic(RingInt(1, 1), 2) == Dyadic(RingInt(1, 1), 2)
    assert dyadic(RingInt(0, 0), 5) == Dyadic(RingInt(0, 0), 0)


def test_lde_examples():
    assert lde(Dyadic.from_int(3)) == 0
    assert lde(dyadic(RingInt(1, 0), 1)) == 1
    # (1 + rt2)/2 stored as (1+rt2)/rt2^2
    assert lde(dyadic(RingInt(1, 1), 2)) == 2


def test_residue_classes():
    assert RingInt(3, 2).residue() is Residue.ONE
    assert RingInt(1, 1).residue() is Residue.ONE_PLUS_RT2
    assert RingInt(4, 6).residue() is Residue.ZERO
    assert RingInt(0, 3).residue() is Residue.RT2
    assert Residue.ONE.is_odd and Residue.ONE_PLUS_RT2.is_odd
    assert not Residue.ZERO.is_odd and not Residue.RT2.is_odd


def test_residue_unchanged_by_even_shift():
    rng = random.Random(7)
    for _ in range(200):
        x = RingInt(rng.randint(-50, 50), rng.randint(-50, 50))
        y = RingInt(rng.randint(-50, 50), rng.randint(-50, 50))
        shifted = x + RingInt(2, 0) * y
        assert shifted.residue() is x.residue()


def test_dyadic_add_aligns_and_reduces():
    half_rt2 = dyadic(RingInt(1, 0), 1)
    assert half_rt2 + half_rt2 == Dyadic(RingInt(0, 1), 0)  # 1/rt2 + 1/rt2 = rt2
    assert half_rt2 * half_rt2 == Dyadic(RingInt(1, 0), 2)  # 1/2
    x = dyadic(RingInt(3, -2), 4)
    assert x + Dyadic.from_int(0) == x


def test_canonicalization_padding_insensitive():
    rng = random.Random(11)
    for _ in range(200):
        v = rand_dyadic(rng)
        for m in (0, 1, 2, 5):
            assert dyadic(v.num.mul_pow_rt2(m), v.k + m) == v


def test_lde_matches_bruteforce_oracle():
    rng = random.Random(13)
    for _ in range(300):
        v = rand_dyadic(rng)
        assert v.k == oracle_lde(v)


def test_product_denominator_bound():
    rng = random.Random(17)
    for _ in range(200):
        x, y = rand_dyadic(rng), rand_dyadic(rng)
        prod = x * y
        assert prod.k <= x.k + y.k
        # rt2^(lde x + lde y) * (x*y) lands in Z[rt2]
        assert FracRT2.of(prod).scaled_by_rt2_pow(x.k + y.k).in_z_rt2()


def test_ops_against_fraction_oracle():
    rng = random.Random(19)
    for _ in range(500):
        x, y = rand_dyadic(rng), rand_dyadic(rng)
        assert FracRT2.of(x + y) == FracRT2.of(x) + FracRT2.of(y)
        assert FracRT2.of(x - y) == FracRT2.of(x) - FracRT2.of(y)
        assert FracRT2.of(x * y) == FracRT2.of(x) * FracRT2.of(y)
        assert FracRT2.of(-x) == -FracRT2.of(x)


@pytest.mark.parametrize(
    "text,value",
    [
        ("0", Dyadic(RingInt(0, 0), 0)),
        ("3", Dyadic(RingInt(3, 0), 0)),
        ("-2*rt2", Dyadic(RingInt(0, -2), 0)),
        ("1/rt2^1", Dyadic(RingInt(1, 0), 1)),
        ("(1+1*rt2)/rt2^2", Dyadic(RingInt(1, 1), 2)),
        ("(1-1*rt2)/rt2^3", Dyadic(RingInt(1, -1), 3)),
    ],
)
def test_dyadic_text_round_trip(text, value):
    assert parse_dyadic(text) == value
    assert parse_dyadic(format_dyadic(value)) == value
    assert format_dyadic(value) == text


def test_parse_leniencies():
    assert parse_ringint("rt2") == RingInt(0, 1)
    assert parse_ringint("-rt2") == RingInt(0, -1)
    assert parse_ringint("1+rt2") == RingInt(1, 1)
    assert parse_ringint("√2") == RingInt(0, 1)  # UTF-8 radical accepted
    assert parse_dyadic("(2+2*√2)/√2^2") == dyadic(RingInt(2, 2), 2)


def test_parse_rejects_malformed():
    for bad in ["", "xyz", "1 2*rt2", "1/rt2", "1/rt2^-1", "2*rt2-1"]:
        with pytest.raises(RingError):
            parse_dyadic(bad)


def test_format_ringint_signs():
    assert format_ringint(RingInt(1, -2)) == "1-2*rt2"
    assert format_ringint(RingInt(-1, 2)) == "-1+2*rt2"
    assert format_ringint(RingInt(0, 1)) == "1*rt2"


def test_random_format_round_trip():
    rng = random.Random(23)
    for _ in range(300):
        v = rand_dyadic(rng)
        assert parse_dyadic(format_dyadic(v)) == v
