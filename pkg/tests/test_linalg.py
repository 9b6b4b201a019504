"""Exact matrix operations against the Fraction oracle."""

from __future__ import annotations

import random

import pytest
from oracles import (
    frac_direct_sum,
    frac_eq,
    frac_identity,
    frac_kron,
    frac_mul,
    frac_of_matrix,
    oracle_level,
)

from hadpi.linalg import (
    H_BLOCK,
    ExactMatrix,
    Generator,
    Level,
    LinAlgError,
    format_matrix,
    gen_h,
    gen_x,
    gen_z,
    level,
    m_level_embed,
    parse_matrix,
)
from hadpi.ring import Dyadic, RingInt, dyadic


def rand_generator(rng: random.Random, n: int) -> Generator:
    kind = rng.choice("ZXH" if n >= 2 else "Z")
    if kind == "Z":
        return gen_z(rng.randint(1, n))
    b, c = rng.sample(range(1, n + 1), 2)
    return gen_x(b, c) if kind == "X" else gen_h(min(b, c), max(b, c))


def rand_orthogonal(rng: random.Random, n: int, length: int) -> ExactMatrix:
    M = ExactMatrix.identity(n)
    for _ in range(length):
        M = M @ rand_generator(rng, n).matrix(n)
    return M


def rand_general(rng: random.Random, n: int) -> ExactMatrix:
    return ExactMatrix.from_rows(
        [
            [
                dyadic(
                    RingInt(rng.randint(-9, 9), rng.randint(-9, 9)), rng.randint(0, 5)
                )
                for _ in range(n)
            ]
            for _ in range(n)
        ]
    )


def test_identity_and_equality():
    I3 = ExactMatrix.identity(3)
    assert I3.is_identity() and I3.is_orthogonal()
    assert I3 == ExactMatrix(3, 0, [1, 0, 0, 0, 1, 0, 0, 0, 1], [0] * 9)
    assert I3 != ExactMatrix.identity(4)


def test_constructor_reduces_padding():
    # rt2^2 * I stored at exponent 2 collapses to exponent 0
    M = ExactMatrix(2, 2, [2, 0, 0, 2], [0, 0, 0, 0])
    assert M.k == 0 and M.is_identity()
    N = ExactMatrix(2, 1, [0, 0, 0, 0], [1, 0, 0, 1])
    assert N.k == 0 and N.is_identity()


def test_generator_matrices():
    assert gen_z(1).matrix(2) == ExactMatrix(2, 0, [-1, 0, 0, 1], [0] * 4)
    assert gen_x(1, 2).matrix(2) == ExactMatrix(2, 0, [0, 1, 1, 0], [0] * 4)
    assert gen_h(1, 2).matrix(2) == H_BLOCK
    assert gen_x(3, 1) == gen_x(1, 3)  # swap is symmetric


def test_all_generators_orthogonal_involutions():
    n = 5
    gens = [gen_z(a) for a in range(1, n + 1)]
    gens += [gen_x(b, c) for b in range(1, n + 1) for c in range(b + 1, n + 1)]
    gens += [gen_h(b, c) for b in range(1, n + 1) for c in range(b + 1, n + 1)]
    for g in gens:
        M = g.matrix(n)
        assert M.is_orthogonal()
        assert (M @ M).is_identity()


def test_shear_not_orthogonal():
    shear = ExactMatrix(2, 0, [1, 1, 0, 1], [0] * 4)
    assert not shear.is_orthogonal()
    with pytest.raises(LinAlgError):
        level(shear)


def test_level_examples():
    assert level(ExactMatrix.identity(4)) == Level(0, 0, 0)
    assert level(gen_h(1, 2).matrix(2)) == Level(2, 1, 2)
    assert level(gen_x(1, 2).matrix(2)) == Level(2, 0, 0)


def test_level_identity_iff_zero():
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(1, 6)
        M = rand_orthogonal(rng, n, rng.randint(0, 12))
        assert (level(M) == Level(0, 0, 0)) == M.is_identity()


def test_level_matches_definition_oracle():
    rng = random.Random(37)
    for _ in range(150):
        n = rng.randint(2, 6)
        M = rand_orthogonal(rng, n, rng.randint(0, 15))
        assert tuple(level(M)) == oracle_level(M)


def test_matmul_against_oracle():
    rng = random.Random(41)
    for _ in range(80):
        n = rng.randint(1, 5)
        A, B = rand_general(rng, n), rand_general(rng, n)
        assert frac_eq(frac_of_matrix(A @ B), frac_mul(frac_of_matrix(A), frac_of_matrix(B)))


def test_tensor_and_direct_sum_against_oracle():
    rng = random.Random(43)
    for _ in range(60):
        A = rand_general(rng, rng.randint(1, 3))
        B = rand_general(rng, rng.randint(1, 3))
        assert frac_eq(
            frac_of_matrix(A.tensor(B)), frac_kron(frac_of_matrix(A), frac_of_matrix(B))
        )
        assert frac_eq(
            frac_of_matrix(A.direct_sum(B)),
            frac_direct_sum(frac_of_matrix(A), frac_of_matrix(B)),
        )


def test_matmul_dimension_mismatch():
    with pytest.raises(LinAlgError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


def test_column_has_own_exponent():
    # H at column 1 has exponent 1; after squaring, columns are integral
    M = gen_h(1, 2).matrix(3)
    k, col = M.column(3)
    assert k == 0 and col == [RingInt(0, 0), RingInt(0, 0), RingInt(1, 0)]
    k, col = M.column(1)
    assert k == 1 and col == [RingInt(1, 0), RingInt(1, 0), RingInt(0, 0)]


def test_embed_disjoint_blocks_commute():
    rng = random.Random(47)
    n = 6
    for _ in range(50):
        rows1 = rng.sample(range(1, n + 1), 2)
        rest = [r for r in range(1, n + 1) if r not in rows1]
        rows2 = rng.sample(rest, 2)
        A = m_level_embed(H_BLOCK, rows1, n)
        B = m_level_embed(H_BLOCK, rows2, n)
        assert A @ B == B @ A


def test_embed_unsorted_rows_permute_block():
    # H placed at reversed rows equals X * H * X on sorted rows
    n = 4
    rev = m_level_embed(H_BLOCK, [3, 2], n)
    X = gen_x(2, 3).matrix(n)
    H = gen_h(2, 3).matrix(n)
    assert rev == X @ H @ X


def test_embed_validation():
    with pytest.raises(LinAlgError):
        m_level_embed(H_BLOCK, [1, 1], 3)
    with pytest.raises(LinAlgError):
        m_level_embed(H_BLOCK, [1, 4], 3)
    with pytest.raises(LinAlgError):
        m_level_embed(H_BLOCK, [1], 3)


def test_matrix_dump_round_trip():
    assert format_matrix(gen_h(1, 2).matrix(2)) == "dim 2\nlde 1\n1 1\n1 -1"
    rng = random.Random(53)
    for _ in range(60):
        M = rand_general(rng, rng.randint(1, 4))
        assert parse_matrix(format_matrix(M)) == M
    with pytest.raises(LinAlgError):
        parse_matrix("dim 2\n1 0\n0 1")
    with pytest.raises(LinAlgError):
        parse_matrix("dim 2\nlde 0\n1 0\n0")


def test_entry_and_float_view():
    H = gen_h(1, 2).matrix(2)
    assert H.entry(1, 1) == dyadic(RingInt(1, 0), 1)
    assert H.entry(2, 2) == dyadic(RingInt(-1, 0), 1)
    approx = H.to_float()
    assert abs(approx[0][0] - 2**-0.5) < 1e-12
    assert abs(approx[1][1] + 2**-0.5) < 1e-12


def test_matmul_padding_invariance():
    # multiplying by differently padded but equal operands gives equal results
    A = ExactMatrix(2, 0, [0, 1, 1, 0], [0] * 4)
    A_padded = ExactMatrix(2, 2, [0, 2, 2, 0], [0] * 4)
    assert A == A_padded
    B = gen_h(1, 2).matrix(2)
    assert A @ B == A_padded @ B


def test_transpose_involution():
    rng = random.Random(59)
    for _ in range(50):
        M = rand_general(rng, rng.randint(1, 4))
        assert M.transpose().transpose() == M
