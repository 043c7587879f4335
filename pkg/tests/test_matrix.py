import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddg_forge.designs import hadamard_sylvester, verify_weighing
from ddg_forge.matrix import (
    DimensionMismatch,
    IntMatrix,
    MatrixFormatError,
    MatrixTooLarge,
    NotSquare,
    char_poly,
    detect_alpha_beta,
    format_matrix,
    format_poly,
    kronecker,
    mod2_congruent,
    parse_matrix,
    poly_mul,
    read_matrix,
    write_matrix,
)

from oracles import cofactor_charpoly, leverrier_charpoly, matmul


def square_matrices(max_n=6, lo=-3, hi=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


# -- construction and arithmetic ---------------------------------------------------------------

def test_basic_constructors():
    assert IntMatrix.identity(3).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert IntMatrix.ones(2, 3).tolist() == [[1, 1, 1], [1, 1, 1]]
    assert IntMatrix.zeros(2).tolist() == [[0, 0], [0, 0]]


def test_rejects_non_integers():
    with pytest.raises(ValueError):
        IntMatrix([[1.5]])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])


def test_matrix_is_read_only():
    m = IntMatrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.array[0, 0] = 9


def test_big_integers_fall_back_to_exact_objects():
    big = 2**70
    m = IntMatrix([[big, 1], [1, big]])
    sq = m @ m
    assert sq.tolist() == [[big * big + 1, 2 * big], [2 * big, big * big + 1]]
    assert (m + m)[0, 0] == 2 * big


def test_overflow_guard_in_products():
    # int64 would wrap here; the guard must switch to exact arithmetic
    m = IntMatrix([[2**31, 2**31], [2**31, 2**31]])
    assert (m @ m)[0, 0] == 2 * 2**62


def test_half_requires_even_entries():
    assert IntMatrix([[2, 4]]).half().tolist() == [[1, 2]]
    with pytest.raises(ValueError):
        IntMatrix([[1, 2]]).half()


def test_block_assembly_and_mismatch():
    a = IntMatrix.identity(2)
    b = IntMatrix.block([[a, IntMatrix.zeros(2)], [IntMatrix.zeros(2), a]])
    assert b == IntMatrix.identity(4)
    with pytest.raises(DimensionMismatch):
        IntMatrix.block([[a, IntMatrix.zeros(3)]])


@given(square_matrices(5), square_matrices(5))
@settings(max_examples=50, deadline=None)
def test_product_matches_naive(a, b):
    n = min(len(a), len(b))
    a = [r[:n] for r in a[:n]]
    b = [r[:n] for r in b[:n]]
    assert (IntMatrix(a) @ IntMatrix(b)).tolist() == matmul(a, b)


# -- kronecker ---------------------------------------------------------------------------------

def test_kronecker_examples():
    swap = IntMatrix([[0, 1], [1, 0]])
    p = kronecker(swap, IntMatrix.identity(2))
    assert p.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    m = IntMatrix([[1, -2], [3, 4]])
    assert kronecker(IntMatrix.identity(1), m) == m
    w = kronecker(swap, hadamard_sylvester(2))
    assert w.is_symmetric()
    assert verify_weighing(w).w == 4
    assert not np.any(w.array[:4, :4]) and not np.any(w.array[4:, 4:])


def small(n):
    return st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)


@given(small(2), small(3), small(2), small(3))
@settings(max_examples=40, deadline=None)
def test_kronecker_mixed_product(a, b, c, d):
    A, B, C, D = map(IntMatrix, (a, b, c, d))
    assert kronecker(A, B) @ kronecker(C, D) == kronecker(A @ C, B @ D)


# -- alpha/beta and mod 2 ----------------------------------------------------------------------

def test_detect_alpha_beta_examples():
    assert detect_alpha_beta(5 * IntMatrix.identity(3)) == (5, 0)
    assert detect_alpha_beta(IntMatrix.ones(4)) == (0, 1)
    assert detect_alpha_beta(IntMatrix([[1, 2], [3, 1]])) is None
    with pytest.raises(NotSquare):
        detect_alpha_beta(IntMatrix.ones(2, 3))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(2, 8))
def test_detect_alpha_beta_round_trip(alpha, beta, n):
    m = alpha * IntMatrix.identity(n) + beta * IntMatrix.ones(n)
    assert detect_alpha_beta(m) == (alpha, beta)


def test_mod2_examples():
    assert mod2_congruent(IntMatrix([[0, 2], [2, 0]]), IntMatrix.zeros(2))
    assert mod2_congruent(IntMatrix([[1, 1], [1, 1]]), IntMatrix([[-1, 1], [1, -1]]))
    assert not mod2_congruent(IntMatrix.identity(2), IntMatrix.zeros(2))
    with pytest.raises(DimensionMismatch):
        mod2_congruent(IntMatrix.identity(2), IntMatrix.identity(3))


# -- characteristic polynomial -----------------------------------------------------------------

def test_char_poly_examples():
    assert char_poly(IntMatrix.identity(2)) == [1, -2, 1]
    assert char_poly(IntMatrix([[0, 1], [1, 0]])) == [1, 0, -1]
    assert char_poly(IntMatrix.ones(3)) == [1, -3, 0, 0]
    with pytest.raises(NotSquare):
        char_poly(IntMatrix.ones(2, 3))


def test_char_poly_size_cap():
    with pytest.raises(MatrixTooLarge):
        char_poly(IntMatrix.zeros(513))


@given(square_matrices(6))
@settings(max_examples=60, deadline=None)
def test_char_poly_matches_cofactor_oracle(rows):
    assert char_poly(IntMatrix(rows)) == cofactor_charpoly(rows)


@pytest.mark.parametrize("seed", range(4))
def test_char_poly_matches_leverrier_on_larger_matrices(seed):
    rng = np.random.default_rng(seed)
    n = 12 + 4 * seed
    a = rng.integers(-5, 6, size=(n, n))
    assert char_poly(IntMatrix(a)) == leverrier_charpoly(a)


def test_char_poly_with_huge_coefficients():
    # entries near 2^40 force coefficients far beyond 64 bits
    a = [[2**40 + i * j for j in range(5)] for i in range(5)]
    assert char_poly(IntMatrix(a)) == leverrier_charpoly(a)


def test_char_poly_of_symmetric_01_matrix_order_40():
    rng = np.random.default_rng(7)
    a = np.triu(rng.integers(0, 2, size=(40, 40)), 1)
    a = a + a.T
    got = char_poly(IntMatrix(a))
    assert got == leverrier_charpoly(a)
    assert got[0] == 1 and got[1] == 0  # zero trace


def test_poly_helpers():
    assert poly_mul([1, -1], [1, 1]) == [1, 0, -1]
    assert format_poly([1, -3, 0, 0]) == "x^3 - 3x^2"
    assert format_poly([1, 0, -1]) == "x^2 - 1"
    assert format_poly([0]) == "0"


# -- text format -------------------------------------------------------------------------------

def test_format_is_exact():
    m = IntMatrix([[1, -2], [0, 3]])
    assert format_matrix(m) == "2 2\n1 -2\n0 3\n"
    assert format_matrix(m, ["note"]) == "# note\n2 2\n1 -2\n0 3\n"


def test_parse_is_lenient_to_spacing():
    m = parse_matrix("# c\n# d\n2  3\n1   2 3\n 4 5 6\n")
    assert m.tolist() == [[1, 2, 3], [4, 5, 6]]


@pytest.mark.parametrize(
    "text",
    ["", "2 2\n1 2\n", "2 2\n1 2\n3 4", "2 2\n1 2 3\n4 5\n", "x y\n", "1 1\na\n", "1 1\n1\n2\n"],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


@given(square_matrices(5, -100, 100))
@settings(max_examples=30, deadline=None)
def test_text_round_trip(rows):
    m = IntMatrix(rows)
    assert parse_matrix(format_matrix(m)) == m


def test_file_round_trip(tmp_path):
    m = IntMatrix([[2**80, -1], [0, 5]])
    write_matrix(tmp_path / "m.mat", m)
    assert read_matrix(tmp_path / "m.mat") == m
