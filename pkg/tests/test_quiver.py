import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tamecluster.quiver import (
    ExchangeMatrix,
    NotExtendedDynkin,
    QuiverError,
    QuiverParseError,
    affine_profile,
    builtin_quiver,
    euler_form,
    format_quiver_text,
    is_dynkin,
    mutate_matrix,
    parse_quiver_text,
)


@st.composite
def exchange_matrices(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-3, 3))
            b[i][j], b[j][i] = v, -v
    return ExchangeMatrix(tuple(map(tuple, b)))


def test_mutation_example():
    B = ExchangeMatrix.from_arrows(3, [(1, 2), (2, 3), (1, 3)])
    M = mutate_matrix(B, 2)
    assert (M[1, 2], M[2, 3], M[1, 3]) == (-1, -1, 2)


def test_zero_matrix_is_fixed():
    Z = ExchangeMatrix.zero(4)
    assert all(mutate_matrix(Z, k) == Z for k in range(1, 5))


def test_mutation_index_checked():
    with pytest.raises(IndexError):
        mutate_matrix(ExchangeMatrix.zero(2), 3)


def test_rejects_non_skew():
    with pytest.raises(QuiverError):
        ExchangeMatrix(((0, 1), (1, 0)))


@given(exchange_matrices(), st.data())
def test_mutation_involution(B, data):
    k = data.draw(st.integers(1, B.n))
    M = mutate_matrix(B, k)
    assert mutate_matrix(M, k) == B
    assert all(M.b[i][j] == -M.b[j][i] for i in range(B.n) for j in range(B.n))


@given(exchange_matrices(max_n=5))
def test_text_format_roundtrip(B):
    if not any(any(r) for r in B.b) or not B.is_connected():
        return
    # vertices without arrows cannot be expressed, connected ones always can
    assert parse_quiver_text(format_quiver_text(B)) == B


def test_parse_errors_carry_line():
    with pytest.raises(QuiverParseError, match="line 3"):
        parse_quiver_text("1 2\n# comment\n2 two\n")
    with pytest.raises(QuiverParseError, match="line 2"):
        parse_quiver_text("1 2\n2 1\n")
    with pytest.raises(QuiverParseError, match="line 1"):
        parse_quiver_text("1 1\n")


def test_parse_ignores_comments_and_blanks():
    B = parse_quiver_text("# triangle\n\n1 2\n2 3  # tail\n1 3\n")
    assert B == builtin_quiver("A(2,1)")


def _null_vector(B):
    """Smallest positive vector in the radical of the symmetrized Euler form, by search."""
    n = B.n
    sym = [[(2 if i == j else 0) - abs(B.b[i][j]) for j in range(n)] for i in range(n)]
    for x in product(range(7), repeat=n):
        if any(x) and all(sum(sym[i][j] * x[j] for j in range(n)) == 0 for i in range(n)):
            return x
    return None


@pytest.mark.parametrize("name, ranks", [
    ("A(2,1)", (2,)), ("A(3,2)", (3, 2)), ("A(4,1)", (4,)), ("A(1,1)", ()),
    ("D(4)", (2, 2, 2)), ("D(5)", (3, 2, 2)), ("D(6)", (4, 2, 2)),
    ("E6", (3, 3, 2)), ("E7", (4, 3, 2)), ("E8", (5, 3, 2)),
])
def test_profiles(name, ranks):
    B = builtin_quiver(name)
    prof = affine_profile(B)
    assert tuple(sorted(prof.ranks, reverse=True)) == ranks
    if B.n <= 7:
        assert prof.delta == _null_vector(B)
    assert prof.defect(prof.delta) == 0
    assert euler_form(B, prof.delta, prof.delta) == 0


def test_profile_examples():
    assert affine_profile(builtin_quiver("A(2,1)")).delta == (1, 1, 1)
    assert affine_profile(builtin_quiver("D(4)")).delta == (2, 1, 1, 1, 1)


def test_dynkin_rejected():
    A2 = ExchangeMatrix.from_arrows(2, [(1, 2)])
    assert is_dynkin(A2)
    with pytest.raises(NotExtendedDynkin):
        affine_profile(A2)


def test_defect_negative_on_projectives():
    B = builtin_quiver("D(4)")
    prof = affine_profile(B)
    from tamecluster.representations import PathQuiver, projective
    q = PathQuiver.from_matrix(B)
    assert all(prof.defect(projective(q, i).dims) < 0 for i in range(B.n))


@pytest.mark.parametrize("bad", ["A(2)", "D(3)", "E9", "B(2,1)", "A(0,2)"])
def test_bad_builtin_names(bad):
    with pytest.raises(QuiverError):
        builtin_quiver(bad)


def test_random_matrices_stay_integral():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 6)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-2, 2)
                b[i][j], b[j][i] = v, -v
        B = ExchangeMatrix(tuple(map(tuple, b)))
        for k in range(1, n + 1):
            assert all(isinstance(v, int) for row in mutate_matrix(B, k).b for v in row)
