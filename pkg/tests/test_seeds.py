from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamecluster.laurent import LaurentPolynomial as L
from tamecluster.quiver import ExchangeMatrix, builtin_quiver, mutate_matrix
from tamecluster.seeds import explore, format_word, mutate_along, mutate_seed, parse_word, root_seed, words

A2 = ExchangeMatrix.from_arrows(2, [(1, 2)])


def test_first_exchange():
    s = mutate_seed(root_seed(A2), 1)
    assert s.cluster[0] == L(2, {(-1, 0): 1, (-1, 1): 1})
    assert s.cluster[1] == L.variable(2, 1)


def test_index_error():
    with pytest.raises(IndexError):
        mutate_seed(root_seed(A2), 3)


def test_depth_zero():
    ex = explore(root_seed(A2), 0)
    assert len(ex.seeds) == 1 and len(ex.variables) == 2


def test_a2_has_five_variables():
    assert len(explore(root_seed(A2), 5).variables) == 5


def test_affine_keeps_growing():
    root = root_seed(builtin_quiver("A(2,1)"))
    assert len(explore(root, 4).variables) > len(explore(root, 3).variables)


def test_words_skip_immediate_repeats():
    ws = list(words(3, 3))
    assert ws[0] == () and len(ws) == 1 + 3 + 6 + 12
    assert all(w[i] != w[i + 1] for w in ws for i in range(len(w) - 1))


def test_word_text():
    assert parse_word(format_word((1, 3, 2))) == (1, 3, 2)
    assert parse_word("") == ()


def _numeric_mutation(B, values, word):
    """Direct evaluation of exchange relations on rational numbers."""
    values = list(values)
    for k in word:
        k -= 1
        plus = minus = Fraction(1)
        for i in range(B.n):
            b = B.b[i][k]
            if b > 0:
                plus *= values[i] ** b
            elif b < 0:
                minus *= values[i] ** -b
        values[k] = (plus + minus) / values[k]
        B = mutate_matrix(B, k + 1)
    return values


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A(2,1)", "D(4)", "A(3,2)"]), st.data())
def test_symbolic_agrees_with_numeric(name, data):
    B = builtin_quiver(name)
    word = data.draw(st.lists(st.integers(1, B.n), max_size=6))
    pt = data.draw(st.tuples(*[st.integers(1, 5).map(Fraction)] * B.n))
    s = mutate_along(root_seed(B), word)
    assert [x.evaluate(pt) for x in s.cluster] == _numeric_mutation(B, pt, word)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A(2,1)", "D(4)"]), st.data())
def test_seed_mutation_involution(name, data):
    B = builtin_quiver(name)
    word = data.draw(st.lists(st.integers(1, B.n), max_size=5))
    k = data.draw(st.integers(1, B.n))
    s = mutate_along(root_seed(B), word)
    assert mutate_seed(mutate_seed(s, k), k) == s
