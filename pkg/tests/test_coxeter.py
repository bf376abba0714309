from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from totpos.coxeter import (
    CartanGraph,
    InfiniteGroupError,
    WeylElement,
    cartan_matrix,
    cartan_type,
    is_positive_definite,
    type_A,
)

from .conftest import A1, A1xA1, A2, A3, DOUBLE


def perm_of_word(word, n):
    """Permutation of {0..n} for a product of adjacent transpositions s_i = (i-1 i)."""
    p = list(range(n + 1))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def inversions(p):
    return sum(1 for a, b in itertools.combinations(p, 2) if a > b)


def brute_force_words(n, max_len):
    """perm -> sorted list of minimal-length words, by exhaustive search over all words."""
    found = {}
    for m in range(max_len + 1):
        for word in itertools.product(range(1, n + 1), repeat=m):
            p = perm_of_word(word, n)
            if inversions(p) == m:
                found.setdefault(p, []).append(word)
    return found


A3_WORDS = brute_force_words(3, 6)


def test_cartan_matrix_examples():
    assert cartan_matrix(A2) == ((2, -1), (-1, 2))
    assert cartan_matrix(A1xA1) == ((2, 0), (0, 2))
    assert cartan_matrix(DOUBLE) == ((2, -2), (-2, 2))


@pytest.mark.parametrize(
    "graph, expected",
    [(A1, True), (A2, True), (A3, True), (DOUBLE, False), (A1xA1, True)],
)
def test_positive_definite(graph, expected):
    assert is_positive_definite(graph.cartan) is expected


def test_a3_leading_minors():
    # leading principal minors of the A3 Cartan matrix are 2, 3, 4
    from totpos.coxeter import _det

    A = A3.cartan
    assert [_det([list(r[:k]) for r in A[:k]]) for k in (1, 2, 3)] == [2, 3, 4]


@pytest.mark.parametrize(
    "bad",
    [
        {"nodes": ["a", "a"], "edges": []},
        {"nodes": ["a", "b"], "edges": [["a", "a"]]},
        {"nodes": ["a", "b"], "edges": [["a", "c"]]},
    ],
)
def test_graph_validation(bad):
    with pytest.raises(ValueError):
        CartanGraph.from_json(bad)


def test_graph_json_round_trip(tmp_path):
    g = CartanGraph.from_json({"nodes": ["x", "y", "z"], "edges": [["x", "y"], ["y", "z"]]})
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    assert CartanGraph.load(path) == g
    assert g.pairing("x", "y") == -1 and g.pairing("x", "z") == 0


def test_string_nodes_order_canonical_word():
    g = CartanGraph(("b", "a"), (("a", "b"),))
    # node order b < a, so the canonical word of the longest element starts with b
    assert g.weyl.longest_element().word == ("b", "a", "b")


def test_is_reduced_examples():
    W = A2.weyl
    assert not W.is_reduced((1, 1))
    assert W.canonical((1, 1)) == WeylElement(())
    assert W.is_reduced((1, 2, 1)) and W.length((1, 2, 1)) == 3
    assert W.canonical((2, 1, 2)).word == (1, 2, 1)


def test_unknown_letter():
    with pytest.raises(ValueError):
        A2.weyl.canonical((1, 7))


@pytest.mark.parametrize("graph, word", [(A1, (1,)), (A2, (1, 2, 1))])
def test_longest_element_small(graph, word):
    assert graph.weyl.longest_element().word == word


def test_longest_element_a3():
    assert len(A3.weyl.longest_element()) == 6


def test_longest_element_infinite_raises():
    with pytest.raises(InfiniteGroupError):
        DOUBLE.weyl.longest_element()
    with pytest.raises(InfiniteGroupError):
        DOUBLE.weyl.elements(cap=50)


def test_elements_counts():
    assert len(A2.weyl.elements()) == 6
    assert len(A3.weyl.elements()) == 24
    assert len(cartan_type("A4").weyl.elements()) == 120


def test_reduced_expressions_examples():
    W = A2.weyl
    assert W.reduced_expressions(W.longest_element()) == ((1, 2, 1), (2, 1, 2))
    assert A1xA1.weyl.reduced_expressions(WeylElement((1, 2))) == ((1, 2), (2, 1))
    assert len(A3.weyl.reduced_expressions(A3.weyl.longest_element())) == 16


def test_a3_against_permutation_oracle():
    W = A3.weyl
    assert len(A3_WORDS) == 24
    for perm, words in A3_WORDS.items():
        w = W.canonical(words[0])
        assert len(w) == inversions(perm)
        assert w.word == min(words)
        assert set(W.reduced_expressions(w)) == set(words)
        for word in words:
            assert W.canonical(word) == w


@given(st.lists(st.integers(1, 3), max_size=10))
def test_canonical_matches_permutations(word):
    W = A3.weyl
    w = W.canonical(tuple(word))
    assert perm_of_word(w.word, 3) == perm_of_word(word, 3)
    assert len(w) == inversions(perm_of_word(word, 3))
    assert W.canonical(w.word) == w


@given(st.lists(st.integers(1, 3), max_size=8), st.integers(1, 3))
def test_length_changes_by_one(word, i):
    W = A3.weyl
    w = W.canonical(tuple(word))
    v = W.multiply(w, WeylElement((i,)))
    assert abs(len(v) - len(w)) == 1
    assert (len(v) < len(w)) == W.descent_right(w, i)
    assert W.descent_left(w, i) == (len(W.canonical((i,) + w.word)) < len(w))


def test_infinite_type_word_operations():
    W = DOUBLE.weyl
    # no braid relation for (i:j) = -2: alternating words stay reduced
    word = (1, 2) * 5
    assert W.is_reduced(word)
    assert W.reduced_expressions(W.canonical(word)) == (word,)
    assert not W.is_reduced((1, 2, 2, 1))


def test_braid_path_applies():
    W = A3.weyl
    w0 = W.longest_element()
    words = W.reduced_expressions(w0)
    src, dst = words[0], words[-1]
    word = src
    for kind, p in W.braid_path(src, dst):
        if kind == "swap":
            word = word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
        else:
            word = word[:p] + (word[p + 1], word[p], word[p + 1]) + word[p + 3 :]
    assert word == dst
    with pytest.raises(ValueError):
        W.braid_path((1, 2), (2, 1))


def test_demazure_product():
    W = A2.weyl
    s1 = WeylElement((1,))
    assert W.demazure(s1, s1) == s1
    assert W.demazure(s1, WeylElement((2, 1))) == W.longest_element()
    assert W.demazure(W.longest_element(), W.longest_element()) == W.longest_element()


def test_type_parsing():
    assert type_A(3) == cartan_type("A3")
    with pytest.raises(ValueError):
        cartan_type("B2")
