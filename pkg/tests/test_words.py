"""Degeneracy-word algebra against the monotone-surjection model.

A word is faithfully a monotone surjection of ordinals; both operations are
checked exhaustively against plain composition of vertex maps for all small
dimensions.
"""

import pytest

from simdiff.words import (
    apply_face,
    apply_word,
    check_word,
    compose_degeneracy,
    monotone_surjections,
    surjection_of_word,
    word_of_surjection,
)


def test_known_identities():
    # d_0 s_0 = id
    assert apply_face((0,), 0) == ((), None)
    # d_2 s_0 = s_0 d_1
    assert apply_face((0,), 2) == ((0,), 1)
    # d_0 s_1 = s_0 d_0
    assert apply_face((1,), 0) == ((0,), 0)
    # d_0 s_2 s_0 = s_1 (cancellation after one commutation)
    assert apply_face((0, 2), 0) == ((1,), None)


def test_compose_degeneracy_ordering():
    assert compose_degeneracy((), 0) == (0,)
    assert compose_degeneracy((0,), 0) == (0, 1)   # s_0 s_0 = s_1 s_0
    assert compose_degeneracy((0,), 2) == (0, 2)
    assert compose_degeneracy((1, 3), 2) == (1, 2, 4)


def test_check_word_rejects():
    with pytest.raises(ValueError):
        check_word((1, 1))
    with pytest.raises(ValueError):
        check_word((2, 1))
    with pytest.raises(ValueError):
        check_word((-1,))
    with pytest.raises(ValueError):
        check_word((0, 3), base_dim=1)  # entry 3 applied at dimension 2
    check_word((0, 2), base_dim=1)


def _sigma(j, m):
    """Vertex map of the codegeneracy [m+1] -> [m]."""
    return tuple(v if v <= j else v - 1 for v in range(m + 2))


def _delta(i, m):
    """Vertex map of the coface [m-1] -> [m]."""
    return tuple(v if v < i else v + 1 for v in range(m))


def _compose(outer, inner):
    return tuple(outer[v] for v in inner)


@pytest.mark.parametrize("m", range(1, 7))
def test_word_surjection_round_trip(m):
    for k in range(m + 1):
        for theta in monotone_surjections(m, k):
            word = word_of_surjection(theta)
            check_word(word, base_dim=k)
            assert surjection_of_word(word, m) == theta


@pytest.mark.parametrize("m", range(1, 6))
def test_compose_degeneracy_exhaustive(m):
    for k in range(m + 1):
        for theta in monotone_surjections(m, k):
            word = word_of_surjection(theta)
            for j in range(m + 1):
                composite = _compose(theta, _sigma(j, m))
                assert compose_degeneracy(word, j) == word_of_surjection(composite)


@pytest.mark.parametrize("m", range(1, 6))
def test_apply_face_exhaustive(m):
    for k in range(m + 1):
        for theta in monotone_surjections(m, k):
            word = word_of_surjection(theta)
            for i in range(m + 1):
                f = _compose(theta, _delta(i, m))
                missing = [v for v in range(k + 1) if v not in f]
                got_word, got_residual = apply_face(word, i)
                if missing:
                    assert len(missing) == 1
                    mv = missing[0]
                    g = tuple(v if v < mv else v - 1 for v in f)
                    assert got_residual == mv
                    assert got_word == word_of_surjection(g)
                else:
                    assert got_residual is None
                    assert got_word == word_of_surjection(f)


def test_apply_word_stacks_innermost_first():
    # s_1 s_0 applied to an edge vertexwise: double the middle then the front
    assert apply_word((), (0, 1)) == (0, 1)
    assert apply_word((0,), (0, 2)) == (0, 1, 2)
