import random

import pytest

from qcluster.errors import InputError
from qcluster.liegen import (CartanData, cartan_matrix, load_cartan, seed_from_word,
                             sl3_seed, validate_reduced)
from qcluster.seed import mutate, validate
from qcluster.triangular import find_t1

import oracles


def test_cartan_matrices():
    assert cartan_matrix("A2").matrix == ((2, -1), (-1, 2))
    assert cartan_matrix("B2").matrix == ((2, -1), (-2, 2))
    assert cartan_matrix("G2").matrix == ((2, -1), (-3, 2))
    assert cartan_matrix("C3").symmetrizer() == (1, 1, 2)
    for name in ("A4", "B3", "C4", "D4", "E6", "E8", "F4", "G2"):
        assert cartan_matrix(name).is_finite_type()
    assert not CartanData(((2, -2), (-2, 2))).is_finite_type()
    with pytest.raises(InputError):
        cartan_matrix("Z9")
    with pytest.raises(InputError):
        CartanData(((2, -1), (0, 2)))
    with pytest.raises(InputError):
        CartanData(((2, -1, 0), (-1, 2, -1), (-2, -1, 2)))


def test_load_cartan(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("[[2, -1], [-3, 2]]")
    assert load_cartan(str(p)).matrix == ((2, -1), (-3, 2))
    p.write_text("[[2, -1], [-3, 2]")
    with pytest.raises(InputError, match="line 1"):
        load_cartan(str(p))


def test_validate_reduced():
    a2 = cartan_matrix("A2")
    assert validate_reduced(a2, (1, 2, 1))
    assert not validate_reduced(a2, (1, 1))
    assert not validate_reduced(a2, (1, 2, 1, 2))
    assert validate_reduced(cartan_matrix("B2"), (1, 2, 1, 2))
    assert not validate_reduced(cartan_matrix("B2"), (1, 2, 1, 2, 1))
    assert validate_reduced(cartan_matrix("G2"), (1, 2) * 3)
    assert not validate_reduced(cartan_matrix("G2"), (1, 2) * 3 + (1,))
    # affine A1: every alternating word is reduced
    assert validate_reduced(CartanData(((2, -2), (-2, 2))), (1, 2) * 6)


def _inversions(n, word):
    # type A_n: s_i swaps positions i, i+1 of a permutation of n+1 letters
    perm = list(range(n + 1))
    for i in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return sum(perm[a] > perm[b] for a in range(n + 1) for b in range(a + 1, n + 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_type_a_against_inversions(n):
    rng = random.Random(n)
    c = cartan_matrix(f"A{n}")
    for _ in range(200):
        word = [rng.randint(1, n) for _ in range(rng.randint(1, 8))]
        assert validate_reduced(c, word) == (_inversions(n, word) == len(word))


@pytest.mark.parametrize("name,m", [("B2", 4), ("C2", 4), ("G2", 6)])
def test_reduced_dihedral(name, m):
    # in a dihedral group of order 2m, alternating words are reduced up to length m
    c = cartan_matrix(name)
    for start in (1, 2):
        for length in range(1, m + 3):
            word = [start if j % 2 == 0 else 3 - start for j in range(length)]
            assert validate_reduced(c, word) == (length <= m)


def test_sl3_fixture():
    s = sl3_seed()
    assert s.vertices == ("1", "2", "3")
    assert s.unfrozen == (0,)
    assert s.B == ((0,), (1,), (-1,))
    assert validate(s) == (1,)
    t = mutate(s, "1")
    assert t.vars[0].at_one() == {(-1, 0, 1): 1, (-1, 1, 0): 1}


def test_small_words():
    s = seed_from_word(cartan_matrix("A1"), (1,))
    assert s.n == 1 and s.r == 0
    s = seed_from_word(cartan_matrix("A2"), (1, 2))
    assert s.n == 2 and s.r == 0
    with pytest.raises(InputError):
        seed_from_word(cartan_matrix("A2"), (1, 1))
    with pytest.raises(InputError):
        seed_from_word(cartan_matrix("A2"), (1, 3))


@pytest.mark.parametrize("name,word", [
    ("A3", (1, 2, 1, 3, 2, 1)), ("B2", (1, 2, 1, 2)), ("C2", (2, 1, 2, 1)),
    ("A2", (1, 2, 1)), ("A3", (2, 1, 3, 2)),
])
def test_generated_seeds_validate_and_reach_t1(name, word):
    c = cartan_matrix(name)
    s = seed_from_word(c, word)
    validate(s)
    # principal part skew-symmetrizable by the Cartan symmetrizer of the letters
    d = c.symmetrizer()
    for a, k in enumerate(s.unfrozen):
        for b, l in enumerate(s.unfrozen):
            assert d[word[k] - 1] * s.B[l][a] == -d[word[l] - 1] * s.B[k][b]
    data = find_t1(s, max_depth=len(word))
    assert len(data.word) <= len(word)


def test_generated_classical_exchange_is_laurent():
    s = seed_from_word(cartan_matrix("A3"), (1, 2, 1, 3, 2, 1))
    word = ["1", "2", "3", "1"]
    xs, cur = oracles.classical_cluster([list(r) for r in s.B], list(s.unfrozen),
                                        [s.index(k) for k in word])
    from qcluster.seed import apply_sequence
    u = apply_sequence(s, word)
    for i, x in enumerate(u.vars):
        assert x.at_one() == oracles.laurent_at_one(cur[i], xs)
