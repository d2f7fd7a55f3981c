import itertools

import pytest
from qcluster.errors import DominanceUndecided, NotPointedError
from qcluster.pointed import (as_pointed, check_sign_coherence, copointed_tail, dominance_lt,
                              is_copointed)
from qcluster.qtorus import Torus, monomial, normalize
from qcluster.seed import apply_sequence, cluster_monomial, mutate

import oracles


def test_as_pointed_examples(sl3):
    x1p = mutate(sl3, "1").vars[0]
    p = as_pointed(x1p)
    assert p.degree == (-1, 0, 1)
    assert p.tail == {(1,): 1}
    assert as_pointed(monomial(sl3.torus, (2, 0, -1))).tail == {}
    with pytest.raises(NotPointedError):
        as_pointed(monomial(sl3.torus, (1, 0, 0)) + monomial(sl3.torus, (0, 1, 0)))


def test_copointed(sl3):
    x1p = mutate(sl3, "1").vars[0]
    assert is_copointed(x1p) == (-1, 1, 0)
    eta, tail = copointed_tail(x1p)
    assert tail == {(1,): 1}
    assert is_copointed(monomial(sl3.torus, (0, 3, 1))) == (0, 3, 1)
    assert is_copointed(monomial(sl3.torus, (1, 0, 0)) + monomial(sl3.torus, (0, 1, 0))) is None


def test_dominance_examples(sl3):
    assert dominance_lt(sl3, (-1, 1, 0), (-1, 0, 1))
    assert not dominance_lt(sl3, (-1, 0, 1), (-1, 1, 0))
    assert not dominance_lt(sl3, (1, 2, 3), (1, 2, 3))


def test_dominance_bound_reported():
    # rank-deficient B~: only bounded search is available
    t = Torus(((0, 0), (0, 0)), ((1, -1), (0, 0)), (0, 1))
    assert dominance_lt(t, (1, 0), (0, 0))
    with pytest.raises(DominanceUndecided):
        dominance_lt(t, (0, 1), (0, 0), bound=3)


def test_dominance_partial_order(a2, sl3):
    for s in (a2, sl3):
        pts = list(itertools.product(range(-2, 3), repeat=s.n))
        rel = {(a, b) for a in pts for b in pts if dominance_lt(s, a, b)}
        for a, b in rel:
            assert (b, a) not in rel
            assert a != b
        for a, b in rel:
            for c in pts:
                if (b, c) in rel:
                    assert (a, c) in rel


def test_sign_coherence(sl3, a2):
    t = mutate(sl3, "1")
    rep = check_sign_coherence(sl3, t)
    assert rep.ok
    assert rep.degrees == {"1": (-1, 0, 1), "2": (0, 1, 0), "3": (0, 0, 1)}
    assert check_sign_coherence(sl3, sl3).degrees == {"1": (1, 0, 0), "2": (0, 1, 0), "3": (0, 0, 1)}
    degs = set()
    u = a2
    for k in "12121":
        u = mutate(u, k)
        rep = check_sign_coherence(a2, u)
        assert rep.ok
        degs.update(rep.degrees.values())
    assert len(degs) == 5


@pytest.mark.parametrize("word", ["", "1", "12", "121", "2121"])
def test_cluster_monomials_pointed_against_brute_force(a2, word):
    u = apply_sequence(a2, word)
    B = [list(r) for r in a2.B]
    seen = {}
    for m in itertools.product(range(3), repeat=2):
        z = cluster_monomial(u, m)
        g = as_pointed(z).degree
        assert oracles.brute_pointed_degree(z.support(), B) == g
        assert g not in seen
        seen[g] = m


def test_degree_additive(sl3):
    t = mutate(sl3, "1")
    a, b = t.vars[0], sl3.vars[2]
    g = as_pointed(a).degree
    h = as_pointed(b).degree
    prod = normalize(a * b, tuple(x + y for x, y in zip(g, h)))
    assert as_pointed(prod).degree == tuple(x + y for x, y in zip(g, h))
