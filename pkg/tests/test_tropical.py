import itertools
import random

import pytest

from qcluster.errors import InputError
from qcluster.pointed import as_pointed
from qcluster.seed import apply_sequence, cluster_monomial, mutate, reexpand
from qcluster.tropical import (TropicalPoint, compatibly_pointed, phi_between, phi_path,
                               phi_step)
from qcluster.qtorus import monomial


def test_phi_sl3(sl3):
    assert phi_step(sl3, "1", (-1, 0, 1)) == (1, 0, 0)
    assert phi_path(sl3, [], (3, -1, 2)) == (3, -1, 2)
    with pytest.raises(InputError):
        phi_step(sl3, "2", (0, 0, 0))


def test_phi_bijective(a2, sl3):
    rng = random.Random(7)
    for s in (a2, sl3):
        for _ in range(50):
            g = tuple(rng.randint(-4, 4) for _ in range(s.n))
            k = rng.choice([s.vertices[i] for i in s.unfrozen])
            assert phi_step(mutate(s, k), k, phi_step(s, k, g)) == g


def test_a2_pentagon_loop(a2):
    rng = random.Random(3)
    for _ in range(30):
        g = (rng.randint(-5, 5), rng.randint(-5, 5))
        h = phi_path(a2, "12121", g)
        assert (h[1], h[0]) == g


def test_tropical_points(a2):
    u = apply_sequence(a2, "12")
    p = TropicalPoint.at(u, (1, 0))
    assert p.at_seed(a2, u) == (1, 0)
    assert p.rep == as_pointed(u.vars[0]).degree


def test_compatibly_pointed(sl3, a2):
    t = mutate(sl3, "1")
    rep = compatibly_pointed(t.vars[0], [sl3, t])
    assert rep.ok and rep.degrees == {"()": (-1, 0, 1), "1": (1, 0, 0)}
    assert compatibly_pointed(monomial(a2.torus, (1, 2)), [a2]).ok
    seeds = [apply_sequence(a2, "12121"[:j]) for j in range(6)]
    for s in seeds:
        for m in itertools.product(range(2), repeat=2):
            assert compatibly_pointed(cluster_monomial(s, m), seeds).ok


def test_compatibly_pointed_reports_failure(a2):
    # (1,1) - (0,0) = B~(-1, 1): the two terms are dominance-incomparable
    z = monomial(a2.torus, (1, 1)) + monomial(a2.torus, (0, 0))
    rep = compatibly_pointed(z, [a2])
    assert not rep.ok and rep.witness["seed"] == "()"


def test_path_independence(a2):
    # two words reaching the same cluster (up to relabelling) transport degrees alike
    for m in itertools.product(range(3), repeat=2):
        g = as_pointed(cluster_monomial(a2, m)).degree
        u1 = apply_sequence(a2, "12")
        direct = as_pointed(reexpand(cluster_monomial(a2, m), u1)).degree
        assert phi_path(a2, "12", g) == direct
        assert phi_between(a2, u1, g) == direct
