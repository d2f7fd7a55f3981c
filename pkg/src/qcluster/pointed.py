"""Degrees, pointedness, copointedness and the dominance order."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DominanceUndecided, NotPointedError
from .qcoef import QCoeff
from .qtorus import Exp, Torus, TorusElement, _torus_of, _vsub

__all__ = [
    "PointedElement", "as_pointed", "is_copointed", "degree", "dominance_lt",
    "check_sign_coherence", "SignCoherence",
]

DOMINANCE_BOUND = 64


@dataclass(frozen=True)
class PointedElement:
    """``element = X^degree . (1 + sum_n tail[n] Y^n)``, with the certificates ``n``."""

    element: TorusElement
    degree: Exp
    tail: dict = field(default_factory=dict)

    def coefficient(self, nvec: Sequence[int]) -> QCoeff:
        nvec = tuple(nvec)
        if not any(nvec):
            return QCoeff(1)
        return self.tail.get(nvec, QCoeff())

    def __str__(self) -> str:
        return f"deg {list(self.degree)}: {self.element}"


def _extremal(a: TorusElement, sign: int) -> tuple[Exp, dict]:
    t = a.torus
    if a.is_zero():
        raise NotPointedError("zero is not pointed")
    if t.r == 0:
        if len(a) != 1:
            raise NotPointedError("several terms but no unfrozen directions")
        (g,) = a.support()
    else:
        key = (lambda m: (t.height(m), m)) if sign > 0 else (lambda m: (-t.height(m), m))
        g = min(a.support(), key=key)
    tail = {}
    for m in a.support():
        if m == g:
            continue
        nvec = t.cone_coords(_vsub(m, g))
        if nvec is None:
            raise NotPointedError(f"term X{list(m)} is not X{list(g)} times a Y-monomial")
        if any(sign * x < 0 for x in nvec) or not any(nvec):
            raise NotPointedError(f"term X{list(m)} is not dominated by X{list(g)}")
        tail[tuple(sign * x for x in nvec)] = a.coeff(m)
    if a.coeff(g) != 1:
        raise NotPointedError(f"coefficient {a.coeff(g)} at X{list(g)} is not 1 (normalize first)")
    return g, tail


def as_pointed(a: TorusElement) -> PointedElement:
    """Certify ``a`` as ``g``-pointed. Truncated elements are checked on their known part."""
    if a.trunc is not None:
        g = a.trunc[0]
        if a.coeff(g) != 1:
            raise NotPointedError(f"coefficient {a.coeff(g)} at the base degree is not 1")
        tail = {}
        for m in a.support():
            if m != g:
                nvec = a.torus.cone_coords(_vsub(m, g))
                tail[nvec] = a.coeff(m)
        return PointedElement(a, g, tail)
    g, tail = _extremal(a, +1)
    return PointedElement(a, g, tail)


def degree(a: TorusElement) -> Exp:
    return as_pointed(a).degree


def is_copointed(a: TorusElement) -> Exp | None:
    """``eta`` when ``a = X^eta (1 + sum_{n>0} c_n Y^{-n})``, else None."""
    try:
        eta, _ = _extremal(a, -1)
    except NotPointedError:
        return None
    return eta


def copointed_tail(a: TorusElement) -> tuple[Exp, dict]:
    """Copointed degree and tail keyed by ``n > 0`` for the powers ``Y^{-n}``."""
    return _extremal(a, -1)


def dominance_lt(seed_or_torus, g1: Sequence[int], g2: Sequence[int],
                 bound: int = DOMINANCE_BOUND) -> bool:
    """``g1 <_t g2``: ``g1 = g2 + B~ n`` for some ``0 != n >= 0``.

    Exact when ``B~`` has full column rank.  Otherwise ``n`` is searched with
    ``|n| <= bound`` and :class:`DominanceUndecided` is raised if none is found.
    """
    t: Torus = _torus_of(seed_or_torus)
    delta = _vsub(tuple(g1), tuple(g2))
    if t.r == 0:
        return False
    if t.injective:
        nvec = t.cone_coords(delta)
        return nvec is not None and all(x >= 0 for x in nvec) and any(nvec)
    for total in range(1, bound + 1):
        for nvec in _compositions(total, t.r):
            if t.y_vector(nvec) == delta:
                return True
    raise DominanceUndecided(f"no witness with |n| <= {bound}; order undecided beyond the bound")


def _compositions(total: int, parts: int):
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


@dataclass
class SignCoherence:
    ok: bool
    degrees: dict            # vertex label -> degree vector
    incoherent_rows: list    # unfrozen vertex labels whose row mixes signs
    witness: dict | None = None

    def rows(self) -> list[str]:
        return [f"{v}: {list(g)}" for v, g in self.degrees.items()]


def check_sign_coherence(initial, target) -> SignCoherence:
    """Degrees of ``target``'s cluster variables in ``initial``'s torus.

    Every variable must be pointed; additionally for each unfrozen ``k`` the
    ``k``-th components of the unfrozen variables' degrees share a sign.
    """
    from .seed import chart_between

    seed = target if target.base == initial.torus else chart_between(initial, target)
    degrees = {}
    for i, x in enumerate(seed.vars):
        try:
            degrees[seed.vertices[i]] = as_pointed(x).degree
        except NotPointedError as exc:
            return SignCoherence(False, degrees, [], {"vertex": seed.vertices[i], "error": str(exc)})
    bad = []
    for k in seed.unfrozen:
        vals = [degrees[seed.vertices[i]][k] for i in seed.unfrozen]
        if any(x > 0 for x in vals) and any(x < 0 for x in vals):
            bad.append(seed.vertices[k])
    witness = {"rows": bad} if bad else None
    return SignCoherence(not bad, degrees, bad, witness)
