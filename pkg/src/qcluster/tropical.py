"""Tropical transformations of degree vectors.

Convention (fixed by the degree oracle in the test-suite): mutating at ``k``
with exchange matrix ``B~`` sends ``g`` to ``g'`` with ``g'_k = -g_k`` and,
for ``i != k``,

    g'_i = g_i + [b_ik]_+ g_k     if g_k >= 0
    g'_i = g_i + [-b_ik]_+ g_k    if g_k <  0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DivisionError, InputError, NotPointedError
from .pointed import as_pointed
from .qtorus import Exp, TorusElement
from .seed import Seed, mutate_matrices, reduce_word, reexpand

__all__ = [
    "PHI_CONVENTION", "phi_step", "phi_path", "phi_between", "TropicalPoint",
    "compatibly_pointed", "CompatibilityReport",
]

PHI_CONVENTION = "g'_k = -g_k; g'_i = g_i + [b_ik]_+ g_k (g_k >= 0), g_i + [-b_ik]_+ g_k (g_k < 0)"


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _step(B, unfrozen, k: int, g: Sequence[int]) -> Exp:
    kc = unfrozen.index(k)
    gk = g[k]
    out = []
    for i, gi in enumerate(g):
        if i == k:
            out.append(-gk)
        elif gk >= 0:
            out.append(gi + _pos(B[i][kc]) * gk)
        else:
            out.append(gi + _pos(-B[i][kc]) * gk)
    return tuple(out)


def phi_step(seed: Seed, k, g: Sequence[int]) -> Exp:
    """``phi_{mu_k t, t}(g)``."""
    ki = seed.index(k)
    if ki not in seed.unfrozen:
        raise InputError(f"cannot mutate at frozen vertex {seed.vertices[ki]!r}")
    if len(g) != seed.n:
        raise InputError(f"degree {list(g)} has length {len(g)}, expected {seed.n}")
    return _step(seed.B, seed.unfrozen, ki, tuple(g))


def phi_path(initial: Seed, word: Iterable, g: Sequence[int]) -> Exp:
    """Compose ``phi_step`` along ``word`` (first letter first), mutating only matrices."""
    B, lam = initial.B, initial.Lambda
    g = tuple(g)
    if len(g) != initial.n:
        raise InputError(f"degree {list(g)} has length {len(g)}, expected {initial.n}")
    for k in word:
        ki = initial.index(k)
        if ki not in initial.unfrozen:
            raise InputError(f"cannot mutate at frozen vertex {initial.vertices[ki]!r}")
        g = _step(B, initial.unfrozen, ki, g)
        B, lam = mutate_matrices(B, lam, initial.unfrozen, ki)
    return g


def phi_between(source: Seed, target: Seed, g: Sequence[int]) -> Exp:
    """``phi_{target, source}`` for two seeds reached from the same initial seed."""
    word = reduce_word(tuple(reversed(source.label)) + target.label)
    return phi_path(source, word, g)


@dataclass(frozen=True)
class TropicalPoint:
    """A class ``[g]``, stored by its representative at the initial seed."""

    rep: Exp
    base_seed: tuple[str, ...] = ()

    @classmethod
    def at(cls, seed: Seed, g: Sequence[int]) -> "TropicalPoint":
        """The point whose representative at ``seed`` is ``g``."""
        return cls(phi_path(seed, tuple(reversed(seed.label)), g))

    def at_seed(self, initial: Seed, seed: Seed) -> Exp:
        """Representative of this point at ``seed``."""
        return phi_path(initial, seed.label, self.rep)


@dataclass
class CompatibilityReport:
    ok: bool
    degrees: dict = field(default_factory=dict)    # seed label (str) -> degree
    witness: dict | None = None


def _key(seed: Seed) -> str:
    return ",".join(seed.label) or "()"


def compatibly_pointed(z: TorusElement, seeds: Sequence[Seed]) -> CompatibilityReport:
    """Degrees of ``z`` at each seed, checked against ``phi`` for consecutive pairs.

    ``z`` lives in the seeds' common base torus and is rewritten in each
    seed's own coordinates by exact division.
    """
    degrees = {}
    prev = None
    for s in seeds:
        try:
            local = reexpand(z, s)
            g = as_pointed(local).degree
        except (DivisionError, NotPointedError) as exc:
            return CompatibilityReport(False, degrees, {"seed": _key(s), "error": str(exc)})
        degrees[_key(s)] = g
        if prev is not None:
            expected = phi_between(prev[0], s, prev[1])
            if expected != g:
                return CompatibilityReport(False, degrees, {
                    "seed": _key(s), "from": _key(prev[0]),
                    "phi": list(expected), "degree": list(g)})
        prev = (s, g)
    return CompatibilityReport(True, degrees)
