"""Cartan matrices, reduced words and seeds built from them.

Convention: ``a_ij = <alpha_i^vee, alpha_j>``, so ``s_i(alpha_j) = alpha_j - a_ij alpha_i``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

from .errors import InputError
from .seed import Seed, quantize, validate

__all__ = [
    "CartanData", "cartan_matrix", "load_cartan", "validate_reduced", "is_reduced",
    "seed_from_word", "exchange_matrix_from_word", "sl3_seed", "a2_seed",
    "ARROW_CONVENTION",
]

ARROW_CONVENTION = ("positions 1..r; k frozen iff no later equal letter; "
                    "column k of B~ is minus the standard successor/interleaving row")


@dataclass(frozen=True)
class CartanData:
    matrix: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        a = self.matrix
        n = len(a)
        for i, row in enumerate(a):
            if len(row) != n:
                raise InputError("Cartan matrix must be square")
            for j, x in enumerate(row):
                if not isinstance(x, int):
                    raise InputError("Cartan matrix entries must be integers")
                if i == j and x != 2:
                    raise InputError(f"diagonal entry a[{i + 1}][{i + 1}] = {x}, expected 2")
                if i != j and (x > 0 or (x == 0) != (a[j][i] == 0)):
                    raise InputError(f"invalid off-diagonal pair a[{i + 1}][{j + 1}] = {x}, "
                                     f"a[{j + 1}][{i + 1}] = {a[j][i]}")
        if self.symmetrizer() is None:
            raise InputError("Cartan matrix is not symmetrizable")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def symmetrizer(self) -> tuple[int, ...] | None:
        """Positive integers ``d`` with ``d_i a_ij = d_j a_ji``, smallest per component."""
        a = self.matrix
        n = len(a)
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            comp = [start]
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if a[i][j] == 0 or i == j:
                        continue
                    want = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = want
                        comp.append(j)
                        stack.append(j)
                    elif d[j] != want:
                        return None
            scale = lcm(*(d[i].denominator for i in comp))
            for i in comp:
                d[i] *= scale
        return tuple(int(x) for x in d)

    def is_finite_type(self) -> bool:
        """Positive definiteness of the symmetrized matrix, via leading minors."""
        d = self.symmetrizer()
        n = self.rank
        m = [[Fraction(d[i] * self.matrix[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            if m[i][i] <= 0:
                return False
            for r in range(i + 1, n):
                f = m[r][i] / m[i][i]
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
        return True

    def reflect(self, i: int, beta: Sequence[int]) -> tuple[int, ...]:
        """``s_i(beta)`` for ``beta`` in simple-root coordinates (0-based ``i``)."""
        a = self.matrix
        c = sum(a[i][j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i] -= c
        return tuple(out)


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(name: str) -> CartanData:
    """Cartan matrix by type name: A_n, B_n, C_n, D_n, E6-8, F4, G2 (e.g. "A2", "B3")."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", name)
    if not m:
        raise InputError(f"unknown Cartan type {name!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    a = None
    if kind == "A" and n >= 1:
        a = _chain(n)
    elif kind == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif kind == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif kind == "D" and n >= 4:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif kind == "E" and n in (6, 7, 8):
        # Bourbaki labelling: chain 1-3-4-5-..., node 2 attached to 4
        a = [[0] * n for _ in range(n)]
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif kind == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2
    elif kind == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    if a is None:
        raise InputError(f"unknown Cartan type {name!r}")
    return CartanData(tuple(tuple(r) for r in a), f"{kind}{n}")


def load_cartan(source: str) -> CartanData:
    """A type name, or a path to a JSON integer matrix."""
    p = Path(source)
    if p.suffix == ".json" or p.exists():
        try:
            data = json.loads(p.read_text())
        except OSError as exc:
            raise InputError(f"cannot read Cartan file {source}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: "
                             f"{exc.msg}") from None
        if isinstance(data, dict):
            data = data.get("matrix")
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise InputError(f"{source}: expected an integer matrix")
        return CartanData(tuple(tuple(r) for r in data), p.stem)
    return cartan_matrix(source)


def _letters(cartan: CartanData, word: Sequence) -> list[int]:
    out = []
    for x in word:
        try:
            i = int(x)
        except (TypeError, ValueError):
            raise InputError(f"word letter {x!r} is not an integer") from None
        if not 1 <= i <= cartan.rank:
            raise InputError(f"word letter {i} out of range 1..{cartan.rank}")
        out.append(i - 1)
    return out


def validate_reduced(cartan: CartanData, word: Sequence) -> bool:
    """Whether ``word`` is reduced.

    ``s_{i_1} ... s_{i_r}`` is reduced iff ``s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})``
    is a positive root for every ``k``.  This is exact in every Kac-Moody type.
    """
    letters = _letters(cartan, word)
    n = cartan.rank
    for k, ik in enumerate(letters):
        beta = tuple(int(j == ik) for j in range(n))
        for i in reversed(letters[:k]):
            beta = cartan.reflect(i, beta)
        if any(x < 0 for x in beta):
            return False
    return True


is_reduced = validate_reduced


def exchange_matrix_from_word(cartan: CartanData, word: Sequence):
    """``(vertices, frozen, B~)`` for a reduced word; B~ is I x I_uf."""
    letters = _letters(cartan, word)
    a = cartan.matrix
    r = len(letters)
    inf = r + 1

    def succ(k):
        for l in range(k + 1, r):
            if letters[l] == letters[k]:
                return l
        return inf

    plus = [succ(k) for k in range(r)]
    unfrozen = [k for k in range(r) if plus[k] != inf]
    B = [[0] * len(unfrozen) for _ in range(r)]
    for c, k in enumerate(unfrozen):
        ik = letters[k]
        for l in range(r):
            il = letters[l]
            x = 0
            if l == plus[k]:
                x = 1
            elif k == plus[l]:
                x = -1
            elif k < l < plus[k] < plus[l]:
                x = a[ik][il]
            elif l < k < plus[l] < plus[k]:
                x = -a[ik][il]
            B[l][c] = -x
    vertices = [str(k + 1) for k in range(r)]
    frozen = [str(k + 1) for k in range(r) if plus[k] == inf]
    return vertices, frozen, B


def seed_from_word(cartan: CartanData, word: Sequence, check_reduced: bool = True) -> Seed:
    """The initial seed attached to a reduced word, with Lambda from :func:`quantize`."""
    if not word:
        raise InputError("empty word")
    if check_reduced and not validate_reduced(cartan, word):
        raise InputError(f"word {list(word)} is not reduced")
    vertices, frozen, B = exchange_matrix_from_word(cartan, word)
    unfrozen = [i for i, v in enumerate(vertices) if v not in frozen]
    lam = quantize(B, unfrozen)
    s = Seed.initial(vertices, frozen, B, lam)
    validate(s)
    return s


def sl3_seed() -> Seed:
    """The seed of the word (1,2,1) in type A2: B~ = (0,1,-1)^T, vertex 1 unfrozen."""
    return seed_from_word(cartan_matrix("A2"), (1, 2, 1))


def a2_seed() -> Seed:
    """Coefficient-free A2 seed with B = Lambda = [[0,1],[-1,0]]."""
    return Seed.initial(["1", "2"], [], [[0, 1], [-1, 0]], [[0, 1], [-1, 0]])
