"""Seeds over compatible pairs and the mutation engine.

Every seed keeps its cluster variables as elements of the *initial* seed's
quantum torus (``seed.base``).  Its own torus ``seed.torus`` is built from
its own ``(Lambda, B~)``.

Vertices are referred to by label; integer arguments are converted with
``str`` so ``mutate(s, 1)`` means the vertex labelled ``"1"``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import CompatibilityError, DivisionError, InputError
from .qtorus import Matrix, Torus, TorusElement, as_matrix, exact_divide, monomial, one

__all__ = [
    "Seed", "validate", "quantize", "mutate", "mutate_matrices",
    "apply_sequence", "cluster_monomial", "rebase", "inverse_chart",
    "reexpand", "chart_between", "reduce_word", "load_seed", "seed_from_dict",
    "seed_to_dict",
]


def _pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True, eq=False)
class Seed:
    vertices: tuple[str, ...]
    unfrozen: tuple[int, ...]
    B: Matrix
    Lambda: Matrix
    vars: tuple[TorusElement, ...]
    base: Torus
    label: tuple[str, ...] = ()
    _children: dict = field(default_factory=dict, repr=False, compare=False)
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def initial(cls, vertices: Sequence, frozen: Iterable, B, Lambda) -> "Seed":
        vertices = tuple(str(v) for v in vertices)
        frozen = {str(v) for v in frozen}
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex labels")
        unknown = frozen - set(vertices)
        if unknown:
            raise InputError(f"frozen vertices not in vertex list: {sorted(unknown)}")
        unfrozen = tuple(i for i, v in enumerate(vertices) if v not in frozen)
        B = as_matrix(B)
        Lambda = as_matrix(Lambda)
        n, r = len(vertices), len(unfrozen)
        if len(B) != n or any(len(row) != r for row in B):
            raise InputError(f"B must be {n} x {r} (rows = vertices, columns = unfrozen vertices)")
        if len(Lambda) != n or any(len(row) != n for row in Lambda):
            raise InputError(f"Lambda must be {n} x {n}")
        torus = Torus(Lambda, B, unfrozen)
        xs = tuple(monomial(torus, tuple(int(i == j) for j in range(n))) for i in range(n))
        return cls(vertices, unfrozen, B, Lambda, xs, torus)

    # -- basic data -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def r(self) -> int:
        return len(self.unfrozen)

    @property
    def frozen(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.unfrozen)

    @property
    def torus(self) -> Torus:
        """The seed's own quantum torus."""
        return Torus(self.Lambda, self.B, self.unfrozen)

    @property
    def is_initial(self) -> bool:
        return self.base == self.torus and self.label == ()

    def index(self, k) -> int:
        k = str(k)
        try:
            return self.vertices.index(k)
        except ValueError:
            raise InputError(f"unknown vertex {k!r}; vertices are {list(self.vertices)}") from None

    def column(self, k) -> int:
        """Column of ``B~`` belonging to unfrozen vertex ``k``."""
        i = self.index(k)
        if i not in self.unfrozen:
            raise InputError(f"vertex {self.vertices[i]!r} is frozen")
        return self.unfrozen.index(i)

    def b(self, i: int, k: int) -> int:
        """``b_{ik}`` for vertex indices ``i`` (any) and ``k`` (unfrozen)."""
        return self.B[i][self.unfrozen.index(k)]

    def same_content(self, other: "Seed") -> bool:
        return (self.vertices == other.vertices and self.unfrozen == other.unfrozen
                and self.B == other.B and self.Lambda == other.Lambda
                and self.base == other.base and self.vars == other.vars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return self.same_content(other) and self.label == other.label

    __hash__ = object.__hash__

    # -- monomials in the current cluster ---------------------------------
    def var_power(self, i: int, p: int) -> TorusElement:
        key = (i, p)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        x = self.vars[i]
        if p < 0:
            if i in self.unfrozen:
                raise InputError("negative power of an unfrozen cluster variable")
            (m,) = x.support()
            out = monomial(self.base, tuple(p * a for a in m))
        elif p == 0:
            out = one(self.base)
        elif p == 1:
            out = x
        else:
            out = self.var_power(i, p // 2) * self.var_power(i, p - p // 2)
        self._powers[key] = out
        return out

    def monomial_in_cluster(self, m: Sequence[int]) -> TorusElement:
        """Normalized ``X(t)^m`` expanded in the base torus (``m_k >= 0`` on unfrozen ``k``)."""
        m = tuple(int(x) for x in m)
        if len(m) != self.n:
            raise InputError(f"exponent {list(m)} has length {len(m)}, expected {self.n}")
        lam = self.Lambda
        corr = 0
        for i in range(self.n):
            if m[i]:
                for j in range(i + 1, self.n):
                    corr += lam[i][j] * m[i] * m[j]
        out = one(self.base)
        for i, p in enumerate(m):
            if p:
                out = out * self.var_power(i, p)
        return out.vshift(-corr) if corr else out

    def __str__(self) -> str:
        return f"Seed(label={list(self.label)}, vertices={list(self.vertices)})"


# -- compatibility ----------------------------------------------------------

def compatibility_matrix(B: Matrix, Lambda: Matrix) -> list[list[int]]:
    """``B~^T Lambda`` as an ``|I_uf| x |I|`` integer matrix."""
    n = len(Lambda)
    r = len(B[0]) if B else 0
    return [[sum(B[i][c] * Lambda[i][j] for i in range(n)) for j in range(n)] for c in range(r)]


def check_compatible(B: Matrix, Lambda: Matrix, unfrozen: Sequence[int]) -> tuple[int, ...]:
    n = len(Lambda)
    for i in range(n):
        for j in range(n):
            if Lambda[i][j] != -Lambda[j][i]:
                raise CompatibilityError(
                    f"Lambda is not skew-symmetric at ({i}, {j})", i, j)
    M = compatibility_matrix(B, Lambda)
    d = []
    for c, k in enumerate(unfrozen):
        for j in range(n):
            if j != k and M[c][j] != 0:
                raise CompatibilityError(
                    f"(B^T Lambda)[{k},{j}] = {M[c][j]}, expected 0", k, j)
        if M[c][k] <= 0:
            raise CompatibilityError(
                f"(B^T Lambda)[{k},{k}] = {M[c][k]}, expected a positive integer", k, k)
        d.append(M[c][k])
    return tuple(d)


def validate(seed: Seed) -> tuple[int, ...]:
    """Check the compatible-pair axioms; return the diagonal ``(d_k)``."""
    return check_compatible(seed.B, seed.Lambda, seed.unfrozen)


def _skew_symmetrizer(B: Matrix, unfrozen: Sequence[int]) -> list[int] | None:
    """Positive integers ``d`` with ``d_k b_kl = -d_l b_lk`` on the principal part."""
    from fractions import Fraction
    from math import lcm

    r = len(unfrozen)
    P = [[B[unfrozen[a]][c] for c in range(r)] for a in range(r)]
    d: list[Fraction | None] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            a = stack.pop()
            for c in range(r):
                if P[a][c] == 0 and P[c][a] == 0:
                    continue
                if P[a][c] == 0 or P[c][a] == 0 or (P[a][c] > 0) == (P[c][a] > 0):
                    return None
                val = d[a] * P[a][c] / (-P[c][a])
                if d[c] is None:
                    d[c] = val
                    stack.append(c)
                elif d[c] != val:
                    return None
    den = lcm(*[x.denominator for x in d]) if d else 1
    return [int(x * den) for x in d]


def quantize(B, unfrozen: Sequence[int] | None = None, search: int = 2) -> Matrix:
    """An integer skew-symmetric ``Lambda`` compatible with ``B~``.

    ``B`` is ``|I| x |I_uf|``; ``unfrozen`` lists the row of each column
    (default: the first ``|I_uf|`` rows).  Among integer solutions found by a
    bounded search the one with the smallest entries is returned.
    """
    import sympy

    B = as_matrix(B)
    n = len(B)
    r = len(B[0]) if B else 0
    unfrozen = tuple(range(r)) if unfrozen is None else tuple(unfrozen)
    if r == 0:
        return tuple(tuple(0 for _ in range(n)) for _ in range(n))
    if sympy.Matrix(B).rank() < r:
        raise CompatibilityError("B~ does not have full column rank; no compatible Lambda exists")
    # B~^T Lambda B~ = D P is skew-symmetric, so d must symmetrize the principal part P
    d0 = _skew_symmetrizer(B, unfrozen)
    if d0 is None:
        raise CompatibilityError("principal part of B~ is not skew-symmetrizable")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    syms = sympy.symbols(f"l0:{len(pairs)}")
    L = sympy.zeros(n, n)
    for s, (i, j) in zip(syms, pairs):
        L[i, j] = s
        L[j, i] = -s
    M = sympy.Matrix(B).T * L
    A, rhs_base = [], []
    for c in range(r):
        for j in range(n):
            expr = M[c, j]
            A.append([expr.coeff(s) for s in syms])
            rhs_base.append(d0[c] if j == unfrozen[c] else 0)
    A = sympy.Matrix(A)
    rhs = sympy.Matrix(rhs_base)
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        raise CompatibilityError("no compatible Lambda for this B~") from None
    part = sol.subs({p: 0 for p in params})
    null = A.nullspace()
    null_int = []
    for v in null:
        den = sympy.ilcm(*[x.q for x in v]) if len(v) else 1
        v = v * den
        g = sympy.igcd(*[int(x) for x in v]) or 1
        null_int.append([int(x) // g for x in v])
    best = None
    combos = itertools.product(range(-search, search + 1), repeat=len(null_int)) \
        if 0 < len(null_int) <= 4 else [tuple(0 for _ in null_int)]
    combos = list(combos)
    for scale in range(1, 13):
        p = [x * scale for x in part]
        for coeffs in combos:
            vec = [p[i] + sum(cf * nv[i] for cf, nv in zip(coeffs, null_int)) for i in range(len(p))]
            if any(sympy.Rational(x).q != 1 for x in vec):
                continue
            vec = [int(x) for x in vec]
            key = (sum(abs(x) for x in vec), tuple(abs(x) for x in vec), tuple(vec))
            if best is None or key < best[0]:
                best = (key, vec)
        if best is not None:
            break
    if best is None:
        den = sympy.ilcm(*[sympy.Rational(x).q for x in part])
        best = (None, [int(x * den) for x in part])
    vec = best[1]
    lam = [[0] * n for _ in range(n)]
    for x, (i, j) in zip(vec, pairs):
        lam[i][j] = x
        lam[j][i] = -x
    lam = as_matrix(lam)
    check_compatible(B, lam, unfrozen)
    return lam


# -- mutation -----------------------------------------------------------------

def mutate_matrices(B: Matrix, Lambda: Matrix, unfrozen: Sequence[int], k: int) -> tuple[Matrix, Matrix]:
    """Mutate the compatible pair at vertex index ``k``."""
    n = len(B)
    r = len(unfrozen)
    kc = unfrozen.index(k)
    newB = []
    for i in range(n):
        row = []
        for c in range(r):
            j = unfrozen[c]
            if i == k or j == k:
                row.append(-B[i][c])
            else:
                bik, bkj = B[i][kc], B[k][c]
                row.append(B[i][c] + _pos(bik) * bkj + bik * _pos(-bkj))
        newB.append(tuple(row))
    lams = []
    for eps in (1, -1):
        E = [[int(i == j) for j in range(n)] for i in range(n)]
        E[k][k] = -1
        for i in range(n):
            if i != k:
                E[i][k] = _pos(-eps * B[i][kc])
        # E^T Lambda E
        LE = [[sum(Lambda[i][a] * E[a][j] for a in range(n)) for j in range(n)] for i in range(n)]
        lams.append(as_matrix([[sum(E[a][i] * LE[a][j] for a in range(n)) for j in range(n)] for i in range(n)]))
    if lams[0] != lams[1]:
        raise CompatibilityError("Lambda mutation depends on the sign choice; pair is not compatible")
    return tuple(newB), lams[0]


def mutate(seed: Seed, k) -> Seed:
    """The seed ``mu_k(seed)``; cluster variables stay in the base torus."""
    ki = seed.index(k)
    if ki not in seed.unfrozen:
        raise InputError(f"cannot mutate at frozen vertex {seed.vertices[ki]!r}")
    hit = seed._children.get(ki)
    if hit is not None:
        return hit
    d = validate(seed)
    kc = seed.unfrozen.index(ki)
    newB, newL = mutate_matrices(seed.B, seed.Lambda, seed.unfrozen, ki)
    a = tuple(_pos(seed.B[i][kc]) for i in range(seed.n))
    b = tuple(_pos(-seed.B[i][kc]) for i in range(seed.n))
    lam_k = seed.Lambda[ki]
    sa = sum(lam_k[j] * a[j] for j in range(seed.n))
    sb = sum(lam_k[j] * b[j] for j in range(seed.n))
    # X^{a - f_k} = v^{Lambda(f_k, a)} X_k^{-1} * X^a  (normalized monomials of the current seed)
    numer = seed.monomial_in_cluster(a).vshift(sa) + seed.monomial_in_cluster(b).vshift(sb)
    try:
        xk = exact_divide(numer, seed.vars[ki])
    except DivisionError as exc:
        raise DivisionError(f"Laurent phenomenon violated mutating {list(seed.label)} at {k}: {exc}",
                            exc.remainder_term) from exc
    new_vars = tuple(xk if i == ki else x for i, x in enumerate(seed.vars))
    label = seed.label
    v = seed.vertices[ki]
    label = label[:-1] if label and label[-1] == v else label + (v,)
    out = Seed(seed.vertices, seed.unfrozen, newB, newL, new_vars, seed.base, label)
    d2 = validate(out)
    if d2 != d:
        raise CompatibilityError(f"mutation changed the diagonal {d} -> {d2}")
    out._children[ki] = seed
    seed._children[ki] = out
    return out


def apply_sequence(seed: Seed, word: Iterable) -> Seed:
    """``mu_{k_r} ... mu_{k_1}`` applied to ``seed``; the first letter acts first."""
    for k in word:
        seed = mutate(seed, k)
    return seed


def cluster_monomial(seed: Seed, m: Sequence[int]) -> TorusElement:
    """Localized cluster monomial ``X(t)^m`` (``m >= 0`` on unfrozen vertices)."""
    m = tuple(int(x) for x in m)
    for i in seed.unfrozen:
        if i < len(m) and m[i] < 0:
            raise InputError(f"negative exponent at unfrozen vertex {seed.vertices[i]!r}")
    return seed.monomial_in_cluster(m)


def reduce_word(word: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for k in word:
        k = str(k)
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


# -- changing charts ------------------------------------------------------------

def rebase(seed: Seed) -> Seed:
    """The same seed as a fresh initial seed (variables = its own monomials)."""
    if seed.is_initial:
        return seed
    hit = seed._children.get("rebase")
    if hit is None:
        frozen = [seed.vertices[i] for i in seed.frozen]
        hit = Seed.initial(seed.vertices, frozen, seed.B, seed.Lambda)
        seed._children["rebase"] = hit
    return hit


def chart_between(source: Seed, target: Seed) -> Seed:
    """``target``'s cluster variables expanded in ``source``'s own torus.

    Both seeds must come from the same initial seed.
    """
    word = reduce_word(tuple(reversed(source.label)) + target.label)
    return apply_sequence(rebase(source), word)


def inverse_chart(seed: Seed) -> Seed:
    """The initial seed's variables written in ``seed``'s own torus."""
    return apply_sequence(rebase(seed), tuple(reversed(seed.label)))


def reexpand(z: TorusElement, seed: Seed) -> TorusElement:
    """Rewrite ``z`` (in the base torus of ``seed``) in ``seed``'s own torus.

    Multiplies by an initial cluster monomial to clear negative unfrozen
    exponents, substitutes, and divides exactly.  Raises
    :class:`DivisionError` when ``z`` is not a Laurent polynomial in ``seed``.
    """
    if z.torus != seed.base:
        raise InputError("element does not live in the seed's base torus")
    if seed.is_initial:
        return z
    back = inverse_chart(seed)
    n = seed.n
    clear = [0] * n
    for m in z.support():
        for i in seed.unfrozen:
            if m[i] < 0:
                clear[i] = max(clear[i], -m[i])
    clear = tuple(clear)
    w = monomial(z.torus, clear) * z
    out = TorusElement(back.base)
    for m, c in w.terms().items():
        piece = back.monomial_in_cluster(m).scale(c)
        out = out + piece
    return exact_divide(out, back.monomial_in_cluster(clear))


# -- file I/O ---------------------------------------------------------------------

def seed_from_dict(data: Mapping) -> Seed:
    try:
        vertices = [str(v) for v in data["vertices"]]
        frozen = [str(v) for v in data.get("frozen", [])]
        B = data["B"]
        lam = data.get("Lambda", "auto")
    except (KeyError, TypeError) as exc:
        raise InputError(f"seed data missing field: {exc}") from None
    unfrozen = [i for i, v in enumerate(vertices) if v not in set(frozen)]
    if not isinstance(B, list) or any(not isinstance(row, list) for row in B):
        raise InputError("B must be a list of rows")
    if not unfrozen:
        B = [[] for _ in vertices] if not B or all(row == [] for row in B) else B
    for row in B:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"B entries must be integers, got {x!r}")
    if lam == "auto":
        if len(B) != len(vertices):
            raise InputError(f"B must have {len(vertices)} rows")
        lam = quantize(B, unfrozen)
    else:
        if not isinstance(lam, list):
            raise InputError('Lambda must be a matrix or "auto"')
        for row in lam:
            if not isinstance(row, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in row):
                raise InputError("Lambda entries must be integers")
    seed = Seed.initial(vertices, frozen, B, lam)
    validate(seed)
    return seed


def seed_to_dict(seed: Seed) -> dict:
    return {
        "vertices": list(seed.vertices),
        "frozen": [seed.vertices[i] for i in seed.frozen],
        "B": [list(row) for row in seed.B],
        "Lambda": [list(row) for row in seed.Lambda],
    }


def load_seed(path) -> Seed:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read seed file {path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return seed_from_dict(data)
