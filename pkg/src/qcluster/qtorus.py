"""Based quantum torus of a seed.

Elements are stored in the normalized monomial basis ``X^m``; these
monomials are bar-invariant and multiply by

    X^m * X^n = v^{Lambda(m, n)} X^{m+n},    Lambda(m, n) = m^T Lambda n.

The commutative product ``X^m . X^n = X^{m+n}`` is :meth:`TorusElement.shift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DivisionError, InputError, NotPointedError
from .qcoef import QCoeff

__all__ = [
    "Torus", "TorusElement", "monomial", "twisted_mul", "bar_elem",
    "y_monomial", "normalize", "exact_divide", "truncate",
]

Exp = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def _vadd(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Torus:
    """The data ``(Lambda, B~)`` governing one quantum torus.

    ``bmat`` is the ``|I| x |I_uf|`` exchange matrix (column ``c`` belongs to
    vertex ``unfrozen[c]``), used for Y-monomials and the dominance order.
    """

    lam: Matrix
    bmat: Matrix
    unfrozen: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def r(self) -> int:
        return len(self.unfrozen)

    def form(self, m: Exp, k: Exp) -> int:
        """The bilinear form ``m^T Lambda k``."""
        lam = self.lam
        s = 0
        for i, mi in enumerate(m):
            if mi:
                row = lam[i]
                s += mi * sum(row[j] * kj for j, kj in enumerate(k) if kj)
        return s

    def form_row(self, m: Exp) -> list[int]:
        """The covector ``m^T Lambda``."""
        n = self.n
        row = [0] * n
        for i, mi in enumerate(m):
            if mi:
                li = self.lam[i]
                for j in range(n):
                    row[j] += mi * li[j]
        return row

    def y_vector(self, nvec: Sequence[int]) -> Exp:
        """``B~ n`` embedded in ``Z^I``."""
        return tuple(sum(row[c] * nc for c, nc in enumerate(nvec)) for row in self.bmat)

    @cached_property
    def _left_inverse(self) -> list[list[Fraction]] | None:
        r = self.r
        if r == 0:
            return []
        import sympy

        B = sympy.Matrix(self.bmat)
        if B.rank() < r:
            return None
        L = (B.T * B).inv() * B.T
        return [[Fraction(int(x.p), int(x.q)) for x in L.row(c)] for c in range(r)]

    @property
    def injective(self) -> bool:
        """Whether ``n -> B~ n`` is injective (full column rank)."""
        return self._left_inverse is not None

    @cached_property
    def _order_functional(self) -> list[Fraction]:
        L = self._left_inverse
        if L is None:
            raise NotPointedError("dominance functional needs a full-rank exchange matrix")
        return [sum((L[c][i] for c in range(self.r)), Fraction(0)) for i in range(self.n)]

    def cone_coords(self, delta: Sequence[int]) -> tuple[int, ...] | None:
        """The unique integer ``n`` with ``B~ n = delta`` (any signs), or None."""
        L = self._left_inverse
        if L is None:
            raise NotPointedError("cone coordinates need a full-rank exchange matrix")
        out = []
        for row in L:
            x = sum((a * d for a, d in zip(row, delta) if d), Fraction(0))
            if x.denominator != 1:
                return None
            out.append(int(x))
        out = tuple(out)
        if self.y_vector(out) != tuple(delta):
            return None
        return out

    def height(self, m: Sequence[int]) -> Fraction:
        """A linear functional with ``height(m + B~ n) = height(m) + |n|``."""
        f = self._order_functional
        return sum((a * x for a, x in zip(f, m) if x), Fraction(0))

    def order(self, m: Exp, g: Exp) -> int | None:
        """Y-order ``|n|`` of ``m = g + B~ n`` with ``n >= 0``, else None."""
        nvec = self.cone_coords(_vsub(m, g))
        if nvec is None or any(x < 0 for x in nvec):
            return None
        return sum(nvec)


def _torus_of(x) -> Torus:
    if isinstance(x, Torus):
        return x
    t = getattr(x, "torus", None)
    if isinstance(t, Torus):
        return t
    raise TypeError(f"expected a Torus or Seed, got {type(x).__name__}")


def _add_into(d: dict[Exp, dict[int, int]], m: Exp, c: Mapping[int, int], scale: int = 1) -> None:
    cur = d.get(m)
    if cur is None:
        cur = {}
        d[m] = cur
    for k, x in c.items():
        s = cur.get(k, 0) + scale * x
        if s:
            cur[k] = s
        else:
            cur.pop(k, None)
    if not cur:
        del d[m]


class TorusElement:
    """Finite (or Y-adically truncated) sum of ``c_m X^m`` in a torus.

    ``trunc`` is None for genuine Laurent polynomials; otherwise a pair
    ``(g, N)``: the element is known modulo terms ``X^{g + B~ n}`` with
    ``|n| >= N``.
    """

    __slots__ = ("torus", "_d", "trunc")

    def __init__(self, torus, terms: Mapping[Exp, object] | None = None,
                 trunc: tuple[Exp, int] | None = None):
        self.torus = _torus_of(torus)
        d: dict[Exp, dict[int, int]] = {}
        n = self.torus.n
        for m, c in (terms or {}).items():
            m = tuple(int(x) for x in m)
            if len(m) != n:
                raise InputError(f"exponent {m} has length {len(m)}, expected {n}")
            c = QCoeff.coerce(c)
            if c:
                _add_into(d, m, c._terms)
        self._d = d
        self.trunc = trunc
        if trunc is not None:
            self._cut(*trunc)

    @classmethod
    def _raw(cls, torus: Torus, d: dict[Exp, dict[int, int]], trunc=None) -> "TorusElement":
        obj = cls.__new__(cls)
        obj.torus = torus
        obj._d = d
        obj.trunc = trunc
        return obj

    def _cut(self, g: Exp, N: int) -> None:
        t = self.torus
        for m in list(self._d):
            o = t.order(m, g)
            if o is None:
                raise NotPointedError(f"term X{list(m)} is not of the form g + B~n, g = {list(g)}")
            if o >= N:
                del self._d[m]

    # -- inspection -------------------------------------------------------
    def support(self) -> list[Exp]:
        return sorted(self._d)

    def coeff(self, m: Sequence[int]) -> QCoeff:
        return QCoeff(self._d.get(tuple(m), {}))

    def terms(self) -> dict[Exp, QCoeff]:
        return {m: QCoeff._raw(dict(c)) for m, c in sorted(self._d.items())}

    def items(self):
        return self.terms().items()

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def copy(self) -> "TorusElement":
        return TorusElement._raw(self.torus, {m: dict(c) for m, c in self._d.items()}, self.trunc)

    def leading_lex(self) -> tuple[Exp, QCoeff]:
        m = max(self._d)
        return m, QCoeff._raw(dict(self._d[m]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.torus == other.torus and self._d == other._d and self.trunc == other.trunc

    def equal_mod(self, other: "TorusElement", g: Exp, N: int) -> bool:
        """Equality after truncating both at order ``N`` relative to ``g``."""
        return truncate(self, g, N)._d == truncate(other, g, N)._d

    __hash__ = None  # mutable-looking container; compare with ==

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TorusElement") -> None:
        if self.torus != other.torus:
            raise InputError("torus elements from different seeds")

    def _combine_trunc(self, other: "TorusElement", kind: str):
        a, b = self.trunc, other.trunc
        if a is None and b is None:
            return None
        if kind == "add":
            if a is not None and b is not None and a[0] != b[0]:
                raise NotPointedError("adding truncated elements with different base degrees")
            g = (a or b)[0]
            return (g, min(x[1] for x in (a, b) if x is not None))
        ga = a[0] if a is not None else self.degree_hint()
        gb = b[0] if b is not None else other.degree_hint()
        return (_vadd(ga, gb), min(x[1] for x in (a, b) if x is not None))

    def degree_hint(self) -> Exp:
        """Exponent of minimal height (the dominance-maximal candidate)."""
        t = self.torus
        return min(self._d, key=lambda m: (t.height(m), m))

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        d = {m: dict(c) for m, c in self._d.items()}
        for m, c in other._d.items():
            _add_into(d, m, c)
        out = TorusElement._raw(self.torus, d, self._combine_trunc(other, "add"))
        if out.trunc:
            out._cut(*out.trunc)
        return out

    def __neg__(self) -> "TorusElement":
        return TorusElement._raw(
            self.torus, {m: {k: -x for k, x in c.items()} for m, c in self._d.items()}, self.trunc)

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        """Multiply by a central scalar ``c`` in ``Z[v^(+-1)]``."""
        c = QCoeff.coerce(c)
        d: dict[Exp, dict[int, int]] = {}
        for m, x in self._d.items():
            _add_into(d, m, (QCoeff._raw(x) * c)._terms)
        return TorusElement._raw(self.torus, d, self.trunc)

    def vshift(self, k: int) -> "TorusElement":
        """Multiply by ``v^k``."""
        return TorusElement._raw(
            self.torus, {m: {e + k: x for e, x in c.items()} for m, c in self._d.items()}, self.trunc)

    def shift(self, p: Sequence[int]) -> "TorusElement":
        """Commutative product ``X^p . self``."""
        p = tuple(p)
        tr = None if self.trunc is None else (_vadd(self.trunc[0], p), self.trunc[1])
        return TorusElement._raw(self.torus, {_vadd(m, p): dict(c) for m, c in self._d.items()}, tr)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        self._check(other)
        t = self.torus
        d: dict[Exp, dict[int, int]] = {}
        other_items = list(other._d.items())
        for m1, c1 in self._d.items():
            row = t.form_row(m1)
            for m2, c2 in other_items:
                s = sum(row[j] * x for j, x in enumerate(m2) if x)
                m = _vadd(m1, m2)
                cur = d.get(m)
                if cur is None:
                    cur = d[m] = {}
                for k1, x1 in c1.items():
                    for k2, x2 in c2.items():
                        e = k1 + k2 + s
                        cur[e] = cur.get(e, 0) + x1 * x2
        d = {m: {k: x for k, x in c.items() if x} for m, c in d.items()}
        d = {m: c for m, c in d.items() if c}
        out = TorusElement._raw(t, d, self._combine_trunc(other, "mul"))
        if out.trunc:
            out._cut(*out.trunc)
        return out

    def __rmul__(self, other) -> "TorusElement":
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            raise InputError("negative power of a torus element")
        out = one(self.torus)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def bar(self) -> "TorusElement":
        return TorusElement._raw(
            self.torus, {m: {-k: x for k, x in c.items()} for m, c in self._d.items()}, self.trunc)

    def is_bar_invariant(self) -> bool:
        return all(QCoeff._raw(c).bar()._terms == c for c in self._d.values())

    def at_one(self) -> dict[Exp, int]:
        """Classical specialization ``v = 1`` (commutative Laurent polynomial)."""
        out = {}
        for m, c in sorted(self._d.items()):
            s = sum(c.values())
            if s:
                out[m] = s
        return out

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for m, c in sorted(self._d.items()):
            parts.append(f"X[{','.join(str(x) for x in m)}] * ({QCoeff._raw(c)})")
        s = " + ".join(parts)
        if self.trunc is not None:
            s += f" + O(Y^{self.trunc[1]})"
        return s

    def __repr__(self) -> str:
        return f"TorusElement({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exponent": list(m), "coeff": QCoeff._raw(c).to_json()}
                for m, c in sorted(self._d.items())]

    @classmethod
    def from_json(cls, torus, data: Iterable[Mapping]) -> "TorusElement":
        return cls(torus, {tuple(t["exponent"]): QCoeff.from_json(t["coeff"]) for t in data})


def one(torus) -> TorusElement:
    t = _torus_of(torus)
    return TorusElement._raw(t, {(0,) * t.n: {0: 1}})


def monomial(torus, m: Sequence[int], coeff=1) -> TorusElement:
    """The normalized monomial ``X^m`` of a seed's torus."""
    t = _torus_of(torus)
    m = tuple(int(x) for x in m)
    if len(m) != t.n:
        raise InputError(f"exponent {list(m)} has length {len(m)}, expected {t.n}")
    c = QCoeff.coerce(coeff)
    return TorusElement._raw(t, {m: dict(c._terms)} if c else {})


def y_monomial(torus, nvec: Sequence[int]) -> TorusElement:
    """``Y^n = X^{B~ n}``."""
    t = _torus_of(torus)
    if len(nvec) != t.r:
        raise InputError(f"Y-exponent {list(nvec)} has length {len(nvec)}, expected {t.r}")
    return monomial(t, t.y_vector(nvec))


def twisted_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    return a * b


def bar_elem(a: TorusElement) -> TorusElement:
    return a.bar()


def normalize(a: TorusElement, g: Sequence[int] | None = None) -> TorusElement:
    """``[v^k z] = z``: rescale so the coefficient at ``g`` is exactly 1.

    ``g`` defaults to the dominance-maximal candidate exponent.
    """
    if a.is_zero():
        raise NotPointedError("cannot normalize zero")
    g = a.degree_hint() if g is None else tuple(g)
    c = a.coeff(g)
    k = c.unit_exponent()
    if k is None:
        raise NotPointedError(f"coefficient at X{list(g)} is {c}, not a power of v")
    return a.vshift(-k) if k else a


def truncate(a: TorusElement, g: Sequence[int], N: int) -> TorusElement:
    """Drop every term ``X^{g + B~ n}`` with ``|n| >= N`` and record the bound."""
    g = tuple(g)
    if a.trunc is not None:
        if a.trunc[0] != g:
            # re-base: only allowed when the new cut is no finer than the old one
            o = a.torus.order(a.trunc[0], g)
            if o is None:
                raise NotPointedError("truncation base is not dominated by the new base")
            if a.trunc[1] + o < N:
                N = a.trunc[1] + o
        else:
            N = min(N, a.trunc[1])
    out = TorusElement._raw(a.torus, {m: dict(c) for m, c in a._d.items()}, (g, N))
    out._cut(g, N)
    return out


def exact_divide(a: TorusElement, b: TorusElement) -> TorusElement:
    """The quotient ``c`` with ``b * c = a`` (left division).

    Leading-term elimination under the lexicographic order on exponents;
    the result is verified by multiplying back.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("exact_divide by zero")
    if a.trunc is not None or b.trunc is not None:
        raise InputError("exact_divide needs finite (untruncated) elements")
    t = a.torus
    if a.is_zero():
        return TorusElement._raw(t, {})
    b_items = list(b._d.items())
    lead_b = max(b._d)
    beta = QCoeff._raw(b._d[lead_b])
    lowest = _vsub(min(a._d), min(b._d))
    rem = {m: dict(c) for m, c in a._d.items()}
    quot: dict[Exp, dict[int, int]] = {}
    while rem:
        top = max(rem)
        e = _vsub(top, lead_b)
        if e < lowest:
            raise DivisionError(
                f"not divisible: irreducible remainder term X{list(top)} * ({QCoeff._raw(rem[top])})",
                remainder_term=(top, QCoeff._raw(dict(rem[top]))))
        alpha = QCoeff._raw(rem[top])
        gamma = alpha.divexact(beta.shift(t.form(lead_b, e)))
        if gamma is None:
            raise DivisionError(
                f"not divisible: coefficient {alpha} at X{list(top)} not divisible by {beta}",
                remainder_term=(top, alpha))
        quot[e] = dict(gamma._terms)
        for m2, c2 in b_items:
            s = t.form(m2, e)
            prod = (QCoeff._raw(c2) * gamma).shift(s)
            _add_into(rem, _vadd(m2, e), prod._terms, -1)
    out = TorusElement._raw(t, quot)
    if b * out != a:
        raise DivisionError("division check b * c == a failed")
    return out
