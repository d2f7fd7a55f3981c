"""Laurent polynomials in ``v = q^(1/2)`` with integer coefficients.

A :class:`QCoeff` is an immutable map ``exponent of v -> nonzero int``.
Half-integer powers of ``q`` are integer powers of ``v``, so no rational
exponent ever appears.

>>> c = QCoeff({1: 1, 0: 2})
>>> str(c), str(c.bar())
('2 + v', '2 + v^-1')
>>> str(solve_kl(QCoeff({1: 1, -1: -1})))
'-v^-1'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

from .errors import NotAntisymmetricError

__all__ = ["QCoeff", "bar", "in_m", "solve_kl", "ZERO", "ONE"]

CoeffLike = Union["QCoeff", int, Mapping[int, int]]


def _clean(d: Mapping[int, int]) -> dict[int, int]:
    return {int(k): int(c) for k, c in d.items() if c}


class QCoeff:
    """Element of ``Z[v, v^-1]``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: CoeffLike | None = None):
        if terms is None:
            d = {}
        elif isinstance(terms, QCoeff):
            d = dict(terms._terms)
        elif isinstance(terms, int):
            d = {0: terms} if terms else {}
        else:
            d = _clean(terms)
        self._terms = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "QCoeff":
        # d must already be free of zeros
        obj = cls.__new__(cls)
        obj._terms = d
        obj._hash = None
        return obj

    @classmethod
    def v(cls, k: int = 1, c: int = 1) -> "QCoeff":
        """The monomial ``c * v^k``."""
        return cls._raw({k: c} if c else {})

    @classmethod
    def coerce(cls, x: CoeffLike) -> "QCoeff":
        return x if isinstance(x, QCoeff) else cls(x)

    # -- inspection -------------------------------------------------------
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, k: int) -> int:
        return self._terms.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def min_exp(self) -> int:
        return min(self._terms)

    def unit_exponent(self) -> int | None:
        """Return ``k`` if this is exactly ``v^k``, else None."""
        if len(self._terms) == 1:
            (k, c), = self._terms.items()
            if c == 1:
                return k
        return None

    def at_one(self) -> int:
        """Classical specialization ``v = 1``."""
        return sum(self._terms.values())

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QCoeff(other)
        if not isinstance(other, QCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: CoeffLike) -> "QCoeff":
        other = QCoeff.coerce(other)
        d = dict(self._terms)
        for k, c in other._terms.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return QCoeff._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "QCoeff":
        return QCoeff._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: CoeffLike) -> "QCoeff":
        return self + (-QCoeff.coerce(other))

    def __rsub__(self, other: CoeffLike) -> "QCoeff":
        return QCoeff.coerce(other) - self

    def __mul__(self, other: CoeffLike) -> "QCoeff":
        other = QCoeff.coerce(other)
        d: dict[int, int] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                d[a + b] = d.get(a + b, 0) + x * y
        return QCoeff._raw({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> "QCoeff":
        """Multiply by ``v^k``."""
        return QCoeff._raw({e + k: c for e, c in self._terms.items()})

    def divexact(self, other: CoeffLike) -> "QCoeff | None":
        """Exact quotient in ``Z[v^(+-1)]`` or None when ``other`` does not divide."""
        other = QCoeff.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero QCoeff")
        top_b, lo_b = other.max_exp(), other.min_exp()
        lead_b = other._terms[top_b]
        rem = dict(self._terms)
        if not rem:
            return QCoeff()
        lowest = min(rem) - lo_b
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - top_b < lowest:
                return None
            c, r = divmod(rem[top], lead_b)
            if r:
                return None
            e = top - top_b
            quot[e] = c
            for k, y in other._terms.items():
                s = rem.get(k + e, 0) - c * y
                if s:
                    rem[k + e] = s
                else:
                    rem.pop(k + e, None)
        return QCoeff._raw(quot)

    def bar(self) -> "QCoeff":
        """``v -> v^-1``."""
        return QCoeff._raw({-k: c for k, c in self._terms.items()})

    def in_m(self) -> bool:
        """True iff every exponent is strictly negative (membership in ``v^-1 Z[v^-1]``)."""
        return all(k < 0 for k in self._terms)

    def negative_part(self) -> "QCoeff":
        return QCoeff._raw({k: c for k, c in self._terms.items() if k < 0})

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, c in sorted(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "v" if k == 1 else f"v^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"QCoeff({str(self)!r})"

    _TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(v(?:\^(-?\d+))?)?\s*")

    @classmethod
    def parse(cls, text: str) -> "QCoeff":
        """Inverse of ``str``: ``"3*v^-2 + 1"`` -> QCoeff."""
        text = text.strip()
        if text == "0":
            return cls()
        d: dict[int, int] = {}
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse QCoeff at {pos}: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                k = int(m.group(4)) if m.group(4) is not None else 1
            else:
                k = 0
            d[k] = d.get(k, 0) + sign * c
            pos = m.end()
        return cls(d)

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, d: Mapping[str, int]) -> "QCoeff":
        return cls({int(k): int(c) for k, c in d.items()})


ZERO = QCoeff()
ONE = QCoeff(1)


def bar(c: CoeffLike) -> QCoeff:
    return QCoeff.coerce(c).bar()


def in_m(c: CoeffLike) -> bool:
    return QCoeff.coerce(c).in_m()


def solve_kl(h: CoeffLike) -> QCoeff:
    """Unique ``c`` in ``v^-1 Z[v^-1]`` with ``c - bar(c) = h``.

    ``h`` must satisfy ``bar(h) = -h``; anything else means the transition
    data feeding the recursion is wrong.
    """
    h = QCoeff.coerce(h)
    if h.bar() != -h:
        raise NotAntisymmetricError(f"solve_kl: bar(h) != -h for h = {h}")
    return h.negative_part()


def qsum(items: Iterable[QCoeff]) -> QCoeff:
    d: dict[int, int] = {}
    for c in items:
        for k, x in c._terms.items():
            d[k] = d.get(k, 0) + x
    return QCoeff._raw({k: x for k, x in d.items() if x})
