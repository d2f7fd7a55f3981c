"""Injective cluster variables, distinguished functions and triangular functions.

The triangular function ``f_g`` is obtained from the distinguished functions
``inj_h`` by a Kazhdan-Lusztig style recursion.  Write

    bar(inj_h) = sum_{h' <= h} r_{h',h} inj_{h'}          (r_{h,h} = 1)

and look for ``f_g = sum_h p_h inj_h`` with ``p_g = 1`` and ``p_h`` in
``v^-1 Z[v^-1]``.  Bar-invariance of ``f_g`` is equivalent to

    p_{h'} - bar(p_{h'}) = sum_{h' < h <= g} bar(p_h) r_{h',h},

which is solved for ``p_{h'}`` in decreasing dominance order.  Everything is
computed modulo Y-order ``N`` relative to ``g``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (DivisionError, InputError, NotPointedError, SearchInconclusive,
                     VerificationError, WindowError)
from .pointed import PointedElement, as_pointed, copointed_tail
from .qcoef import ONE, QCoeff, qsum, solve_kl
from .qtorus import Exp, TorusElement, _vadd, _vsub, monomial, normalize, truncate
from .seed import (Seed, apply_sequence, cluster_monomial, mutate, mutate_matrices, rebase,
                   reexpand)
from .tropical import _step as _phi, phi_step

__all__ = [
    "InjectiveData", "TriangularFamily", "KLResult", "Diagnostics", "find_t1",
    "distinguished", "pointed_decompose", "kl_triangular", "box_window",
    "verify_triangular_basis", "verify_admissible", "verify_compatibility",
    "verify_copointed_rigidity", "transfer_similar", "verify_chain",
]


@dataclass
class Diagnostics:
    name: str
    ok: bool = True
    checked: int = 0
    witness: dict | None = None
    notes: list = field(default_factory=list)

    def fail(self, **witness) -> "Diagnostics":
        if self.ok:
            self.ok = False
            self.witness = {k: _jsonable(v) for k, v in witness.items()}
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "witness": self.witness, "notes": list(self.notes)}

    def line(self) -> str:
        s = f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({self.checked} checks)"
        if not self.ok:
            s += f" witness={self.witness}"
        return s


def _jsonable(v):
    if isinstance(v, QCoeff):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, TorusElement):
        return str(v)
    return v


def box_window(n: int, W: int) -> list[Exp]:
    """All degrees ``g`` in ``Z^n`` with ``|g_i| <= W``."""
    return [tuple(g) for g in itertools.product(range(-W, W + 1), repeat=n)]


# -- injective reachability ------------------------------------------------------

@dataclass
class InjectiveData:
    """``t[1] = mu_word(t)`` with ``I_k(t) = X_{sigma k}(t[1])``."""

    word: tuple[str, ...]
    sigma: dict                 # unfrozen label k -> label sigma(k)
    injectives: dict            # unfrozen label k -> PointedElement I_k(t)
    t1: Seed

    def injective(self, k) -> PointedElement:
        return self.injectives[str(k)]


def _sigma_from_degrees(t: Seed, degs) -> dict | None:
    """sigma with deg X_{sigma k} = -f_k mod frozen, from a list of degrees."""
    sigma = {}
    used = set()
    for k in t.unfrozen:
        target = tuple(-1 if j == k else 0 for j in t.unfrozen)
        hit = [i for i in t.unfrozen if tuple(degs[i][j] for j in t.unfrozen) == target]
        if len(hit) != 1 or hit[0] in used:
            return None
        used.add(hit[0])
        sigma[k] = hit[0]
    return sigma


def _tropical_degrees(t: Seed, word, B, lam) -> list:
    """Degrees in ``t`` of the cluster variables of ``mu_word t`` (matrices ``B``, ``lam``)."""
    out = []
    back = tuple(reversed(word))
    for i in range(t.n):
        g = tuple(int(j == i) for j in range(t.n))
        Bc, Lc = B, lam
        for k in back:
            ki = t.index(k)
            g = _phi(Bc, t.unfrozen, ki, g)
            Bc, Lc = mutate_matrices(Bc, Lc, t.unfrozen, ki)
        out.append(g)
    return out


def find_t1(seed: Seed, max_depth: int = 8) -> InjectiveData:
    """Breadth-first search for a green-to-red word ``t -> t[1]``.

    The search runs on exchange matrices only, reading degrees through the
    tropical transformation; the seed found is then built by mutation and its
    degrees are certified by pointedness.  Raises :class:`SearchInconclusive`
    when nothing is found within ``max_depth``.
    """
    t = rebase(seed)
    if t.r == 0:
        return InjectiveData((), {}, {}, t)
    queue = deque([((), t.B, t.Lambda)])
    seen = {tuple(tuple(int(j == i) for j in range(t.n)) for i in range(t.n))}
    while queue:
        word, B, lam = queue.popleft()
        if word:
            degs = _tropical_degrees(t, word, B, lam)
            sigma = _sigma_from_degrees(t, degs)
            if sigma is not None:
                s = apply_sequence(t, word)
                for i in t.unfrozen:
                    if as_pointed(s.vars[i]).degree != degs[i]:
                        raise VerificationError(
                            f"tropical degree {list(degs[i])} disagrees with the degree of "
                            f"{s.vertices[i]} after {list(word)}", {"word": list(word)})
                v = t.vertices
                return InjectiveData(
                    word,
                    {v[k]: v[i] for k, i in sigma.items()},
                    {v[k]: as_pointed(s.vars[i]) for k, i in sigma.items()},
                    s)
        if len(word) >= max_depth:
            continue
        for k in t.unfrozen:
            if word and word[-1] == t.vertices[k]:
                continue
            w2 = word + (t.vertices[k],)
            B2, L2 = mutate_matrices(B, lam, t.unfrozen, k)
            key = tuple(_tropical_degrees(t, w2, B2, L2))
            if key in seen:
                continue
            seen.add(key)
            queue.append((w2, B2, L2))
    raise SearchInconclusive(f"no t[1] found within mutation depth {max_depth}")


# -- decomposition ---------------------------------------------------------------

def pointed_decompose(z: TorusElement, family, trunc: int,
                      base: Sequence[int] | None = None) -> dict:
    """Coefficients of the dominance decomposition ``z = sum_h b_h family(h)``.

    ``family`` is a mapping or a callable ``degree -> pointed TorusElement``.
    Peels the dominance-maximal remaining term until only Y-order ``>= trunc``
    (relative to ``base``, default the degree of ``z``) is left.
    """
    get = family.__getitem__ if isinstance(family, Mapping) else family
    tor = z.torus
    if base is None:
        base = z.trunc[0] if z.trunc is not None else z.degree_hint()
    g = tuple(base)
    rem = truncate(z, g, trunc)
    out: dict = {}
    while rem:
        m = min(rem.support(), key=lambda x: (tor.order(x, g), x))
        c = rem.coeff(m)
        try:
            elem = get(m)
        except KeyError:
            raise WindowError(f"degree {list(m)} needed by the decomposition is missing") from None
        if elem.coeff(m) != 1:
            raise NotPointedError(f"family member at {list(m)} is not {list(m)}-pointed")
        out[m] = c
        rem = rem - truncate(elem.scale(c), g, trunc)
        if rem.coeff(m):
            raise NotPointedError(f"family member at {list(m)} has no dominating term at its degree")
    return out


# -- the family --------------------------------------------------------------------

@dataclass
class KLResult:
    degree: Exp
    element: TorusElement          # truncated at (degree, trunc)
    coefficients: dict             # h -> p_h (p_degree = 1)
    trunc: int

    @property
    def pointed(self) -> PointedElement:
        return as_pointed(self.element)


class TriangularFamily:
    """Distinguished and triangular functions for one seed, computed lazily.

    ``seed`` is used as an initial seed (its own torus).  ``overrides``
    replaces individual ``f_g`` (fault injection, transferred families).
    """

    def __init__(self, seed: Seed, injective_data: InjectiveData | None = None,
                 trunc: int = 4, max_depth: int = 8, window: Iterable | None = None):
        if trunc < 1:
            raise InputError("trunc must be >= 1")
        self.seed = rebase(seed)
        self._injective_data = injective_data
        self.max_depth = max_depth
        self.trunc = trunc
        self.window = [tuple(g) for g in window] if window is not None else []
        self.torus = self.seed.torus
        self._inj: dict = {}
        self._bar: dict = {}
        self._kl: dict = {}
        self.overrides: dict = {}

    @property
    def injective_data(self) -> InjectiveData:
        if self._injective_data is None:
            self._injective_data = find_t1(self.seed, self.max_depth)
        return self._injective_data

    # distinguished functions
    def distinguished(self, g: Sequence[int]) -> TorusElement:
        g = tuple(g)
        hit = self._inj.get(g)
        if hit is not None:
            return hit
        s = self.seed
        data = self.injective_data
        if len(g) != s.n:
            raise InputError(f"degree {list(g)} has length {len(g)}, expected {s.n}")
        a = [0] * s.n
        m1 = [0] * s.n
        for k in s.unfrozen:
            if g[k] > 0:
                a[k] = g[k]
            elif g[k] < 0:
                m1[s.index(data.sigma[s.vertices[k]])] = -g[k]
        z = cluster_monomial(s, a) * cluster_monomial(data.t1, m1)
        z = normalize(z)
        deg = as_pointed(z).degree
        p = _vsub(g, deg)
        if any(p[k] for k in s.unfrozen):
            raise NotPointedError(f"frozen factor for {list(g)} has unfrozen part {list(p)}")
        out = normalize(monomial(s.torus, p) * z, g)
        self._inj[g] = out
        return out

    def cone(self, g: Sequence[int], N: int):
        """Degrees ``g + B~ n`` with ``|n| < N`` sorted by (order, degree)."""
        t = self.torus
        out = []
        for total in range(N):
            level = []
            for nvec in _compositions(total, t.r):
                level.append(_vadd(tuple(g), t.y_vector(nvec)))
            out.extend((h, total) for h in sorted(set(level)))
        return out

    def bar_transition(self, h: Sequence[int], order: int) -> dict:
        """``{h': r_{h',h}}`` for ``bar(inj_h)``, modulo Y-order ``order`` relative to ``h``."""
        h = tuple(h)
        hit = self._bar.get(h)
        if hit is not None and hit[0] >= order:
            if hit[0] == order:
                return hit[1]
            t = self.torus
            return {x: c for x, c in hit[1].items() if t.order(x, h) < order}
        if order <= 0:
            return {}
        dec = pointed_decompose(self.distinguished(h).bar(), self.distinguished, order, base=h)
        self._bar[h] = (order, dec)
        return dec

    def kl(self, g: Sequence[int], N: int | None = None, extension: str = "lex") -> KLResult:
        g = tuple(g)
        N = self.trunc if N is None else N
        key = (g, N, extension)
        hit = self._kl.get(key)
        if hit is not None:
            return hit
        t = self.torus
        cone = self.cone(g, N)
        if extension == "revlex":
            cone = sorted(cone, key=lambda x: (x[1], tuple(-y for y in x[0])))
        elif extension != "lex":
            raise InputError(f"unknown linear extension {extension!r}")
        p: dict = {g: ONE}
        orders = {g: 0}
        for h1, o1 in cone:
            if h1 == g:
                continue
            terms = []
            for h, ph in p.items():
                if orders[h] >= o1:
                    continue
                r = self.bar_transition(h, N - orders[h]).get(h1)
                if r:
                    terms.append(ph.bar() * r)
            H = qsum(terms)
            c = solve_kl(H)
            orders[h1] = o1
            if c:
                p[h1] = c
        acc = TorusElement(t, trunc=(g, N))
        for h, ph in p.items():
            acc = acc + truncate(self.distinguished(h).scale(ph), g, N)
        res = KLResult(g, acc, p, N)
        self._kl[key] = res
        return res

    def f(self, g: Sequence[int]) -> TorusElement:
        g = tuple(g)
        if g in self.overrides:
            return self.overrides[g]
        return self.kl(g).element

    def __getitem__(self, g) -> TorusElement:
        return self.f(g)

    def stable(self, g: Sequence[int]) -> bool:
        """Coefficients and expansion agree between orders N and 2N."""
        a, b = self.kl(g), self.kl(g, 2 * self.trunc)
        t = self.torus
        low = {h: c for h, c in b.coefficients.items() if t.order(h, a.degree) < self.trunc}
        return low == a.coefficients and a.element.equal_mod(b.element, a.degree, self.trunc)

    def finite_element(self, g: Sequence[int], doublings: int = 3) -> TorusElement | None:
        """``f_g`` as a Laurent polynomial, if some run at order ``2M`` has no terms of order >= M.

        ``M`` starts at the family's truncation and doubles at most ``doublings`` times.
        """
        g = tuple(g)
        if g in self.overrides:
            e = self.overrides[g]
            return TorusElement._raw(e.torus, {m: dict(c) for m, c in e._d.items()})
        t = self.torus
        M = self.trunc
        for _ in range(doublings):
            b = self.kl(g, 2 * M).element
            if all(t.order(m, g) < M for m in b.support()):
                return TorusElement._raw(b.torus, {m: dict(c) for m, c in b._d.items()})
            M *= 2
        return None


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def distinguished(seed: Seed, injective_data: InjectiveData, g: Sequence[int]) -> PointedElement:
    fam = TriangularFamily(seed, injective_data)
    return as_pointed(fam.distinguished(g))


def kl_triangular(seed: Seed, injective_data: InjectiveData | None, g: Sequence[int],
                  window=None, trunc: int = 4) -> KLResult:
    fam = TriangularFamily(seed, injective_data, trunc=trunc, window=window)
    return fam.kl(g)


# -- verification ------------------------------------------------------------------

def _monomials_with_degree(fam: TriangularFamily, which: str, window) -> list:
    """Cluster monomials of t (``which='t'``) or t[1] with degree in ``window``."""
    s = fam.seed
    out = []
    if which == "t":
        for g in window:
            if all(g[k] >= 0 for k in s.unfrozen):
                out.append((g, cluster_monomial(s, g)))
        return out
    data = fam.injective_data
    t1 = data.t1
    degs = [as_pointed(x).degree for x in t1.vars]
    for g in window:
        if any(g[k] > 0 for k in s.unfrozen):
            continue
        m = [0] * s.n
        for k in s.unfrozen:
            m[s.index(data.sigma[s.vertices[k]])] = -g[k]
        rest = list(g)
        for i, mi in enumerate(m):
            if mi:
                rest = [x - mi * y for x, y in zip(rest, degs[i])]
        if any(rest[k] for k in s.unfrozen):
            continue
        for j in s.frozen:
            m[j] = rest[j]
        out.append((g, cluster_monomial(t1, m)))
    return out


def verify_triangular_basis(fam: TriangularFamily, window=None, sub_window=None) -> Diagnostics:
    """The four triangular-basis axioms on ``window`` at the family's truncation."""
    window = [tuple(g) for g in (window if window is not None else fam.window)]
    sub_window = window if sub_window is None else [tuple(g) for g in sub_window]
    N = fam.trunc
    s = fam.seed
    t = fam.torus
    diag = Diagnostics("triangular_basis")
    # (a) pointed and bar-invariant
    for g in window:
        e = fam.f(g)
        diag.checked += 1
        if e.coeff(g) != 1:
            return diag.fail(axiom="pointed", g=g, coefficient=e.coeff(g))
        for m in e.support():
            if t.order(m, g) is None:
                return diag.fail(axiom="pointed", g=g, term=m)
        if not e.is_bar_invariant():
            return diag.fail(axiom="bar-invariant", g=g)
    # (b) triangularity of left multiplication by X_i
    for g in sub_window:
        for i in range(s.n):
            gi = tuple(x + (j == i) for j, x in enumerate(g))
            z = normalize(monomial(t, tuple(int(j == i) for j in range(s.n))) * fam.f(g), gi)
            dec = pointed_decompose(z, fam.f, N, base=gi)
            diag.checked += 1
            for h, c in dec.items():
                if h == gi:
                    if c != 1:
                        return diag.fail(axiom="triangularity", i=s.vertices[i], g=g, g_prime=h, coefficient=c)
                elif not c.in_m():
                    return diag.fail(axiom="triangularity", i=s.vertices[i], g=g, g_prime=h, coefficient=c)
    # (c) cluster monomials of t and t[1]
    for which in ("t", "t[1]"):
        for g, x in _monomials_with_degree(fam, which, window):
            diag.checked += 1
            if not x.equal_mod(fam.f(g), g, N):
                return diag.fail(axiom="cluster monomials", seed=which, g=g,
                                 monomial=x, f=fam.f(g))
    return diag


def _injective_of_neighbor(fam: TriangularFamily, k) -> tuple[Seed, TorusElement, int]:
    """``(t', I_k(t'), sigma'(k))`` with ``t' = mu_k t``, expansions in t's torus."""
    tp = mutate(fam.seed, k)
    data = find_t1(rebase(tp), fam.max_depth)
    u = apply_sequence(tp, data.word)
    j = fam.seed.index(data.sigma[str(k)])
    return u, u.vars[j], j


def verify_admissible(fam: TriangularFamily, k, dmax: int = 3) -> Diagnostics:
    """``X_k(t')^d`` and ``I_k(t')^d`` (``d <= dmax``) are family members."""
    s = fam.seed
    ki = s.index(k)
    diag = Diagnostics(f"admissible[{s.vertices[ki]}]")
    tp = mutate(s, k)
    u, _, j = _injective_of_neighbor(fam, k)
    N = fam.trunc
    for d in range(dmax + 1):
        for name, src, idx in (("X", tp, ki), ("I", u, j)):
            m = [0] * s.n
            m[idx] = d
            x = cluster_monomial(src, m)
            g = as_pointed(x).degree
            diag.checked += 1
            if not x.equal_mod(fam.f(g), g, N):
                return diag.fail(kind=name, d=d, degree=g, difference=x - TorusElement._raw(
                    x.torus, {mm: dict(c) for mm, c in fam.f(g)._d.items()}))
            if any(t_ >= N for t_ in (fam.torus.order(mm, g) for mm in x.support())):
                diag.notes.append(f"{name}^{d} at {list(g)} exceeds truncation; compared modulo order {N}")
    return diag


def verify_compatibility(fam: TriangularFamily, k, window=None, dmax: int = 3) -> Diagnostics:
    """Admissibility in direction ``k`` and its consequences at ``t' = mu_k t``.

    Each windowed ``f_g`` is rewritten in ``t'`` coordinates, must be
    ``phi(g)``-pointed there, decompose unitriangularly over ``inj^{t'}`` with
    lower coefficients in ``v^-1 Z[v^-1]``, and equal ``f^{t'}_{phi(g)}``.
    """
    s = fam.seed
    diag = Diagnostics(f"compatibility[{k}]")
    adm = verify_admissible(fam, k, dmax)
    if not adm.ok:
        return diag.fail(stage="admissible", detail=adm.witness)
    window = [tuple(g) for g in (window if window is not None else fam.window)]
    tp = mutate(s, k)
    fam2 = TriangularFamily(rebase(tp), trunc=fam.trunc, max_depth=fam.max_depth)
    N = fam.trunc
    for g in window:
        z = fam.finite_element(g)
        if z is None:
            diag.notes.append(f"f at {list(g)} not certified finite; skipped")
            continue
        diag.checked += 1
        try:
            z2 = reexpand(z, tp)
            got = as_pointed(z2).degree
        except (DivisionError, NotPointedError) as exc:
            return diag.fail(stage="re-expansion", g=g, error=str(exc))
        g2 = phi_step(s, k, g)
        if got != g2:
            return diag.fail(stage="pointed", g=g, expected=g2, degree=got)
        dec = pointed_decompose(z2, fam2.distinguished, N, base=g2)
        for h, c in dec.items():
            if (h == g2 and c != 1) or (h != g2 and not c.in_m()):
                return diag.fail(stage="decomposition", g=g, eta=h, coefficient=c)
        if not z2.equal_mod(fam2.f(g2), g2, N):
            return diag.fail(stage="basis at t'", g=g, g_prime=g2)
    return diag


def verify_copointed_rigidity(z: TorusElement, fam: TriangularFamily, k, d: int) -> Diagnostics:
    """``z`` with the pointed/copointed data of ``(X_k')^d`` and Laurent at ``t'`` equals it."""
    s = fam.seed
    diag = Diagnostics(f"copointed_rigidity[{k},{d}]")
    tp = mutate(s, k)
    ki = s.index(k)
    m = [0] * s.n
    m[ki] = d
    ref = cluster_monomial(tp, m)
    pr = as_pointed(ref)
    eta_ref, _ = copointed_tail(ref)
    diag.checked += 1
    try:
        pz = as_pointed(z)
        eta_z, _ = copointed_tail(z)
    except NotPointedError as exc:
        return diag.fail(stage="pointed/copointed", error=str(exc))
    if pz.degree != pr.degree or eta_z != eta_ref:
        return diag.fail(stage="degrees", degree=pz.degree, copointed=eta_z,
                         expected_degree=pr.degree, expected_copointed=eta_ref)
    diag.checked += 1
    try:
        reexpand(z, tp)
        member = True
    except DivisionError as exc:
        member = False
        reason = str(exc)
    for x in sorted(set(z.support()) | set(ref.support())):
        if z.coeff(x) != ref.coeff(x):
            return diag.fail(stage="coefficient", term=x, got=z.coeff(x), expected=ref.coeff(x),
                             laurent_at_mutated_seed=member)
    if not member:
        return diag.fail(stage="membership", error=reason)
    return diag


def transfer_similar(source, source_seed: Seed, target_seed: Seed, tau: Mapping,
                     degrees=None) -> TriangularFamily:
    """Transport ``f_{g_uf}`` from ``source_seed`` to a similar ``target_seed``.

    ``tau`` maps unfrozen source labels to unfrozen target labels with
    ``b_ij = b~_{tau i, tau j}``.  ``source`` is a TriangularFamily (or a
    mapping degree -> element).  Frozen parts of source degrees are dropped;
    the result is keyed by target degrees with zero frozen part.
    """
    src = rebase(source_seed)
    tgt = rebase(target_seed)
    tau = {str(a): str(b) for a, b in tau.items()}
    if sorted(tau) != sorted(src.vertices[i] for i in src.unfrozen) or \
            sorted(tau.values()) != sorted(tgt.vertices[i] for i in tgt.unfrozen):
        raise InputError("tau must be a bijection between the unfrozen vertex sets")
    for a in tau:
        for b_ in tau:
            ia, ib = src.index(a), src.index(b_)
            ja, jb = tgt.index(tau[a]), tgt.index(tau[b_])
            if src.b(ia, ib) != tgt.b(ja, jb):
                raise InputError(f"seeds are not similar under tau: b[{a},{b_}] = {src.b(ia, ib)}"
                                 f" but b~[{tau[a]},{tau[b_]}] = {tgt.b(ja, jb)}")
    get = source.__getitem__ if not callable(source) or isinstance(source, (TriangularFamily, Mapping)) \
        else source
    if degrees is None:
        degrees = source.window if isinstance(source, TriangularFamily) else list(source)
    trunc = source.trunc if isinstance(source, TriangularFamily) else None
    out = TriangularFamily(tgt, trunc=trunc or 4)
    ttor = tgt.torus
    stor = src.torus
    col = {src.unfrozen.index(src.index(a)): tgt.unfrozen.index(tgt.index(b_)) for a, b_ in tau.items()}
    for g in degrees:
        g = tuple(g)
        guf = tuple(g[i] if i in src.unfrozen else 0 for i in range(src.n))
        elem = get(g)
        pe_terms = {}
        for m, c in elem.terms().items():
            nvec = stor.cone_coords(_vsub(m, g))
            if nvec is None or any(x < 0 for x in nvec):
                raise NotPointedError(f"source element at {list(g)} is not pointed")
            tn = [0] * tgt.r
            for c_src, c_tgt in col.items():
                tn[c_tgt] = nvec[c_src]
            pe_terms[tuple(nvec)] = (tuple(tn), c)
        base = [0] * tgt.n
        for i in src.unfrozen:
            base[tgt.index(tau[src.vertices[i]])] = guf[i]
        base = tuple(base)
        terms = {_vadd(base, ttor.y_vector(tn)): c for tn, c in pe_terms.values()}
        tr = None if elem.trunc is None else (base, elem.trunc[1])
        new = TorusElement(ttor, terms, trunc=tr)
        if new.coeff(base) != 1 or not new.is_bar_invariant():
            raise NotPointedError(f"transferred element at {list(base)} is not pointed and bar-invariant")
        prev = out.overrides.get(base)
        if prev is not None:
            if prev != new:
                raise NotPointedError(f"source tails differ for degrees with unfrozen part {list(guf)}")
            continue
        out.overrides[base] = new
        out.window.append(base)
    return out


def verify_chain(fam: TriangularFamily, seeds: Sequence[Seed], window=None) -> Diagnostics:
    """``L^t`` re-expanded at each seed equals that seed's own triangular family."""
    window = [tuple(g) for g in (window if window is not None else fam.window)]
    diag = Diagnostics("common_triangular_basis")
    from .tropical import phi_between

    N = fam.trunc
    for s in seeds:
        if s.base != fam.torus:
            raise InputError("seeds must be reached from the family's seed")
        other = TriangularFamily(rebase(s), trunc=N, max_depth=fam.max_depth)
        for g in window:
            z = fam.finite_element(g)
            if z is None:
                diag.notes.append(f"f at {list(g)} not certified finite; skipped")
                continue
            diag.checked += 1
            g2 = phi_between(fam.seed, s, g)
            try:
                z2 = reexpand(z, s)
            except DivisionError as exc:
                return diag.fail(seed=",".join(s.label), g=g, error=str(exc))
            if as_pointed(z2).degree != g2:
                return diag.fail(seed=",".join(s.label), g=g, expected=g2)
            if not z2.equal_mod(other.f(g2), g2, N):
                return diag.fail(seed=",".join(s.label), g=g, g_prime=g2, stage="basis")
    return diag
