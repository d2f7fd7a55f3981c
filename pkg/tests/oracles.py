"""Independent reference computations used by the tests.

None of these call the package's arithmetic: products are expanded term by
term from the defining formula, classical expansions go through sympy
rational functions, and dominance is decided by brute-force enumeration.
"""

import itertools

import sympy


def twisted_product(lam, a, b):
    """``a * b`` for dicts ``{exponent: {v-power: int}}`` straight from the defining formula."""
    out = {}
    for m, ca in a.items():
        for n, cb in b.items():
            e = sum(m[i] * lam[i][j] * n[j] for i in range(len(m)) for j in range(len(n)))
            key = tuple(x + y for x, y in zip(m, n))
            slot = out.setdefault(key, {})
            for p, x in ca.items():
                for q, y in cb.items():
                    slot[p + q + e] = slot.get(p + q + e, 0) + x * y
    return {m: {p: x for p, x in c.items() if x} for m, c in out.items()
            if any(c.values())}


def mutate_b(B, unfrozen, k):
    """Exchange-matrix mutation, written independently of the package."""
    kc = unfrozen.index(k)
    n, r = len(B), len(unfrozen)
    out = [[0] * r for _ in range(n)]
    for i in range(n):
        for c in range(r):
            j = unfrozen[c]
            if i == k or j == k:
                out[i][c] = -B[i][c]
            else:
                bik, bkj = B[i][kc], B[k][c]
                out[i][c] = B[i][c] + max(bik, 0) * bkj + bik * max(-bkj, 0)
    return out


def classical_cluster(B, unfrozen, word):
    """Cluster variables after ``word`` as sympy rational functions (q = 1)."""
    n = len(B)
    xs = sympy.symbols(f"x1:{n + 1}")
    cur = list(xs)
    B = [list(r) for r in B]
    for k in word:
        kc = unfrozen.index(k)
        plus = sympy.Mul(*[cur[i] ** max(B[i][kc], 0) for i in range(n)])
        minus = sympy.Mul(*[cur[i] ** max(-B[i][kc], 0) for i in range(n)])
        cur[k] = sympy.factor(sympy.cancel((plus + minus) / cur[k]))
        B = mutate_b(B, unfrozen, k)
    return xs, cur


def laurent_at_one(expr, xs):
    """``{exponent: int}`` for a Laurent polynomial given as a sympy expression."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    dpoly = sympy.Poly(den, *xs)
    if len(dpoly.terms()) != 1:
        raise ValueError("not a Laurent polynomial")
    (dexp, dcoef), = dpoly.terms()
    out = {}
    for e, c in sympy.Poly(num, *xs).terms():
        key = tuple(a - b for a, b in zip(e, dexp))
        val = sympy.Rational(c, dcoef)
        assert val.q == 1
        out[key] = int(val)
    return out


def brute_pointed_degree(support, Bt, bound=8):
    """The exponent ``g`` in ``support`` with every other term ``g + B~ n`` (0 < n, |n| <= bound)."""
    r = len(Bt[0]) if Bt else 0
    offsets = {}
    for nvec in itertools.product(range(bound + 1), repeat=r):
        if any(nvec) and sum(nvec) <= bound:
            d = tuple(sum(Bt[i][c] * nvec[c] for c in range(r)) for i in range(len(Bt)))
            offsets.setdefault(d, nvec)
    hits = []
    for g in support:
        if all(m == g or tuple(a - b for a, b in zip(m, g)) in offsets for m in support):
            hits.append(g)
    return hits[0] if len(hits) == 1 else None


def bar_dict(a):
    return {m: {-p: x for p, x in c.items()} for m, c in a.items()}
