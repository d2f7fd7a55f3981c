"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from qcluster.qcoef import QCoeff
from qcluster.qtorus import Torus, TorusElement

qcoeffs = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4).map(QCoeff)
nonzero_qcoeffs = qcoeffs.filter(bool)


@st.composite
def antisymmetric(draw):
    c = draw(qcoeffs)
    return c - c.bar()


@st.composite
def in_m_coeffs(draw):
    d = draw(st.dictionaries(st.integers(-5, -1), st.integers(-3, 3), max_size=4))
    return QCoeff(d)


@st.composite
def skew_matrices(draw, n):
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.integers(-2, 2))
            lam[i][j], lam[j][i] = x, -x
    return lam


@st.composite
def tori(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    lam = draw(skew_matrices(n))
    return Torus(tuple(tuple(r) for r in lam), tuple(() for _ in range(n)), ())


@st.composite
def elements(draw, torus, max_terms=3, span=2):
    exps = st.tuples(*[st.integers(-span, span) for _ in range(torus.n)])
    terms = draw(st.dictionaries(exps, nonzero_qcoeffs, max_size=max_terms))
    return TorusElement(torus, terms)


@st.composite
def principal_exchange(draw, max_r=3, max_frozen=2):
    """A random skew-symmetrizable principal part with random extra frozen rows and full rank.

    Frozen rows include an identity block so the matrix always has full column rank.
    """
    r = draw(st.integers(1, max_r))
    d = draw(st.lists(st.sampled_from([1, 1, 2]), min_size=r, max_size=r))
    P = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            # d_i b_ij = -d_j b_ji with b_ij = d_j * x, b_ji = -d_i * x
            x = draw(st.integers(-1, 1))
            P[i][j] = d[j] * x
            P[j][i] = -d[i] * x
    extra = draw(st.integers(0, max_frozen))
    rows = [list(P[i]) for i in range(r)]
    rows += [[int(i == c) for c in range(r)] for i in range(r)]
    for _ in range(extra):
        rows.append(draw(st.lists(st.integers(-1, 1), min_size=r, max_size=r)))
    return r, rows
