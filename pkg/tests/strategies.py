"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from qserre.field import RatF

small = st.integers(-4, 4)


@st.composite
def ratfs(draw, allow_zero=True):
    """Quotients of small sparse integer polynomials in r, s."""
    def poly():
        terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=3))
        out = RatF(0)
        for (i, j), c in terms.items():
            out = out + RatF.monomial(i, j, c)
        return out

    num = poly()
    den = poly()
    if not den:
        den = RatF(1)
    x = num / den
    if not allow_zero and not x:
        x = RatF(1)
    return x


@st.composite
def elements(draw, alg, maxdeg=2, maxterms=3, window=None):
    monos = draw(st.lists(st.tuples(*[
        st.integers(-window, window) if (window and alg.invertible[i]) else st.integers(0, maxdeg)
        for i in range(alg.n)
    ]), min_size=1, max_size=maxterms))
    out = alg.zero()
    for m in monos:
        if sum(abs(e) for e in m) > maxdeg + (2 * window if window else 0):
            continue
        out = out + alg.monomial(m, draw(st.integers(-3, 3)))
    return out
