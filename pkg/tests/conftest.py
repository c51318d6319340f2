import sympy
from hypothesis import strategies as st

from surface_shuffle.ring import Q1, LaurentPoly, RatFunc, mono, mono_items, z

ACCEPTANCE_LINES = []


def sym_of(s):
    return sympy.Symbol(str(s))


def poly_to_sympy(p: LaurentPoly):
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for s, e in mono_items(m):
            t *= sym_of(s) ** e
        out += t
    return out


def to_sympy(r: RatFunc):
    """Independent CAS image of ``r``, block by block."""
    out = sympy.Integer(0)
    for den, num in r.blocks():
        d = sympy.Integer(1)
        for m in den.factors:
            d *= 1 - poly_to_sympy(LaurentPoly.monomial(m))
        out += poly_to_sympy(num) / d
    return out


def sympy_zero(expr) -> bool:
    return sympy.cancel(sympy.together(expr)) == 0


def S(name):
    return sympy.Symbol(name)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- hypothesis strategies --------------------------------------------------

SYMBOLS = [z(1), z(2), z(3), Q1]

monomials = st.lists(st.tuples(st.sampled_from(SYMBOLS), st.integers(-2, 2)), max_size=3).map(
    lambda fs: mono(*fs))
coefficients = st.integers(-4, 4).filter(bool)
laurent_polys = st.dictionaries(monomials, coefficients, max_size=4).map(LaurentPoly)
nonunit_monomials = monomials.filter(lambda m: m != ())


@st.composite
def ratfuncs(draw, max_factors=2):
    num = draw(laurent_polys)
    den = draw(st.lists(st.sampled_from([mono(z(1)), mono(z(2), (z(1), -1)), mono(Q1, z(1), (z(2), -1)),
                                         mono((z(3), 2)), mono((z(1), -1))]), max_size=max_factors))
    return RatFunc(num, den)
