from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from surface_shuffle.expr import (
    Add, Div, EvalError, IntLit, LexError, Mul, Neg, ParseError, Pow, RhoRef, Sub, SymWrap, SymbolRef,
    ZetaRef, evaluate, parse, parse_text, render_ast, tokenize,
)
from surface_shuffle.lambda_ops import AffinePlane, parse_custom_model, zeta
from surface_shuffle.ring import Q1, RatFunc, factor_sym, pair_sym, render, z

from conftest import S, sympy_zero, to_sympy

GOLDEN = Path(__file__).parent / "golden"


def kinds(text):
    return [t.kind for t in tokenize(text)]


def dump(node, indent=0):
    """Indented tree listing matching the golden file layout."""
    pad = "  " * indent
    if isinstance(node, SymbolRef):
        return f"{pad}SymbolRef({node.symbol})"
    if isinstance(node, IntLit):
        return f"{pad}IntLit({node.value})"
    if isinstance(node, ZetaRef):
        return f"{pad}ZetaRef({node.i}, {node.j}, model={node.model or 'context'})"
    if isinstance(node, SymWrap):
        return f"{pad}SymWrap({node.n}, {node.m},\n{dump(node.body, indent + 1)})"
    if isinstance(node, (Add, Sub, Mul, Div)):
        name = type(node).__name__
        return f"{pad}{name}(\n{dump(node.left, indent + 1)},\n{dump(node.right, indent + 1)})"
    raise TypeError(node)


class TestTokenize:
    def test_simple(self):
        assert kinds("z1 + z2") == ["IDENT", "PLUS", "IDENT"]
        assert [t.text for t in tokenize("z1 + z2")] == ["z1", "+", "z2"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("   ") == []

    def test_eleven_tokens(self):
        # ( 1 - q1 * z2 / z1 ) ^ 2
        toks = tokenize("(1 - q1*z2/z1)^2")
        assert len(toks) == 11
        assert [t.kind for t in toks[-2:]] == ["POW", "INT"]
        assert toks[-1].text == "2"

    def test_keywords_and_brackets(self):
        assert kinds("sym{1,1}(w1[1,2])") == [
            "SYM", "LBRACE", "INT", "COMMA", "INT", "RBRACE", "LPAREN",
            "IDENT", "LBRACK", "INT", "COMMA", "INT", "RBRACK", "RPAREN"]
        assert kinds("zeta rho zetas") == ["ZETA", "RHO", "IDENT"]

    def test_positions(self):
        assert [t.pos for t in tokenize("z1  +z22")] == [0, 4, 5]

    def test_lex_error_offset(self):
        with pytest.raises(LexError) as info:
            tokenize("z1 + $z2")
        assert info.value.pos == 5
        with pytest.raises(LexError) as info:
            tokenize("z1\t\té")
        assert info.value.pos == 4


class TestParse:
    def test_precedence(self):
        assert parse("1 - z1/z2") == Sub(IntLit(1), Div(SymbolRef(z(1)), SymbolRef(z(2))))
        assert parse("z1^2*z2") == Mul(Pow(SymbolRef(z(1)), 2), SymbolRef(z(2)))
        assert parse("-z1^2") == Neg(Pow(SymbolRef(z(1)), 2))
        assert parse("1 - 2 - 3") == Sub(Sub(IntLit(1), IntLit(2)), IntLit(3))
        assert parse("z1/z2/z3") == Div(Div(SymbolRef(z(1)), SymbolRef(z(2))), SymbolRef(z(3)))
        assert parse("(1 - z1)*z2") == Mul(Sub(IntLit(1), SymbolRef(z(1))), SymbolRef(z(2)))

    def test_golden_parse_tree(self):
        tree = parse("sym{1,1}( z1 * zeta(1,2) )")
        assert tree == SymWrap(1, 1, Mul(SymbolRef(z(1)), ZetaRef(1, 2)))
        assert dump(tree) + "\n" == (GOLDEN / "parse_sym_zeta.txt").read_text()

    def test_symbol_spellings(self):
        assert parse("q1") == SymbolRef(Q1)
        assert parse("w2[1,3]") == SymbolRef(pair_sym("w", 2, 1, 3))
        assert parse("ax[2]") == SymbolRef(factor_sym("x", 2))
        assert parse("z1^-2") == Pow(SymbolRef(z(1)), -2)
        assert parse("rho(2,1)") == RhoRef(2, 1)

    @pytest.mark.parametrize("text", ["", "1 +", "(z1", "z1 z2", "z1^z2", "zeta(1)", "w1[1]", "foo", "sym(1)"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.pos >= 0

    def test_error_position_and_expected(self):
        with pytest.raises(ParseError) as info:
            parse("z1 * )")
        assert info.value.pos == 5
        assert "LPAREN" in info.value.expected


leaves = st.one_of(
    st.integers(0, 20).map(IntLit),
    st.sampled_from([z(1), z(2), Q1, pair_sym("w", 1, 1, 2), factor_sym("x", 1)]).map(SymbolRef),
    st.tuples(st.integers(1, 3), st.integers(1, 3)).map(lambda t: ZetaRef(*t)),
)


def _extend(children):
    binop = st.sampled_from([Add, Sub, Mul, Div])
    return st.one_of(
        children.map(Neg),
        st.tuples(children, st.integers(-3, 3)).map(lambda t: Pow(*t)),
        st.tuples(binop, children, children).map(lambda t: t[0](t[1], t[2])),
        st.tuples(st.integers(0, 2), st.integers(0, 2), children).map(lambda t: SymWrap(*t)),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


class TestRoundTrip:
    @given(asts)
    @settings(max_examples=200)
    def test_render_parse(self, tree):
        assert parse(render_ast(tree)) == tree

    @given(asts)
    @settings(max_examples=100)
    def test_render_idempotent(self, tree):
        once = render_ast(parse(render_ast(tree)))
        assert render_ast(parse(once)) == once


class TestEvaluate:
    def test_literals(self):
        assert parse_text("1") == 1
        assert parse_text("2/4") == RatFunc.const(1) / 2

    def test_zeta_empty_model(self):
        r = parse_text("zeta(1,2)", parse_custom_model("*:"))
        z1, z2 = S("z1"), S("z2")
        assert sympy_zero(to_sympy(r) - 1 / ((1 - z2 / z1) * (1 - z1 / z2)))

    def test_sym_two_cosets(self):
        assert parse_text("sym{1,1}(z1)") == parse_text("z1 + z2")

    def test_zeta_uses_model(self):
        assert parse_text("zeta(1,2)", AffinePlane()) == zeta(AffinePlane(), 1, 2)

    def test_unreduced_zeta(self):
        text = "(1 - q1*q2*z2/z1)/((1 - q1*z2/z1)*(1 - q2*z2/z1)*(1 - z1/z2))"
        assert parse_text(text) == zeta(AffinePlane(), 1, 2)

    def test_render_of_evaluation_reparses(self):
        r = parse_text("z1/(1 - q1*z2/z1)^2 - 3*z2^-1")
        assert parse_text(render(r)).same_representation(r)

    def test_missing_model(self):
        with pytest.raises(EvalError):
            evaluate(parse("zeta(1,2)"))

    def test_eval_errors_carry_position(self):
        with pytest.raises(EvalError) as info:
            parse_text("z1 + zeta(2,2)", AffinePlane())
        assert info.value.pos == 5
        with pytest.raises(EvalError) as info:
            parse_text("z1/(z1 - z1)")
        assert info.value.pos >= 0
        with pytest.raises(EvalError):
            parse_text("1/(1 + z1 + z2)")
