"""Exact sparse Laurent polynomials and rational functions with binomial denominators.

Everything here is immutable.  Monomials are sorted tuples of ``(symbol id, exponent)``
pairs over interned symbols; polynomials are dicts from monomials to exact rationals (``int`` or
``Fraction``).  A :class:`RatFunc` is kept as a finite sum of blocks
``numerator / prod(1 - m)``, keyed by the (canonically oriented) binomial
multiset, so that large symmetrized sums stay factored.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Optional

# Kind order doubles as the symbol order.  Sheaf-class symbols come first so that
# orienting a binomial never produces a negative exponent on them.
PAIR, FACTOR, PARAM, Z = range(4)


class ShuffleError(Exception):
    """Base class for engine errors."""


class DivisionByZero(ShuffleError, ZeroDivisionError):
    pass


class DegenerateFactor(ShuffleError, ZeroDivisionError):
    pass


class IndexOutOfRange(ShuffleError, IndexError):
    pass


class NotInvertible(ShuffleError, ValueError):
    """Raised when a divisor is not a monomial times a product of binomials."""


class NegativeExponent(ShuffleError, ValueError):
    pass


class Symbol(NamedTuple):
    kind: int
    name: str
    idx: tuple = ()

    def __str__(self):
        if self.kind == Z:
            return f"z{self.idx[0]}"
        if self.kind == PARAM:
            return self.name
        if self.kind == PAIR:
            k, i, j = self.idx
            return f"{self.name}{k}[{i},{j}]"
        return f"a{self.name}[{self.idx[0]}]"

    @property
    def invertible(self):
        return self.kind in (Z, PARAM)

    def relabel(self, f):
        if self.kind == PARAM:
            return self
        if self.kind == PAIR:
            k, i, j = self.idx
            return Symbol(PAIR, self.name, (k, f(i), f(j)))
        return Symbol(self.kind, self.name, (f(self.idx[0]),))

    def indices(self):
        if self.kind == PARAM:
            return ()
        if self.kind == PAIR:
            return self.idx[1:]
        return self.idx


def z(i: int) -> Symbol:
    if i < 1:
        raise ValueError(f"shuffle variable index must be >= 1, got {i}")
    return Symbol(Z, "z", (i,))


def param(name: str) -> Symbol:
    return Symbol(PARAM, name)


def pair_sym(name: str, k: int, i: int, j: int) -> Symbol:
    if i == j or i < 1 or j < 1 or k < 1:
        raise ValueError(f"bad pair symbol {name}{k}[{i},{j}]")
    return Symbol(PAIR, name, (k, i, j))


def factor_sym(name: str, i: int) -> Symbol:
    if i < 1:
        raise ValueError(f"bad factor symbol index {i}")
    return Symbol(FACTOR, name, (i,))


Q1 = param("q1")
Q2 = param("q2")

# ---------------------------------------------------------------------------
# monomials
#
# A monomial is a tuple of ``(symbol_id, exponent)`` pairs sorted by id.  Ids are
# interned per process, so anything order-sensitive (orientation, rendering,
# graded-lex) goes through the true ``Symbol`` order instead.

Monomial = tuple
ONE: Monomial = ()

_SYMS: list = []
_IDS: dict = {}
_INVERTIBLE: list = []


def sym_id(s: Symbol) -> int:
    i = _IDS.get(s)
    if i is None:
        i = _IDS[s] = len(_SYMS)
        _SYMS.append(s)
        _INVERTIBLE.append(s.invertible)
    return i


def sym_of(i: int) -> Symbol:
    return _SYMS[i]


def mono(*factors) -> Monomial:
    """Build a monomial from ``Symbol`` or ``(Symbol, exponent)`` arguments."""
    d: dict = {}
    for f in factors:
        s, e = (f, 1) if isinstance(f, Symbol) else f
        i = sym_id(s)
        d[i] = d.get(i, 0) + e
    out = tuple(sorted((i, e) for i, e in d.items() if e))
    _check_mono(out)
    return out


def mono_items(m: Monomial):
    """``(Symbol, exponent)`` pairs in symbol order."""
    return sorted((_SYMS[i], e) for i, e in m)


def mono_exponent(m: Monomial, s: Symbol) -> int:
    i = _IDS.get(s)
    for j, e in m:
        if j == i:
            return e
    return 0


def _check_mono(m):
    for i, e in m:
        if e < 0 and not _INVERTIBLE[i]:
            raise NegativeExponent(f"{_SYMS[i]} cannot carry a negative exponent")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        e2 = d.get(s, 0) + e
        if e2:
            d[s] = e2
        else:
            del d[s]
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE
    return tuple((s, e * k) for s, e in a)


def mono_inv(a: Monomial, check: bool = True) -> Monomial:
    out = tuple((s, -e) for s, e in a)
    if check:
        _check_mono(out)
    return out


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_relabel(a: Monomial, f) -> Monomial:
    return _Relabeler(f)(a)


class _Relabeler:
    """Memoized monomial relabelling for one index map."""

    __slots__ = ("f", "syms", "monos")

    def __init__(self, f):
        self.f = f
        self.syms = {}
        self.monos = {}

    def sym(self, i):
        out = self.syms.get(i)
        if out is None:
            out = self.syms[i] = sym_id(_SYMS[i].relabel(self.f))
        return out

    def __call__(self, m):
        out = self.monos.get(m)
        if out is None:
            sym = self.sym
            out = self.monos[m] = tuple(sorted([(sym(i), e) for i, e in m]))
        return out


def mono_str(a: Monomial) -> str:
    if not a:
        return "1"
    return "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in mono_items(a))


def mono_key(a: Monomial) -> tuple:
    """Process-independent sort key."""
    return tuple(mono_items(a))


def _grlex_cmp(a: Monomial, b: Monomial) -> int:
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    a, b = mono_items(a), mono_items(b)
    ia = ib = 0
    while ia < len(a) or ib < len(b):
        sa = a[ia][0] if ia < len(a) else None
        sb = b[ib][0] if ib < len(b) else None
        if sb is None or (sa is not None and sa < sb):
            ea, eb = a[ia][1], 0
            ia += 1
        elif sa is None or sb < sa:
            ea, eb = 0, b[ib][1]
            ib += 1
        else:
            ea, eb = a[ia][1], b[ib][1]
            ia += 1
            ib += 1
        if ea != eb:
            return -1 if ea < eb else 1
    return 0


grlex_key = functools.cmp_to_key(_grlex_cmp)

_ORIENT_CACHE: dict = {}


def orient(m: Monomial):
    """Canonical orientation of the binomial ``1 - m``.

    Returns ``(m', sign, unit)`` with ``1 - m == sign * unit * (1 - m')`` and the
    exponent of the first symbol of ``m'`` (in symbol order) positive.
    """
    out = _ORIENT_CACHE.get(m)
    if out is None:
        if not m:
            raise DegenerateFactor("binomial 1 - 1 vanishes identically")
        first = min(m, key=lambda t: _SYMS[t[0]])
        if first[1] > 0:
            out = (m, 1, ONE)
        else:
            out = (mono_inv(m, check=False), -1, m)
        _ORIENT_CACHE[m] = out
    return out


def _coef(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, bool):
        return int(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def coef_str(c) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coef(c)
                if c:
                    _check_mono(m)
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        c = _coef(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "LaurentPoly":
        return cls({m: c})

    @classmethod
    def symbol(cls, s: Symbol) -> "LaurentPoly":
        return cls._raw({((sym_id(s), 1),): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            c2 = out.get(m, 0) + c
            if c2:
                out[m] = _coef(c2)
            else:
                del out[m]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                c = out.get(m, 0) + ca * cb
                if c:
                    out[m] = c
                else:
                    del out[m]
        return LaurentPoly._raw({m: _coef(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers must be non-negative integers")
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "LaurentPoly":
        c = _coef(c)
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({m: _coef(v * c) for m, v in self.terms.items()})

    def shift(self, m: Monomial) -> "LaurentPoly":
        """Multiply by the monomial ``m``."""
        if not m:
            return self
        return LaurentPoly._raw({mono_mul(k, m): c for k, c in self.terms.items()})

    def relabel(self, f) -> "LaurentPoly":
        rl = f if isinstance(f, _Relabeler) else _Relabeler(f)
        return LaurentPoly._raw({rl(m): c for m, c in self.terms.items()})

    def symbols(self) -> set:
        return {_SYMS[i] for m in self.terms for i, _ in m}

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def divide_binomial(self, m: Monomial) -> Optional["LaurentPoly"]:
        """Exact quotient by ``1 - m``, or ``None`` if it does not divide.

        Terms are grouped into chains ``base * m**k``; the binomial divides iff
        every chain's coefficients sum to zero, and the quotient coefficients
        are the chain's partial sums.
        """
        if not m:
            raise DegenerateFactor("division by 1 - 1")
        piv, e = m[0]
        chains: dict = {}
        for mon, c in self.terms.items():
            v = 0
            for s, x in mon:
                if s == piv:
                    v = x
                    break
            k = v // e
            base = mono_mul(mon, mono_pow(m, -k))
            chains.setdefault(base, {})[k] = c
        out = {}
        for base, ks in chains.items():
            lo, hi = min(ks), max(ks)
            acc = 0
            for k in range(lo, hi):
                acc += ks.get(k, 0)
                if acc:
                    out[mono_mul(base, mono_pow(m, k))] = _coef(acc)
            if acc + ks[hi] != 0:
                return None
        return LaurentPoly._raw(out)

    def evaluate(self, values: Mapping):
        total = Fraction(0)
        for m, c in self.terms.items():
            t = Fraction(c)
            for s, e in m:
                x = Fraction(values[_SYMS[s]])
                if e < 0 and x == 0:
                    raise DivisionByZero(f"{s} = 0 raised to {e}")
                t *= x ** e
            total += t
        return total

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"LaurentPoly({render_poly(self)!r})"


def binomial(m: Monomial) -> LaurentPoly:
    """The polynomial ``1 - m``."""
    if not m:
        raise DegenerateFactor("binomial 1 - 1 vanishes identically")
    return LaurentPoly._raw({ONE: 1, m: -1})


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# factored denominators


@dataclass(frozen=True)
class FactoredDenom:
    """``prod(1 - m)`` over a sorted multiset of canonically oriented monomials."""

    factors: tuple = ()

    def expand(self) -> LaurentPoly:
        out = LaurentPoly.constant(1)
        for m in self.factors:
            out = out * binomial(m)
        return out

    def counts(self) -> Counter:
        return Counter(self.factors)

    def __mul__(self, other: "FactoredDenom") -> "FactoredDenom":
        return FactoredDenom(tuple(sorted(self.factors + other.factors)))

    def __str__(self):
        return render_denom(self.factors)


def _key_from_counts(c: Mapping) -> tuple:
    return tuple(sorted(m for m, k in c.items() for _ in range(k)))


def _key_minus(a: tuple, b: tuple) -> tuple:
    return _key_from_counts(Counter(a) - Counter(b))


def _expand_key(key: tuple) -> LaurentPoly:
    return FactoredDenom(key).expand()


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Exact rational function: a sum of ``numerator / prod(1 - m)`` blocks."""

    __slots__ = ("_blocks",)

    def __init__(self, num=None, den: Iterable[Monomial] = ()):
        if num is None:
            num = LaurentPoly()
        elif not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        self._blocks = {}
        if num:
            den = list(den)
            for m in den:
                _check_mono(m)
            key, unit_sign, unit = _orient_all(den)
            n = num.shift(mono_inv(unit, check=False)).scale(unit_sign)
            _check_poly_mono(n)
            self._blocks[key] = n

    @classmethod
    def _raw(cls, blocks: dict) -> "RatFunc":
        r = object.__new__(cls)
        r._blocks = blocks
        return r

    @classmethod
    def one(cls):
        return cls(LaurentPoly.constant(1))

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def const(cls, c):
        return cls(LaurentPoly.constant(c))

    @classmethod
    def of(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        if isinstance(x, Symbol):
            return cls(LaurentPoly.symbol(x))
        return cls.const(x)

    @classmethod
    def monomial(cls, m: Monomial, c=1):
        return cls(LaurentPoly.monomial(m, c))

    @classmethod
    def inv_binomial(cls, m: Monomial):
        """``1 / (1 - m)``."""
        return cls(LaurentPoly.constant(1), [m])

    @classmethod
    def sum(cls, items: Iterable["RatFunc"]) -> "RatFunc":
        acc: dict = {}
        for r in items:
            _accumulate(acc, r._blocks)
        return cls._raw(acc)

    # -- structure

    def blocks(self):
        """``(FactoredDenom, numerator)`` pairs in deterministic order."""
        return [(FactoredDenom(k), self._blocks[k]) for k in sorted(self._blocks, key=_den_key)]

    def block_count(self):
        return len(self._blocks)

    def combined(self):
        """Single fraction ``(num, FactoredDenom)`` over the lcm of the block denominators."""
        if not self._blocks:
            return LaurentPoly(), FactoredDenom()
        if len(self._blocks) == 1:
            (k, n), = self._blocks.items()
            return n, FactoredDenom(k)
        lcm: Counter = Counter()
        for k in self._blocks:
            for m, c in Counter(k).items():
                if c > lcm[m]:
                    lcm[m] = c
        lkey = _key_from_counts(lcm)
        num = LaurentPoly()
        for k, n in self._blocks.items():
            num = num + n * _expand_key(_key_minus(lkey, k))
        return num, FactoredDenom(lkey)

    @property
    def num(self) -> LaurentPoly:
        return self.combined()[0]

    @property
    def den(self) -> FactoredDenom:
        return self.combined()[1]

    def as_poly(self) -> Optional[LaurentPoly]:
        """The Laurent polynomial this equals when there is no denominator left."""
        r = self.normalize()
        if not r._blocks:
            return LaurentPoly()
        if list(r._blocks) == [()]:
            return r._blocks[()]
        return None

    def symbols(self) -> set:
        out = set()
        for k, n in self._blocks.items():
            out |= n.symbols()
            for m in k:
                out.update(_SYMS[i] for i, _ in m)
        return out

    def max_index(self) -> int:
        return max((i for s in self.symbols() for i in s.indices()), default=0)

    def z_indices(self) -> set:
        return {s.idx[0] for s in self.symbols() if s.kind == Z}

    # -- arithmetic

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        acc = dict(self._blocks)
        _accumulate(acc, other._blocks)
        return RatFunc._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw({k: -n for k, n in self._blocks.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _lift(other)
        if other is None:
            return NotImplemented
        acc: dict = {}
        for ka, na in self._blocks.items():
            for kb, nb in other._blocks.items():
                key = tuple(sorted(ka + kb)) if ka and kb else (ka or kb)
                _accumulate(acc, {key: na * nb})
        return RatFunc._raw(acc)

    __rmul__ = __mul__

    def scale(self, c) -> "RatFunc":
        c = _coef(c)
        if not c:
            return RatFunc.zero()
        return RatFunc._raw({k: n.scale(c) for k, n in self._blocks.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self.scale(Fraction(1) / other)
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _lift(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = RatFunc.one()
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        num, den = self.normalize().combined()
        fac = factor_binomials(num)
        if fac is None:
            raise NotInvertible(f"not a monomial times binomials: {render_poly(num)}")
        c, unit, ms = fac
        if any(not _INVERTIBLE[i] for i, _ in unit):
            raise NotInvertible(f"cannot invert the sheaf-class monomial {mono_str(unit)}")
        top = den.expand().shift(mono_inv(unit)).scale(Fraction(1) / Fraction(c))
        return RatFunc(top, ms)

    def is_zero(self) -> bool:
        if not self._blocks:
            return True
        r = self.normalize()
        if not r._blocks:
            return True
        if len(r._blocks) == 1:
            return False
        return r.combined()[0].is_zero()

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return rf_eq(self, other)

    __hash__ = None

    def same_representation(self, other: "RatFunc") -> bool:
        return self._blocks == other._blocks

    # -- structure-changing operations

    def normalize(self) -> "RatFunc":
        """Cancel every denominator binomial that exactly divides its block numerator."""
        acc: dict = {}
        for key, n in self._blocks.items():
            if not key:
                _accumulate(acc, {key: n})
                continue
            keep = []
            for m, cnt in sorted(Counter(key).items()):
                while cnt:
                    q = n.divide_binomial(m)
                    if q is None:
                        break
                    n = q
                    cnt -= 1
                keep.extend([m] * cnt)
            _accumulate(acc, {tuple(keep): n})
        return RatFunc._raw(acc)

    def relabel(self, f: Callable[[int], int]) -> "RatFunc":
        """Apply an index map to z, pair and factor symbols (a ring homomorphism)."""
        if isinstance(f, Permutation):
            f = _perm_map(f)
        rl = _Relabeler(f)
        acc: dict = {}
        for key, n in self._blocks.items():
            n2 = n.relabel(rl)
            if key:
                newkey, sign, unit = _orient_all(rl(m) for m in key)
                if unit:
                    n2 = n2.shift(mono_inv(unit, check=False))
                if sign == -1:
                    n2 = -n2
            else:
                newkey = key
            _accumulate(acc, {newkey: n2})
        return RatFunc._raw(acc)

    def evaluate(self, values: Mapping) -> Fraction:
        total = Fraction(0)
        for key, n in self._blocks.items():
            d = Fraction(1)
            for m in key:
                d *= 1 - LaurentPoly._raw({m: 1}).evaluate(values)
            if d == 0:
                raise DivisionByZero("denominator vanishes at this point")
            total += n.evaluate(values) / d
        return total

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"RatFunc({render(self)!r})"


def _check_poly_mono(p: LaurentPoly):
    for m in p.terms:
        _check_mono(m)


def _orient_all(ms):
    key = []
    sign = 1
    unit = ONE
    for m in ms:
        mc, s, u = orient(m)
        key.append(mc)
        sign *= s
        if u:
            unit = mono_mul(unit, u)
    return tuple(sorted(key)), sign, unit


def _accumulate(acc: dict, blocks: Mapping):
    for k, n in blocks.items():
        if k in acc:
            s = acc[k] + n
            if s:
                acc[k] = s
            else:
                del acc[k]
        elif n:
            acc[k] = n


def _lift(x) -> Optional[RatFunc]:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction, Symbol)):
        return RatFunc.of(x)
    return None


def rf_eq(a: RatFunc, b: RatFunc) -> bool:
    """Exact equality of rational functions.

    Blocks with equal denominators are compared first; whatever survives is put
    over the lcm of its denominators and the numerator is tested for zero, which
    is cross-multiplication restricted to the factors that differ.
    """
    return (a - b).is_zero()


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rf_normalize(a: RatFunc) -> RatFunc:
    return a.normalize()


# ---------------------------------------------------------------------------
# binomial factorisation (used only to invert user-supplied divisors)


def factor_binomials(p: LaurentPoly):
    """Write ``p = c * unit * prod(1 - m_i)`` or return ``None``.

    Candidate binomials come from ratios of pairs of terms; search backtracks.
    Intended for small divisors typed by a user, not for bulk computation.
    """
    if p.is_zero():
        return None
    return _factor(p, 0)


def _factor(p: LaurentPoly, depth: int):
    if len(p) == 1:
        (m, c), = p.terms.items()
        return c, m, []
    if depth > 24 or len(p) > 256:
        return None
    ms = list(p.terms)
    cands = set()
    for a in ms:
        for b in ms:
            if a != b:
                cands.add(orient(mono_mul(b, mono_inv(a, check=False)))[0])
    for m in sorted(cands, key=lambda x: (abs(mono_degree(x)), grlex_key(x))):
        q = p.divide_binomial(m)
        if q is None:
            continue
        sub = _factor(q, depth + 1)
        if sub is not None:
            c, unit, rest = sub
            return c, unit, rest + [m]
    return None


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..d}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def transposition(cls, d: int, i: int, j: int) -> "Permutation":
        imgs = list(range(1, d + 1))
        imgs[i - 1], imgs[j - 1] = j, i
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if 1 <= i <= len(self.images):
            return self.images[i - 1]
        raise IndexOutOfRange(f"index {i} outside 1..{len(self.images)}")

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) = self(other(i))``."""
        if self.degree != other.degree:
            raise ValueError("composing permutations of different degree")
        return Permutation(tuple(self(other(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, s in enumerate(self.images, 1):
            inv[s - 1] = i
        return Permutation(tuple(inv))


def _perm_map(sigma: Permutation):
    imgs = (0,) + sigma.images
    return imgs.__getitem__


def permute_action(sigma: Permutation, a: RatFunc) -> RatFunc:
    """Substitute ``z_i -> z_sigma(i)`` (and likewise on pair and factor symbols)."""
    top = a.max_index()
    if top > sigma.degree:
        raise IndexOutOfRange(f"index {top} used but permutation has degree {sigma.degree}")
    return a.relabel(sigma)


# ---------------------------------------------------------------------------
# canonical text rendering


def _term_str(m: Monomial, c, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if not m:
        body = coef_str(a)
    elif a == 1:
        body = mono_str(m)
    else:
        body = f"{coef_str(a)}*{mono_str(m)}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def render_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    return "".join(_term_str(m, c, i == 0) for i, (m, c) in enumerate(p.sorted_terms()))


def _den_key(key: tuple):
    return sorted(mono_key(m) for m in key)


def render_denom(key: tuple) -> str:
    parts = []
    for m, k in sorted(Counter(key).items(), key=lambda t: mono_key(t[0])):
        f = f"(1 - {mono_str(m)})"
        parts.append(f if k == 1 else f"{f}^{k}")
    return "*".join(parts)


def _over(num: LaurentPoly, den: str) -> str:
    text = render_poly(num)
    return f"{text}/({den})" if len(num.terms) == 1 else f"({text})/({den})"


def render(r: RatFunc) -> str:
    if not r._blocks:
        return "0"
    out = []
    for key in sorted(r._blocks, key=_den_key):
        n = r._blocks[key]
        if not key:
            out.append(render_poly(n))
        else:
            out.append(_over(n, render_denom(key)))
    return " + ".join(out)


def render_fraction(r: RatFunc) -> str:
    """Render as a single fraction over the lcm denominator."""
    num, den = r.combined()
    if not den.factors:
        return render_poly(num)
    return _over(num, render_denom(den.factors))
