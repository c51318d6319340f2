"""Total-wedge operations on split virtual classes, and the pair kernels built from them."""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Union

from .ring import (
    ONE, Q1, Q2, DegenerateFactor, LaurentPoly, Monomial, RatFunc, ShuffleError,
    binomial, mono, mono_inv, mono_mul, mono_str, pair_sym, z,
)


class BadPair(ShuffleError, ValueError):
    pass


@dataclass(frozen=True)
class VirtualClass:
    """Formal difference of sums of monomial line elements.

    ``terms`` is a sorted tuple of ``(monomial, multiplicity)`` with nonzero
    signed multiplicities; a ``+m`` and a ``-m`` cancel on construction.
    """

    terms: tuple = ()

    @classmethod
    def of(cls, entries: Iterable) -> "VirtualClass":
        """Build from ``(sign, monomial)`` pairs."""
        counts: dict = {}
        for sign, m in entries:
            if sign not in (1, -1):
                raise ValueError(f"line sign must be +1 or -1, got {sign}")
            counts[m] = counts.get(m, 0) + sign
        return cls(tuple(sorted((m, c) for m, c in counts.items() if c)))

    def entries(self):
        for m, c in self.terms:
            s = 1 if c > 0 else -1
            for _ in range(abs(c)):
                yield s, m

    @property
    def rank(self) -> int:
        return sum(c for _, c in self.terms)

    def __add__(self, other: "VirtualClass") -> "VirtualClass":
        return VirtualClass.of(list(self.entries()) + list(other.entries()))

    def __neg__(self) -> "VirtualClass":
        return VirtualClass(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def twist(self, x: Monomial) -> "VirtualClass":
        """Tensor every line by ``x``."""
        return VirtualClass.of((s, mono_mul(m, x)) for s, m in self.entries())

    def __str__(self):
        if not self.terms:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'}{mono_str(m)}" + (f"*{abs(c)}" if abs(c) > 1 else "")
                        for m, c in self.terms)


def wedge_total(V: VirtualClass, x: Monomial) -> RatFunc:
    """``prod_{+m}(1 - x m) / prod_{-m}(1 - x m)``."""
    num = LaurentPoly.constant(1)
    den = []
    for m, c in V.terms:
        xm = mono_mul(x, m)
        if c > 0:
            if xm == ONE:
                return RatFunc.zero()
            num = num * binomial(xm) ** c
        else:
            if xm == ONE:
                raise DegenerateFactor(f"denominator factor 1 - {mono_str(xm)} vanishes")
            den.extend([xm] * (-c))
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# kernel models


@dataclass(frozen=True)
class AffinePlane:
    """Diagonal class ``(1 - q1)(1 - q2)`` of the equivariant plane."""

    def diagonal(self, i: int, j: int) -> VirtualClass:
        return VirtualClass.of([(1, ONE), (-1, mono(Q1)), (-1, mono(Q2)), (1, mono(Q1, Q2))])

    def __str__(self):
        return "affine"


@dataclass(frozen=True)
class SymbolicSurface:
    """Diagonal class ``1 - [W] + [V]`` with formal Chern roots per ordered pair."""

    rW: int = 2

    def __post_init__(self):
        if self.rW < 1:
            raise ValueError("SymbolicSurface needs rW >= 1")

    @property
    def rV(self) -> int:
        return self.rW - 1

    def diagonal(self, i: int, j: int) -> VirtualClass:
        entries = [(1, ONE)]
        entries += [(-1, mono(pair_sym("w", k, i, j))) for k in range(1, self.rW + 1)]
        entries += [(1, mono(pair_sym("v", k, i, j))) for k in range(1, self.rV + 1)]
        return VirtualClass.of(entries)

    def __str__(self):
        return f"surface:rW={self.rW}"


@dataclass(frozen=True)
class Custom:
    """Diagonal class supplied by a callable ``(i, j) -> VirtualClass``."""

    builder: Callable
    label: str = "custom"

    def diagonal(self, i: int, j: int) -> VirtualClass:
        return self.builder(i, j)

    def __str__(self):
        return f"custom:{self.label}"


KernelModel = Union[AffinePlane, SymbolicSurface, Custom]


def diagonal_class(model: KernelModel, i: int, j: int) -> VirtualClass:
    if i == j:
        raise BadPair(f"diagonal class needs i != j, got ({i}, {j})")
    if i < 1 or j < 1:
        raise BadPair(f"pair indices must be >= 1, got ({i}, {j})")
    return model.diagonal(i, j)


def _ratio(i: int, j: int) -> Monomial:
    """``z_j / z_i``."""
    return mono(z(j), (z(i), -1))


@functools.lru_cache(maxsize=4096)
def zeta(model: KernelModel, i: int, j: int) -> RatFunc:
    """``wedge(x O_diag) / ((1 - x)(1 - 1/x))`` at ``x = z_j/z_i``, reduced."""
    x = _ratio(i, j)
    w = wedge_total(diagonal_class(model, i, j), x)
    return (w * RatFunc(LaurentPoly.constant(1), [x, mono_inv(x)])).normalize()


@functools.lru_cache(maxsize=4096)
def rho_factor(model: KernelModel, i: int, j: int) -> RatFunc:
    """``wedge(x O_diag) / (1 - x)`` at ``x = z_j/z_i``, reduced."""
    x = _ratio(i, j)
    w = wedge_total(diagonal_class(model, i, j), x)
    return (w * RatFunc.inv_binomial(x)).normalize()


@functools.lru_cache(maxsize=1024)
def rho_kernel(n: int, m: int, model: KernelModel) -> RatFunc:
    if n < 0 or m < 0:
        raise ValueError("degrees must be non-negative")
    out = RatFunc.one()
    for i in range(1, n + 1):
        for j in range(n + 1, n + m + 1):
            out = out * rho_factor(model, i, j)
    return out


@functools.lru_cache(maxsize=1024)
def zeta_product(model: KernelModel, n: int, m: int) -> RatFunc:
    """``prod zeta(i, j)`` over ``1 <= i <= n < j <= n + m``."""
    out = RatFunc.one()
    for i in range(1, n + 1):
        for j in range(n + 1, n + m + 1):
            out = out * zeta(model, i, j)
    return out


# ---------------------------------------------------------------------------
# model selection


@dataclass(frozen=True)
class PatternClassBuilder:
    """Diagonal classes read from a custom model file.

    ``rules`` maps a pair pattern (``None`` for ``*``, else ``(i, j)``) to a
    tuple of ``(sign, template)`` where templates may use ``i`` and ``j`` inside
    brackets.
    """

    rules: tuple

    def __call__(self, i: int, j: int) -> VirtualClass:
        from .expr import parse_monomial

        table = dict(self.rules)
        entries = table.get((i, j), table.get(None))
        if entries is None:
            raise BadPair(f"custom model has no rule for pair ({i}, {j})")
        out = []
        for sign, tmpl in entries:
            text = re.sub(r"\[([^\]]*)\]",
                          lambda mt: "[" + re.sub(r"\b[ij]\b", lambda v: str(i if v.group() == "i" else j),
                                                  mt.group(1)) + "]",
                          tmpl)
            out.append((sign, parse_monomial(text)))
        return VirtualClass.of(out)


def parse_custom_model(text: str, label: str = "custom") -> Custom:
    """Parse lines ``<pattern>: <+|-><monomial> ...`` with pattern ``*`` or ``i,j``."""
    rules = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected '<pattern>: <entries>'")
        pat, body = (s.strip() for s in line.split(":", 1))
        if pat == "*":
            key = None
        else:
            try:
                a, b = (int(v) for v in pat.split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: bad pair pattern {pat!r}") from None
            key = (a, b)
        entries = []
        for tok in body.split():
            if tok[0] not in "+-":
                raise ValueError(f"line {lineno}: entry {tok!r} must start with + or -")
            entries.append((1 if tok[0] == "+" else -1, tok[1:]))
        rules[key] = tuple(entries)
    return Custom(PatternClassBuilder(tuple(sorted(rules.items(), key=lambda kv: (kv[0] is not None, kv[0] or ())))), label)


def parse_model(text: str) -> KernelModel:
    """``affine``, ``surface``, ``surface:rW=<n>`` or ``custom:<file>``."""
    text = text.strip()
    if text == "affine":
        return AffinePlane()
    if text == "surface":
        return SymbolicSurface()
    mt = re.fullmatch(r"surface:rW=(\d+)", text)
    if mt:
        return SymbolicSurface(int(mt.group(1)))
    if text.startswith("custom:"):
        path = Path(text[len("custom:"):])
        return parse_custom_model(path.read_text(), label=str(path))
    raise ValueError(f"unknown kernel model {text!r}")
