"""The shuffle algebra: symmetric elements, symmetrizers, and the two product routes."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict

from .lambda_ops import KernelModel, rho_kernel, zeta_product
from .ring import (
    IndexOutOfRange, Permutation, RatFunc, ShuffleError, mono, permute_action, rf_eq, z,
)


def shuffles(n: int, m: int):
    """The ``(n, m)``-shuffles, in a fixed order starting with the identity."""
    d = n + m
    for head in combinations(range(1, d + 1), n):
        rest = [k for k in range(1, d + 1) if k not in head]
        yield Permutation(tuple(head) + tuple(rest))


def sym_shuffle(f: RatFunc, n: int, m: int) -> RatFunc:
    """Sum of ``sigma . f`` over the coset representatives of ``S_{n+m} / (S_n x S_m)``."""
    if n == 0 or m == 0:
        return f
    return RatFunc.sum(permute_action(s, f) for s in shuffles(n, m))


def sym_full(f: RatFunc, d: int) -> RatFunc:
    """Sum of ``sigma . f`` over all of ``S_d``."""
    if d <= 1:
        return f
    return RatFunc.sum(permute_action(Permutation(p), f) for p in permutations(range(1, d + 1)))


def is_symmetric(f: RatFunc, d: int) -> bool:
    for i in range(1, d):
        if not rf_eq(permute_action(Permutation.transposition(d, i, i + 1), f), f):
            return False
    return True


def shift(f: RatFunc, n: int) -> RatFunc:
    """Relabel every index ``k -> k + n``."""
    if n == 0:
        return f
    return f.relabel(lambda k: k + n)


@dataclass(frozen=True, eq=False)
class ShuffleElement:
    """Degree ``d`` element of Sh, a rational function in ``z_1..z_d``."""

    degree: int
    value: RatFunc

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if not isinstance(self.value, RatFunc):
            object.__setattr__(self, "value", RatFunc.of(self.value))
        top = self.value.max_index()
        if top > self.degree:
            raise IndexOutOfRange(f"index {top} used in a degree-{self.degree} element")

    def is_symmetric(self) -> bool:
        return is_symmetric(self.value, self.degree)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return self.degree == other.degree and rf_eq(self.value, other.value)

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        if self.degree != other.degree:
            raise ValueError("adding elements of different degree; use GradedElement")
        return ShuffleElement(self.degree, self.value + other.value)

    def __neg__(self):
        return ShuffleElement(self.degree, -self.value)

    def scale(self, c) -> "ShuffleElement":
        return ShuffleElement(self.degree, self.value * c)

    def mul(self, other: "ShuffleElement", model: KernelModel) -> "ShuffleElement":
        return shuffle_mul(self, other, model)

    def __str__(self):
        return f"[{self.degree}] {self.value}"


def unit() -> ShuffleElement:
    return ShuffleElement(0, RatFunc.one())


def shuffle_mul(a: ShuffleElement, b: ShuffleElement, model: KernelModel) -> ShuffleElement:
    n, m = a.degree, b.degree
    f = a.value * shift(b.value, n)
    if n and m:
        f = f * zeta_product(model, n, m)
    return ShuffleElement(n + m, sym_shuffle(f, n, m))


def pipeline_mul(a: ShuffleElement, b: ShuffleElement, model: KernelModel) -> ShuffleElement:
    """Multiply by the rho kernel, divide by ``prod(1 - z_i/z_j)``, then symmetrize."""
    n, m = a.degree, b.degree
    g = a.value * shift(b.value, n)
    if n and m:
        g = g * rho_kernel(n, m, model)
        cross = [mono(z(i), (z(j), -1)) for i in range(1, n + 1) for j in range(n + 1, n + m + 1)]
        g = g * RatFunc(1, cross)
    return ShuffleElement(n + m, sym_shuffle(g, n, m))


@dataclass(frozen=True, eq=False)
class GradedElement:
    """Finite sum of shuffle elements of distinct degrees."""

    components: Dict[int, ShuffleElement] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, e in self.components.items():
            if e.degree != d:
                raise ValueError(f"component at degree {d} has degree {e.degree}")
            if not e.value.is_zero():
                clean[d] = e
        object.__setattr__(self, "components", dict(sorted(clean.items())))

    @classmethod
    def of(cls, *elements: ShuffleElement) -> "GradedElement":
        out: Dict[int, ShuffleElement] = {}
        for e in elements:
            out[e.degree] = out[e.degree] + e if e.degree in out else e
        return cls(out)

    def __getitem__(self, d: int) -> ShuffleElement:
        return self.components.get(d, ShuffleElement(d, RatFunc.zero()))

    def degrees(self):
        return list(self.components)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        return GradedElement.of(*self.components.values(), *other.components.values())

    def scale(self, c: RatFunc) -> "GradedElement":
        c = RatFunc.of(c)
        if c.max_index():
            raise ShuffleError("scalars must be degree-0 (no indexed symbols)")
        return GradedElement({d: e.scale(c) for d, e in self.components.items()})

    def mul(self, other: "GradedElement", model: KernelModel) -> "GradedElement":
        return GradedElement.of(*(shuffle_mul(a, b, model)
                                  for a in self.components.values()
                                  for b in other.components.values()))

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        ds = set(self.components) | set(other.components)
        return all(rf_eq(self[d].value, other[d].value) for d in ds)

    def to_pairs(self):
        return [(d, str(e.value)) for d, e in self.components.items()]

    @classmethod
    def from_pairs(cls, pairs) -> "GradedElement":
        from .expr import parse_text

        return cls.of(*(ShuffleElement(int(d), parse_text(t)) for d, t in pairs))
