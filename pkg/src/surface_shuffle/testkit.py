"""Random elements, brute-force oracles and the associativity harness."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Mapping, Optional, Sequence

from .lambda_ops import AffinePlane, KernelModel, zeta_product
from .ring import (
    Q1, Q2, DivisionByZero, LaurentPoly, Permutation, RatFunc, ShuffleError, factor_sym, mono, permute_action,
    rf_eq, z,
)
from .shuffle import ShuffleElement, shift, shuffle_mul, shuffles, sym_full

log = logging.getLogger(__name__)


class CostGuard(ShuffleError, ValueError):
    pass


class PoleHit(ShuffleError, ZeroDivisionError):
    pass


MAX_ORACLE_DEGREE = 6


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    degree: int
    num_terms: int = 3
    exp_bound: int = 2
    model: KernelModel = field(default_factory=AffinePlane)
    denominators: bool = True

    def __post_init__(self):
        if not 1 <= self.num_terms <= 4:
            raise ValueError("num_terms must be in 1..4")
        if not 0 <= self.exp_bound <= 3:
            raise ValueError("exp_bound must be in 0..3")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")


def _random_poly(rng: random.Random, spec: RandomSpec) -> LaurentPoly:
    d, b = spec.degree, spec.exp_bound
    terms = {}
    for _ in range(spec.num_terms):
        factors = [(z(i), rng.randint(-b, b)) for i in range(1, d + 1)]
        if isinstance(spec.model, AffinePlane) and rng.random() < 0.3:
            factors.append((rng.choice((Q1, Q2)), rng.randint(-1, 1)))
        if rng.random() < 0.25:
            factors.append((factor_sym("x", rng.randint(1, d)), 1))
        m = mono(*factors)
        terms[m] = terms.get(m, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    return LaurentPoly(terms)


def _sym_prefix(f: RatFunc, k: int, d: int) -> RatFunc:
    """``sym{k-1,1}`` acting on the first ``k`` of ``d`` variables."""
    fixed = tuple(range(k + 1, d + 1))
    return RatFunc.sum(permute_action(Permutation(s.images + fixed), f) for s in shuffles(k - 1, 1))


def random_element(spec: RandomSpec) -> ShuffleElement:
    """A nonzero symmetric element, deterministic in ``spec``.

    A random Laurent polynomial (optionally over one random binomial) is
    symmetrized by the chain ``sym{1,1}, sym{2,1}, ..., sym{d-1,1}``, which sums
    over all of ``S_d``.
    """
    rng = random.Random(spec.seed)
    if spec.degree == 0:
        c = 0
        while c == 0:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        return ShuffleElement(0, RatFunc.const(c))
    while True:
        f = RatFunc(_random_poly(rng, spec))
        if spec.denominators and spec.degree >= 1 and rng.random() < 0.5:
            i = rng.randint(1, spec.degree)
            factors = [(z(i), rng.choice((1, 2)))]
            if spec.degree >= 2:
                j = rng.choice([k for k in range(1, spec.degree + 1) if k != i])
                factors.append((z(j), -1))
            if isinstance(spec.model, AffinePlane):
                factors.append((rng.choice((Q1, Q2)), 1))
            f = f * RatFunc.inv_binomial(mono(*factors))
        for k in range(2, spec.degree + 1):
            f = _sym_prefix(f, k, spec.degree)
        if not f.is_zero():
            return ShuffleElement(spec.degree, f)


def random_invariant(n: int, m: int, seed: int, model: Optional[KernelModel] = None) -> RatFunc:
    """A random ``S_n x S_m``-invariant function of ``z_1..z_{n+m}``."""
    model = model or AffinePlane()
    a = random_element(RandomSpec(seed, n, model=model))
    b = random_element(RandomSpec(seed + 7919, m, model=model))
    f = a.value * shift(b.value, n)
    if n and m and seed % 2:
        f = f * zeta_product(model, n, m)
    return f


def full_mul(a: ShuffleElement, b: ShuffleElement, model: KernelModel) -> ShuffleElement:
    """Product through the full-group symmetrizer divided by ``n! m!``."""
    n, m = a.degree, b.degree
    f = a.value * shift(b.value, n)
    if n and m:
        f = f * zeta_product(model, n, m)
    s = sym_full(f, n + m)
    return ShuffleElement(n + m, s.scale(Fraction(1, math.factorial(n) * math.factorial(m))))


def assoc_oracle(a: ShuffleElement, b: ShuffleElement, c: ShuffleElement, model: KernelModel) -> bool:
    total = a.degree + b.degree + c.degree
    if total > MAX_ORACLE_DEGREE:
        raise CostGuard(f"total degree {total} exceeds {MAX_ORACLE_DEGREE}")
    left = shuffle_mul(shuffle_mul(a, b, model), c, model)
    right = shuffle_mul(a, shuffle_mul(b, c, model), model)
    left_full = full_mul(full_mul(a, b, model), c, model)
    right_full = full_mul(a, full_mul(b, c, model), model)
    return all(rf_eq(left.value, other.value) for other in (right, left_full, right_full))


def eval_probe(a: RatFunc, assignment: Mapping) -> Fraction:
    """Exact value of ``a`` at a rational point; a diagnostic, never an equality proof."""
    try:
        return a.evaluate(assignment)
    except DivisionByZero as exc:
        raise PoleHit(str(exc)) from exc


@dataclass
class TrialResult:
    seed: int
    degrees: tuple
    model: str
    passed: bool

    def line(self) -> str:
        degs = ",".join(map(str, self.degrees))
        return f"seed={self.seed} degrees={degs} model={self.model} {'pass' if self.passed else 'FAIL'}"


def trial_seeds(seed: int, trials: int) -> List[int]:
    rng = random.Random(seed)
    return [rng.randrange(2 ** 32) for _ in range(trials)]


def run_assoc_trials(model: KernelModel, degrees: Sequence[int], seed: int, trials: int,
                     emit: Optional[Callable[[str], None]] = None) -> List[TrialResult]:
    """Run ``trials`` associativity checks; results are ordered by trial seed order."""
    if len(degrees) != 3:
        raise ValueError("need three degrees")
    out = []
    for s in trial_seeds(seed, trials):
        elems = [random_element(RandomSpec(s + 101 * k, d, model=model)) for k, d in enumerate(degrees)]
        ok = assoc_oracle(*elems, model)
        res = TrialResult(s, tuple(degrees), str(model), ok)
        log.info(res.line())
        if emit:
            emit(res.line())
        out.append(res)
    return out
