"""Seeded random inputs: rationals, octonions, unimodular scrambles, module elements."""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import Matrix
from .module import Decomposition, OModule, TypeInvariant, canonical_form, scramble
from .octonion import Octonion


def random_rational(rng: random.Random, bound: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_octonion(rng: random.Random, nonzero: bool = False, **kw) -> Octonion:
    while True:
        x = Octonion([random_rational(rng, **kw) for _ in range(8)])
        if x or not nonzero:
            return x


def random_vector(rng: random.Random, n: int, nonzero: bool = True) -> tuple[Fraction, ...]:
    while True:
        v = tuple(random_rational(rng) for _ in range(n))
        if any(v) or not nonzero or n == 0:
            return v


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> Matrix:
    """Integer matrix of determinant +-1: a signed permutation times
    ``steps`` elementary row additions with multiplier +-1."""
    perm = list(range(n))
    rng.shuffle(perm)
    num = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        num[i][p] = rng.choice((-1, 1))
    if n > 1:
        for _ in range(2 * n if steps is None else steps):
            i, j = rng.sample(range(n), 2)
            k = rng.choice((-1, 1))
            num[i] = [a + k * b for a, b in zip(num[i], num[j])]
    return Matrix(num)


def random_type(rng: random.Random, max_n: int = 3, allow_zero: bool = False) -> TypeInvariant:
    while True:
        t = TypeInvariant(rng.randint(0, max_n), rng.randint(0, max_n))
        if allow_zero or t.n1 + t.n2:
            return t


def scrambled(t: TypeInvariant | tuple[int, int], rng: random.Random) -> OModule:
    C = canonical_form(t)
    M = scramble(C, random_unimodular(C.dim, rng))
    M.label = f"scrambled {C.label}"
    return M


def random_structured_element(dec: Decomposition, rng: random.Random) -> tuple[Fraction, ...]:
    """Nonzero element whose canonical octonion coordinates span a random
    low-dimensional subspace on each isotypic side.

    A generic vector almost always gives full spans, so a third of the draws
    are generic and the rest combine a few random octonion directions with
    small integer weights; this spreads the trials over many (l+, l-).
    """
    t = dec.type
    if t.dim == 0:
        return ()
    while True:
        if rng.random() < 1 / 3:
            x = random_vector(rng, t.dim)
        else:
            x = []
            for n in (t.n1, t.n2):
                k = rng.randint(0, n)
                dirs = [random_octonion(rng, nonzero=True, bound=3, max_den=2) for _ in range(k)]
                for _ in range(n):
                    block = [Fraction(0)] * 8
                    for u in dirs:
                        w = rng.randint(-2, 2)
                        block = [a + w * b for a, b in zip(block, u.coeffs)]
                    x.extend(block)
        if any(x):
            return dec.change_of_basis.apply(x)
