"""The universal Clifford algebra Cl7 (g_i^2 = -1) and its action on modules.

Blades are bitmasks over {1..7}: bit i-1 set means g_i is a factor, and the
factors are always written in increasing order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import Matrix, format_rational, rank, to_rational
from .module import OModule, require_valid

N_GEN = 7
N_BLADES = 1 << N_GEN


class Blade(int):
    """g_alpha for an index set alpha, stored as a bitmask."""

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Blade:
        mask = 0
        for i in indices:
            if not 1 <= i <= N_GEN:
                raise ValueError(f"no generator g_{i}")
            bit = 1 << (i - 1)
            if mask & bit:
                raise ValueError("repeated index; use blade_mul to reduce products")
            mask |= bit
        return cls(mask)

    @classmethod
    def parse(cls, s: str) -> Blade:
        return cls.from_indices(int(t) for t in s.split())

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(N_GEN) if self >> i & 1)

    @property
    def grade(self) -> int:
        return bin(self).count("1")

    def __str__(self) -> str:
        return " ".join(map(str, self.indices))

    def __repr__(self) -> str:
        return f"g{{{','.join(map(str, self.indices))}}}"


def blade_mul(a: int, b: int) -> tuple[int, Blade]:
    """g_a g_b = sign * g_(a xor b)."""
    swaps = 0
    x = a >> 1
    while x:
        # each factor of b must pass every larger-indexed factor of a
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b).count("1")  # g_i g_i = -1
    return (-1 if swaps & 1 else 1), Blade(a ^ b)


PSEUDOSCALAR = Blade(N_BLADES - 1)


class CliffordElement:
    """Sparse rational combination of blades."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms: dict[Blade, Fraction] = {}
        for b, c in (terms or {}).items():
            c = to_rational(c)
            if c:
                self.terms[Blade(b)] = c

    @classmethod
    def scalar(cls, c) -> CliffordElement:
        return cls({0: c})

    @classmethod
    def blade(cls, b: int, c=1) -> CliffordElement:
        return cls({b: c})

    @classmethod
    def gen(cls, i: int) -> CliffordElement:
        return cls({Blade.from_indices([i]): 1})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CliffordElement.scalar(other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> CliffordElement:
        other = _as_element(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0) + c
        return CliffordElement(out)

    __radd__ = __add__

    def __neg__(self) -> CliffordElement:
        return CliffordElement({b: -c for b, c in self.terms.items()})

    def __sub__(self, other) -> CliffordElement:
        return self + (-_as_element(other))

    def __rsub__(self, other) -> CliffordElement:
        return _as_element(other) - self

    def __mul__(self, other) -> CliffordElement:
        if not isinstance(other, CliffordElement):
            q = to_rational(other)
            return CliffordElement({b: c * q for b, c in self.terms.items()})
        return clifford_mul(self, other)

    def __rmul__(self, other) -> CliffordElement:
        return self * other

    def __repr__(self) -> str:
        if not self.terms:
            return "CliffordElement(0)"
        parts = [f"{format_rational(c)}*{b!r}" for b, c in sorted(self.terms.items())]
        return "CliffordElement(" + " + ".join(parts) + ")"

    def to_json(self) -> dict[str, str]:
        return {str(b): format_rational(c) for b, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> CliffordElement:
        return cls({Blade.parse(k): v for k, v in data.items()})


def _as_element(x) -> CliffordElement:
    return x if isinstance(x, CliffordElement) else CliffordElement.scalar(x)


def clifford_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    out: dict[int, Fraction] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            s, r = blade_mul(a, b)
            out[r] = out.get(r, 0) + (ca * cb if s > 0 else -(ca * cb))
    return CliffordElement(out)


def blade_matrices(M: OModule) -> dict[Blade, Matrix]:
    """rep(g_alpha) = L_alpha1 ... L_alphak for all 128 blades."""

    def run():
        mats = {Blade(0): Matrix.identity(M.dim)}
        for mask in range(1, N_BLADES):
            low = (mask & -mask).bit_length()  # smallest index in alpha
            rest = Blade(mask & (mask - 1))
            mats[Blade(mask)] = M.L(low) @ mats[rest]
        return mats

    return M._cached("blade_matrices", run)


def rep_on_module(M: OModule, x: CliffordElement) -> Matrix:
    """Image of x under the algebra map Cl7 -> End(M) sending g_i to L_i."""
    require_valid(M)
    mats = blade_matrices(M)
    out = Matrix.zeros(M.dim)
    for b, c in x.terms.items():
        out = out + mats[b] * c
    return out


def image_dimension(M: OModule, generators_only: bool = False) -> int:
    """dim of the real span of rep(g_alpha) over all 128 blades.

    ``generators_only`` builds the blade images by repeated products of the
    L_i instead of reading the cached table; both give the same set.
    """
    require_valid(M)
    if generators_only:
        mats = [Matrix.identity(M.dim)]
        for mask in range(1, N_BLADES):
            m = Matrix.identity(M.dim)
            for i in Blade(mask).indices:
                m = m @ M.L(i)
            mats.append(m)
    else:
        mats = list(blade_matrices(M).values())
    rows = [[x for row in m.rows for x in row] for m in mats]
    return rank(Matrix(rows, ncols=M.dim * M.dim))


def regular_module() -> OModule:
    """Cl7 acting on itself by left multiplication, as a 128-dimensional O-module."""
    actions = []
    for i in range(1, N_GEN + 1):
        g = 1 << (i - 1)
        num = [[0] * N_BLADES for _ in range(N_BLADES)]
        for b in range(N_BLADES):
            s, r = blade_mul(g, b)
            num[r][b] = s
        actions.append(Matrix(num))
    return OModule(actions, label="Cl7")


def algebra_dimension() -> int:
    """dim span{g_alpha}, measured as the rank of {g_alpha * 1} in the regular module."""
    R = regular_module()
    cols = []
    for mask in range(N_BLADES):
        v = [0] * N_BLADES
        v[0] = 1
        for i in reversed(Blade(mask).indices):
            v = R.L(i).apply(v)
        cols.append(v)
    return rank(Matrix(cols, ncols=N_BLADES))
