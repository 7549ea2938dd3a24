"""Exact octonion arithmetic over the rationals.

The multiplication table is generated from seven oriented quaternionic
triples ``(a, b, c)`` meaning ``e_a e_b = e_c`` (and cyclically
``e_b e_c = e_a``, ``e_c e_a = e_b``).  The default orientation is

    (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3)

so for instance ``e1 e2 = e4`` and ``[e1, e2, e3] = -2 e6``.  Any other
table can be plugged in through :class:`FanoTable`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .linalg import format_rational, to_rational

DEFAULT_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


class FanoTableError(ValueError):
    pass


class FanoTable:
    """Signed product table of the basis e0 = 1, e1 .. e7.

    ``table[i][j] == (sign, k)`` means ``e_i e_j = sign * e_k``.
    """

    def __init__(self, triples: Iterable[Sequence[int]] = DEFAULT_TRIPLES):
        self.triples = tuple(tuple(t) for t in triples)
        self.table = self._build(self.triples)

    @staticmethod
    def _build(triples):
        if len(triples) != 7:
            raise FanoTableError(f"expected 7 triples, got {len(triples)}")
        seen: dict[frozenset, tuple] = {}
        for t in triples:
            if len(t) != 3 or len(set(t)) != 3 or not all(1 <= x <= 7 for x in t):
                raise FanoTableError(f"bad triple {t}")
            for pair in combinations(t, 2):
                key = frozenset(pair)
                if key in seen:
                    raise FanoTableError(f"pair {sorted(key)} lies on {seen[key]} and {t}")
                seen[key] = t
        table = [[None] * 8 for _ in range(8)]
        for i in range(8):
            table[0][i] = (1, i)
            table[i][0] = (1, i)
        for i in range(1, 8):
            table[i][i] = (-1, 0)
        for a, b, c in triples:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                table[x][y] = (1, z)
                table[y][x] = (-1, z)
        table = tuple(tuple(r) for r in table)
        for i in range(1, 8):
            for j in range(1, 8):
                si, ki = table[i][j]
                sj, kj = table[j][i]
                anti = (si + sj) if ki == kj else None
                if i == j:
                    ok = table[i][i] == (-1, 0)
                else:
                    ok = anti == 0 and ki != 0
                if not ok:
                    raise FanoTableError(f"e{i}e{j} + e{j}e{i} != -2 delta")
        return table

    @property
    def identifier(self) -> str:
        return "fano:" + ",".join("".join(map(str, t)) for t in self.triples)

    def basis_product(self, i: int, j: int) -> tuple[int, int]:
        return self.table[i][j]

    def mul(self, x: Octonion, y: Octonion) -> Octonion:
        xn, xd = _integer_coeffs(x.coeffs)
        yn, yd = _integer_coeffs(y.coeffs)
        out = [0] * 8
        for i in range(8):
            a = xn[i]
            if not a:
                continue
            row = self.table[i]
            for j in range(8):
                b = yn[j]
                if b:
                    s, k = row[j]
                    out[k] += a * b if s > 0 else -(a * b)
        d = xd * yd
        return Octonion([Fraction(v, d) for v in out], _trusted=True)

    def associator(self, x: Octonion, y: Octonion, z: Octonion) -> Octonion:
        return self.mul(self.mul(x, y), z) - self.mul(x, self.mul(y, z))

    def commutator(self, x: Octonion, y: Octonion) -> Octonion:
        return self.mul(x, y) - self.mul(y, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, FanoTable) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FanoTable({self.triples})"


def _integer_coeffs(coeffs) -> tuple[list[int], int]:
    d = lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (d // c.denominator) for c in coeffs], d


DEFAULT_TABLE = FanoTable()


class Octonion:
    """x0 + x1 e1 + ... + x7 e7 with rational coefficients.

    ``*`` uses the default table; use :meth:`FanoTable.mul` for others.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (), *, _trusted: bool = False):
        if _trusted:
            self.coeffs = tuple(coeffs)
            return
        c = [to_rational(x) for x in coeffs]
        if len(c) > 8:
            raise ValueError("an octonion has 8 coefficients")
        self.coeffs = tuple(c) + (Fraction(0),) * (8 - len(c))

    @classmethod
    def basis(cls, i: int) -> Octonion:
        if not 0 <= i <= 7:
            raise IndexError(f"no basis element e{i}")
        return cls([Fraction(int(k == i)) for k in range(8)], _trusted=True)

    @classmethod
    def real(cls, r) -> Octonion:
        return cls([r])

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Octonion):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Octonion.real(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, other) -> Octonion:
        other = _as_octonion(other)
        return Octonion([a + b for a, b in zip(self.coeffs, other.coeffs)], _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Octonion:
        return Octonion([-a for a in self.coeffs], _trusted=True)

    def __sub__(self, other) -> Octonion:
        return self + (-_as_octonion(other))

    def __rsub__(self, other) -> Octonion:
        return _as_octonion(other) - self

    def __mul__(self, other) -> Octonion:
        if isinstance(other, Octonion):
            return DEFAULT_TABLE.mul(self, other)
        q = to_rational(other)
        return Octonion([a * q for a in self.coeffs], _trusted=True)

    def __rmul__(self, other) -> Octonion:
        q = to_rational(other)
        return Octonion([q * a for a in self.coeffs], _trusted=True)

    def __truediv__(self, other) -> Octonion:
        if isinstance(other, Octonion):
            return self * other.inverse()
        q = to_rational(other)
        return Octonion([a / q for a in self.coeffs], _trusted=True)

    def conj(self) -> Octonion:
        c = self.coeffs
        return Octonion((c[0],) + tuple(-a for a in c[1:]), _trusted=True)

    def re(self) -> Fraction:
        return self.coeffs[0]

    def norm_sq(self) -> Fraction:
        return sum((a * a for a in self.coeffs), Fraction(0))

    def inverse(self) -> Octonion:
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("zero octonion has no inverse")
        return self.conj() / n

    def is_real(self) -> bool:
        return not any(self.coeffs[1:])

    def to_strings(self) -> list[str]:
        return [format_rational(a) for a in self.coeffs]

    def __repr__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                unit = "" if i == 0 else f"e{i}"
                terms.append(f"{format_rational(a)}{unit}" if i == 0 or a != 1 else unit)
        return "Octonion(" + (" + ".join(terms) if terms else "0") + ")"


def _as_octonion(x) -> Octonion:
    return x if isinstance(x, Octonion) else Octonion.real(x)


def mul(x: Octonion, y: Octonion, table: FanoTable = DEFAULT_TABLE) -> Octonion:
    return table.mul(x, y)


def conj(x: Octonion) -> Octonion:
    return x.conj()


def re(x: Octonion) -> Fraction:
    return x.re()


def norm_sq(x: Octonion) -> Fraction:
    return x.norm_sq()


def inverse(x: Octonion) -> Octonion:
    return x.inverse()


def associator(x: Octonion, y: Octonion, z: Octonion, table: FanoTable = DEFAULT_TABLE) -> Octonion:
    """[x, y, z] = (xy)z - x(yz)."""
    return table.associator(x, y, z)


def commutator(x: Octonion, y: Octonion, table: FanoTable = DEFAULT_TABLE) -> Octonion:
    return table.commutator(x, y)


E = tuple(Octonion.basis(i) for i in range(8))
