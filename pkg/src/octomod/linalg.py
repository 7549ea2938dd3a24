"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  A :class:`Matrix` keeps its
entries as integer numerators over one shared positive denominator, which
keeps products and eliminations in plain integer arithmetic.  Nothing in
this module uses floating point.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import chain
from math import gcd, lcm
from operator import mul
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

# products of int64 entries stay exact while n * max|a| * max|b| is below this
_INT64_SAFE = 1 << 62


class SingularMatrixError(ArithmeticError):
    pass


class DimensionMismatchError(ValueError):
    pass


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, den = s.split("/", 1)
        if not den.strip().isdigit():
            raise ValueError(f"bad rational {s!r}")
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {s!r}")
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"bad rational {s!r}") from None


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _common_denominator(values: Iterable[Fraction]) -> int:
    return lcm(1, *(v.denominator for v in values))


def _int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int, ncols: int):
    if not a or not ncols:
        return [[0] * ncols for _ in a]
    if not inner:
        return [[0] * ncols for _ in a]
    try:
        na = np.asarray(a, dtype=np.int64)
        nb = np.asarray(b, dtype=np.int64)
    except OverflowError:
        na = None
    if na is not None:
        # abs of int64 min wraps negative, so bound by max(-min, max) in Python ints
        ma = max(-int(na.min()), int(na.max()))
        mb = max(-int(nb.min()), int(nb.max()))
        if ma * mb * inner < _INT64_SAFE:
            return (na @ nb).tolist()
    bt = list(zip(*b))
    return [[sum(map(mul, row, col)) for col in bt] for row in a]


class Matrix:
    """Immutable dense matrix over the rationals.

    Build one from nested rows (ints, Fractions or rational strings).
    Indexing ``m[i, j]`` returns a Fraction.
    """

    __slots__ = ("nrows", "ncols", "_num", "_den", "_hash")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        frows = [tuple(to_rational(x) for x in row) for row in rows]
        if ncols is None:
            ncols = len(frows[0]) if frows else 0
        if any(len(r) != ncols for r in frows):
            raise DimensionMismatchError("ragged matrix rows")
        den = _common_denominator(chain.from_iterable(frows))
        num = [[x.numerator * (den // x.denominator) for x in r] for r in frows]
        self._set(len(frows), ncols, num, den)

    def _set(self, nrows, ncols, num, den):
        g = gcd(den, *chain.from_iterable(num))
        if g > 1:
            num = [[x // g for x in r] for r in num]
            den //= g
        self.nrows = nrows
        self.ncols = ncols
        self._num = tuple(tuple(r) for r in num)
        self._den = den
        self._hash = None

    @classmethod
    def _from_ints(cls, num, den: int = 1, nrows: int | None = None, ncols: int | None = None) -> Matrix:
        m = cls.__new__(cls)
        if den < 0:
            num = [[-x for x in r] for r in num]
            den = -den
        if nrows is None:
            nrows = len(num)
        if ncols is None:
            ncols = len(num[0]) if num else 0
        m._set(nrows, ncols, num, den)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        return cls._from_ints([[0] * ncols for _ in range(nrows)], 1, nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._from_ints([[int(i == j) for j in range(n)] for i in range(n)], 1, n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        cols = [tuple(to_rational(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatchError("columns of unequal length")
        if not cols:
            return cls.zeros(nrows, 0)
        return cls(zip(*cols), ncols=len(cols))

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix]) -> Matrix:
        n = sum(b.nrows for b in blocks)
        k = sum(b.ncols for b in blocks)
        den = lcm(1, *(b._den for b in blocks))
        num = [[0] * k for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            s = den // b._den
            for i, row in enumerate(b._num):
                num[r0 + i][c0:c0 + b.ncols] = [x * s for x in row]
            r0 += b.nrows
            c0 += b.ncols
        return cls._from_ints(num, den, n, k)

    @classmethod
    def vstack(cls, blocks: Sequence[Matrix]) -> Matrix:
        if not blocks:
            raise ValueError("nothing to stack")
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise DimensionMismatchError("vstack of matrices with different widths")
        den = lcm(1, *(b._den for b in blocks))
        num = [[x * (den // b._den) for x in row] for b in blocks for row in b._num]
        return cls._from_ints(num, den, len(num), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        return Fraction(self._num[i][j], self._den)

    def row(self, i: int) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num[i])

    def column(self, j: int) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(r[j], d) for r in self._num)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.row(i) for i in range(self.nrows))

    def select_columns(self, cols: Sequence[int]) -> Matrix:
        return Matrix._from_ints([[r[c] for c in cols] for r in self._num], self._den, self.nrows, len(cols))

    def integer_rows(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """Return (numerators, denominator) with entries = numerators / denominator."""
        return self._num, self._den

    @property
    def T(self) -> Matrix:
        return Matrix._from_ints([list(c) for c in zip(*self._num)] if self.nrows else
                                 [[] for _ in range(self.ncols)], self._den, self.ncols, self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._den, self._num))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def _check_same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        den = lcm(self._den, other._den)
        sa, sb = den // self._den, den // other._den
        num = [[x * sa + y * sb for x, y in zip(r, s)] for r, s in zip(self._num, other._num)]
        return Matrix._from_ints(num, den, self.nrows, self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix._from_ints([[-x for x in r] for r in self._num], self._den, self.nrows, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __mul__(self, scalar) -> Matrix:
        q = to_rational(scalar)
        num = [[x * q.numerator for x in r] for r in self._num]
        return Matrix._from_ints(num, self._den * q.denominator, self.nrows, self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
            num = _int_matmul(self._num, other._num, self.ncols, other.ncols)
            return Matrix._from_ints(num, self._den * other._den, self.nrows, other.ncols)
        return self.apply(other)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product as a tuple of Fractions."""
        v = [to_rational(x) for x in vector]
        if len(v) != self.ncols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        vden = _common_denominator(v)
        vnum = [x.numerator * (vden // x.denominator) for x in v]
        den = self._den * vden
        return tuple(Fraction(sum(map(mul, r, vnum)), den) for r in self._num)

    def is_zero(self) -> bool:
        return not any(chain.from_iterable(self._num))

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.nrows)

    def to_lists(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]


# -- elimination engines -----------------------------------------------------
#
# Both engines keep a fully reduced echelon basis of integer rows (content 1,
# positive pivot) and insert rows one at a time.  The pivot of a new row is
# its first nonzero column, so the result is the unique RREF after scaling.


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        row = [x // g for x in row]
    return row


def _dense_insert(basis: dict[int, list[int]], row: Sequence[int]) -> list[int] | None:
    """Reduce ``row`` against ``basis`` and add it; returns the new primitive
    row, or None if it was already in the span."""
    r = list(row)
    for c, p in basis.items():
        f = r[c]
        if f:
            pv = p[c]
            r = [x * pv - y * f for x, y in zip(r, p)]
    if not any(r):
        return None
    r = _primitive(r)
    c0 = next(i for i, x in enumerate(r) if x)
    if r[c0] < 0:
        r = [-x for x in r]
    pv = r[c0]
    for c, p in basis.items():
        f = p[c0]
        if f:
            basis[c] = _primitive([x * pv - y * f for x, y in zip(p, r)])
    basis[c0] = r
    return r


def _dense_basis(rows: Iterable[Sequence[int]], ncols: int) -> dict[int, list[int]]:
    basis: dict[int, list[int]] = {}
    for row in rows:
        if len(basis) == ncols:
            break
        _dense_insert(basis, row)
    return basis


def _sparse_basis(rows: Iterable[dict[int, int]], ncols: int) -> dict[int, dict[int, int]]:
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        if len(basis) == ncols:
            break
        r = {c: v for c, v in row.items() if v}
        hits = [c for c in r if c in basis]
        for c in hits:
            f = r.get(c)
            if not f:
                continue
            p = basis[c]
            pv = p[c]
            r = _sparse_axpy(r, pv, p, -f)
        if not r:
            continue
        g = gcd(*r.values())
        c0 = min(r)
        if r[c0] < 0:
            g = -g
        if g != 1:
            r = {c: v // g for c, v in r.items()}
        pv = r[c0]
        for c, p in basis.items():
            f = p.get(c0)
            if f:
                q = _sparse_axpy(p, pv, r, -f)
                g = gcd(*q.values())
                basis[c] = {k: v // g for k, v in q.items()} if g != 1 else q
        basis[c0] = r
    return basis


def _sparse_axpy(a: dict[int, int], sa: int, b: dict[int, int], sb: int) -> dict[int, int]:
    out = {c: v * sa for c, v in a.items()}
    for c, v in b.items():
        w = out.get(c, 0) + v * sb
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _rref_from_basis(basis: dict[int, Sequence[int]] | dict[int, dict[int, int]], ncols: int,
                     sparse: bool = False) -> tuple[Matrix, tuple[int, ...]]:
    pivots = tuple(sorted(basis))
    rows = []
    for c in pivots:
        r = basis[c]
        pv = r[c]
        if sparse:
            full = [Fraction(0)] * ncols
            for k, v in r.items():
                full[k] = Fraction(v, pv)
            rows.append(full)
        else:
            rows.append([Fraction(x, pv) for x in r])
    return Matrix(rows, ncols=ncols), pivots


def _integer_rows(m: Matrix) -> tuple[tuple[int, ...], ...]:
    return m._num


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (zero rows dropped to the bottom) and rank."""
    basis = _dense_basis(_integer_rows(m), m.ncols)
    r, pivots = _rref_from_basis(basis, m.ncols)
    pad = Matrix.zeros(m.nrows - len(pivots), m.ncols)
    full = Matrix.vstack([r, pad]) if m.nrows else m
    return full, len(pivots)


def rank(m: Matrix) -> int:
    return len(_dense_basis(_integer_rows(m), m.ncols))


def stable_span(vectors: Iterable[Sequence], maps: Sequence[Matrix], ambient_dim: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and mapped into itself by every matrix in ``maps``.

    Worklist closure: only vectors newly added to the span are pushed through the maps.
    """
    for m in maps:
        if m.shape != (ambient_dim, ambient_dim):
            raise DimensionMismatchError(f"map of shape {m.shape} on Q^{ambient_dim}")
    basis: dict[int, list[int]] = {}
    todo: deque[list[int]] = deque()
    for v in vectors:
        v = [to_rational(x) for x in v]
        if len(v) != ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension")
        d = _common_denominator(v)
        todo.append([x.numerator * (d // x.denominator) for x in v])
    # images are only needed up to a positive scalar, so the integer numerators suffice
    nums = [m._num for m in maps]
    while todo and len(basis) < ambient_dim:
        # breadth-first keeps the words in the L_i short, which bounds entry growth
        r = _dense_insert(basis, todo.popleft())
        if r is not None:
            todo.extend([sum(map(mul, row, r)) for row in num] for num in nums)
    return Subspace(ambient_dim, *_rref_from_basis(basis, ambient_dim))


class Subspace:
    """A subspace of Q^n held by its canonical RREF basis.

    Two subspaces are equal exactly when their canonical bases agree.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        vecs = [tuple(to_rational(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionMismatchError("vector length differs from ambient dimension")
        rows = []
        for v in vecs:
            d = _common_denominator(v)
            rows.append([x.numerator * (d // x.denominator) for x in v])
        basis = _dense_basis(rows, ambient_dim)
        return cls(ambient_dim, *_rref_from_basis(basis, ambient_dim))

    @classmethod
    def row_space(cls, m: Matrix) -> Subspace:
        basis = _dense_basis(_integer_rows(m), m.ncols)
        return cls(m.ncols, *_rref_from_basis(basis, m.ncols))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix.zeros(0, n), ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.basis.rows

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of ``v`` in the canonical basis, or None if v is outside."""
        v = tuple(to_rational(x) for x in v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension")
        # basis rows are num/D with num[pivot] == D; compare over a common denominator
        vden = _common_denominator(v)
        vnum = [x.numerator * (vden // x.denominator) for x in v]
        D = self.basis._den
        recon = [0] * self.ambient_dim
        for p, row in zip(self.pivots, self.basis._num):
            c = vnum[p]
            if c:
                recon = [a + c * b for a, b in zip(recon, row)]
        if any(a != x * D for a, x in zip(recon, vnum)):
            return None
        return tuple(v[p] for p in self.pivots)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(v in self for v in other.vectors())

    def __add__(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("subspaces live in different ambient spaces")
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def annihilator(self) -> Subspace:
        """All y with y . b = 0 for every basis vector b."""
        return kernel(self.basis)


def kernel(m: Matrix) -> Subspace:
    """{x : m x = 0} with its canonical basis."""
    basis = _dense_basis(_integer_rows(m), m.ncols)
    return _kernel_from_basis(basis, m.ncols)


def _kernel_from_basis(basis, ncols: int, sparse: bool = False) -> Subspace:
    pivots = set(basis)
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, row in basis.items():
            x = row.get(f, 0) if sparse else row[f]
            if x:
                v[c] = Fraction(-x, row[c])
        vecs.append(v)
    # free-column parametrisation: identity on free columns, so already independent
    return Subspace.span(vecs, ncols)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    n = a.ambient_dim
    ann = [v for s in (a, b) for v in s.annihilator().vectors()]
    if not ann:
        return Subspace.full(n)
    return kernel(Matrix(ann, ncols=n))


def solve_sylvester_family(pairs: Sequence[tuple[Matrix, Matrix]]) -> Subspace:
    """All F (n x m) with F @ A_i == B_i @ F for every pair (A_i, B_i).

    The result lives in Q^(n*m) with F vectorised row-major:
    coordinate ``r * m + c`` holds ``F[r, c]``.
    """
    if not pairs:
        raise ValueError("empty Sylvester family")
    m = pairs[0][0].nrows
    n = pairs[0][1].nrows
    for a, b in pairs:
        if a.shape != (m, m) or b.shape != (n, n):
            raise DimensionMismatchError("inconsistent sizes within the Sylvester family")
    ncols = n * m

    def equations():
        for a, b in pairs:
            da, db = a._den, b._den
            den = lcm(da, db)
            sa, sb = den // da, den // db
            acols = [[(k, x * sa) for k, x in enumerate(col) if x] for col in zip(*a._num)]
            brows = [[(k, x * sb) for k, x in enumerate(row) if x] for row in b._num]
            for r in range(n):
                for c in range(m):
                    eq: dict[int, int] = {}
                    for k, x in acols[c]:
                        eq[r * m + k] = eq.get(r * m + k, 0) + x
                    for k, x in brows[r]:
                        idx = k * m + c
                        eq[idx] = eq.get(idx, 0) - x
                    yield eq

    basis = _sparse_basis(equations(), ncols)
    return _kernel_from_basis(basis, ncols, sparse=True)


def invert(m: Matrix) -> Matrix:
    if not m.is_square:
        raise DimensionMismatchError(f"cannot invert non-square {m.shape} matrix")
    n = m.nrows
    aug = [list(r) + [m._den * int(i == j) for j in range(n)] for i, r in enumerate(m._num)]
    basis = _dense_basis(aug, 2 * n)
    if sorted(basis)[:n] != list(range(n)) or len(basis) != n:
        raise SingularMatrixError("matrix is singular")
    num = []
    dens = []
    for i in range(n):
        r = basis[i]
        num.append(r[n:])
        dens.append(r[i])
    den = lcm(1, *dens)
    out = [[x * (den // d) for x in row] for row, d in zip(num, dens)]
    return Matrix._from_ints(out, den, n, n)
