"""Finite-dimensional left octonion modules.

A module of real dimension d is stored as the seven d x d matrices
L_1 .. L_7 by which e_1 .. e_7 act; a general octonion p acts by
``p0 * Id + sum(p_i * L_i)``.  The module axioms reduce to the Clifford
relations ``L_i L_j + L_j L_i = -2 delta_ij Id``.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from .linalg import (
    DimensionMismatchError,
    Matrix,
    Subspace,
    invert,
    kernel,
    rank,
    solve_sylvester_family,
    stable_span,
    to_rational,
)
from .octonion import DEFAULT_TABLE, FanoTable, Octonion

IMAG = range(1, 8)


class InvalidModuleError(ValueError):
    """The action matrices violate a Clifford relation."""

    def __init__(self, violations):
        self.violations = list(violations)
        pairs = ", ".join(f"({i},{j})" for i, j in self.violations)
        super().__init__(f"Clifford relation fails at {pairs}")


class TypeDimensionError(ArithmeticError):
    pass


class DecompositionError(RuntimeError):
    """Raised when the canonical change of basis fails; indicates a bug, not bad input."""


class ParentMismatchError(ValueError):
    pass


class BlockTag(enum.Enum):
    PLUS = "Plus"
    MINUS = "Minus"


class Cyclicity(enum.Enum):
    NOT_CYCLIC = "NotCyclic"
    CYCLIC_PLUS = "CyclicPlus"
    CYCLIC_MINUS = "CyclicMinus"


class OModule:
    def __init__(self, actions: Sequence[Matrix], label: str = "", dim: int | None = None,
                 table: FanoTable = DEFAULT_TABLE):
        actions = tuple(actions)
        if len(actions) != 7:
            raise DimensionMismatchError(f"need 7 action matrices, got {len(actions)}")
        d = actions[0].nrows if dim is None else dim
        for k, a in enumerate(actions, 1):
            if a.shape != (d, d):
                raise DimensionMismatchError(f"L_{k} has shape {a.shape}, expected {(d, d)}")
        self.dim = d
        self.actions = actions
        self.label = label
        self.table = table
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"OModule(dim={self.dim}, label={self.label!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, OModule):
            return NotImplemented
        return self.dim == other.dim and self.actions == other.actions

    def __hash__(self) -> int:
        return hash((self.dim, self.actions))

    def L(self, k: int) -> Matrix:
        """Action of the basis element e_k (e_0 acts as the identity)."""
        if k == 0:
            return self._cached("identity", lambda: Matrix.identity(self.dim))
        return self.actions[k - 1]

    def action(self, p: Octonion) -> Matrix:
        out = Matrix.zeros(self.dim)
        for k, c in enumerate(p.coeffs):
            if c:
                out = out + self.L(k) * c
        return out

    def product_action(self, i: int, j: int) -> Matrix:
        """Action matrix of the octonion e_i e_j."""
        s, k = self.table.basis_product(i, j)
        return self.L(k) if s > 0 else -self.L(k)

    def LL(self, i: int, j: int) -> Matrix:
        """L_i @ L_j, cached."""
        return self._cached(("LL", i, j), lambda: self.L(i) @ self.L(j))

    def element(self, coords: Sequence) -> ModuleElement:
        return ModuleElement(self, tuple(to_rational(x) for x in coords))

    def element_from_octonions(self, octs: Sequence[Octonion]) -> ModuleElement:
        coords = [c for o in octs for c in o.coeffs]
        return self.element(coords)

    def zero(self) -> ModuleElement:
        return self.element([0] * self.dim)

    def _cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = fn()
            return val


@dataclass(frozen=True, eq=False)
class ModuleElement:
    parent: OModule
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise DimensionMismatchError(
                f"element of length {len(self.coords)} in module of dim {self.parent.dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.parent == other.parent and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def _same(self, other: ModuleElement):
        if other.parent != self.parent:
            raise ParentMismatchError("elements belong to different modules")

    def __add__(self, other: ModuleElement) -> ModuleElement:
        self._same(other)
        return ModuleElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        self._same(other)
        return ModuleElement(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> ModuleElement:
        return ModuleElement(self.parent, tuple(-a for a in self.coords))

    def scale(self, r) -> ModuleElement:
        r = to_rational(r)
        return ModuleElement(self.parent, tuple(r * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def octonion_blocks(self) -> list[Octonion]:
        return [Octonion(self.coords[i:i + 8]) for i in range(0, len(self.coords), 8)]


Element = Union[ModuleElement, Sequence]


def _coords(M: OModule, m: Element) -> tuple[Fraction, ...]:
    if isinstance(m, ModuleElement):
        if m.parent != M:
            raise ParentMismatchError("element does not belong to this module")
        return m.coords
    v = tuple(to_rational(x) for x in m)
    if len(v) != M.dim:
        raise DimensionMismatchError(f"element of length {len(v)} in module of dim {M.dim}")
    return v


@dataclass(frozen=True)
class Validation:
    ok: bool
    violations: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TypeInvariant:
    n1: int
    n2: int

    @property
    def dim(self) -> int:
        return 8 * (self.n1 + self.n2)

    def __iter__(self):
        return iter((self.n1, self.n2))

    def __str__(self) -> str:
        return f"({self.n1},{self.n2})"


@dataclass(frozen=True)
class Decomposition:
    """Change of basis T with T^-1 L_i T equal to the canonical block matrices."""

    change_of_basis: Matrix
    block_layout: tuple[BlockTag, ...]
    generators: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())

    @property
    def type(self) -> TypeInvariant:
        n1 = sum(1 for b in self.block_layout if b is BlockTag.PLUS)
        return TypeInvariant(n1, len(self.block_layout) - n1)

    def canonical_module(self) -> OModule:
        return canonical_form(self.type)

    def inverse(self) -> Matrix:
        return invert(self.change_of_basis)


# -- construction ------------------------------------------------------------


def _left_mult_matrix(k: int, table: FanoTable) -> Matrix:
    num = [[0] * 8 for _ in range(8)]
    for j in range(8):
        s, t = table.basis_product(k, j)
        num[t][j] = s
    return Matrix(num)


def canonical_O(table: FanoTable = DEFAULT_TABLE) -> OModule:
    """The octonions acting on themselves by left multiplication."""
    return OModule([_left_mult_matrix(k, table) for k in IMAG], label="O", table=table)


def canonical_Obar(table: FanoTable = DEFAULT_TABLE) -> OModule:
    """The octonions with p acting as x -> conj(p) x, i.e. L_i negated."""
    return OModule([-_left_mult_matrix(k, table) for k in IMAG], label="Obar", table=table)


def zero_module() -> OModule:
    return OModule([Matrix.zeros(0)] * 7, label="0", dim=0)


def direct_sum(modules: Sequence[OModule], label: str | None = None) -> OModule:
    modules = list(modules)
    if not modules:
        return zero_module()
    actions = [Matrix.block_diag([M.actions[k] for M in modules]) for k in range(7)]
    if label is None:
        label = "+".join(M.label or "?" for M in modules)
    return OModule(actions, label=label, dim=sum(M.dim for M in modules), table=modules[0].table)


def canonical_form(t: TypeInvariant | tuple[int, int]) -> OModule:
    """O^n1 + Obar^n2 with all O blocks first."""
    n1, n2 = t
    return direct_sum([canonical_O()] * n1 + [canonical_Obar()] * n2, label=f"O^{n1}+Obar^{n2}")


def scramble(M: OModule, S: Matrix) -> OModule:
    """The isomorphic module with actions S L_i S^-1."""
    if S.shape != (M.dim, M.dim):
        raise DimensionMismatchError(f"scramble matrix {S.shape} for module of dim {M.dim}")
    Sinv = invert(S)
    return OModule([S @ a @ Sinv for a in M.actions], label=M.label, dim=M.dim, table=M.table)


# -- validation --------------------------------------------------------------


def validate(M: OModule) -> Validation:
    """Check L_i L_j + L_j L_i = -2 delta_ij Id for 1 <= i <= j <= 7."""

    def run():
        bad = []
        I2 = Matrix.identity(M.dim) * -2
        Z = Matrix.zeros(M.dim)
        for i in IMAG:
            for j in range(i, 8):
                s = M.LL(i, j) + M.LL(j, i)
                if s != (I2 if i == j else Z):
                    bad.append((i, j))
        return Validation(not bad, tuple(bad))

    return M._cached("validation", run)


def require_valid(M: OModule) -> None:
    v = validate(M)
    if not v:
        raise InvalidModuleError(v.violations)


# -- elements ----------------------------------------------------------------


def act(p: Octonion, m: ModuleElement) -> ModuleElement:
    M = m.parent
    # integer arithmetic throughout, one division at the end
    vden = lcm(*(x.denominator for x in m.coords)) if M.dim else 1
    vnum = [x.numerator * (vden // x.denominator) for x in m.coords]
    pden = lcm(*(c.denominator for c in p.coeffs))
    out = [0] * M.dim
    mden = 1
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        ck = c.numerator * (pden // c.denominator)
        if k == 0:
            v, d = vnum, 1
        else:
            L = M.L(k)
            v, d = [sum(map(operator.mul, r, vnum)) for r in L._num], L._den
        if d != mden:
            g = lcm(d, mden)
            out = [a * (g // mden) for a in out]
            mden = g
        f = ck * (mden // d)
        out = [a + f * b for a, b in zip(out, v)]
    den = vden * pden * mden
    return ModuleElement(M, tuple(Fraction(a, den) for a in out))


def left_associator(p: Octonion, q: Octonion, m: ModuleElement) -> ModuleElement:
    """[p, q, m] = (pq)m - p(qm)."""
    return act(m.parent.table.mul(p, q), m) - act(p, act(q, m))


# -- invariants --------------------------------------------------------------


def _stacked_kernel(M: OModule, blocks: list[Matrix]) -> Subspace:
    if M.dim == 0:
        return Subspace.zero(0)
    return kernel(Matrix.vstack(blocks))


def associative_subspace(M: OModule) -> Subspace:
    """All m with [p, q, m] = 0 for every p, q.

    By bilinearity it suffices to test the 21 pairs e_i, e_j with i < j.
    """
    require_valid(M)
    return M._cached("A", lambda: _stacked_kernel(
        M, [M.product_action(i, j) - M.LL(i, j) for i in IMAG for j in range(i + 1, 8)]))


def conj_associative_subspace(M: OModule) -> Subspace:
    """All m with (pq)m = q(pm) for every p, q (tested on ordered pairs i != j)."""
    require_valid(M)
    return M._cached("A-", lambda: _stacked_kernel(
        M, [M.product_action(i, j) - M.LL(j, i) for i in IMAG for j in IMAG if i != j]))


def omega(M: OModule) -> Matrix:
    """L_1 L_2 ... L_7."""

    def run():
        w = Matrix.identity(M.dim)
        for a in M.actions:
            w = w @ a
        return w

    return M._cached("omega", run)


def omega_eigenspaces(M: OModule) -> tuple[Subspace, Subspace]:
    """(kernel(omega + Id), kernel(omega - Id))."""

    def run():
        w = omega(M)
        I = Matrix.identity(M.dim)
        if M.dim == 0:
            return Subspace.zero(0), Subspace.zero(0)
        return kernel(w + I), kernel(w - I)

    return M._cached("omega_eig", run)


def type_via_omega(M: OModule) -> TypeInvariant:
    minus, plus = omega_eigenspaces(M)
    if minus.dim % 8 or plus.dim % 8 or minus.dim + plus.dim != M.dim:
        raise TypeDimensionError(
            f"omega eigenspaces of dims {minus.dim}, {plus.dim} in module of dim {M.dim}")
    return TypeInvariant(minus.dim // 8, plus.dim // 8)


def type_of(M: OModule) -> TypeInvariant:
    """(dim A(M), dim A-(M)), cross-checked against the omega eigenspaces."""

    def run():
        t = TypeInvariant(associative_subspace(M).dim, conj_associative_subspace(M).dim)
        if t.dim != M.dim:
            raise TypeDimensionError(f"type {t} does not account for dimension {M.dim}")
        w = type_via_omega(M)
        if w != t:
            raise TypeDimensionError(f"kernel route gives {t}, omega route gives {w}")
        return t

    return M._cached("type", run)


# -- decomposition -----------------------------------------------------------


def _orbit_columns(M: OModule, g: Sequence[Fraction], sign: int) -> list[tuple[Fraction, ...]]:
    cols = [tuple(g)]
    for k in IMAG:
        v = M.L(k).apply(g)
        cols.append(v if sign > 0 else tuple(-x for x in v))
    return cols


def decompose(M: OModule) -> Decomposition:
    """Explicit isomorphism from O^n1 + Obar^n2 onto M.

    Each associative basis vector g contributes the columns e_k g, each
    conjugate-associative one the columns conj(e_k) g, k = 0..7.
    """

    def run():
        t = type_of(M)
        plus = associative_subspace(M).vectors()
        minus = conj_associative_subspace(M).vectors()
        cols = []
        for g in plus:
            cols += _orbit_columns(M, g, +1)
        for g in minus:
            cols += _orbit_columns(M, g, -1)
        T = Matrix.from_columns(cols, nrows=M.dim) if cols else Matrix.zeros(0)
        if rank(T) != M.dim:
            raise DecompositionError("change of basis is singular")
        C = canonical_form(t)
        for k in IMAG:
            if M.L(k) @ T != T @ C.L(k):
                raise DecompositionError(f"T^-1 L_{k} T is not canonical")
        layout = (BlockTag.PLUS,) * t.n1 + (BlockTag.MINUS,) * t.n2
        return Decomposition(T, layout, tuple(plus) + tuple(minus))

    return M._cached("decomposition", run)


def hom_space(M: OModule, N: OModule, direct: bool = False) -> Subspace:
    """All F: M -> N (dim N x dim M, vectorised row-major) commuting with every L_i.

    By default the intertwiner equations are solved between the canonical
    forms, where every L_i is a signed permutation, and the solutions are
    carried back through the two decompositions (F = T_N G T_M^-1).  Each
    transported map is re-checked against the original actions.  With
    ``direct=True`` the equations are solved on the given matrices as-is.
    """
    require_valid(M)
    require_valid(N)
    if M.dim == 0 or N.dim == 0:
        return Subspace.zero(M.dim * N.dim)
    if direct:
        space = solve_sylvester_family([(M.L(k), N.L(k)) for k in IMAG])
    else:
        dm, dn = decompose(M), decompose(N)
        CM, CN = dm.canonical_module(), dn.canonical_module()
        G = solve_sylvester_family([(CM.L(k), CN.L(k)) for k in IMAG])
        TN, TMinv = dn.change_of_basis, dm.inverse()
        maps = [TN @ g @ TMinv for g in hom_matrices(G, CM, CN)]
        for F in maps:
            for k in IMAG:
                if F @ M.L(k) != N.L(k) @ F:
                    raise ArithmeticError(f"transported map fails to intertwine L_{k}")
        space = Subspace.span([[x for row in F.rows for x in row] for F in maps], M.dim * N.dim)
    tm, tn = type_of(M), type_of(N)
    expected = tm.n1 * tn.n1 + tm.n2 * tn.n2
    if space.dim != expected:
        raise ArithmeticError(f"Hom space has dim {space.dim}, types predict {expected}")
    return space


def hom_matrices(space: Subspace, M: OModule, N: OModule) -> list[Matrix]:
    """Basis of a hom space reshaped into dim N x dim M matrices."""
    m = M.dim
    return [Matrix([v[r * m:(r + 1) * m] for r in range(N.dim)], ncols=m) for v in space.vectors()]


def is_O_independent(xs: Sequence[ModuleElement]) -> bool:
    """True iff sum r_i x_i = 0 with octonion r_i forces every r_i = 0."""
    xs = list(xs)
    if not xs:
        return True
    M = xs[0].parent
    cols = []
    for x in xs:
        c = _coords(M, x)
        cols.append(c)
        cols += [M.L(k).apply(c) for k in IMAG]
    return rank(Matrix.from_columns(cols, nrows=M.dim)) == len(cols)


# -- submodules and cyclic elements -------------------------------------------


def closure(M: OModule, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under every L_i."""
    return stable_span(vectors, M.actions, M.dim)


def restrict(M: OModule, S: Subspace, label: str = "") -> OModule:
    """The submodule on an invariant subspace, in the coordinates of its canonical basis."""
    B = S.basis
    actions = []
    for k in IMAG:
        img = B @ M.L(k).T  # row i is L_k b_i
        # RREF basis: the coordinates of a vector in S are its pivot entries
        C = img.select_columns(S.pivots)
        if C @ B != img:
            raise ValueError(f"subspace is not stable under L_{k}")
        actions.append(C.T)
    return OModule(actions, label=label, dim=S.dim, table=M.table)


def submodule_generated(M: OModule, m: Element) -> tuple[Subspace, OModule]:
    require_valid(M)
    S = closure(M, [_coords(M, m)])
    return S, restrict(M, S, label=f"<m> in {M.label}")


def is_cyclic(M: OModule, m: Element) -> Cyclicity:
    v = _coords(M, m)
    if not any(v):
        raise ValueError("the zero element is rejected; it lies in both C+ and C- by convention")
    S, sub = submodule_generated(M, v)
    if S.dim != 8:
        return Cyclicity.NOT_CYCLIC
    w = omega(sub)
    I = Matrix.identity(8)
    if w == -I:
        return Cyclicity.CYCLIC_PLUS
    if w == I:
        return Cyclicity.CYCLIC_MINUS
    raise ArithmeticError("omega is not +-Id on an 8-dimensional submodule")


def split_element(M: OModule, m: Element) -> tuple[ModuleElement, ModuleElement]:
    """m = m+ + m-, with m+ in the O A(M) part and m- in the O A-(M) part."""
    require_valid(M)
    v = _coords(M, m)
    wv = omega(M).apply(v)
    half = Fraction(1, 2)
    mp = tuple(half * (a - b) for a, b in zip(v, wv))
    mm = tuple(half * (a + b) for a, b in zip(v, wv))
    return ModuleElement(M, mp), ModuleElement(M, mm)


# -- conjecture experiment ---------------------------------------------------


@dataclass(frozen=True)
class ConjectureReport:
    coords: tuple[Fraction, ...]
    l_plus: int
    l_minus: int
    dim_generated: int
    type_generated: TypeInvariant
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _span_dim(octs: Sequence[Sequence[Fraction]]) -> int:
    octs = [o for o in octs if any(o)]
    return Subspace.span(octs, 8).dim if octs else 0


def conjecture_check(M: OModule, m: Element) -> ConjectureReport:
    """Compare the type of <m> with the span dimensions of the canonical coordinates of m+-.

    Modules not already in canonical form are decomposed first.
    """
    v = _coords(M, m)
    dec = decompose(M)
    t = dec.type
    Tinv = dec.inverse()
    mp, mm = split_element(M, v)
    xp = Tinv.apply(mp.coords)
    xm = Tinv.apply(mm.coords)
    cut = 8 * t.n1
    if any(xp[cut:]) or any(xm[:cut]):
        raise ArithmeticError("split parts leak across isotypic blocks")
    l_plus = _span_dim([xp[i:i + 8] for i in range(0, cut, 8)])
    l_minus = _span_dim([xm[i:i + 8] for i in range(cut, M.dim, 8)])
    S, sub = submodule_generated(M, v)
    tg = type_of(sub)
    ok = (tg.n1, tg.n2) == (l_plus, l_minus) and S.dim == 8 * (l_plus + l_minus)
    return ConjectureReport(v, l_plus, l_minus, S.dim, tg, "PASS" if ok else "FAIL")
