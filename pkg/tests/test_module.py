import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octomod.clifford import blade_matrices
from octomod.linalg import DimensionMismatchError, Matrix, Subspace, invert, rank
from octomod.module import (
    BlockTag,
    Cyclicity,
    InvalidModuleError,
    OModule,
    ParentMismatchError,
    TypeDimensionError,
    act,
    associative_subspace,
    canonical_form,
    canonical_O,
    canonical_Obar,
    closure,
    conj_associative_subspace,
    conjecture_check,
    decompose,
    direct_sum,
    hom_matrices,
    hom_space,
    is_cyclic,
    is_O_independent,
    left_associator,
    omega,
    omega_eigenspaces,
    require_valid,
    scramble,
    split_element,
    submodule_generated,
    type_of,
    type_via_omega,
    validate,
    zero_module,
)
from octomod.octonion import E, FanoTable, Octonion
from octomod.sampling import random_octonion, random_unimodular, random_vector, scrambled

O = canonical_O()
OBAR = canonical_Obar()


def oct_elem(M, *octs):
    return M.element_from_octonions([x if isinstance(x, Octonion) else Octonion.real(x) for x in octs])


def generated_by_blades(M, v):
    """<m> as the span of rep(g_alpha) m over all 128 blades (independent of closure)."""
    return Subspace.span([B.apply(v) for B in blade_matrices(M).values()], M.dim)


# -- construction and validation ----------------------------------------------


def test_validate_examples():
    assert validate(O) and validate(OBAR)
    bad = OModule([Matrix.identity(8)] + list(O.actions[1:]))
    v = validate(bad)
    assert not v and (1, 1) in v.violations
    with pytest.raises(InvalidModuleError):
        require_valid(bad)
    assert validate(scramble(O, random_unimodular(8, random.Random(3))))


def test_malformed_actions():
    with pytest.raises(DimensionMismatchError):
        OModule(O.actions[:6])
    with pytest.raises(DimensionMismatchError):
        OModule([Matrix.identity(8)] * 6 + [Matrix.identity(7)])


def test_canonical_modules():
    for k in range(1, 8):
        assert OBAR.L(k) == -O.L(k)
    assert tuple(type_of(O)) == (1, 0)
    assert tuple(type_of(OBAR)) == (0, 1)
    assert associative_subspace(O) == Subspace.span([[1, 0, 0, 0, 0, 0, 0, 0]], 8)
    assert associative_subspace(OBAR).dim == 0
    assert conj_associative_subspace(OBAR) == Subspace.span([[1, 0, 0, 0, 0, 0, 0, 0]], 8)
    assert conj_associative_subspace(O).dim == 0
    assert associative_subspace(canonical_form((2, 0))).dim == 2


def test_direct_sum_and_types():
    Z = direct_sum([])
    assert Z.dim == 0 and tuple(type_of(Z)) == (0, 0)
    assert tuple(type_of(zero_module())) == (0, 0)
    M = direct_sum([O, OBAR])
    assert M.dim == 16 and tuple(type_of(M)) == (1, 1)
    assert tuple(type_of(direct_sum([O, O]))) == (2, 0)
    assert tuple(type_of(canonical_form((3, 1)))) == (3, 1)
    S = random_unimodular(16, random.Random(9))
    assert tuple(type_of(scramble(M, S))) == (1, 1)
    assert scramble(M, Matrix.identity(16)) == M


def test_type_dimension_error_on_non_module():
    # relations hold only for i != j, so the kernel counts cannot match the dimension
    A = Matrix([[0, 0], [0, 0]])
    M = OModule([A] * 7)
    with pytest.raises((TypeDimensionError, InvalidModuleError)):
        type_of(M)


def test_alternate_convention_classifies_the_same():
    alt = FanoTable(((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)))
    Oa, Oba = canonical_O(alt), canonical_Obar(alt)
    assert validate(Oa) and validate(Oba)
    assert tuple(type_of(Oa)) == (1, 0)
    assert tuple(type_of(Oba)) == (0, 1)


# -- action ------------------------------------------------------------------


def test_act_examples():
    m = O.element(random_vector(random.Random(1), 8))
    assert act(E[0], m) == m
    assert act(E[1], act(E[1], m)) == -m
    assert act(E[1], oct_elem(O, E[2])) == oct_elem(O, E[4])
    other = direct_sum([O, O]).zero()
    with pytest.raises(ParentMismatchError):
        m + other


coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)
octonions = st.lists(coef, min_size=8, max_size=8).map(Octonion)


@settings(max_examples=60, deadline=None)
@given(octonions, octonions)
def test_act_on_O_is_octonion_product(p, x):
    assert act(p, oct_elem(O, x)).octonion_blocks() == [p * x]
    assert act(p, oct_elem(OBAR, x)).octonion_blocks() == [p.conj() * x]


def _identity_one(p, q, r, m):
    """[p,q,r]m + p[q,r,m] versus [pq,r,m] - [p,qr,m] + [p,q,rm]."""
    lhs = act(p * q * r - p * (q * r), m) + act(p, left_associator(q, r, m))
    rhs = left_associator(p * q, r, m) - left_associator(p, q * r, m) + left_associator(p, q, act(r, m))
    return lhs == rhs


def test_module_identity_on_scrambles():
    rng = random.Random(11)
    for t in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        M = scrambled(t, rng)
        for _ in range(5):
            p, q, r = (random_octonion(rng) for _ in range(3))
            assert _identity_one(p, q, r, M.element(random_vector(rng, M.dim)))


def test_associative_elements_shift_associator():
    rng = random.Random(12)
    M = scrambled((2, 1), rng)
    A = associative_subspace(M)
    for _ in range(5):
        w = [rng.randint(-3, 3) for _ in range(A.dim)]
        a = M.element([sum((wi * x for wi, x in zip(w, col)), Fraction(0)) for col in zip(*A.vectors())])
        assert a.coords in A
        p, q, r = (random_octonion(rng) for _ in range(3))
        assert left_associator(p, q, act(r, a)) == act(p * q * r - p * (q * r), a)


# -- omega -------------------------------------------------------------------


def test_omega_examples():
    assert omega(O) == -Matrix.identity(8)
    assert omega(OBAR) == Matrix.identity(8)
    neg, pos = omega_eigenspaces(canonical_form((2, 1)))
    assert (neg.dim, pos.dim) == (16, 8)


def test_omega_properties_on_scrambles():
    rng = random.Random(13)
    for t in [(1, 1), (2, 1), (0, 2)]:
        M = scrambled(t, rng)
        w = omega(M)
        assert w @ w == Matrix.identity(M.dim)
        for k in range(1, 8):
            assert w @ M.L(k) == M.L(k) @ w
        neg, pos = omega_eigenspaces(M)
        assert neg == closure(M, associative_subspace(M).vectors())
        assert pos == closure(M, conj_associative_subspace(M).vectors())
        assert type_via_omega(M) == type_of(M)
        assert (associative_subspace(M) & conj_associative_subspace(M)).dim == 0


# -- decomposition -------------------------------------------------------------


def _blocks_exact(M, dec):
    C = dec.canonical_module()
    T, Tinv = dec.change_of_basis, invert(dec.change_of_basis)
    return all(Tinv @ M.L(k) @ T == C.L(k) for k in range(1, 8))


def test_decompose_examples():
    d = decompose(O)
    assert d.change_of_basis == Matrix.identity(8) and d.block_layout == (BlockTag.PLUS,)
    d = decompose(direct_sum([O, OBAR]))
    assert d.block_layout == (BlockTag.PLUS, BlockTag.MINUS)
    assert d.change_of_basis == Matrix.identity(16)
    d = decompose(zero_module())
    assert d.block_layout == () and d.change_of_basis.shape == (0, 0)


@pytest.mark.parametrize("t", [(2, 0), (0, 2), (1, 1), (2, 1), (1, 2)])
def test_decompose_scrambles_exactly(t):
    rng = random.Random(hash(t) % 1000)
    for _ in range(3):
        M = scrambled(t, rng)
        d = decompose(M)
        assert tuple(d.type) == t
        assert d.block_layout == (BlockTag.PLUS,) * t[0] + (BlockTag.MINUS,) * t[1]
        assert _blocks_exact(M, d)


def test_isomorphic_iff_same_type():
    rng = random.Random(21)
    M1, M2 = scrambled((2, 1), rng), scrambled((2, 1), rng)
    d1, d2 = decompose(M1), decompose(M2)
    F = d2.change_of_basis @ invert(d1.change_of_basis)
    assert all(F @ M1.L(k) == M2.L(k) @ F for k in range(1, 8))
    # different types of the same dimension: every intertwiner is singular
    N = scrambled((1, 2), rng)
    maps = hom_matrices(hom_space(M1, N), M1, N)
    combo = Matrix.zeros(24)
    for F in maps:
        combo = combo + F * rng.randint(1, 9)
    assert rank(combo) < 24


# -- Hom ---------------------------------------------------------------------


def test_hom_examples():
    assert hom_space(O, O).dim == 1
    assert hom_space(OBAR, OBAR).dim == 1
    assert hom_space(O, OBAR).dim == 0
    assert hom_space(canonical_form((2, 1)), canonical_form((1, 2))).dim == 4


@pytest.mark.parametrize("tm,tn", [((1, 0), (1, 1)), ((1, 1), (0, 1)), ((1, 1), (1, 1))])
def test_hom_transport_matches_direct_solve(tm, tn):
    rng = random.Random(31)
    M, N = scrambled(tm, rng), scrambled(tn, rng)
    fast, slow = hom_space(M, N), hom_space(M, N, direct=True)
    assert fast == slow
    assert fast.dim == tm[0] * tn[0] + tm[1] * tn[1]
    for F in hom_matrices(fast, M, N):
        assert all(F @ M.L(k) == N.L(k) @ F for k in range(1, 8))
        for a in associative_subspace(M).vectors():
            assert F.apply(a) in associative_subspace(N)


# -- independence, submodules, cyclic elements -------------------------------------


def test_O_independence_examples():
    m = oct_elem(O, 1)
    assert is_O_independent([m])
    assert is_O_independent([])
    M2 = canonical_form((2, 0))
    m = M2.element(random_vector(random.Random(2), 16))
    assert not is_O_independent([m, act(E[1], m)])
    assert is_O_independent([oct_elem(M2, 1, 0), oct_elem(M2, 0, 1)])
    assert not is_O_independent([oct_elem(M2, 1, 1), oct_elem(M2, 2, 2)])


def test_submodule_worked_examples():
    M2, M3 = canonical_form((2, 0)), canonical_form((3, 0))
    S, sub = submodule_generated(M2, oct_elem(M2, E[1], E[2]))
    assert S.dim == 16 and tuple(type_of(sub)) == (2, 0)
    S, _ = submodule_generated(M3, oct_elem(M3, E[1], E[2], E[3]))
    assert S.dim == 24
    M11 = canonical_form((1, 1))
    S, sub = submodule_generated(M11, oct_elem(M11, 1, 1))
    assert S.dim == 16 and tuple(type_of(sub)) == (1, 1)
    S, sub = submodule_generated(M3, oct_elem(M3, 1, E[0] + E[1], E[1]))
    assert S.dim == 16 and tuple(type_of(sub)) == (2, 0)


def test_closure_matches_blade_span_and_is_idempotent():
    rng = random.Random(41)
    for t in [(1, 1), (2, 1), (3, 0)]:
        M = scrambled(t, rng)
        v = random_vector(rng, M.dim)
        S = closure(M, [v])
        assert S == generated_by_blades(M, v)
        assert closure(M, S.vectors()) == S
        assert S.dim % 8 == 0 and S.dim <= 128


def test_cyclic_examples():
    M2 = canonical_form((2, 0))
    assert is_cyclic(M2, oct_elem(M2, E[1], E[2])) is Cyclicity.NOT_CYCLIC
    assert is_cyclic(M2, oct_elem(M2, 1, 3)) is Cyclicity.CYCLIC_PLUS
    with pytest.raises(ValueError):
        is_cyclic(M2, M2.zero())
    rng = random.Random(51)
    M = scrambled((1, 1), rng)
    a = associative_subspace(M).vectors()[0]
    b = conj_associative_subspace(M).vectors()[0]
    p = random_octonion(rng, nonzero=True)
    assert is_cyclic(M, act(p, M.element(a))) is Cyclicity.CYCLIC_PLUS
    assert is_cyclic(M, act(p, M.element(b))) is Cyclicity.CYCLIC_MINUS


def test_split_element_examples():
    M11 = canonical_form((1, 1))
    mp, mm = split_element(M11, oct_elem(M11, 1, 1))
    assert mp == oct_elem(M11, 1, 0) and mm == oct_elem(M11, 0, 1)
    assert split_element(M11, mp) == (mp, M11.zero())
    a = oct_elem(O, 1)
    assert split_element(O, a) == (a, O.zero())


def test_conjecture_examples():
    M3 = canonical_form((3, 0))
    r = conjecture_check(M3, oct_elem(M3, 1, E[0] + E[1], E[1]))
    assert (r.l_plus, r.l_minus, r.dim_generated, tuple(r.type_generated)) == (2, 0, 16, (2, 0))
    assert r.passed
    r = conjecture_check(O, oct_elem(O, 1))
    assert (r.l_plus, r.dim_generated, r.verdict) == (1, 8, "PASS")


def test_conjecture_on_scrambled_input_matches_canonical():
    rng = random.Random(61)
    M = scrambled((2, 1), rng)
    d = decompose(M)
    x = [Fraction(0)] * 24
    x[0] = x[8] = 1  # (1, 1, 0) in canonical coordinates
    r = conjecture_check(M, d.change_of_basis.apply(x))
    assert (r.l_plus, r.l_minus, r.dim_generated) == (1, 0, 8) and r.passed
