"""Randomized, seeded checks of the algebraic identities the library relies on.

Three suites are available: ``laws`` (octonion algebra), ``lemmas``
(module-level statements) and ``clifford`` (blade algebra and its
representations).  Every check compares exact values; a failing check keeps
the first witness it found, shrunk to basis vectors when possible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .clifford import (
    N_BLADES,
    PSEUDOSCALAR,
    Blade,
    CliffordElement,
    blade_mul,
    clifford_mul,
    rep_on_module,
)
from .linalg import Matrix, Subspace, format_rational, kernel
from .module import (
    Cyclicity,
    OModule,
    act,
    associative_subspace,
    canonical_O,
    canonical_Obar,
    closure,
    conj_associative_subspace,
    hom_matrices,
    hom_space,
    is_cyclic,
    is_O_independent,
    left_associator,
    omega,
    type_of,
    type_via_omega,
)
from .octonion import DEFAULT_TABLE, E, FanoTable, Octonion
from .sampling import random_octonion, random_rational, random_type, scrambled


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: int = 0
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Callable[[], dict]):
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness()

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "failures": self.failures,
                "passed": self.passed, "witness": self.witness}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    convention: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "convention": self.convention,
                "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _oct_json(x: Octonion) -> list[str]:
    return x.to_strings()


# -- octonion laws -----------------------------------------------------------


def octonion_laws(table: FanoTable) -> dict[str, Callable[[Octonion, Octonion, Octonion], bool]]:
    m = table.mul
    a = table.associator

    def alternating(x, y, z):
        s = a(x, y, z)
        return s == -a(y, x, z) == -a(x, z, y) == -a(z, y, x)

    def inverse_law(x, y, z):
        if not x:
            return True
        xi = x.inverse()
        return m(x, xi) == 1 and m(xi, x) == 1

    return {
        "norm_multiplicative": lambda x, y, z: m(x, y).norm_sq() == x.norm_sq() * y.norm_sq(),
        "norm_is_x_conj_x": lambda x, y, z: m(x, x.conj()) == x.norm_sq(),
        "moufang_left": lambda x, y, z: m(m(m(x, y), x), z) == m(x, m(y, m(x, z))),
        "moufang_right": lambda x, y, z: m(z, m(m(x, y), x)) == m(m(m(z, x), y), x),
        "moufang_middle": lambda x, y, z: m(m(x, m(y, z)), x) == m(m(x, y), m(z, x)),
        "associator_alternating": alternating,
        "associator_imaginary": lambda x, y, z: a(x, y, z).re() == 0,
        "inverse_law": inverse_law,
    }


def _basis_witness(law) -> tuple | None:
    for i, j, k in itertools.product(range(8), repeat=3):
        if not law(E[i], E[j], E[k]):
            return E[i], E[j], E[k]
    return None


def law_suite(seed: int, trials: int = 1000, table: FanoTable = DEFAULT_TABLE) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("laws", seed, table.identifier)
    laws = octonion_laws(table)
    results = {name: CheckResult(name) for name in laws}
    for _ in range(trials):
        x, y, z = (random_octonion(rng) for _ in range(3))
        for name, law in laws.items():
            ok = law(x, y, z)

            def witness(law=law, x=x, y=y, z=z):
                w = _basis_witness(law) or (x, y, z)
                return {"x": _oct_json(w[0]), "y": _oct_json(w[1]), "z": _oct_json(w[2])}

            results[name].record(ok, witness)
    report.checks = list(results.values())
    return report


# -- module lemmas -----------------------------------------------------------


def _vec_json(v) -> list[str]:
    return [format_rational(x) for x in v]


def _random_combination(rng: random.Random, S: Subspace) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * S.ambient_dim
    for b in S.vectors():
        c = random_rational(rng)
        out = [u + c * w for u, w in zip(out, b)]
    return tuple(out)


def _coefficient_space(M: OModule, xs, target: Subspace) -> Subspace:
    """All (r_1..r_k) in O^k, as 8k real coordinates, with sum r_i x_i in target."""
    cols = [M.L(k).apply(x) for x in xs for k in range(8)]
    phi = Matrix.from_columns(cols, nrows=M.dim)
    ann = target.annihilator()
    if ann.dim == 0:
        return Subspace.full(8 * len(xs))
    return kernel(ann.basis @ phi)


def _only_real(space: Subspace, k: int) -> bool:
    reals = Subspace.span([[int(j == 8 * i) for j in range(8 * k)] for i in range(k)], 8 * k)
    return space == reals


def lemma_suite(seed: int, trials: int = 200, n_modules: int = 8, max_n: int = 3) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("lemmas", seed, DEFAULT_TABLE.identifier)
    names = ["module_identity", "associative_shift", "type_routes_agree", "A_cap_Aminus_zero",
             "omega_involution_central", "omega_eigenspace_is_OA", "hom_preserves_A",
             "coefficients_real_A", "coefficients_real_Aminus", "O_vs_R_independence",
             "cyclic_from_A", "cyclic_from_Aminus", "span_of_cyclic", "closure_dims"]
    res = {n: CheckResult(n) for n in names}
    modules = [scrambled(random_type(rng, max_n), rng) for _ in range(n_modules)]

    for M in modules:
        t = type_of(M)
        A, Am = associative_subspace(M), conj_associative_subspace(M)
        res["type_routes_agree"].record(type_via_omega(M) == t, lambda: {"module": M.label})
        res["A_cap_Aminus_zero"].record((A & Am).dim == 0, lambda: {"module": M.label})
        w = omega(M)
        I = Matrix.identity(M.dim)
        res["omega_involution_central"].record(
            w @ w == I and all(w @ a == a @ w for a in M.actions), lambda: {"module": M.label})
        OA = Subspace.span([M.L(k).apply(a) for a in A.vectors() for k in range(8)], M.dim)
        res["omega_eigenspace_is_OA"].record(kernel(w + I) == OA, lambda: {"module": M.label})

        for tag, S, sign in (("A", A, Cyclicity.CYCLIC_PLUS), ("Aminus", Am, Cyclicity.CYCLIC_MINUS)):
            if S.dim == 0:
                continue
            k = rng.randint(1, S.dim)
            xs = [_random_combination(rng, S) for _ in range(k)]
            if Subspace.span(xs, M.dim).dim == k:
                space = _coefficient_space(M, xs, S)
                res[f"coefficients_real_{tag}"].record(
                    _only_real(space, k), lambda xs=xs: {"module": M.label, "xs": [_vec_json(x) for x in xs]})
            p = random_octonion(rng, nonzero=True)
            g = act(p, M.element(_random_combination(rng, S)))
            if not g.is_zero():
                res[f"cyclic_from_{tag}"].record(
                    is_cyclic(M, g) is sign, lambda g=g: {"module": M.label, "m": _vec_json(g.coords)})

        if A.dim:
            k = rng.randint(1, min(A.dim + 1, 4))
            xs = [_random_combination(rng, A) for _ in range(k)]
            if rng.random() < 0.3 and k > 1:
                xs[-1] = tuple(2 * a for a in xs[0])
            r_indep = Subspace.span(xs, M.dim).dim == k
            res["O_vs_R_independence"].record(
                is_O_independent([M.element(x) for x in xs]) == r_indep,
                lambda: {"module": M.label, "xs": [_vec_json(x) for x in xs]})

        ps = [random_octonion(rng, nonzero=True) for _ in range(8)]
        imgs = [act(p, M.element(b)).coords for p in ps for b in A.vectors() + Am.vectors()]
        res["span_of_cyclic"].record(Subspace.span(imgs, M.dim).dim == M.dim, lambda: {"module": M.label})

        v = _random_combination(rng, Subspace.full(M.dim))
        S = closure(M, [v])
        res["closure_dims"].record(
            S.dim % 8 == 0 and S.dim <= 128 and closure(M, S.vectors()) == S,
            lambda: {"module": M.label, "m": _vec_json(v)})

    for i in range(trials):
        M = modules[i % len(modules)]
        p, q, r = (random_octonion(rng) for _ in range(3))
        m = M.element(_random_combination(rng, Subspace.full(M.dim)))
        mul = M.table.mul
        lhs = act(M.table.associator(p, q, r), m) + act(p, left_associator(q, r, m))
        rhs = left_associator(mul(p, q), r, m) - left_associator(p, mul(q, r), m) + left_associator(p, q, act(r, m))
        res["module_identity"].record(lhs == rhs, lambda: {
            "module": M.label, "p": _oct_json(p), "q": _oct_json(q), "r": _oct_json(r),
            "m": _vec_json(m.coords)})
        A = associative_subspace(M)
        if A.dim:
            a = M.element(_random_combination(rng, A))
            res["associative_shift"].record(
                left_associator(p, q, act(r, a)) == act(M.table.associator(p, q, r), a),
                lambda: {"module": M.label, "p": _oct_json(p), "q": _oct_json(q), "r": _oct_json(r)})

    for _ in range(max(1, n_modules // 2)):
        M = scrambled(random_type(rng, 2), rng)
        N = scrambled(random_type(rng, 2), rng)
        AN = associative_subspace(N)
        ok = all(F.apply(a) in AN for F in hom_matrices(hom_space(M, N), M, N)
                 for a in associative_subspace(M).vectors())
        res["hom_preserves_A"].record(ok, lambda: {"source": M.label, "target": N.label})

    report.checks = list(res.values())
    return report


# -- Clifford algebra --------------------------------------------------------


def bubble_blade_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Reference blade product: concatenate, bubble sort, cancel equal neighbours."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    out: list[int] = []
    for x in word:
        if out and out[-1] == x:
            out.pop()
            sign = -sign
        else:
            out.append(x)
    return sign, tuple(out)


def _random_clifford(rng: random.Random, terms: int = 6) -> CliffordElement:
    return CliffordElement({rng.randrange(N_BLADES): random_rational(rng) for _ in range(terms)})


def clifford_suite(seed: int, trials: int = 50) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("clifford", seed, DEFAULT_TABLE.identifier)
    res = {n: CheckResult(n) for n in ["blade_mul_matches_reference", "generator_relations",
                                       "associativity", "pseudoscalar_central_involution",
                                       "rep_homomorphism", "kernel_split"]}
    for a in range(N_BLADES):
        for b in range(N_BLADES):
            s, r = blade_mul(a, b)
            rs, rw = bubble_blade_mul(Blade(a).indices, Blade(b).indices)
            res["blade_mul_matches_reference"].record(
                (s, r.indices) == (rs, rw), lambda a=a, b=b: {"a": str(Blade(a)), "b": str(Blade(b))})
    for i in range(1, 8):
        for j in range(1, 8):
            gi, gj = CliffordElement.gen(i), CliffordElement.gen(j)
            res["generator_relations"].record(gi * gj + gj * gi == -2 * int(i == j),
                                              lambda i=i, j=j: {"i": i, "j": j})
    w = CliffordElement.blade(PSEUDOSCALAR)
    for i in range(1, 8):
        g = CliffordElement.gen(i)
        res["pseudoscalar_central_involution"].record(g * w == w * g, lambda i=i: {"i": i})
    res["pseudoscalar_central_involution"].record(w * w == 1, lambda: {"w^2": (w * w).to_json()})
    for _ in range(trials):
        x, y, z = (_random_clifford(rng) for _ in range(3))
        res["associativity"].record(clifford_mul(clifford_mul(x, y), z) == clifford_mul(x, clifford_mul(y, z)),
                                    lambda x=x, y=y, z=z: {"x": x.to_json(), "y": y.to_json(), "z": z.to_json()})
    mods = [scrambled(random_type(rng, 1), rng) for _ in range(3)]
    for k in range(max(3, trials // 5)):
        M = mods[k % len(mods)]
        x, y = _random_clifford(rng), _random_clifford(rng)
        res["rep_homomorphism"].record(rep_on_module(M, x * y) == rep_on_module(M, x) @ rep_on_module(M, y),
                                       lambda: {"module": M.label, "x": x.to_json(), "y": y.to_json()})
    O, Ob = canonical_O(), canonical_Obar()
    res["kernel_split"].record(rep_on_module(O, 1 + w).is_zero(), lambda: {"module": "O"})
    res["kernel_split"].record(rep_on_module(Ob, 1 - w).is_zero(), lambda: {"module": "Obar"})
    report.checks = list(res.values())
    return report


SUITES = {"laws": law_suite, "lemmas": lemma_suite, "clifford": clifford_suite}


def run_suite(name: str, seed: int, trials: int | None = None, table: FanoTable = DEFAULT_TABLE) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    kw = {} if trials is None else {"trials": trials}
    if name == "laws":
        return law_suite(seed, table=table, **kw)
    return SUITES[name](seed, **kw)
