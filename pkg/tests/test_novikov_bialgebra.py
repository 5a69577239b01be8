from fractions import Fraction
import random
import time

import pytest

from conftest import random_r
from lconf import (BiDialgebra, CoDialgebra, ModuleBasis, NovikovDialgebra, PermAlgebra, Poly,
                   PreconditionError, Table, Tensor, alpha_from_codialgebra, bidialgebra_diagnostics,
                   cdnybe_M, cdnybe_N, check_bi_dialgebra, check_bialgebra, check_co_dialgebra,
                   clcybe, coboundary_bidialgebra, coboundary_delta, codialgebra_diagnostics,
                   lift_bidialgebra, novikov_to_conformal, perm_to_novikov, relcdn_check)
from lconf.corpus import (FINAL_BASIS, final_example_conformal, final_example_dialgebra,
                          final_example_printed_alpha, final_example_printed_codialgebra,
                          final_example_r)

b, c = Poly.var("b"), Poly.var("c")
X, Y, XS, YS = range(4)


def _vec(**kw):
    return Tensor.vector({FINAL_BASIS.index(k.replace("_s", "*")): Poly.coerce(v) for k, v in kw.items()})


def _outer(u, v):
    return Tensor(2, {(i, j): p * q for (i,), p in u.terms.items() for (j,), q in v.terms.items()})


S, DIFF = _vec(x_s=1, y_s=1), _vec(x=1, y=-1)


def _numeric(N, bv=2, cv=-1):
    sub = lambda t: t.map_polys(lambda p: p.subs({"b": bv, "c": cv}))  # noqa: E731
    return NovikovDialgebra(N.basis, sub(N.left), sub(N.right))


def test_cdnybe_on_final_example():
    N, r = final_example_dialgebra(), final_example_r()
    assert r.is_symmetric()
    assert cdnybe_N(N, r).is_zero()
    assert cdnybe_M(N, r) == cdnybe_N(N, r)


def test_coboundary_pair_values():
    cb = coboundary_bidialgebra(final_example_dialgebra(), final_example_r(), "plus")
    for g in (X, Y):
        assert cb.d(g) == _outer(S, DIFF).scale(c - b)
        assert cb.D(g) == _outer(DIFF, S).scale(b - c)
    assert cb.d(XS).is_zero() and cb.d(YS).is_zero()
    assert cb.D(XS) == _outer(S, S).scale(c - b)
    assert cb.D(YS) == _outer(S, S).scale(b - c)


def test_coboundary_pair_is_bi_dialgebra_and_lifts():
    N, r = final_example_dialgebra(), final_example_r()
    bd = BiDialgebra(N, coboundary_bidialgebra(N, r, "plus"))
    assert check_co_dialgebra(bd.co).passed
    rep = check_bi_dialgebra(bd)
    assert rep.passed, rep.format_text()
    A, alpha = lift_bidialgebra(bd)
    assert check_bialgebra(A, alpha).passed
    assert alpha == coboundary_delta(A, r)


def test_printed_pair_fails_compatibility():
    N = final_example_dialgebra()
    printed = final_example_printed_codialgebra()
    assert check_co_dialgebra(printed).passed
    for co in (printed, printed.swapped()):
        assert not check_bi_dialgebra(BiDialgebra(N, co)).passed
        A, alpha = lift_bidialgebra(BiDialgebra(N, co))
        assert not check_bialgebra(A, alpha).item("lb2").passed


def test_printed_alpha_is_the_lift_of_the_printed_pair():
    assert alpha_from_codialgebra(final_example_printed_codialgebra()) == final_example_printed_alpha()


def test_printed_alpha_versus_coboundary_on_x_and_y():
    A, r = final_example_conformal(), final_example_r()
    cob = coboundary_delta(A, r)
    printed = final_example_printed_alpha()
    for g in (X, Y):
        assert cob(g) == -printed(g).flip("tau")
    assert printed(XS).is_zero() and not cob(XS).is_zero()


def test_minus_star_sign_breaks_the_equivalence():
    N, r = final_example_dialgebra(), final_example_r()
    bd = BiDialgebra(N, coboundary_bidialgebra(N, r, "minus"), "minus")
    rep = check_bi_dialgebra(bd)
    assert not rep.item("ndba8").passed


def test_relcdn_generic_symmetric_parameters():
    N = final_example_dialgebra()
    terms = {}
    for i in range(4):
        for j in range(i, 4):
            p = Poly.var(f"c{i}{j}")
            terms[(i, j)] = p
            terms[(j, i)] = p
    start = time.perf_counter()
    rep = relcdn_check(N, Tensor(2, terms))
    assert rep.item("relcdn").passed
    assert time.perf_counter() - start < 30


def test_relcdn_requires_symmetry():
    with pytest.raises(PreconditionError):
        relcdn_check(final_example_dialgebra(), Tensor(2, {(0, 1): Poly.const(1)}))


def test_cdnybe_solution_gives_clcybe_solution():
    rng = random.Random(8)
    N = _numeric(final_example_dialgebra())
    A = novikov_to_conformal(N)
    for _ in range(6):
        r = random_r(rng, 4, True)
        rep = relcdn_check(N, r)
        assert rep.item("relcdn").passed
        if cdnybe_N(N, r).is_zero():
            assert clcybe(A, r).is_zero()


def _dialgebras():
    basis = ModuleBasis("P", ("x", "y"))
    one = Poly.const(1)
    rich = PermAlgebra(basis, Table({(0, 0): [(0, one)], (0, 1): [(1, one)], (1, 0): [(0, 2 * one)],
                                     (1, 1): [(1, 2 * one)]}), {0: [(0, -2), (1, 1)], 1: [(0, -6), (1, 3)]})
    xx = PermAlgebra(basis, Table({(0, 0): [(1, one)]}), {0: [(0, 1)], 1: [(1, 2)]})
    return [_numeric(final_example_dialgebra()), perm_to_novikov(rich), perm_to_novikov(xx)]


def diag_case(seed):
    rng = random.Random(seed)
    N = _dialgebras()[rng.randrange(3)]
    r = random_r(rng, N.dim, symmetric=rng.random() < 0.5, density=rng.choice((0.15, 0.3)))
    return N, r


@pytest.mark.parametrize("seed", list(range(16)) + [51])
def test_diagnostics_agree_with_direct_checks(seed):
    N, r = diag_case(seed)
    co = coboundary_bidialgebra(N, r)
    direct_co = check_co_dialgebra(co).passed
    direct_bd = check_bi_dialgebra(BiDialgebra(N, co)).passed
    diag_co = codialgebra_diagnostics(N, r).passed
    diag_bd = bidialgebra_diagnostics(N, r).passed
    assert diag_co == direct_co
    assert (diag_co and diag_bd) == direct_bd


def test_lift_equivalence_on_random_coboundaries():
    rng = random.Random(31)
    for N in _dialgebras():
        for _ in range(3):
            r = random_r(rng, N.dim, symmetric=rng.random() < 0.5)
            bd = BiDialgebra(N, coboundary_bidialgebra(N, r))
            A, alpha = lift_bidialgebra(bd)
            assert check_bi_dialgebra(bd).passed == check_bialgebra(A, alpha).passed


def test_codialgebra_validation():
    with pytest.raises(ValueError):
        CoDialgebra(FINAL_BASIS, {0: Tensor(2, {(0, 0): Poly.var("D1")})})
    with pytest.raises(ValueError):
        BiDialgebra(final_example_dialgebra(), final_example_printed_codialgebra(), "sideways")
    with pytest.raises(ValueError):
        cdnybe_N(final_example_dialgebra(), Tensor(2, {(0, 9): Poly.const(1)}))


# Symmetric solution families of N(r) = 0 (solved offline with sympy), keyed by the
# index into _dialgebras(); entries are r_ij for i <= j in free parameters p, q, s.
_FAMILIES = [
    (0, lambda p, q, s: {(0, 0): p / 4, (0, 1): p / 2, (0, 2): q / 2, (0, 3): q / 2, (1, 1): p,
                         (1, 2): q, (1, 3): q, (2, 2): s, (2, 3): s, (3, 3): s}),
    (0, lambda p, q, s: {(0, 0): p, (0, 1): -p, (0, 2): -q, (0, 3): -q, (1, 1): p,
                         (1, 2): q, (1, 3): q, (2, 2): s, (2, 3): s, (3, 3): s}),
    (1, lambda p, q, s: {(0, 0): 4 * p, (0, 1): -2 * p, (1, 1): p}),
    (1, lambda p, q, s: {(0, 0): 9 * p, (0, 1): -3 * p, (1, 1): p}),
]


def _sym(values):
    terms = {}
    for (i, j), v in values.items():
        if v:
            terms[(i, j)] = terms[(j, i)] = Poly.coerce(v)
    return Tensor(2, terms)


@pytest.mark.parametrize("fam", range(len(_FAMILIES)))
def test_symmetric_solutions_give_bi_dialgebras_and_commuting_square(fam):
    rng = random.Random(fam)
    which, family = _FAMILIES[fam]
    N = _dialgebras()[which]
    A = novikov_to_conformal(N)
    for _ in range(4):
        p, q, s = (Fraction(rng.randint(1, 6) * rng.choice((-1, 1)), rng.randint(1, 3)) for _ in range(3))
        r = _sym(family(p, q, s))
        assert cdnybe_N(N, r).is_zero()
        co = coboundary_bidialgebra(N, r)
        assert check_bi_dialgebra(BiDialgebra(N, co)).passed
        alpha = coboundary_delta(A, r)
        assert alpha_from_codialgebra(co) == alpha
        assert check_bialgebra(A, alpha).passed
