import random
from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_scalar_table
from lconf import (ConformalAlgebra, PreconditionError, LeibnizAlgebra, ModuleBasis, Poly, Table, Tensor, bracket_eval,
                   check_jacobi, check_skew, current, right_table)
from lconf.corpus import broken_virasoro, final_example_conformal, leibniz_xxy, virasoro

L, D, D1 = Poly.var("L"), Poly.var("D"), Poly.var("D1")


def test_virasoro_battery():
    V = virasoro()
    assert check_jacobi(V).passed
    assert check_skew(V).passed


def _sympy_jacobi_residual(a):
    lam, mu, d = sp.symbols("L M D1")
    P = lambda x, y: y + a * x  # noqa: E731  [L_x L] = P(x, ∂)L
    # [L_λ [L_μ L]] - [[L_λ L]_{λ+μ} L] - [L_μ [L_λ L]]
    first = P(mu, lam + d) * P(lam, d)
    second = (a * lam - lam - mu) * P(lam + mu, d)
    third = P(lam, mu + d) * P(mu, d)
    return sp.expand(first - second - third)


@pytest.mark.parametrize("a", [Fraction(2), Fraction(3), Fraction(1), Fraction(-1), Fraction(1, 2)])
def test_rank_one_residual_matches_sympy(a):
    A = ConformalAlgebra(ModuleBasis("V", ("L",)), Table({(0, 0): [(0, D + a * L)]}))
    rep = check_jacobi(A)
    expected = _sympy_jacobi_residual(sp.Rational(a.numerator, a.denominator))
    item = rep.item("jacobi")
    assert item.passed == (expected == 0)
    if expected != 0:
        got = sp.sympify(item.residual.replace("^", "**").removesuffix("*L").strip())
        assert sp.expand(got - expected) == 0


def test_broken_virasoro_residual_is_printed():
    rep = check_jacobi(broken_virasoro())
    item = rep.item("jacobi")
    assert not rep.passed
    assert item.where == ("L", "L", "L")
    assert item.residual and item.residual != "0"


def test_rank_one_classification_over_ansatz():
    """Only 0 and multiples of the Virasoro bracket survive Jacobi and skew-symmetry."""
    survivors = []
    vals = (-1, 0, 1, 2)
    for a0, a1, a2, a3, a4, a5 in product(vals, repeat=6):
        P = a0 + a1 * L + a2 * D + a3 * L * L + a4 * L * D + a5 * D * D
        A = ConformalAlgebra(ModuleBasis("V", ("L",)), Table({(0, 0): [(0, P)]}))
        if check_skew(A).passed and check_jacobi(A).passed:
            survivors.append(P)
    for P in survivors:
        assert P.is_zero() or any(P == k * (D + 2 * L) for k in (-1, 1, 2))
    assert Poly.const(0) in survivors and D + 2 * L in survivors


@given(st.integers(0, 3), st.integers(0, 3))
def test_sesquilinearity(i, j):
    A = final_example_conformal()
    u, v = Tensor.gen(i), Tensor.gen(j)
    base = bracket_eval(A, u, v)
    assert bracket_eval(A, u.apply_partial(1), v) == base.scale(-L)
    assert bracket_eval(A, u, v.apply_partial(1)) == base.scale(L + D1)


def test_right_table_is_involution():
    t = final_example_conformal().table
    assert right_table(right_table(t)) == t


def test_current_algebra_matches_leibniz_check():
    rng = random.Random(7)
    seen = {True: 0, False: 0}
    for _ in range(40):
        n = rng.choice((1, 2, 3))
        g = LeibnizAlgebra(ModuleBasis("g", tuple(f"e{i}" for i in range(n))), random_scalar_table(rng, n, 0.25))
        verdict = g.check().passed
        if verdict:
            assert check_jacobi(current(g)).passed
        else:
            with pytest.raises(PreconditionError):
                current(g)
            assert not check_jacobi(ConformalAlgebra(g.basis, g.table)).passed
        seen[verdict] += 1
    assert seen[True] >= 3 and seen[False] >= 3


def test_current_of_zero_is_abelian():
    g = LeibnizAlgebra(ModuleBasis("z", ("u", "v")), Table({}))
    assert current(g).table.is_zero()


def test_leibniz_xxy_not_skew():
    A = current(leibniz_xxy())
    assert check_jacobi(A).passed
    assert not check_skew(A).passed


def test_final_example_lift_is_leibniz_not_lie():
    A = final_example_conformal()
    assert check_jacobi(A).passed
    assert not check_skew(A).passed


def test_structure_must_refer_to_basis():
    with pytest.raises(ValueError):
        ConformalAlgebra(ModuleBasis("V", ("L",)), Table({(0, 1): [(0, L)]}))
