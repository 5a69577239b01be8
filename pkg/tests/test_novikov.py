import random

import pytest

from conftest import random_dialgebra
from lconf import (ModuleBasis, NovikovDialgebra, PermAlgebra, Poly, PreconditionError, Table,
                   check_jacobi, check_novikov, check_skew, check_right_novikov, convert_left_right,
                   novikov_to_conformal, perm_derivation_conformal, perm_to_novikov)
from lconf.corpus import final_example_conformal, final_example_dialgebra

L, D = Poly.var("L"), Poly.var("D")
b, c = Poly.var("b"), Poly.var("c")


def _perm_xx():
    basis = ModuleBasis("P", ("x", "y"))
    return PermAlgebra(basis, Table({(0, 0): [(1, Poly.const(1))]}), {0: [(0, 1)], 1: [(1, 2)]})


def _perm_rich():
    """``x·x = x, x·y = y, y·x = 2x, y·y = 2y`` with a derivation."""
    basis = ModuleBasis("P", ("x", "y"))
    one = Poly.const(1)
    t = Table({(0, 0): [(0, one)], (0, 1): [(1, one)], (1, 0): [(0, 2 * one)], (1, 1): [(1, 2 * one)]})
    return PermAlgebra(basis, t, {0: [(0, -2), (1, 1)], 1: [(0, -6), (1, 3)]})


def test_final_example_passes_symbolically():
    N = final_example_dialgebra()
    rep = check_novikov(N)
    assert rep.passed, rep.format_text()
    assert check_right_novikov(convert_left_right(N)).passed


def _printed_table():
    x, y, xs, ys = range(4)
    s = [(xs, b * L), (ys, c * L)]
    neg = lambda lst: [(k, -p) for k, p in lst]  # noqa: E731
    e = {
        (y, x): [(x, -b * L), (y, b * L)], (x, x): [(x, -b * L), (y, b * L)],
        (y, y): [(x, -c * L), (y, c * L)], (x, y): [(x, -c * L), (y, c * L)],
        (xs, x): [(ys, (c - b) * D)] + s, (xs, y): [(xs, (b - c) * D)] + s,
        (y, xs): s, (x, xs): s, (y, ys): neg(s), (x, ys): neg(s),
    }
    e[(ys, x)] = neg(e[(xs, x)])
    e[(ys, y)] = neg(e[(xs, y)])
    return Table(e)


def test_final_example_bracket_table():
    A = final_example_conformal()
    assert A.table == _printed_table()
    assert check_jacobi(A).passed
    assert not check_skew(A).passed


def test_convert_left_right_is_an_involution():
    N = final_example_dialgebra()
    assert convert_left_right(convert_left_right(N)) == N


def test_correspondence_on_random_tables():
    rng = random.Random(2024)
    counts = {True: 0, False: 0}
    for trial in range(60):
        N = random_dialgebra(rng, rng.choice((1, 2, 3)), density=rng.choice((0.1, 0.2, 0.4)))
        verdict = check_novikov(N).passed
        assert check_jacobi(novikov_to_conformal(N)).passed == verdict
        counts[verdict] += 1
    assert counts[True] >= 5 and counts[False] >= 5


def test_right_variant_matches_on_random_tables():
    rng = random.Random(77)
    for _ in range(30):
        N = random_dialgebra(rng, 2, 0.3)
        assert check_right_novikov(convert_left_right(N)).passed == check_novikov(N).passed


@pytest.mark.parametrize("make", [_perm_xx, _perm_rich])
def test_perm_with_derivation(make):
    P = make()
    assert P.check().passed
    N = perm_to_novikov(P)
    assert check_novikov(N).passed
    assert novikov_to_conformal(N).table == perm_derivation_conformal(P).table


def test_perm_failures_are_preconditions():
    basis = ModuleBasis("P", ("x", "y"))
    bad = PermAlgebra(basis, Table({(0, 1): [(0, Poly.const(1))]}), {})
    assert not bad.check().passed
    with pytest.raises(PreconditionError):
        perm_to_novikov(bad)
    bad_der = PermAlgebra(basis, Table({(0, 0): [(1, Poly.const(1))]}), {1: [(1, 1)]})
    assert not bad_der.check().item("derivation").passed


def test_dialgebra_rejects_spectral_variables():
    basis = ModuleBasis("N", ("x",))
    with pytest.raises(ValueError):
        NovikovDialgebra(basis, Table({(0, 0): [(0, L)]}), Table({}))


def test_identity_items_are_all_reported():
    N = final_example_dialgebra()
    assert [it.axiom for it in check_novikov(N).items] == [f"nd{i}" for i in range(1, 8)]
    assert all(it.checked == 64 for it in check_novikov(N).items)
