"""Acceptance battery: one test and one printed verdict line per criterion.

The verdict lines appear in the pytest terminal summary; ``python tests/test_acceptance.py``
prints them directly.
"""

import random
import sys

import pytest

from lconf import (LDCA, BiDialgebra, ConformalAlgebra, ConformalLinearMap, ModuleBasis, NovikovDialgebra,
                   Poly, Representation, Table, Tensor, bidialgebra_diagnostics, cdnybe_N, check_bi_dialgebra,
                   check_bialgebra, check_co_dialgebra, check_invariance, check_jacobi, check_ldca,
                   check_manin_triple, check_novikov, check_o_operator, check_representation, check_skew,
                   clcybe, coboundary_bidialgebra, codialgebra_diagnostics, current, dual_rep,
                   dualize_algebra, dualize_coalgebra, embed_symmetric_solution, identity_map,
                   ldca_to_lca, lift_bidialgebra, novikov_to_conformal, o_operator_to_ldca, perm_to_novikov, regular_rep,
                   relcdn_check, semidirect, standard_form)
from lconf.corpus import (broken_virasoro, final_example_dialgebra, final_example_printed_alpha,
                          final_example_r, leibniz_xxy, virasoro)
from lconf.novikov import PermAlgebra

L, D = Poly.var("L"), Poly.var("D")


SUMMARY: dict[int, str] = {}


def _emit(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    SUMMARY[number] = line
    return line


def _scalar_table(rng, n, density):
    entries = {}
    for i in range(n):
        for j in range(n):
            lst = [(k, Poly.const(rng.choice((-1, 1, 2)))) for k in range(n) if rng.random() < density]
            if lst:
                entries[(i, j)] = lst
    return Table(entries)


def _random_r(rng, n, symmetric, density):
    terms = {}
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            if rng.random() < density:
                c = Poly.const(rng.choice((-2, -1, 1, 3)))
                terms[(i, j)] = c
                if symmetric:
                    terms[(j, i)] = c
    return Tensor(2, terms)


# 1 ---------------------------------------------------------------------------------------------

def criterion_1():
    V = virasoro()
    jac, skew = check_jacobi(V).passed, check_skew(V).passed
    broken = check_jacobi(broken_virasoro())
    item = broken.item("jacobi")
    printed = bool(item.residual) and item.residual != "0"
    ok = jac and skew and not broken.passed and printed
    return ok, f"Virasoro jacobi={jac} skew={skew}; (D+3L) residual at {item.where}: {item.residual}"


# 2 ---------------------------------------------------------------------------------------------

def criterion_2():
    N, r = final_example_dialgebra(), final_example_r()
    parts = {}
    parts["a"] = check_novikov(N).passed
    parts["b"] = cdnybe_N(N, r).is_zero()
    bd = BiDialgebra(N, coboundary_bidialgebra(N, r, "plus"), "plus")
    parts["c"] = check_bi_dialgebra(bd).passed
    A, alpha = lift_bidialgebra(bd)
    parts["d"] = alpha == final_example_printed_alpha()
    parts["e"] = check_bialgebra(A, alpha).passed
    parts["f"] = clcybe(A, r).is_zero()
    ok = all(parts.values())
    detail = " ".join(f"({k})={'ok' if v else 'FAIL'}" for k, v in parts.items())
    if not parts["d"]:
        detail += "; lifted alpha differs from the listed one (nonzero on x*, y*; transposed and negated on x, y)"
    return ok, detail


# 3 ---------------------------------------------------------------------------------------------

def criterion_3():
    rng = random.Random(20240607)
    agree, passing, failing, total = True, 0, 0, 0
    while total < 40 or passing < 5 or failing < 5:
        n = rng.choice((1, 2, 3))
        density = rng.choice((0.1, 0.2, 0.35))
        N = NovikovDialgebra(ModuleBasis("N", tuple(f"e{i}" for i in range(n))),
                             _scalar_table(rng, n, density), _scalar_table(rng, n, density))
        v1 = check_novikov(N).passed
        v2 = check_jacobi(novikov_to_conformal(N)).passed
        agree &= v1 == v2
        passing += v1
        failing += not v1
        total += 1
        if total > 400:
            break
    ok = agree and passing >= 5 and failing >= 5 and total >= 20
    return ok, f"{total} tables, {passing} passing, {failing} failing, verdicts identical={agree}"


# 4 ---------------------------------------------------------------------------------------------

def criterion_4():
    N = final_example_dialgebra()
    terms = {}
    for i in range(4):
        for j in range(i, 4):
            terms[(i, j)] = terms[(j, i)] = Poly.var(f"c{i}{j}")
    rep = relcdn_check(N, Tensor(2, terms))
    ok = rep.item("relcdn").passed
    return ok, f"identity with 10 free symmetric coefficients reduces to zero: {ok}"


# 5 ---------------------------------------------------------------------------------------------

def _ldcas():
    basis = ModuleBasis("X", ("x", "y"))
    t = Table({(0, 0): [(1, Poly.const(1))]})
    plain = LDCA(basis, t, t)
    # λ-dependent: induced by T(x) = T(y) = x + y on the subalgebra spanned by x, y (b=1, c=-1)
    full = novikov_to_conformal(final_example_dialgebra())
    S = ConformalAlgebra(basis, Table({k: [(m, p.subs({"b": 1, "c": -1})) for m, p in v]
                                       for k, v in full.table.entries.items() if max(k) < 2}))
    one = Poly.const(1)
    T = ConformalLinearMap(basis, basis, {0: [(0, one), (1, one)], 1: [(0, one), (1, one)]})
    return [plain, o_operator_to_ldca(S, regular_rep(S), T)]


def criterion_5():
    results = []
    twist = {0: [(0, Poly.const(1)), (1, Poly.const(2))], 1: [(1, Poly.const(1)), (0, Poly.const(1))]}
    for X in _ldcas():
        if not check_ldca(X).passed:
            results.append(("ldca", False))
            continue
        A, rep = ldca_to_lca(X)
        T = identity_map(X.basis)
        o_ok = check_o_operator(A, rep, T).passed
        ambient, r = embed_symmetric_solution(A, rep, T)
        solved = clcybe(ambient, r).is_zero()
        Tt = ConformalLinearMap(X.basis, X.basis, twist)
        o_bad = not check_o_operator(A, rep, Tt).passed
        amb2, r2 = embed_symmetric_solution(A, rep, Tt)
        y_bad = not clcybe(amb2, r2).is_zero()
        results.append((X.names, o_ok and solved and o_bad and y_bad))
    ok = len(results) == 2 and all(v for _, v in results)
    return ok, f"identity embeddings solve CLCYBE and the twist breaks both checks: {[v for _, v in results]}"


# 6 ---------------------------------------------------------------------------------------------

def criterion_6():
    trips = []
    for A in (virasoro(), novikov_to_conformal(final_example_dialgebra()), current(leibniz_xxy())):
        c = dualize_algebra(A)
        back = dualize_coalgebra(c)
        again = dualize_algebra(back)
        trips.append(back.table == A.table and all(again(i) == c(i) for i in range(A.rank)))
    reps = [check_representation(dual_rep(regular_rep(A))).passed
            for A in (virasoro(), novikov_to_conformal(final_example_dialgebra()))]
    ok = all(trips) and all(reps)
    return ok, f"round trips={trips}; dual regular reps pass m1-m3={reps}"


# 7 ---------------------------------------------------------------------------------------------

def criterion_7():
    rng = random.Random(77)
    agree, seen = True, set()
    choices = [Poly.const(0), L, D, Poly.const(1), 2 * L + D, D + 3 * L]
    for _ in range(30):
        A = rng.choice([virasoro(), current(leibniz_xxy())])
        base = rng.choice([regular_rep(A), dual_rep(regular_rep(A))])
        l, r = base.l, base.r
        if rng.random() < 0.6:
            i, j, k = rng.randrange(A.rank), rng.randrange(base.module.rank), rng.randrange(base.module.rank)
            extra = Table({(i, j): [(k, rng.choice(choices))]})
            l, r = (l + extra, r) if rng.random() < 0.5 else (l, r + extra)
        rep = Representation(A, base.module, l, r)
        v = check_representation(rep).passed
        agree &= check_jacobi(semidirect(rep)).passed == v
        seen.add(v)
    Q = current(leibniz_xxy())
    G = semidirect(dual_rep(regular_rep(Q)))
    B = standard_form(G)
    inv = check_invariance(G, B).passed
    mt = check_manin_triple(G, [0, 1], [2, 3], B).passed
    ok = agree and seen == {True, False} and inv and mt
    return ok, f"semidirect Jacobi iff rep (both outcomes seen={seen == {True, False}}): {agree}; invariance={inv}; Manin triple={mt}"


# 8 ---------------------------------------------------------------------------------------------

def _diag_dialgebras():
    N = final_example_dialgebra()
    sub = lambda t: t.map_polys(lambda p: p.subs({"b": 2, "c": -1}))  # noqa: E731
    basis = ModuleBasis("P", ("x", "y"))
    one = Poly.const(1)
    rich = PermAlgebra(basis, Table({(0, 0): [(0, one)], (0, 1): [(1, one)], (1, 0): [(0, 2 * one)],
                                     (1, 1): [(1, 2 * one)]}), {0: [(0, -2), (1, 1)], 1: [(0, -6), (1, 3)]})
    xx = PermAlgebra(basis, Table({(0, 0): [(1, one)]}), {0: [(0, 1)], 1: [(1, 2)]})
    return [NovikovDialgebra(N.basis, sub(N.left), sub(N.right)), perm_to_novikov(rich), perm_to_novikov(xx)]


def criterion_8():
    rng = random.Random(8)
    algebras = _diag_dialgebras()
    agree, count, sym_seen, outcomes = True, 0, set(), set()
    for _ in range(24):
        N = algebras[rng.randrange(len(algebras))]
        symmetric = rng.random() < 0.5
        r = _random_r(rng, N.dim, symmetric, rng.choice((0.15, 0.3)))
        co = coboundary_bidialgebra(N, r)
        direct_co = check_co_dialgebra(co).passed
        direct_bd = check_bi_dialgebra(BiDialgebra(N, co)).passed
        diag_co = codialgebra_diagnostics(N, r).passed
        diag_bd = diag_co and bidialgebra_diagnostics(N, r).passed
        agree &= (diag_co == direct_co) and (diag_bd == direct_bd)
        count += 1
        sym_seen.add(symmetric)
        outcomes.add(direct_bd)
    ok = agree and count >= 10 and sym_seen == {True, False} and outcomes == {True, False}
    return ok, f"{count} random r (symmetric and not), verdicts agree={agree}, outcomes={sorted(outcomes)}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    line = _emit(number, ok, detail)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(_emit(k, ok, detail))
        failures += not ok
    sys.exit(1 if failures else 0)
