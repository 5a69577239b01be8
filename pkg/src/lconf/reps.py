"""Representations, semidirect and bicrossed products, dual representations,
conformal bilinear forms and conformal Manin triples."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

from .conformal import ConformalAlgebra, check_jacobi, gen, op, right_table
from .errors import PreconditionError
from .poly import DEL, LAMBDA, MU, ONE, ZERO, Poly
from .report import Report
from .tensor import ModuleBasis, Table, Tensor

__all__ = [
    "Representation",
    "regular_rep",
    "check_representation",
    "semidirect",
    "dual_action",
    "dual_rep",
    "MatchedPair",
    "check_matched_pair",
    "bicrossed",
    "ConformalBilinearForm",
    "standard_form",
    "check_invariance",
    "check_manin_triple",
]

L, M, D1 = Poly.var(LAMBDA), Poly.var(MU), Poly.var("D1")


@dataclass(frozen=True)
class Representation:
    """``(M, l, r)``: tables map (algebra generator, module generator) to module generators."""

    algebra: ConformalAlgebra
    module: ModuleBasis
    l: Table
    r: Table

    def __post_init__(self):
        n, m = self.algebra.rank, self.module.rank
        for t in (self.l, self.r):
            for (i, j), lst in t.entries.items():
                if not (0 <= i < n and 0 <= j < m) or any(not 0 <= k < m for k, _ in lst):
                    raise ValueError("action table refers to unknown generators")


def regular_rep(A: ConformalAlgebra) -> Representation:
    return Representation(A, A.basis, A.table, right_table(A.table))


def check_representation(rep: Representation) -> Report:
    """Residuals of the three module axioms; ``r(·)_{-μ-∂}`` uses the result's ∂."""
    A, l, r = rep.algebra, rep.l, rep.r
    out = Report("representation axioms", names=rep.module.generators)
    for ax in ("m1", "m2", "m3"):
        out.declare(ax)
    n, m = A.rank, rep.module.rank
    for i, j, v in product(range(n), range(n), range(m)):
        a, b, x = gen(i), gen(j), gen(v)
        ab = A.bracket(a, b, L)
        la_x = op(l, a, x, L)
        m1 = op(l, a, op(l, b, x, M), L) - op(l, ab, x, L + M) - op(l, b, la_x, M)
        m2 = (op(l, a, op(r, b, x, -M - D1), L)
              - op(r, b, la_x, -L - M - D1) - op(r, ab, x, -M - D1))
        m3 = op(r, b, op(r, a, x, -M - D1), -L - M - D1) + op(r, b, la_x, -L - M - D1)
        where = (A.names[i], A.names[j], rep.module.generators[v])
        out.record("m1", where, m1)
        out.record("m2", where, m2)
        out.record("m3", where, m3)
    return out


def _place(t: Table, left_off: int, right_off: int, out_off: int) -> Table:
    return Table({(i + left_off, j + right_off): [(k + out_off, p) for k, p in lst]
                  for (i, j), lst in t.entries.items()})


def semidirect(rep: Representation) -> ConformalAlgebra:
    """Bracket on ``Q ⊕ M``: ``[a_λ b] + l(a)_λ y + r(b)_{-λ-∂} x``."""
    A = rep.algebra
    n = A.rank
    basis = A.basis.concat(rep.module, f"{A.basis.name}x{rep.module.name}")
    table = A.table + _place(rep.l, 0, n, n) + _place(right_table(rep.r), n, 0, n)
    return ConformalAlgebra(basis, table)


def dual_action(t: Table) -> Table:
    """Action on the conformal dual: ``⟨ρ*(a)_λ f, v⟩_μ = -⟨f, ρ(a)_λ v⟩_{μ-λ}``.

    On dual generators this is ``ρ*(a^i)_λ v*_j = -Σ_k ρ^{ik}_j(λ, -λ-∂) v*_k``.
    """
    shift = {DEL: -L - Poly.var(DEL)}
    out: dict = {}
    for (i, k), lst in t.entries.items():
        for j, p in lst:
            out.setdefault((i, j), []).append((k, -p.subs(shift)))
    return Table(out)


def dual_rep(rep: Representation) -> Representation:
    """``(M*c, l*, -l*-r*)``."""
    ls = dual_action(rep.l)
    rs = dual_action(rep.r)
    return Representation(rep.algebra, rep.module.dual(), ls, -(ls + rs))


@dataclass(frozen=True)
class MatchedPair:
    """Q1 acts on Q2 by ``lr`` and Q2 acts on Q1 by ``phipsi``."""

    Q1: ConformalAlgebra
    Q2: ConformalAlgebra
    lr: Representation
    phipsi: Representation

    def __post_init__(self):
        if self.lr.algebra.basis != self.Q1.basis or self.lr.module != self.Q2.basis:
            raise ValueError("lr must be a representation of Q1 on Q2")
        if self.phipsi.algebra.basis != self.Q2.basis or self.phipsi.module != self.Q1.basis:
            raise ValueError("phipsi must be a representation of Q2 on Q1")


def check_matched_pair(mp: MatchedPair) -> Report:
    """Residuals of the six compatibility identities (plus both representation checks)."""
    b1, b2 = mp.Q1.table, mp.Q2.table
    l, r = mp.lr.l, mp.lr.r
    phi, psi = mp.phipsi.l, mp.phipsi.r
    out = Report("matched pair")
    for ax in ("mp1", "mp2", "mp3", "mp4", "mp5", "mp6"):
        out.declare(ax)
    n1, n2 = mp.Q1.rank, mp.Q2.rank
    N1, N2 = mp.Q1.names, mp.Q2.names
    for ia, ix, iy in product(range(n1), range(n2), range(n2)):
        a, x, y = gen(ia), gen(ix), gen(iy)
        where = (N1[ia], N2[ix], N2[iy])
        mp1 = (op(b2, x, op(r, a, y, -M - D1), L) + op(r, op(phi, y, a, M), x, -L - D1)
               - op(r, a, op(b2, x, y, L), -L - M - D1) - op(b2, y, op(r, a, x, -L - D1), M)
               - op(r, op(phi, x, a, L), y, -M - D1))
        mp2 = (op(l, a, op(b2, x, y, M), L) - op(b2, op(l, a, x, L), y, L + M)
               - op(l, op(psi, x, a, -L - D1), y, L + M) - op(b2, x, op(l, a, y, L), M)
               - op(r, op(psi, y, a, -L - D1), x, -M - D1))
        mp3 = (op(b2, x, op(l, a, y, M), L) + op(r, op(psi, y, a, -M - D1), x, -L - D1)
               - op(l, op(phi, x, a, L), y, L + M) - op(l, a, op(b2, x, y, L), M)
               - op(b2, op(r, a, x, -L - D1), y, L + M))
        out.record("mp1", where, mp1)
        out.record("mp2", where, mp2)
        out.record("mp3", where, mp3)
    for ia, ib, ix in product(range(n1), range(n1), range(n2)):
        a, b, x = gen(ia), gen(ib), gen(ix)
        where = (N1[ia], N1[ib], N2[ix])
        ab = op(b1, a, b, L)
        mp4 = (op(b1, a, op(psi, x, b, -M - D1), L) + op(psi, op(l, b, x, M), a, -L - D1)
               - op(psi, x, ab, -L - M - D1) - op(b1, b, op(psi, x, a, -L - D1), M)
               - op(psi, op(l, a, x, L), b, -M - D1))
        mp5 = (op(b1, a, op(phi, x, b, M), L) + op(psi, op(r, b, x, -M - D1), a, -L - D1)
               - op(b1, op(psi, x, a, -L - D1), b, L + M) - op(phi, op(l, a, x, L), b, L + M)
               - op(phi, x, ab, M))
        mp6 = (op(b1, op(phi, x, a, L), b, L + M) + op(phi, op(r, a, x, -L - D1), b, L + M)
               + op(b1, op(psi, x, a, -M - D1), b, L + M) + op(phi, op(l, a, x, M), b, L + M))
        out.record("mp4", where, mp4)
        out.record("mp5", where, mp5)
        out.record("mp6", where, mp6)
    out.merge(check_representation(mp.lr), "lr:")
    out.merge(check_representation(mp.phipsi), "phipsi:")
    return out


def bicrossed(mp: MatchedPair, verify: bool = True) -> ConformalAlgebra:
    if verify:
        rep = check_matched_pair(mp)
        if not rep.passed:
            raise PreconditionError("matched pair check failed:\n" + rep.format_text())
    n = mp.Q1.rank
    basis = mp.Q1.basis.concat(mp.Q2.basis, f"{mp.Q1.basis.name}|><|{mp.Q2.basis.name}")
    table = (mp.Q1.table
             + _place(mp.phipsi.l, n, 0, 0)
             + _place(right_table(mp.phipsi.r), 0, n, 0)
             + _place(mp.Q2.table, n, n, n)
             + _place(mp.lr.l, 0, n, n)
             + _place(right_table(mp.lr.r), n, 0, n))
    return ConformalAlgebra(basis, table)


@dataclass(frozen=True)
class ConformalBilinearForm:
    """``B_λ(e_i, e_j)`` given by polynomials in ``L``; extended by sesquilinearity."""

    space: ModuleBasis
    entries: Mapping[tuple[int, int], Poly]

    def eval(self, u: Tensor, v: Tensor, at=LAMBDA) -> Poly:
        at = Poly.coerce(at)
        total = ZERO
        for (i,), f in u.terms.items():
            fu = f.subs({"D1": -at})
            for (j,), g in v.terms.items():
                e = self.entries.get((i, j))
                if e:
                    total = total + fu * g.subs({"D1": at}) * e.subs({LAMBDA: at})
        return total

    def matrix(self) -> list[list[Poly]]:
        n = self.space.rank
        return [[self.entries.get((i, j), ZERO) for j in range(n)] for i in range(n)]

    def check_skew(self) -> Report:
        rep = Report("form skew-symmetry", names=self.space.generators)
        rep.declare("skew")
        for i, j in product(range(self.space.rank), repeat=2):
            res = self.eval(gen(i), gen(j), L) + self.eval(gen(j), gen(i), -L)
            rep.record("skew", (i, j), res)
        return rep


def standard_form(Q: ConformalAlgebra, n: int | None = None) -> ConformalBilinearForm:
    """``B_λ(a+f, b+g) = ⟨f,b⟩_λ - ⟨g,a⟩_{-λ}`` on a double ``Q0 ⊕ Q0*c``.

    The first half of the generators is the primal part; generator ``n+i`` is
    the dual partner of generator ``i``.
    """
    total = Q.rank
    if n is None:
        if total % 2:
            raise ValueError("space is not a recognised double")
        n = total // 2
    names = Q.names
    if total != 2 * n or any(names[n + i] != ModuleBasis("_", names[:n]).dual().generators[i]
                             for i in range(n)):
        raise ValueError("space is not a recognised double")
    entries = {}
    for i in range(n):
        entries[(n + i, i)] = ONE
        entries[(i, n + i)] = -ONE
    return ConformalBilinearForm(Q.basis, entries)


def check_invariance(Q: ConformalAlgebra, B: ConformalBilinearForm) -> Report:
    """``B_μ(a, [b_λ c]) = B_{-λ}([a_μ c] + [c_{-μ-∂} a], b)``."""
    if B.space != Q.basis:
        raise ValueError("form lives on a different basis")
    rep = Report("invariance", names=Q.names)
    rep.declare("invariance")
    for i, j, k in product(range(Q.rank), repeat=3):
        a, b, c = gen(i), gen(j), gen(k)
        lhs = B.eval(a, Q.bracket(b, c, L), M)
        x = Q.bracket(a, c, M) + Q.bracket(c, a, -M - D1)
        rhs = B.eval(x, b, -L)
        rep.record("invariance", (i, j, k), lhs - rhs)
    return rep


def _det(mat: list[list[Poly]]) -> Poly:
    """Division-free determinant by expansion over column subsets."""
    n = len(mat)
    memo: dict[int, Poly] = {0: ONE}
    for row in range(n):
        nxt: dict[int, Poly] = {}
        for used, val in memo.items():
            if not val:
                continue
            # sign from the number of used columns greater than the chosen column
            for col in range(n):
                if used >> col & 1:
                    continue
                e = mat[row][col]
                if not e:
                    continue
                above = bin(used >> (col + 1)).count("1")
                term = val * e
                key = used | (1 << col)
                nxt[key] = nxt.get(key, ZERO) + (-term if above % 2 else term)
        memo = nxt
    return memo.get((1 << n) - 1, ZERO)


def check_manin_triple(Q: ConformalAlgebra, part0: Sequence[int], part1: Sequence[int],
                       B: ConformalBilinearForm, with_jacobi: bool = True) -> Report:
    """Invariance, skew-symmetry, closed isotropic halves and non-degeneracy.

    ``with_jacobi`` also checks that ``Q`` itself is a Leibniz conformal algebra,
    which the form conditions alone do not detect.
    """
    p0, p1 = sorted(part0), sorted(part1)
    if sorted(p0 + p1) != list(range(Q.rank)):
        raise ValueError("index sets must partition the generators")
    rep = Report("conformal Manin triple", names=Q.names)
    if with_jacobi:
        rep.merge(check_jacobi(Q))
    rep.merge(check_invariance(Q, B))
    rep.merge(B.check_skew())
    for tag, part in (("closed0", p0), ("closed1", p1)):
        rep.declare(tag)
        inside = set(part)
        for i, j in product(part, repeat=2):
            br = Q.bracket(gen(i), gen(j), L)
            leak = Tensor(1, {k: v for k, v in br.terms.items() if k[0] not in inside})
            rep.record(tag, (i, j), leak)
    for tag, part in (("isotropic0", p0), ("isotropic1", p1)):
        rep.declare(tag)
        for i, j in product(part, repeat=2):
            rep.record(tag, (i, j), B.eval(gen(i), gen(j), L))
    det = _det(B.matrix())
    rep.declare("nondegenerate")
    if not (det.is_constant() and det):
        rep.fail("nondegenerate", f"determinant over k[λ] is not a nonzero constant: {det}")
    else:
        rep.record("nondegenerate", (), ZERO)
    return rep
