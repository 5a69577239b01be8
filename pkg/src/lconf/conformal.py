"""Leibniz conformal algebras given by structure polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import PreconditionError
from .poly import DEL, LAMBDA, MU, Poly
from .report import Report
from .tensor import ModuleBasis, Table, Tensor, contract

__all__ = [
    "ConformalAlgebra",
    "LeibnizAlgebra",
    "op",
    "gen",
    "bracket_eval",
    "check_jacobi",
    "check_skew",
    "current",
    "right_table",
]

L, M, D1 = Poly.var(LAMBDA), Poly.var(MU), Poly.var("D1")


def gen(i: int) -> Tensor:
    return Tensor.gen(i)


def op(table: Table, u: Tensor, v: Tensor, at) -> Tensor:
    """``u ∘_at v`` for order-1 arguments; ``at`` may mention ``D1`` (the result's ∂)."""
    return contract(table, u, 1, v, 1, at, ("out",))


def right_table(table: Table) -> Table:
    """Table of ``R(a)_λ b = b ∘_{-λ-∂} a``."""
    shift = {LAMBDA: -Poly.var(LAMBDA) - Poly.var(DEL)}
    return table.transpose_args().map_polys(lambda p: p.subs(shift))


@dataclass(frozen=True)
class ConformalAlgebra:
    """Free k[∂]-module with a λ-bracket stored on generators."""

    basis: ModuleBasis
    table: Table

    def __post_init__(self):
        n = self.basis.rank
        for (i, j), lst in self.table.entries.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k, _ in lst):
                raise ValueError("structure table refers to unknown generators")
            for _, p in lst:
                extra = p.formal_variables() - {LAMBDA, DEL}
                if extra:
                    raise ValueError(f"structure polynomials may only use L and D, got {sorted(extra)}")

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def names(self) -> tuple[str, ...]:
        return self.basis.generators

    def structure(self, i: int, j: int) -> list[tuple[int, Poly]]:
        return self.table.get(i, j)

    def bracket(self, u: Tensor, v: Tensor, at=LAMBDA) -> Tensor:
        return op(self.table, u, v, at)

    @property
    def right(self) -> Table:
        return right_table(self.table)

    def vector(self, **coeffs) -> Tensor:
        return Tensor.vector({self.basis.index(g): Poly.coerce(p) for g, p in coeffs.items()})


def bracket_eval(A: ConformalAlgebra, u: Tensor, v: Tensor, at=LAMBDA) -> Tensor:
    """``[u_at v]``; the coefficients of the result are polynomials in ``at`` and ``D1``."""
    return A.bracket(u, v, at)


def jacobi_residual(table: Table, i: int, j: int, k: int) -> Tensor:
    a, b, c = gen(i), gen(j), gen(k)
    lhs = op(table, a, op(table, b, c, M), L)
    rhs = op(table, op(table, a, b, L), c, L + M) + op(table, b, op(table, a, c, L), M)
    return lhs - rhs


def check_jacobi(A: ConformalAlgebra) -> Report:
    rep = Report("Jacobi identity", names=A.names)
    rep.declare("jacobi")
    n = A.rank
    for i, j, k in product(range(n), repeat=3):
        rep.record("jacobi", (i, j, k), jacobi_residual(A.table, i, j, k))
    return rep


def check_skew(A: ConformalAlgebra) -> Report:
    rep = Report("skew-symmetry", names=A.names)
    rep.declare("skew")
    for i, j in product(range(A.rank), repeat=2):
        res = op(A.table, gen(i), gen(j), L) + op(A.table, gen(j), gen(i), -L - D1)
        rep.record("skew", (i, j), res)
    return rep


@dataclass(frozen=True)
class LeibnizAlgebra:
    """Finite-dimensional Leibniz algebra with scalar structure constants."""

    basis: ModuleBasis
    table: Table

    def __post_init__(self):
        for lst in self.table.entries.values():
            for _, p in lst:
                if p.formal_variables():
                    raise ValueError("Leibniz structure constants must be scalars")

    @property
    def names(self):
        return self.basis.generators

    def check(self) -> Report:
        rep = Report("Leibniz identity", names=self.names)
        rep.declare("leibniz")
        n = self.basis.rank
        for i, j, k in product(range(n), repeat=3):
            rep.record("leibniz", (i, j, k), jacobi_residual(self.table, i, j, k))
        return rep


def current(Lie: LeibnizAlgebra) -> ConformalAlgebra:
    rep = Lie.check()
    if not rep.passed:
        raise PreconditionError("Leibniz identity fails:\n" + rep.format_text())
    return ConformalAlgebra(Lie.basis, Lie.table)
