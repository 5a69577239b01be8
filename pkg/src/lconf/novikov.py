"""Novikov dialgebras, perm algebras with derivation, and the conformal correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .conformal import ConformalAlgebra
from .errors import PreconditionError
from .poly import DEL, LAMBDA, ZERO, Poly
from .report import Report
from .tensor import ModuleBasis, Table, Tensor, apply_map, contract

__all__ = [
    "NovikovDialgebra",
    "check_novikov",
    "check_right_novikov",
    "convert_left_right",
    "PermAlgebra",
    "perm_to_novikov",
    "novikov_to_conformal",
    "perm_derivation_conformal",
    "mul",
]

L, D = Poly.var(LAMBDA), Poly.var(DEL)


def mul(table: Table, u: Tensor, v: Tensor) -> Tensor:
    """Scalar product of order-1 tensors."""
    return contract(table, u, 1, v, 1, ZERO, ("out",))


def _scalar_table(t: Table, what: str):
    for lst in t.entries.values():
        for _, p in lst:
            if p.formal_variables():
                raise ValueError(f"{what} must have scalar structure constants")


@dataclass(frozen=True)
class NovikovDialgebra:
    """``left`` holds ⊣ and ``right`` holds ⊢."""

    basis: ModuleBasis
    left: Table
    right: Table

    def __post_init__(self):
        _scalar_table(self.left, "a Novikov dialgebra")
        _scalar_table(self.right, "a Novikov dialgebra")

    @property
    def names(self):
        return self.basis.generators

    @property
    def dim(self) -> int:
        return self.basis.rank

    def dashv(self, u: Tensor, v: Tensor) -> Tensor:
        return mul(self.left, u, v)

    def vdash(self, u: Tensor, v: Tensor) -> Tensor:
        return mul(self.right, u, v)


def _e(i: int) -> Tensor:
    return Tensor.gen(i)


NOVIKOV_AXIOMS = ("nd1", "nd2", "nd3", "nd4", "nd5", "nd6", "nd7")


def check_novikov(N: NovikovDialgebra) -> Report:
    lt, rt = N.dashv, N.vdash
    rep = Report("Novikov dialgebra identities", names=N.names)
    for ax in NOVIKOV_AXIOMS:
        rep.declare(ax)
    for i, j, k in product(range(N.dim), repeat=3):
        a, b, c = _e(i), _e(j), _e(k)
        ab_r, ac_r, ac_l, ab_l = rt(a, b), rt(a, c), lt(a, c), lt(a, b)
        res = {
            "nd1": lt(ab_r, c) - rt(ac_r, b),
            "nd2": rt(ac_r, b) - rt(ac_l, b),
            "nd3": lt(a, lt(b, c)) - lt(a, rt(b, c)),
            "nd4": lt(ab_l, c) - lt(ac_l, b),
            "nd5": lt(ab_l, c) - lt(a, lt(b, c)) - lt(rt(b, a), c) + rt(b, lt(a, c)),
            "nd6": rt(ab_r, c) - rt(a, rt(b, c)) - rt(rt(b, a), c) + rt(b, rt(a, c)),
            "nd7": lt(ab_r, c) - rt(ac_l, b),
        }
        for ax in NOVIKOV_AXIOMS:
            rep.record(ax, (i, j, k), res[ax])
    return rep


def check_right_novikov(N: NovikovDialgebra) -> Report:
    lt, rt = N.dashv, N.vdash
    rep = Report("right Novikov dialgebra identities", names=N.names)
    axioms = ("rnd1", "rnd2", "rnd3", "rnd4", "rnd5", "rnd6")
    for ax in axioms:
        rep.declare(ax)
    for i, j, k in product(range(N.dim), repeat=3):
        a, b, c = _e(i), _e(j), _e(k)
        twist = rt(b, c) - lt(c, b)
        res = (
            rt(a, rt(b, c)) - rt(b, rt(a, c)),
            rt(a, lt(b, c)) - lt(b, lt(a, c)),
            rt(rt(a, b) - lt(a, b), c),
            lt(a, rt(b, c) - lt(b, c)),
            rt(a, twist) - rt(rt(a, b), c) + lt(rt(a, c), b),
            lt(a, twist) - lt(lt(a, b), c) + lt(lt(a, c), b),
        )
        for ax, v in zip(axioms, res):
            rep.record(ax, (i, j, k), v)
    return rep


def convert_left_right(N: NovikovDialgebra) -> NovikovDialgebra:
    """``a ⊣' b = b ⊢ a`` and ``a ⊢' b = b ⊣ a``; an involution."""
    return NovikovDialgebra(N.basis, N.right.transpose_args(), N.left.transpose_args())


@dataclass(frozen=True)
class PermAlgebra:
    basis: ModuleBasis
    table: Table
    derivation: Mapping[int, list] = field(default_factory=dict)

    def __post_init__(self):
        _scalar_table(self.table, "a perm algebra")
        der = {i: [(k, Poly.coerce(p)) for k, p in lst] for i, lst in self.derivation.items()}
        for lst in der.values():
            for _, p in lst:
                if p.formal_variables():
                    raise ValueError("derivation entries must be scalars")
        object.__setattr__(self, "derivation", der)

    @property
    def names(self):
        return self.basis.generators

    def dot(self, u: Tensor, v: Tensor) -> Tensor:
        return mul(self.table, u, v)

    def der(self, u: Tensor) -> Tensor:
        return apply_map(self.derivation, u, 1)

    def check(self) -> Report:
        rep = Report("perm algebra with derivation", names=self.names)
        for ax in ("assoc", "perm", "derivation"):
            rep.declare(ax)
        n = self.basis.rank
        for i, j, k in product(range(n), repeat=3):
            a, b, c = _e(i), _e(j), _e(k)
            mid = self.dot(a, self.dot(b, c))
            rep.record("assoc", (i, j, k), self.dot(self.dot(a, b), c) - mid)
            rep.record("perm", (i, j, k), mid - self.dot(b, self.dot(a, c)))
        for i, j in product(range(n), repeat=2):
            a, b = _e(i), _e(j)
            res = self.der(self.dot(a, b)) - self.dot(self.der(a), b) - self.dot(a, self.der(b))
            rep.record("derivation", (i, j), res)
        return rep


def _table_of(values: Mapping[tuple[int, int], Tensor]) -> Table:
    return Table({key: [(k, p) for (k,), p in v.terms.items()] for key, v in values.items()})


def perm_to_novikov(P: PermAlgebra, verify: bool = True) -> NovikovDialgebra:
    """``a ⊢ b = a·D(b)`` and ``a ⊣ b = D(b)·a``."""
    if verify:
        chk = P.check()
        if not chk.passed:
            raise PreconditionError("perm algebra check failed:\n" + chk.format_text())
    n = P.basis.rank
    left, right = {}, {}
    for i, j in product(range(n), repeat=2):
        a, b = _e(i), _e(j)
        db = P.der(b)
        right[(i, j)] = P.dot(a, db)
        left[(i, j)] = P.dot(db, a)
    return NovikovDialgebra(P.basis, _table_of(left), _table_of(right))


def novikov_to_conformal(N: NovikovDialgebra) -> ConformalAlgebra:
    """``[a_λ b] = ∂(b ⊣ a) + λ(a ⊢ b + b ⊣ a)``."""
    entries: dict = {}
    for (j, i), lst in N.left.entries.items():
        entries.setdefault((i, j), []).extend((k, p * (D + L)) for k, p in lst)
    for (i, j), lst in N.right.entries.items():
        entries.setdefault((i, j), []).extend((k, p * L) for k, p in lst)
    return ConformalAlgebra(N.basis, Table(entries))


def perm_derivation_conformal(P: PermAlgebra, verify: bool = True) -> ConformalAlgebra:
    """``[a_λ b] = ∂(D(a)·b) + λ(a·D(b) + D(a)·b)``, computed directly."""
    if verify:
        chk = P.check()
        if not chk.passed:
            raise PreconditionError("perm algebra check failed:\n" + chk.format_text())
    n = P.basis.rank
    entries: dict = {}
    for i, j in product(range(n), repeat=2):
        a, b = _e(i), _e(j)
        da_b = P.dot(P.der(a), b)
        a_db = P.dot(a, P.der(b))
        lst = [(k, p * (D + L)) for (k,), p in da_b.terms.items()]
        lst += [(k, p * L) for (k,), p in a_db.terms.items()]
        entries[(i, j)] = lst
    return ConformalAlgebra(P.basis, Table(entries))
