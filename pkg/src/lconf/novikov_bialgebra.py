"""Novikov co-dialgebras and bi-dialgebras, the CDNYBE and the conformal lift."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .bialgebra import CoBracket, clcybe
from .conformal import ConformalAlgebra
from .errors import PreconditionError
from .novikov import NovikovDialgebra, check_novikov, mul, novikov_to_conformal
from .poly import ZERO, Poly, is_formal
from .report import Report
from .tensor import ModuleBasis, Table, Tensor, apply_comap, contract, tensor_product

__all__ = [
    "CoDialgebra",
    "check_co_dialgebra",
    "BiDialgebra",
    "check_bi_dialgebra",
    "Operators",
    "alpha_from_codialgebra",
    "lift_bidialgebra",
    "cdnybe_N",
    "cdnybe_M",
    "coboundary_bidialgebra",
    "codialgebra_diagnostics",
    "bidialgebra_diagnostics",
    "relcdn_check",
    "STAR_SIGNS",
]

D1, D3 = Poly.var("D1"), Poly.var("D3")
STAR_SIGNS = ("plus", "minus")


def _zero(order: int) -> Tensor:
    return Tensor.zero(order)


@dataclass(frozen=True)
class CoDialgebra:
    """``delta`` is δ and ``Delta`` is Δ; both map generators to scalar order-2 tensors."""

    basis: ModuleBasis
    delta: Mapping[int, Tensor] = field(default_factory=dict)
    Delta: Mapping[int, Tensor] = field(default_factory=dict)

    def __post_init__(self):
        for m in (self.delta, self.Delta):
            for i, t in m.items():
                if t.order != 2 or _has_formal(t):
                    raise ValueError("co-dialgebra values must be scalar order-2 tensors")

    @property
    def names(self):
        return self.basis.generators

    def d(self, i: int) -> Tensor:
        return self.delta.get(i) or _zero(2)

    def D(self, i: int) -> Tensor:
        return self.Delta.get(i) or _zero(2)

    def swapped(self) -> "CoDialgebra":
        return CoDialgebra(self.basis, dict(self.Delta), dict(self.delta))

    def __eq__(self, other):
        if not isinstance(other, CoDialgebra):
            return NotImplemented
        n = self.basis.rank
        return self.basis == other.basis and all(
            self.d(i) == other.d(i) and self.D(i) == other.D(i) for i in range(n))

    def __hash__(self):
        return hash(self.basis)


def _has_formal(t: Tensor) -> bool:
    return any(is_formal(v) for v in t.variables())


def check_co_dialgebra(c: CoDialgebra) -> Report:
    rep = Report("Novikov co-dialgebra identities", names=c.names)
    axioms = ("ncda1", "ncda2a", "ncda2b", "ncda3", "ncda4", "ncda5")
    for ax in axioms:
        rep.declare(ax)
    dl, Dl = c.delta, c.Delta
    for i in range(c.basis.rank):
        d, Dd = c.d(i), c.D(i)
        dd1 = apply_comap(dl, d, 1)
        Dd1 = apply_comap(Dl, d, 1)
        DD1 = apply_comap(Dl, Dd, 1)
        dD1 = apply_comap(dl, Dd, 1)
        dd2 = apply_comap(dl, d, 2)
        Dd2 = apply_comap(Dl, d, 2)
        dD2 = apply_comap(dl, Dd, 2)
        DD2 = apply_comap(Dl, Dd, 2)
        res = (
            dd1 - dd1.flip("tau23"),
            Dd1 - DD1.flip("tau23"),
            DD1.flip("tau23") - dD1.flip("tau23"),
            dd2 - Dd2,
            dd1 - dd2 - (Dd1 - dD2).flip("tau12"),
            DD1 - DD2 - (DD1 - DD2).flip("tau12"),
        )
        for ax, v in zip(axioms, res):
            rep.record(ax, (i,), v)
    return rep


class Operators:
    """Multiplication operators of a dialgebra acting on chosen tensor slots."""

    def __init__(self, N: NovikovDialgebra, star_sign: str = "plus"):
        if star_sign not in STAR_SIGNS:
            raise ValueError(f"star sign must be one of {STAR_SIGNS}")
        lt, rt = N.left, N.right
        self.N = N
        self.Ld = lt
        self.Lv = rt
        self.Rd = lt.transpose_args()
        self.Rv = rt.transpose_args()
        star = rt - lt + lt.transpose_args() - rt.transpose_args()
        self.Ls = star if star_sign == "plus" else -star
        self.star_sign = star_sign

    def star(self, u: Tensor, v: Tensor) -> Tensor:
        return mul(self.Ls, u, v)

    @staticmethod
    def act(table: Table, x: Tensor, T: Tensor, pos: int) -> Tensor:
        """Apply ``X(x)`` to slot ``pos`` of ``T``; ``x`` is an order-1 element."""
        layout = tuple("out" if k == pos else f"b{k}" for k in range(1, T.order + 1))
        return contract(table, x, 1, T, pos, ZERO, layout)


def _g(i: int) -> Tensor:
    return Tensor.gen(i)


@dataclass(frozen=True)
class BiDialgebra:
    algebra: NovikovDialgebra
    co: CoDialgebra
    star_sign: str = "plus"

    def __post_init__(self):
        if self.algebra.basis != self.co.basis:
            raise ValueError("algebra and co-dialgebra live on different bases")
        if self.star_sign not in STAR_SIGNS:
            raise ValueError(f"star sign must be one of {STAR_SIGNS}")


NDBA = tuple(f"ndba{k}" for k in range(1, 10))


def check_bi_dialgebra(bd: BiDialgebra, with_preconditions: bool = True) -> Report:
    N, c = bd.algebra, bd.co
    ops = Operators(N, bd.star_sign)
    act = ops.act
    Ld, Lv, Rd, Rv, Ls = ops.Ld, ops.Lv, ops.Rd, ops.Rv, ops.Ls
    LdRv, LvRd, RvRd = Ld + Rv, Lv + Rd, Rv - Rd
    rep = Report("Novikov bi-dialgebra compatibility", names=N.names)
    if with_preconditions:
        rep.merge(check_novikov(N))
        rep.merge(check_co_dialgebra(c))
    for ax in NDBA:
        rep.declare(ax)
    n = N.dim
    for i, j in product(range(n), repeat=2):
        a, b = _g(i), _g(j)
        da, Da, db, Db = c.d(i), c.D(i), c.d(j), c.D(j)
        tdb, tDb, tda = db.flip("tau"), Db.flip("tau"), da.flip("tau")
        dmD_b = db - Db
        res = {
            "ndba1": act(Ld, a, Db, 1) + act(LdRv, b, da, 2),
            "ndba2": act(Ld, b, da, 2) - act(Ld, a, tdb, 1),
            "ndba3": act(LdRv, a, db + tDb, 2) - act(Rv, b, Da, 1),
            "ndba4": (apply_comap(c.delta, N.dashv(a, b), 1) - act(Rd, b, da, 1)
                      - act(Ls, a, dmD_b - dmD_b.flip("tau"), 2)),
            "ndba5": (apply_comap(c.delta, N.vdash(a, b), 1) - act(Rv, b, da - Da, 1)
                      - act(LvRd, a, db + tDb, 2)),
            "ndba6": (apply_comap(c.Delta, N.dashv(a, b), 1)
                      - act(LdRv, a, -dmD_b + dmD_b.flip("tau"), 2) - act(Rd, b, Da, 1)),
            "ndba7": (apply_comap(c.Delta, N.vdash(a, b), 1) - act(RvRd, b, da - Da, 1)
                      - act(LvRd, a, tdb + Db, 2)),
            "ndba8": (act(LdRv, b, da - Da, 1) + act(Ls, b, (da - Da).flip("tau"), 2)
                      - act(LvRd, a, db, 1) + act(LvRd, a, tDb, 2)),
            "ndba9": (act(Rv, a, dmD_b - dmD_b.flip("tau"), 2) - act(Rd, b, Da + tda, 1)
                      + act(Rd, b, Da + tda, 2) + act(RvRd, a, dmD_b - dmD_b.flip("tau"), 1)),
        }
        for ax in NDBA:
            rep.record(ax, (i, j), res[ax])
    return rep


def alpha_from_codialgebra(c: CoDialgebra) -> CoBracket:
    """``α(a) = (∂⊗id)Δ(a) - τ(∂⊗id)δ(a)``."""
    out = {}
    for i in range(c.basis.rank):
        v = c.D(i).scale(D1) - c.d(i).scale(D1).flip("tau")
        if v:
            out[i] = v
    return CoBracket(c.basis, out)


def lift_bidialgebra(bd: BiDialgebra) -> tuple[ConformalAlgebra, CoBracket]:
    return novikov_to_conformal(bd.algebra), alpha_from_codialgebra(bd.co)


def _check_r(N: NovikovDialgebra, r: Tensor):
    if r.order != 2:
        raise ValueError("r must be an order-2 tensor")
    if _has_formal(r):
        raise ValueError("r must have scalar coefficients")
    if any(k >= N.dim for I in r.terms for k in I):
        raise ValueError("r refers to unknown generators")


def cdnybe_N(N: NovikovDialgebra, r: Tensor) -> Tensor:
    _check_r(N, r)
    lt, rt = N.left, N.right
    z = ZERO
    return (contract(rt, r, 1, r, 1, z, ("out", "a2", "b2"))
            + contract(rt - lt, r, 2, r, 1, z, ("a1", "out", "b2"))
            + contract(rt, r, 2, r, 2, z, ("b1", "a1", "out"))
            + contract(lt, r, 2, r, 2, z, ("a1", "b1", "out")))


def cdnybe_M(N: NovikovDialgebra, r: Tensor) -> Tensor:
    _check_r(N, r)
    lt, rt = N.left, N.right
    z = ZERO
    return (contract(rt, r, 1, r, 2, z, ("out", "a2", "b1"))
            + contract(rt - lt, r, 2, r, 2, z, ("a1", "out", "b1"))
            + contract(rt, r, 1, r, 2, z, ("b1", "a2", "out"))
            + contract(lt, r, 2, r, 1, z, ("a1", "b2", "out")))


def coboundary_bidialgebra(N: NovikovDialgebra, r: Tensor, star_sign: str = "plus") -> CoDialgebra:
    """``Δ_r(a) = ((L_⊣-L_⊢)(a)⊗id - id⊗(L_⊣+R_⊢)(a)) r`` and
    ``δ_r(a) = (id⊗L_⋆(a) + L_⊣(a)⊗id) τr``."""
    _check_r(N, r)
    ops = Operators(N, star_sign)
    act = ops.act
    tr = r.flip("tau")
    delta, Delta = {}, {}
    for i in range(N.dim):
        a = _g(i)
        Dv = act(ops.Ld - ops.Lv, a, r, 1) - act(ops.Ld + ops.Rv, a, r, 2)
        dv = act(ops.Ls, a, tr, 2) + act(ops.Ld, a, tr, 1)
        if Dv:
            Delta[i] = Dv
        if dv:
            delta[i] = dv
    return CoDialgebra(N.basis, delta, Delta)


def _pairs(r: Tensor):
    """``r = Σ a_i ⊗ b_i`` with ``a_i = c·e_p`` and ``b_i = e_q``."""
    return [(Tensor(1, {(p,): cf}), _g(q)) for (p, q), cf in sorted(r.terms.items())]


def _sum(ts, order: int) -> Tensor:
    out = _zero(order)
    for t in ts:
        out = out + t
    return out


def codialgebra_diagnostics(N: NovikovDialgebra, r: Tensor, star_sign: str = "plus") -> Report:
    """Six conditions on ``r`` equivalent to ``(δ_r, Δ_r)`` being a co-dialgebra."""
    _check_r(N, r)
    ops = Operators(N, star_sign)
    act, tp = ops.act, tensor_product
    Ld, Lv, Rd, Rv, Ls = ops.Ld, ops.Lv, ops.Rd, ops.Rv, ops.Ls
    LdRv, LdmLv, RdmRv = Ld + Rv, Ld - Lv, Rd - Rv
    tr = r.flip("tau")
    W = r - tr
    Nr, Ntr, Mtr = cdnybe_N(N, r), cdnybe_N(N, tr), cdnybe_M(N, tr)
    pairs = _pairs(r)

    def t23t12(X):
        return X.flip("tau12").flip("tau23")

    def t12t23(X):
        return X.flip("tau23").flip("tau12")

    def one_minus_t23(X):
        return X - X.flip("tau23")

    rep = Report("co-dialgebra conditions on r", names=N.names)
    axioms = tuple(f"{k}ncda" for k in range(1, 7))
    for ax in axioms:
        rep.declare(ax)
    for i in range(N.dim):
        a = _g(i)
        c1 = one_minus_t23(act(Ls, a, Nr.flip("tau13") - Ntr, 3)
                           + _sum((act(Ls, ai, tp(bi, act(Ld, a, W, 2)), 3) for ai, bi in pairs), 3))

        def amd(ai):
            return N.dashv(a, ai) - N.vdash(a, ai)

        c2 = (-act(Ls, a, t23t12(Nr), 3)
              + _sum((tp(bi, act(LdRv, amd(ai), W, 2)) for ai, bi in pairs), 3).flip("tau12")
              - act(LdRv, a, Mtr.flip("tau12"), 2)
              + _sum((act(Lv + Rd, bi, tp(ai, act(Ld, a, W, 1)), 2) for ai, bi in pairs), 3)
              - _sum((tp(act(Ld, amd(ai), W, 1), bi) for ai, bi in pairs), 3).flip("tau23"))
        inner3 = (t23t12(Mtr) + Mtr.flip("tau13") - Mtr
                  + _sum((tp(bi, act(Ld, ai, r, 2)) - tp(ai, act(Ld, bi, tr, 2))
                          for ai, bi in pairs), 3))
        c3 = (_sum((tp(act(Ld, amd(ai), W, 1) - act(LdRv, amd(ai), W, 2), bi)
                    for ai, bi in pairs), 3)
              + act(LdRv, a, inner3, 3))
        inner4 = (Mtr + Mtr.flip("tau23") - t12t23(Mtr)
                  + _sum((tp(act(Rv, bi, r, 1), ai) - tp(act(Rv, ai, tr, 1), bi)
                          for ai, bi in pairs), 3))
        c4 = (act(Ld, a, inner4, 1)
              + _sum((tp(bi, act(LdRv, ops.star(a, ai), W, 2) - act(Ld, ops.star(a, ai), W, 1))
                      for ai, bi in pairs), 3))
        inner5a = Ntr - Ntr.flip("tau12") + _sum((tp(act(-RdmRv, bi, W, 1), ai) for ai, bi in pairs), 3)
        inner5b = (t12t23(Nr) - Ntr.flip("tau23")
                   + _sum((tp(bi, act(Ld, ai, W, 1)) for ai, bi in pairs), 3))
        c5 = (act(Ld, a, inner5a, 1) + act(LdmLv, a, inner5b, 2)
              + _sum((act(Ls, ai, tp(bi, act(LdRv, a, W, 2)), 3) for ai, bi in pairs), 3))
        c6 = (act(LdmLv, a, Nr, 1)
              - _sum((tp(act(Rv, amd(ai), W, 1), bi) for ai, bi in pairs), 3)
              + _sum((act(RdmRv, ai, tp(act(Rv, a, W, 1), bi), 1) for ai, bi in pairs), 3)
              - act(LdmLv, a, Nr.flip("tau12"), 2)
              + _sum((tp(act(Rv, -amd(ai), W, 2) + act(RdmRv, ai, act(Rv, a, W, 2), 2), bi)
                      for ai, bi in pairs), 3)
              + _sum((act(LdRv, a, X - X.flip("tau12"), 3)
                      for X in (tp(ai, act(Ld, bi, W, 2)) for ai, bi in pairs)), 3))
        for ax, v in zip(axioms, (c1, c2, c3, c4, c5, c6)):
            rep.record(ax, (i,), v)
    return rep


NBDA = ("1nbda", "2nbda", "3nbda", "4nbda", "7nbda", "8nbda", "9nbda")


def bidialgebra_diagnostics(N: NovikovDialgebra, r: Tensor, star_sign: str = "plus") -> Report:
    """Compatibility conditions on ``W = r - τr`` for the coboundary pair."""
    _check_r(N, r)
    ops = Operators(N, star_sign)
    act = ops.act
    Ld, Rd, Rv, Ls = ops.Ld, ops.Rd, ops.Rv, ops.Ls
    LdRv, RvRd = Ld + Rv, Rv - Rd
    W = r - r.flip("tau")
    rep = Report("bi-dialgebra conditions on r", names=N.names)
    for ax in NBDA:
        rep.declare(ax)
    for i, j in product(range(N.dim), repeat=2):
        a, b = _g(i), _g(j)
        res = (
            act(Ld, a, act(LdRv, b, W, 2), 1),
            act(Ld, a, act(Ld, b, W, 2), 1),
            act(Rv, b, act(LdRv, a, W, 2), 1),
            act(Ls, a, act(Rv, b, W, 2) + act(RvRd, b, W, 1), 2),
            act(RvRd, b, act(Ld, a, W, 1) + act(Ls, a, W, 2), 1),
            (act(Ls, b, act(Ld, a, W, 2) + act(Ls, a, W, 1), 2)
             + act(LdRv, b, act(LdRv, a, W, 2), 1)),
            (act(Rv, b, act(Rv, a, W, 2), 1) + act(RvRd, a, act(RvRd, b, W, 2), 1)
             + act(Rd, b, act(Rv, a, W, 1), 1) - act(Rd, a, act(Rv, b, W, 1), 1)),
        )
        for ax, v in zip(NBDA, res):
            rep.record(ax, (i, j), v)
    return rep


def relcdn_check(N: NovikovDialgebra, r: Tensor) -> Report:
    """``[[r,r]] = -∂₁N(r) - ∂₃τ₁₃N(r)`` modulo ``∂^{⊗3}`` in the lifted algebra."""
    _check_r(N, r)
    if r != r.flip("tau"):
        raise PreconditionError("r must be symmetric")
    A = novikov_to_conformal(N)
    nr = cdnybe_N(N, r)
    lhs = clcybe(A, r, reduce=False)
    rhs = -nr.scale(D1) - nr.flip("tau13").scale(D3)
    rep = Report("CLCYBE versus CDNYBE", names=N.names)
    rep.declare("relcdn")
    rep.record("relcdn", (), (lhs - rhs).mod_total())
    rep.declare("N(r)=0")
    rep.record("N(r)=0", (), nr)
    rep.declare("[[r,r]]=0")
    rep.record("[[r,r]]=0", (), lhs.mod_total())
    return rep
