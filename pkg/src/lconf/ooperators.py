"""O-operators, Leibniz-dendriform conformal algebras and symmetric CLCYBE solutions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bialgebra import ConformalLinearMap
from .conformal import ConformalAlgebra, gen, op, right_table
from .errors import PreconditionError
from .poly import DEL, LAMBDA, ONE, ZERO, Poly
from .report import Report
from .reps import Representation, dual_rep, semidirect
from .tensor import ModuleBasis, Table, Tensor, apply_map

__all__ = [
    "LDCA",
    "check_ldca",
    "ldca_to_lca",
    "check_o_operator",
    "o_operator_to_ldca",
    "identity_map",
    "eta",
    "embed_symmetric_solution",
]

L, M = Poly.var(LAMBDA), Poly.var("M")
D, D1, D2 = Poly.var(DEL), Poly.var("D1"), Poly.var("D2")


@dataclass(frozen=True)
class LDCA:
    """Two λ-products: ``left`` is ◁ and ``right`` is ▷."""

    basis: ModuleBasis
    left: Table
    right: Table

    @property
    def names(self):
        return self.basis.generators


def check_ldca(X: LDCA) -> Report:
    lt, rt = X.left, X.right
    both = lt + rt
    rep = Report("Leibniz-dendriform identities", names=X.names)
    for ax in ("ldca1", "ldca2", "ldca3"):
        rep.declare(ax)
    for i, j, k in product(range(X.basis.rank), repeat=3):
        a, b, c = gen(i), gen(j), gen(k)
        a_r_b, a_l_b = op(rt, a, b, L), op(lt, a, b, L)
        r1 = (op(rt, a, op(both, b, c, M), L) - op(rt, a_r_b, c, L + M)
              - op(lt, b, op(rt, a, c, L), M))
        r2 = (op(lt, a, op(rt, b, c, M), L) - op(rt, a_l_b, c, L + M)
              - op(rt, b, op(both, a, c, L), M))
        r3 = (op(lt, a, op(lt, b, c, M), L) - op(lt, a_r_b + a_l_b, c, L + M)
              - op(lt, b, op(lt, a, c, L), M))
        rep.record("ldca1", (i, j, k), r1)
        rep.record("ldca2", (i, j, k), r2)
        rep.record("ldca3", (i, j, k), r3)
    return rep


def ldca_to_lca(X: LDCA, verify: bool = True) -> tuple[ConformalAlgebra, Representation]:
    """Sum bracket and the representation ``(L_◁, R_▷)`` of it on itself."""
    if verify:
        rep = check_ldca(X)
        if not rep.passed:
            raise PreconditionError("LDCA identities fail:\n" + rep.format_text())
    A = ConformalAlgebra(X.basis, X.left + X.right)
    return A, Representation(A, X.basis, X.left, right_table(X.right))


def identity_map(basis: ModuleBasis) -> ConformalLinearMap:
    return ConformalLinearMap(basis, basis, {i: [(i, ONE)] for i in range(basis.rank)})


def _require_plain(A: ConformalAlgebra, rep: Representation, T: ConformalLinearMap):
    if not T.is_lambda_free():
        raise PreconditionError("O-operators must not depend on λ")
    if T.source != rep.module or T.target != A.basis:
        raise ValueError("T must map the module basis into the algebra basis")


def check_o_operator(A: ConformalAlgebra, rep: Representation, T: ConformalLinearMap) -> Report:
    _require_plain(A, rep, T)
    tmap = T.module_map()
    out = Report("O-operator", names=rep.module.generators)
    out.declare("oeq")
    m = rep.module.rank
    images = [T.apply(gen(i), 0) for i in range(m)]
    for i, j in product(range(m), repeat=2):
        x, y = gen(i), gen(j)
        lhs = A.bracket(images[i], images[j], L)
        inner = op(rep.l, images[i], y, L) + op(rep.r, images[j], x, -L - D1)
        out.record("oeq", (i, j), lhs - apply_map(tmap, inner, 1))
    return out


def _as_table(values: dict) -> Table:
    return Table({key: [(k, p.subs({"D1": D})) for (k,), p in v.terms.items()]
                  for key, v in values.items()})


def o_operator_to_ldca(A: ConformalAlgebra, rep: Representation, T: ConformalLinearMap,
                       verify: bool = True) -> LDCA:
    """``x◁_λ y = l(Tx)_λ y`` and ``x▷_λ y = r(Ty)_{-λ-∂} x``."""
    if verify:
        chk = check_o_operator(A, rep, T)
        if not chk.passed:
            raise PreconditionError("not an O-operator:\n" + chk.format_text())
    else:
        _require_plain(A, rep, T)
    m = rep.module.rank
    images = [T.apply(gen(i), 0) for i in range(m)]
    left, right = {}, {}
    for i, j in product(range(m), repeat=2):
        left[(i, j)] = op(rep.l, images[i], gen(j), L)
        right[(i, j)] = op(rep.r, images[j], gen(i), -L - D1)
    return LDCA(rep.module, _as_table(left), _as_table(right))


def eta(T: ConformalLinearMap, offset: int | None = None) -> Tensor:
    """Tensor in ``M*c ⊗ Q``: entry ``g(λ, ∂)`` of ``T(v_i) ∋ a_j`` becomes
    ``g(-∂₁-∂₂, ∂₂) v*_i⊗a^j``.

    Indices follow the ambient basis ``Q ⊕ M*c``: ``a^j`` is ``j`` and ``v*_i``
    is ``offset + i`` (default: rank of the target).
    """
    off = T.target.rank if offset is None else offset
    sub = {LAMBDA: -D1 - D2, DEL: D2}
    acc: dict = {}
    for i, lst in T.entries.items():
        for j, g in lst:
            key = (off + i, j)
            acc[key] = acc.get(key, ZERO) + g.subs(sub)
    return Tensor(2, acc)


def embed_symmetric_solution(A: ConformalAlgebra, rep: Representation,
                             T: ConformalLinearMap) -> tuple[ConformalAlgebra, Tensor]:
    """Ambient algebra ``Q ⋉ M*c`` and ``r = η(T) + τη(T)``."""
    _require_plain(A, rep, T)
    ambient = semidirect(dual_rep(rep))
    e = eta(T, A.rank)
    return ambient, e + e.flip("tau")
