"""Built-in algebras and the four-dimensional example with parameters ``b``, ``c``."""

from __future__ import annotations

from .conformal import ConformalAlgebra, LeibnizAlgebra
from .novikov import NovikovDialgebra, novikov_to_conformal
from .novikov_bialgebra import CoDialgebra
from .poly import DEL, LAMBDA, Poly
from .tensor import ModuleBasis, Table, Tensor

__all__ = [
    "virasoro",
    "broken_virasoro",
    "rank1_abelian",
    "final_example_dialgebra",
    "final_example_conformal",
    "final_example_r",
    "final_example_printed_codialgebra",
    "final_example_printed_alpha",
    "leibniz_xxy",
    "builtin",
    "BUILTINS",
]

L, D = Poly.var(LAMBDA), Poly.var(DEL)
b, c = Poly.var("b"), Poly.var("c")
X, Y, XS, YS = 0, 1, 2, 3
FINAL_BASIS = ModuleBasis("A", ("x", "y", "x*", "y*"))


def virasoro() -> ConformalAlgebra:
    return ConformalAlgebra(ModuleBasis("Vir", ("L",)), Table({(0, 0): [(0, D + 2 * L)]}))


def broken_virasoro() -> ConformalAlgebra:
    return ConformalAlgebra(ModuleBasis("Vir3", ("L",)), Table({(0, 0): [(0, D + 3 * L)]}))


def rank1_abelian() -> ConformalAlgebra:
    return ConformalAlgebra(ModuleBasis("Ab", ("a",)), Table({}))


def leibniz_xxy() -> LeibnizAlgebra:
    """Two-dimensional Leibniz algebra with ``[x, x] = y``."""
    return LeibnizAlgebra(ModuleBasis("Lxy", ("x", "y")), Table({(0, 0): [(1, Poly.const(1))]}))


def final_example_dialgebra() -> NovikovDialgebra:
    xs_ys = [(XS, b), (YS, c)]
    vdash = {
        (Y, X): [(X, -b), (Y, b)],
        (X, X): [(X, -b), (Y, b)],
        (Y, Y): [(X, -c), (Y, c)],
        (X, Y): [(X, -c), (Y, c)],
        (XS, X): [(XS, b), (YS, b)],
        (YS, X): [(XS, -b), (YS, -b)],
        (XS, Y): [(XS, c), (YS, c)],
        (YS, Y): [(XS, -c), (YS, -c)],
        (Y, XS): xs_ys,
        (X, XS): xs_ys,
        (Y, YS): [(k, -p) for k, p in xs_ys],
        (X, YS): [(k, -p) for k, p in xs_ys],
    }
    dashv = {
        (X, XS): [(YS, c - b)],
        (X, YS): [(YS, b - c)],
        (Y, XS): [(XS, b - c)],
        (Y, YS): [(XS, c - b)],
    }
    return NovikovDialgebra(FINAL_BASIS, Table(dashv), Table(vdash))


def final_example_conformal() -> ConformalAlgebra:
    return novikov_to_conformal(final_example_dialgebra())


def _v(**kw) -> Tensor:
    return Tensor.vector({FINAL_BASIS.index(k.replace("_s", "*")): Poly.coerce(v) for k, v in kw.items()})


def _outer(u: Tensor, v: Tensor) -> Tensor:
    return Tensor(2, {(i, j): p * q for (i,), p in u.terms.items() for (j,), q in v.terms.items()})


def final_example_r() -> Tensor:
    """``(y*+x*)⊗(x-y) + (x-y)⊗(y*+x*)``."""
    s, d = _v(x_s=1, y_s=1), _v(x=1, y=-1)
    return _outer(s, d) + _outer(d, s)


def final_example_printed_codialgebra() -> CoDialgebra:
    """The (δ, Δ) pair exactly as listed with the example."""
    s, d = _v(x_s=1, y_s=1), _v(x=1, y=-1)
    dl = _outer(d, s).scale(-(c - b))
    Dl = _outer(s, d).scale(c - b)
    return CoDialgebra(FINAL_BASIS, {X: dl, Y: dl}, {X: Dl, Y: Dl})


def final_example_printed_alpha():
    """Listed co-bracket ``α(x) = α(y) = (c-b)(∂(y*+x*)⊗(x-y) + (y*+x*)⊗∂(x-y))``."""
    from .bialgebra import CoBracket

    s, d = _v(x_s=1, y_s=1), _v(x=1, y=-1)
    a = _outer(s, d).scale((c - b) * (Poly.var("D1") + Poly.var("D2")))
    return CoBracket(FINAL_BASIS, {X: a, Y: a})


BUILTINS = {
    "virasoro": virasoro,
    "rank1_abelian": rank1_abelian,
    "final_example_conformal": final_example_conformal,
}


def builtin(name: str) -> ConformalAlgebra:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
