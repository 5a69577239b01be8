"""JSON description files: reading, validation and canonical writing.

Every document is an object with a ``kind`` tag, an optional ``params`` list
and kind-specific fields.  Tables are keyed ``"left|right"`` and map to lists
of ``{"gen": name, "coefficient": polynomial}``; tensors are lists of
``{"gens": [names...], "coefficient": polynomial}``.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .bialgebra import CoBracket, ConformalLinearMap
from .conformal import ConformalAlgebra, LeibnizAlgebra
from .corpus import BUILTINS
from .novikov import NovikovDialgebra, PermAlgebra
from .novikov_bialgebra import STAR_SIGNS, BiDialgebra, CoDialgebra
from .ooperators import LDCA
from .poly import DEL, LAMBDA, Poly, PolyParseError, is_formal, parse_polynomial, slot
from .reps import MatchedPair, Representation
from .tensor import ModuleBasis, Table, Tensor

__all__ = ["FormatError", "load", "loads", "dump", "dumps", "to_document", "from_document", "KINDS"]

KINDS = (
    "leibniz_conformal",
    "leibniz",
    "novikov_dialgebra",
    "perm",
    "codialgebra",
    "bidialgebra",
    "cobracket",
    "conformal_bialgebra",
    "rmatrix",
    "representation",
    "matched_pair",
    "ldca",
    "linear_map",
)

CONF_VARS = (LAMBDA, DEL)
SCALAR_VARS: tuple[str, ...] = ()


class FormatError(ValueError):
    """Malformed description file."""


class _Ctx:
    def __init__(self, params: Iterable[str]):
        self.params = set(params)

    def poly(self, text: Any, allowed: Iterable[str], where: str) -> Poly:
        if isinstance(text, int) and not isinstance(text, bool):
            return Poly.const(text)
        if not isinstance(text, str):
            raise FormatError(f"{where}: coefficient must be a string")
        try:
            return parse_polynomial(text, self.params, allowed)
        except PolyParseError as exc:
            raise FormatError(f"{where}: {exc}") from None


def _need(doc: dict, key: str, typ=None):
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    v = doc[key]
    if typ is not None and not isinstance(v, typ):
        raise FormatError(f"field {key!r} has the wrong type")
    return v


def _basis(names: Any, label: str) -> ModuleBasis:
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise FormatError(f"{label}: basis must be a list of names")
    try:
        return ModuleBasis(label, tuple(names))
    except ValueError as exc:
        raise FormatError(f"{label}: {exc}") from None


def _index(basis: ModuleBasis, name: Any, where: str) -> int:
    if not isinstance(name, str) or name not in basis.generators:
        raise FormatError(f"{where}: unknown generator {name!r}")
    return basis.index(name)


def _read_table(raw: Any, left: ModuleBasis, right: ModuleBasis, out: ModuleBasis,
                ctx: _Ctx, allowed, label: str) -> Table:
    if raw is None:
        return Table({})
    if not isinstance(raw, dict):
        raise FormatError(f"{label}: table must be an object")
    entries = {}
    for key, lst in raw.items():
        parts = key.split("|")
        if len(parts) != 2:
            raise FormatError(f"{label}: key {key!r} must look like 'gen|gen'")
        i = _index(left, parts[0], label)
        j = _index(right, parts[1], label)
        if not isinstance(lst, list):
            raise FormatError(f"{label}[{key}]: value must be a list")
        vals = []
        for item in lst:
            if not isinstance(item, dict):
                raise FormatError(f"{label}[{key}]: entries must be objects")
            k = _index(out, item.get("gen"), f"{label}[{key}]")
            vals.append((k, ctx.poly(item.get("coefficient"), allowed, f"{label}[{key}]")))
        entries[(i, j)] = vals
    return Table(entries)


def _write_table(t: Table, left: ModuleBasis, right: ModuleBasis, out: ModuleBasis) -> dict:
    res = {}
    for (i, j) in sorted(t.entries):
        res[f"{left.generators[i]}|{right.generators[j]}"] = [
            {"gen": out.generators[k], "coefficient": str(p)} for k, p in t.entries[(i, j)]]
    return res


def _read_tensor(raw: Any, basis: ModuleBasis, order: int, ctx: _Ctx, allowed, label: str) -> Tensor:
    if not isinstance(raw, list):
        raise FormatError(f"{label}: tensor must be a list")
    acc: dict = {}
    for item in raw:
        if not isinstance(item, dict):
            raise FormatError(f"{label}: entries must be objects")
        gens = item.get("gens")
        if not isinstance(gens, list) or len(gens) != order:
            raise FormatError(f"{label}: 'gens' must list {order} generators")
        key = tuple(_index(basis, g, label) for g in gens)
        p = ctx.poly(item.get("coefficient"), allowed, label)
        acc[key] = acc.get(key, Poly.ZERO) + p
    return Tensor(order, acc)


def _write_tensor(t: Tensor, basis: ModuleBasis) -> list:
    return [{"gens": [basis.generators[i] for i in k], "coefficient": str(t.terms[k])}
            for k in sorted(t.terms)]


def _read_map(raw: Any, src: ModuleBasis, dst: ModuleBasis, ctx: _Ctx, allowed, label: str) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise FormatError(f"{label}: must be an object")
    out = {}
    for g, lst in raw.items():
        i = _index(src, g, label)
        if not isinstance(lst, list):
            raise FormatError(f"{label}[{g}]: value must be a list")
        out[i] = [(_index(dst, it.get("gen") if isinstance(it, dict) else None, label),
                   ctx.poly(it.get("coefficient"), allowed, label)) for it in lst]
    return out


def _write_map(m: dict, src: ModuleBasis, dst: ModuleBasis) -> dict:
    return {src.generators[i]: [{"gen": dst.generators[k], "coefficient": str(p)} for k, p in m[i] if p]
            for i in sorted(m) if any(p for _, p in m[i])}


def _read_comap(raw: Any, basis: ModuleBasis, ctx: _Ctx, allowed, label: str) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise FormatError(f"{label}: must be an object")
    out = {}
    for g, lst in raw.items():
        i = _index(basis, g, label)
        t = _read_tensor(lst, basis, 2, ctx, allowed, f"{label}[{g}]")
        if t:
            out[i] = t
    return out


def _write_comap(m, basis: ModuleBasis) -> dict:
    return {basis.generators[i]: _write_tensor(m[i], basis) for i in sorted(m) if m[i]}


# -- documents -------------------------------------------------------------

def from_document(doc: Any, params: Iterable[str] = ()):
    """Build the library object described by ``doc``."""
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    kind = _need(doc, "kind", str)
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    declared = doc.get("params", [])
    if not isinstance(declared, list) or not all(isinstance(p, str) for p in declared):
        raise FormatError("params must be a list of names")
    ctx = _Ctx(list(params) + declared)
    reader = _READERS[kind]
    try:
        return reader(doc, ctx)
    except FormatError:
        raise
    except (ValueError, KeyError) as exc:
        raise FormatError(f"{kind}: {exc}") from None


def _sub(doc: dict, key: str, ctx: _Ctx, kind: str):
    inner = _need(doc, key, dict)
    obj = from_document(inner, ctx.params)
    if kind and inner.get("kind") != kind and "builtin" not in inner:
        raise FormatError(f"field {key!r} must be a {kind} document")
    return obj


def _r_conformal(doc, ctx):
    if "builtin" in doc:
        name = doc["builtin"]
        if name not in BUILTINS:
            raise FormatError(f"unknown builtin {name!r}")
        return BUILTINS[name]()
    B = _basis(_need(doc, "basis"), doc.get("name", "Q"))
    tables = doc.get("tables", {})
    return ConformalAlgebra(B, _read_table(tables.get("bracket"), B, B, B, ctx, CONF_VARS, "bracket"))


def _r_leibniz(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "L"))
    tables = doc.get("tables", {})
    return LeibnizAlgebra(B, _read_table(tables.get("bracket"), B, B, B, ctx, SCALAR_VARS, "bracket"))


def _r_novikov(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "A"))
    tables = doc.get("tables", {})
    return NovikovDialgebra(B, _read_table(tables.get("dashv"), B, B, B, ctx, SCALAR_VARS, "dashv"),
                            _read_table(tables.get("vdash"), B, B, B, ctx, SCALAR_VARS, "vdash"))


def _r_perm(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "P"))
    tables = doc.get("tables", {})
    return PermAlgebra(B, _read_table(tables.get("product"), B, B, B, ctx, SCALAR_VARS, "product"),
                       _read_map(doc.get("derivation"), B, B, ctx, SCALAR_VARS, "derivation"))


def _r_codialgebra(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "A"))
    return CoDialgebra(B, _read_comap(doc.get("delta"), B, ctx, SCALAR_VARS, "delta"),
                       _read_comap(doc.get("Delta"), B, ctx, SCALAR_VARS, "Delta"))


def _r_bidialgebra(doc, ctx):
    N = _sub(doc, "algebra", ctx, "novikov_dialgebra")
    co = _sub(doc, "co", ctx, "codialgebra")
    sign = doc.get("star_sign", "plus")
    if sign not in STAR_SIGNS:
        raise FormatError(f"star_sign must be one of {STAR_SIGNS}")
    return BiDialgebra(N, co, sign)


def _r_cobracket(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "Q"))
    return CoBracket(B, _read_comap(doc.get("delta"), B, ctx, (slot(1), slot(2)), "delta"))


def _r_conformal_bialgebra(doc, ctx):
    A = _sub(doc, "algebra", ctx, "leibniz_conformal")
    c = _sub(doc, "cobracket", ctx, "cobracket")
    if c.space.generators != A.basis.generators:
        raise FormatError("co-bracket basis differs from the algebra basis")
    return A, CoBracket(A.basis, c.delta)


def _r_rmatrix(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "Q"))
    return B, _read_tensor(_need(doc, "tensor"), B, 2, ctx, (slot(1), slot(2)), "tensor")


def _r_representation(doc, ctx):
    A = _sub(doc, "algebra", ctx, "leibniz_conformal")
    Mb = _basis(_need(doc, "module"), doc.get("module_name", "M"))
    tables = doc.get("tables", {})
    l = _read_table(tables.get("l"), A.basis, Mb, Mb, ctx, CONF_VARS, "l")
    r = _read_table(tables.get("r"), A.basis, Mb, Mb, ctx, CONF_VARS, "r")
    return Representation(A, Mb, l, r)


def _r_matched_pair(doc, ctx):
    Q1 = _sub(doc, "Q1", ctx, "leibniz_conformal")
    Q2 = _sub(doc, "Q2", ctx, "leibniz_conformal")
    tables = doc.get("tables", {})
    t = lambda key, a, m: _read_table(tables.get(key), a.basis, m.basis, m.basis, ctx, CONF_VARS, key)
    lr = Representation(Q1, Q2.basis, t("l", Q1, Q2), t("r", Q1, Q2))
    pp = Representation(Q2, Q1.basis, t("phi", Q2, Q1), t("psi", Q2, Q1))
    return MatchedPair(Q1, Q2, lr, pp)


def _r_ldca(doc, ctx):
    B = _basis(_need(doc, "basis"), doc.get("name", "Q"))
    tables = doc.get("tables", {})
    return LDCA(B, _read_table(tables.get("left"), B, B, B, ctx, CONF_VARS, "left"),
                _read_table(tables.get("right"), B, B, B, ctx, CONF_VARS, "right"))


def _r_linear_map(doc, ctx):
    S = _basis(_need(doc, "source"), "source")
    T = _basis(_need(doc, "target"), "target")
    return ConformalLinearMap(S, T, _read_map(doc.get("entries"), S, T, ctx, CONF_VARS, "entries"))


_READERS = {
    "leibniz_conformal": _r_conformal,
    "leibniz": _r_leibniz,
    "novikov_dialgebra": _r_novikov,
    "perm": _r_perm,
    "codialgebra": _r_codialgebra,
    "bidialgebra": _r_bidialgebra,
    "cobracket": _r_cobracket,
    "conformal_bialgebra": _r_conformal_bialgebra,
    "rmatrix": _r_rmatrix,
    "representation": _r_representation,
    "matched_pair": _r_matched_pair,
    "ldca": _r_ldca,
    "linear_map": _r_linear_map,
}


def _params_of(*polys_sources) -> list[str]:
    names = set()
    for src in polys_sources:
        names |= {v for v in src if not is_formal(v)}
    return sorted(names)


def _head(kind: str, params: Iterable[str]) -> dict:
    doc = {"kind": kind}
    ps = sorted(set(params))
    if ps:
        doc["params"] = ps
    return doc


def to_document(obj, kind: str | None = None) -> dict:
    """Canonical document for a library object.

    ``kind`` disambiguates tuples: ``"conformal_bialgebra"`` for
    ``(algebra, co-bracket)`` and ``"rmatrix"`` for ``(basis, tensor)``.
    """
    if isinstance(obj, ConformalAlgebra):
        d = _head("leibniz_conformal", _params_of(obj.table.variables()))
        d.update(name=obj.basis.name, basis=list(obj.names),
                 tables={"bracket": _write_table(obj.table, obj.basis, obj.basis, obj.basis)})
        return d
    if isinstance(obj, LeibnizAlgebra):
        d = _head("leibniz", _params_of(obj.table.variables()))
        d.update(name=obj.basis.name, basis=list(obj.names),
                 tables={"bracket": _write_table(obj.table, obj.basis, obj.basis, obj.basis)})
        return d
    if isinstance(obj, NovikovDialgebra):
        B = obj.basis
        d = _head("novikov_dialgebra", _params_of(obj.left.variables() | obj.right.variables()))
        d.update(name=B.name, basis=list(B.generators),
                 tables={"dashv": _write_table(obj.left, B, B, B), "vdash": _write_table(obj.right, B, B, B)})
        return d
    if isinstance(obj, PermAlgebra):
        B = obj.basis
        pv = set(obj.table.variables())
        for lst in obj.derivation.values():
            for _, p in lst:
                pv |= p.variables()
        d = _head("perm", _params_of(pv))
        d.update(name=B.name, basis=list(B.generators), tables={"product": _write_table(obj.table, B, B, B)},
                 derivation=_write_map(obj.derivation, B, B))
        return d
    if isinstance(obj, CoDialgebra):
        B = obj.basis
        pv = set()
        for m in (obj.delta, obj.Delta):
            for t in m.values():
                pv |= t.variables()
        d = _head("codialgebra", _params_of(pv))
        d.update(name=B.name, basis=list(B.generators), delta=_write_comap(obj.delta, B),
                 Delta=_write_comap(obj.Delta, B))
        return d
    if isinstance(obj, BiDialgebra):
        a, c = to_document(obj.algebra), to_document(obj.co)
        d = _head("bidialgebra", a.get("params", []) + c.get("params", []))
        d.update(algebra=a, co=c, star_sign=obj.star_sign)
        return d
    if isinstance(obj, CoBracket):
        B = obj.space
        pv = set()
        for t in obj.delta.values():
            pv |= t.variables()
        d = _head("cobracket", _params_of(pv))
        d.update(name=B.name, basis=list(B.generators), delta=_write_comap(obj.delta, B))
        return d
    if isinstance(obj, Representation):
        a = to_document(obj.algebra)
        d = _head("representation", _params_of(obj.l.variables() | obj.r.variables()) + a.get("params", []))
        A, Mb = obj.algebra.basis, obj.module
        d.update(algebra=a, module_name=Mb.name, module=list(Mb.generators),
                 tables={"l": _write_table(obj.l, A, Mb, Mb), "r": _write_table(obj.r, A, Mb, Mb)})
        return d
    if isinstance(obj, MatchedPair):
        q1, q2 = to_document(obj.Q1), to_document(obj.Q2)
        tabs = {"l": (obj.lr.l, obj.Q1.basis, obj.Q2.basis), "r": (obj.lr.r, obj.Q1.basis, obj.Q2.basis),
                "phi": (obj.phipsi.l, obj.Q2.basis, obj.Q1.basis), "psi": (obj.phipsi.r, obj.Q2.basis, obj.Q1.basis)}
        pv = set()
        for t, _, _ in tabs.values():
            pv |= t.variables()
        d = _head("matched_pair", _params_of(pv) + q1.get("params", []) + q2.get("params", []))
        d.update(Q1=q1, Q2=q2, tables={k: _write_table(t, a, m, m) for k, (t, a, m) in tabs.items()})
        return d
    if isinstance(obj, LDCA):
        B = obj.basis
        d = _head("ldca", _params_of(obj.left.variables() | obj.right.variables()))
        d.update(name=B.name, basis=list(B.generators),
                 tables={"left": _write_table(obj.left, B, B, B), "right": _write_table(obj.right, B, B, B)})
        return d
    if isinstance(obj, ConformalLinearMap):
        pv = set()
        for lst in obj.entries.values():
            for _, p in lst:
                pv |= p.variables()
        d = _head("linear_map", _params_of(pv))
        d.update(source=list(obj.source.generators), target=list(obj.target.generators),
                 entries=_write_map(obj.entries, obj.source, obj.target))
        return d
    if kind == "conformal_bialgebra":
        A, c = obj
        a, cb = to_document(A), to_document(c)
        d = _head("conformal_bialgebra", a.get("params", []) + cb.get("params", []))
        d.update(algebra=a, cobracket=cb)
        return d
    if kind == "rmatrix":
        B, t = obj
        d = _head("rmatrix", _params_of(t.variables()))
        d.update(name=B.name, basis=list(B.generators), tensor=_write_tensor(t, B))
        return d
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def loads(text: str, params: Iterable[str] = ()):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_document(doc, params)


def load(path: str, params: Iterable[str] = ()):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), params)


def dumps(obj, kind: str | None = None) -> str:
    return json.dumps(to_document(obj, kind), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def dump(obj, path: str, kind: str | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, kind))
