"""Free k[∂]-modules, their tensor powers and the slot-contraction engine.

A :class:`Tensor` of order ``s`` maps generator multi-indices to polynomials
in the slot variables ``D1..Ds`` (plus free variables such as ``L``/``M`` and
parameters).  Every bilinear conformal operation in the package (brackets,
representation actions, dendriform products, plain Novikov products) is a
:class:`Table` of structure polynomials in ``L`` (the spectral variable) and
``D`` (the derivation of the result), and is applied through
:func:`contract`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .poly import DEL, LAMBDA, ONE, ZERO, Poly, reduce_mod_total, slot

__all__ = [
    "ModuleBasis",
    "Tensor",
    "Table",
    "contract",
    "apply_map",
    "apply_comap",
    "tensor_product",
    "conformal_pair",
    "FLIPS",
]


@dataclass(frozen=True)
class ModuleBasis:
    """Ordered generator names of a free finite-rank k[∂]-module."""

    name: str
    generators: tuple[str, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a basis needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, gen: str) -> int:
        try:
            return self.generators.index(gen)
        except ValueError:
            raise KeyError(f"unknown generator {gen!r} in basis {self.name}") from None

    def dual(self) -> "ModuleBasis":
        """Conformal dual basis; generator ``g`` is paired with ``g*``."""
        names = tuple(g[:-1] if g.endswith("*") else g + "*" for g in self.generators)
        return ModuleBasis(self.name + "*c", names)

    def concat(self, other: "ModuleBasis", name: str | None = None) -> "ModuleBasis":
        """Direct sum; names of ``other`` that clash get primes appended."""
        taken = set(self.generators)
        extra = []
        for g in other.generators:
            while g in taken:
                g += "'"
            taken.add(g)
            extra.append(g)
        return ModuleBasis(name or f"{self.name}+{other.name}", self.generators + tuple(extra))


def _slot_vars(s: int) -> list[str]:
    return [slot(i) for i in range(1, s + 1)]


class Tensor:
    """Element of the ``order``-fold tensor power of a free k[∂]-module."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[tuple[int, ...], Poly] | None = None):
        if order < 1:
            raise ValueError("tensor order must be >= 1")
        self.order = order
        clean = {}
        if terms:
            for k, v in terms.items():
                if len(k) != order:
                    raise ValueError("index length does not match order")
                v = Poly.coerce(v)
                if v:
                    clean[tuple(k)] = v
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> "Tensor":
        return cls(order)

    @classmethod
    def gen(cls, *idx: int, coeff=ONE) -> "Tensor":
        return cls(len(idx), {tuple(idx): Poly.coerce(coeff)})

    @classmethod
    def vector(cls, coeffs: Mapping[int, Poly]) -> "Tensor":
        """Order-1 element from generator index -> polynomial in ``D1``."""
        return cls(1, {(i,): p for i, p in coeffs.items()})

    # linear structure
    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Tensor._raw(self.order, out)

    def __neg__(self) -> "Tensor":
        return Tensor._raw(self.order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, p) -> "Tensor":
        p = Poly.coerce(p)
        return Tensor(self.order, {k: v * p for k, v in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Tensor"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    @classmethod
    def _raw(cls, order, terms) -> "Tensor":
        t = cls.__new__(cls)
        t.order = order
        t.terms = terms
        return t

    # coefficient maps
    def map_coeffs(self, fn) -> "Tensor":
        return Tensor(self.order, {k: fn(v) for k, v in self.terms.items()})

    def subs(self, mapping: Mapping[str, object]) -> "Tensor":
        return self.map_coeffs(lambda p: p.subs(mapping))

    def variables(self) -> set[str]:
        out = set()
        for v in self.terms.values():
            out |= v.variables()
        return out

    # k[∂] action and symmetries
    def apply_partial(self, i: int) -> "Tensor":
        if not 1 <= i <= self.order:
            raise IndexError(f"slot {i} out of range for order {self.order}")
        d = Poly.var(slot(i))
        return Tensor._raw(self.order, {k: v * d for k, v in self.terms.items()})

    def total_partial(self) -> "Tensor":
        d = ZERO
        for v in _slot_vars(self.order):
            d = d + Poly.var(v)
        return self.scale(d)

    def permute(self, source: Sequence[int]) -> "Tensor":
        """Result slot ``k`` (0-based) carries old slot ``source[k]``."""
        if sorted(source) != list(range(self.order)):
            raise ValueError(f"{source!r} is not a permutation of order {self.order}")
        ren = {slot(old + 1): Poly.var(slot(new + 1)) for new, old in enumerate(source)
               if old != new}
        out = {}
        for k, v in self.terms.items():
            out[tuple(k[o] for o in source)] = v.subs(ren) if ren else v
        return Tensor._raw(self.order, out)

    def flip(self, name: str) -> "Tensor":
        try:
            src = FLIPS[(name, self.order)]
        except KeyError:
            raise ValueError(f"flip {name} not applicable to order {self.order}") from None
        return self.permute(src)

    def mod_total(self) -> "Tensor":
        if self.order < 2:
            raise ValueError("mod_total needs order >= 2")
        sv = _slot_vars(self.order)
        return Tensor(self.order, {k: reduce_mod_total(v, sv) for k, v in self.terms.items()})

    def is_symmetric(self) -> bool:
        if self.order != 2:
            raise ValueError("symmetry is defined for order 2")
        return self == self.flip("tau")

    # presentation
    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            gens = "⊗".join(names[i] if names else f"e{i}" for i in k)
            parts.append(f"({self.terms[k]})*{gens}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Tensor({self.order}, {self.format()})"


FLIPS = {
    ("tau", 2): (1, 0),
    ("tau12", 2): (1, 0),
    ("tau12", 3): (1, 0, 2),
    ("tau23", 3): (0, 2, 1),
    ("tau13", 3): (2, 1, 0),
}


class Table:
    """Bilinear conformal operation on generators.

    ``entries[(i, j)]`` is a list of ``(k, P)`` meaning ``e_i ∘_λ e_j = Σ P(L, D) e_k``.
    Arguments extend sesquilinearly: ``f(∂)e_i ∘_λ g(∂)e_j = f(-λ) g(λ+∂) (e_i ∘_λ e_j)``.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[tuple[int, int], Iterable[tuple[int, Poly]]] | None = None):
        acc: dict[tuple[int, int], dict[int, Poly]] = {}
        for key, lst in (entries or {}).items():
            slot_acc = acc.setdefault(tuple(key), {})
            for k, p in lst:
                slot_acc[k] = slot_acc.get(k, ZERO) + Poly.coerce(p)
        self.entries = {
            key: sorted((k, p) for k, p in d.items() if p)
            for key, d in acc.items()
        }
        self.entries = {k: v for k, v in self.entries.items() if v}

    def get(self, i: int, j: int) -> list[tuple[int, Poly]]:
        return self.entries.get((i, j), [])

    def __add__(self, other: "Table") -> "Table":
        merged: dict = {}
        for t in (self, other):
            for key, lst in t.entries.items():
                merged.setdefault(key, []).extend(lst)
        return Table(merged)

    def __neg__(self) -> "Table":
        return Table({k: [(i, -p) for i, p in v] for k, v in self.entries.items()})

    def __sub__(self, other: "Table") -> "Table":
        return self + (-other)

    def scale(self, c) -> "Table":
        c = Poly.coerce(c)
        return Table({k: [(i, p * c) for i, p in v] for k, v in self.entries.items()})

    def map_polys(self, fn) -> "Table":
        return Table({k: [(i, fn(p)) for i, p in v] for k, v in self.entries.items()})

    def transpose_args(self) -> "Table":
        """Swap argument order without touching the polynomials."""
        return Table({(j, i): v for (i, j), v in self.entries.items()})

    def reindex(self, left: Mapping[int, int], right: Mapping[int, int],
                out: Mapping[int, int]) -> "Table":
        return Table({(left[i], right[j]): [(out[k], p) for k, p in v]
                      for (i, j), v in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Table) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset((k, tuple(v)) for k, v in self.entries.items()))

    def is_zero(self) -> bool:
        return not self.entries

    def variables(self) -> set[str]:
        out = set()
        for v in self.entries.values():
            for _, p in v:
                out |= p.variables()
        return out

    def product(self, a: Tensor, b: Tensor, at=LAMBDA) -> Tensor:
        """Order-1 convenience: ``a ∘_at b``."""
        return contract(self, a, 1, b, 1, at, ("out",))


def _parse_layout(layout: Sequence[str], sa: int, sb: int):
    if len(layout) != sa + sb - 1:
        raise ValueError("layout length must be order(A)+order(B)-1")
    pos = {}
    for k, tok in enumerate(layout):
        if tok == "out":
            pos["out"] = k
        else:
            side, num = tok[0], int(tok[1:])
            pos[(side, num)] = k
    if "out" not in pos:
        raise ValueError("layout needs an 'out' slot")
    return pos


def contract(table: Table, A: Tensor, ia: int, B: Tensor, ib: int, at, layout: Sequence[str]) -> Tensor:
    """Apply ``table`` to slot ``ia`` of ``A`` (left argument) and slot ``ib`` of ``B``.

    ``at`` is the spectral argument written in the variables of the result;
    ``layout`` lists the result slots as ``"a<k>"``, ``"b<k>"`` (1-based slots
    of the inputs) and one ``"out"``.  Substitutions happen after the
    full bilinear expansion, so ``at`` may mention result slot variables.
    """
    at = Poly.coerce(at)
    pos = _parse_layout(layout, A.order, B.order)
    order = len(layout)
    dout = Poly.var(slot(pos["out"] + 1))
    map_a: dict[str, Poly] = {slot(ia): -at}
    map_b: dict[str, Poly] = {slot(ib): at + dout}
    src_a, src_b = [], []
    for p in range(1, A.order + 1):
        if p != ia:
            k = pos[("a", p)]
            src_a.append((p - 1, k))
            if k + 1 != p:
                map_a[slot(p)] = Poly.var(slot(k + 1))
    for q in range(1, B.order + 1):
        if q != ib:
            k = pos[("b", q)]
            src_b.append((q - 1, k))
            if k + 1 != q:
                map_b[slot(q)] = Poly.var(slot(k + 1))
    out_k = pos["out"]
    tmap = {LAMBDA: at, DEL: dout}
    tcache: dict[tuple[int, int], list] = {}
    b_terms = [(J, g.subs(map_b)) for J, g in B.terms.items()]
    acc: dict[tuple[int, ...], Poly] = {}
    base = [0] * order
    for I, f in A.terms.items():
        fs = f.subs(map_a)
        i = I[ia - 1]
        for J, gs in b_terms:
            key = (i, J[ib - 1])
            ent = tcache.get(key)
            if ent is None:
                ent = tcache[key] = [(k, P.subs(tmap)) for k, P in table.get(*key)]
            if not ent:
                continue
            fg = fs * gs
            if not fg:
                continue
            idx = list(base)
            for p, k in src_a:
                idx[k] = I[p]
            for q, k in src_b:
                idx[k] = J[q]
            for k, P in ent:
                idx[out_k] = k
                t = tuple(idx)
                acc[t] = acc.get(t, ZERO) + fg * P
    return Tensor(order, acc)


def apply_map(T: Mapping[int, Iterable[tuple[int, Poly]]], A: Tensor, pos: int) -> Tensor:
    """Apply a k[∂]-module map (entries polynomials in ``D``) to slot ``pos`` of ``A``."""
    d = slot(pos)
    cache = {i: [(k, p.subs({DEL: Poly.var(d)})) for k, p in lst] for i, lst in T.items()}
    acc: dict = {}
    for I, f in A.terms.items():
        for k, p in cache.get(I[pos - 1], ()):
            J = I[: pos - 1] + (k,) + I[pos:]
            acc[J] = acc.get(J, ZERO) + f * p
    return Tensor(A.order, acc)


def apply_comap(delta: Mapping[int, Tensor], A: Tensor, pos: int) -> Tensor:
    """Apply a k[∂]-linear co-multiplication to slot ``pos``; order grows by one."""
    s = A.order
    shift_a = {slot(p): Poly.var(slot(p + 1)) for p in range(pos + 1, s + 1)}
    shift_a[slot(pos)] = Poly.var(slot(pos)) + Poly.var(slot(pos + 1))
    ren_d = {slot(1): Poly.var(slot(pos)), slot(2): Poly.var(slot(pos + 1))}
    dcache = {i: [(K, c.subs(ren_d)) for K, c in t.terms.items()] for i, t in delta.items()}
    acc: dict = {}
    for I, f in A.terms.items():
        lst = dcache.get(I[pos - 1])
        if not lst:
            continue
        fs = f.subs(shift_a)
        for K, c in lst:
            J = I[: pos - 1] + K + I[pos:]
            acc[J] = acc.get(J, ZERO) + fs * c
    return Tensor(s + 1, acc)


def tensor_product(A: Tensor, B: Tensor) -> Tensor:
    shift = {slot(q): Poly.var(slot(q + A.order)) for q in range(1, B.order + 1)}
    bt = [(J, g.subs(shift)) for J, g in B.terms.items()]
    return Tensor(A.order + B.order, {I + J: f * g for I, f in A.terms.items() for J, g in bt})


def conformal_pair(f: Tensor, u: Tensor, at=LAMBDA) -> Poly:
    """``⟨f, u⟩_at`` for ``f`` over a dual basis and ``u`` over the primal one.

    Uses ``⟨∂f, u⟩ = -at⟨f, u⟩`` and ``⟨f, ∂u⟩ = at⟨f, u⟩`` with ``⟨a_i, a^j⟩ = δ_ij``.
    """
    if f.order != u.order:
        raise ValueError("pairing needs equal orders")
    ats = [Poly.coerce(at)] if f.order == 1 else [Poly.coerce(x) for x in at]
    mf = {slot(i + 1): -a for i, a in enumerate(ats)}
    mu = {slot(i + 1): a for i, a in enumerate(ats)}
    total = ZERO
    for I, p in f.terms.items():
        q = u.terms.get(I)
        if q is not None:
            total = total + p.subs(mf) * q.subs(mu)
    return total
