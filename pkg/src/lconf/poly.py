"""Exact sparse multivariate polynomials over the rationals.

Free parameters (``b``, ``c``, ...) and formal variables (``L`` for lambda,
``M`` for mu, ``T`` for theta, ``X`` for xi, ``D``/``D1``/``D2``/... for the
derivation acting on a tensor slot) live in one flat commutative ring.  A
"scalar" is simply a polynomial that mentions parameters only.

Monomials are packed into Python integers with a fixed bit field per
registered variable, so multiplying monomials is integer addition.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Poly",
    "PolyParseError",
    "LAMBDA",
    "MU",
    "THETA",
    "XI",
    "DEL",
    "slot",
    "is_formal",
    "parse_polynomial",
    "reduce_mod_total",
    "substitute_affine",
]

LAMBDA, MU, THETA, XI, DEL = "L", "M", "T", "X", "D"
_FORMAL_FIXED = (LAMBDA, MU, THETA, XI, DEL)
_SLOT_RE = re.compile(r"^D([1-9][0-9]*)$")
_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")

_BITS = 16
_FIELD = (1 << _BITS) - 1
_MAX_EXP = 1 << (_BITS - 1)

_names: list[str] = []
_index: dict[str, int] = {}


def _var_index(name: str) -> int:
    i = _index.get(name)
    if i is None:
        if not _IDENT_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
        i = len(_names)
        _names.append(name)
        _index[name] = i
    return i


def slot(i: int) -> str:
    """Name of the derivation acting on tensor factor ``i`` (1-based)."""
    if i < 1:
        raise ValueError("slot indices are 1-based")
    return f"D{i}"


def is_formal(name: str) -> bool:
    """True for lambda/mu/theta/xi and derivation variables, False for parameters."""
    return name in _FORMAL_FIXED or bool(_SLOT_RE.match(name))


def _rank(name: str):
    if name in _FORMAL_FIXED:
        return (0, _FORMAL_FIXED.index(name), "")
    m = _SLOT_RE.match(name)
    if m:
        return (0, 4 + int(m.group(1)), "")
    if name.startswith("_"):
        return (2, 0, name)
    return (1, 0, name)


Number = Union[int, Fraction]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _unpack(mono: int) -> dict[int, int]:
    out = {}
    i = 0
    while mono:
        e = mono & _FIELD
        if e:
            out[i] = e
        mono >>= _BITS
        i += 1
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


class Poly:
    """Immutable canonical sparse polynomial with rational coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[int, Fraction] | None = None, _canonical: bool = False):
        if terms is None:
            self._t = {}
        elif _canonical:
            self._t = terms
        else:
            self._t = {m: _to_fraction(c) for m, c in terms.items() if c}
        self._h = None

    # construction
    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = _to_fraction(c)
        return cls({0: c}, True) if c else ZERO

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({1 << (_BITS * _var_index(name)): Fraction(1)}, True)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "Poly":
        m = 0
        for name, e in exps.items():
            if e < 0 or e >= _MAX_EXP:
                raise ValueError("exponent out of range")
            if e:
                m += e << (_BITS * _var_index(name))
        c = _to_fraction(coeff)
        return cls({m: c}, True) if c else ZERO

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        if isinstance(x, str):
            return Poly.var(x)
        raise TypeError(f"cannot coerce {x!r} to Poly")

    # inspection
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> Fraction:
        return self._t.get(0, Fraction(0))

    def variables(self) -> set[str]:
        seen = 0
        for m in self._t:
            seen |= m
        out = set()
        i = 0
        while seen:
            if seen & _FIELD:
                out.add(_names[i])
            seen >>= _BITS
            i += 1
        return out

    def formal_variables(self) -> set[str]:
        return {v for v in self.variables() if is_formal(v)}

    def parameters(self) -> set[str]:
        return {v for v in self.variables() if not is_formal(v)}

    def degree(self, name: str | None = None) -> int:
        if not self._t:
            return -1
        if name is None:
            return max(sum(_unpack(m).values()) for m in self._t)
        i = _index.get(name)
        if i is None:
            return 0
        sh = _BITS * i
        return max((m >> sh) & _FIELD for m in self._t)

    def terms(self) -> list[tuple[dict[str, int], Fraction]]:
        """Terms as (exponent map, coefficient) in canonical print order."""
        out = [({_names[i]: e for i, e in _unpack(m).items()}, c) for m, c in self._t.items()]
        out.sort(key=lambda t: _term_key(t[0]))
        return out

    def split(self, names: Iterable[str]) -> dict[tuple[int, ...], "Poly"]:
        """View as a polynomial in ``names`` with coefficients in the other variables."""
        names = list(names)
        idx = [_index.get(n) for n in names]
        mask = 0
        for i in idx:
            if i is not None:
                mask |= _FIELD << (_BITS * i)
        groups: dict[tuple[int, ...], dict] = {}
        for m, c in self._t.items():
            key = tuple(0 if i is None else (m >> (_BITS * i)) & _FIELD for i in idx)
            groups.setdefault(key, {})[m & ~mask] = c
        return {k: Poly(v, True) for k, v in groups.items()}

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if not other._t:
            return self
        if not self._t:
            return other
        out = dict(self._t)
        for m, c in other._t.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out, True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._t.items()}, True)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly({m: c * other for m, c in self._t.items()}, True)
        other = Poly.coerce(other)
        if not self._t or not other._t:
            return ZERO
        if len(other._t) == 1 and 0 in other._t:
            return self * other._t[0]
        if len(self._t) == 1 and 0 in self._t:
            return other * self._t[0]
        return Poly(_mul_terms(self._t, other._t), True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if not other.is_constant() or not other:
            raise ZeroDivisionError("division only by nonzero constants")
        inv = 1 / other.constant_term()
        return self * inv

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("nonnegative integer exponents only")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # substitution
    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution of variables by polynomials."""
        items = []
        mask = 0
        for name, val in mapping.items():
            i = _index.get(name)
            if i is None:
                continue
            items.append((i, Poly.coerce(val)))
            mask |= _FIELD << (_BITS * i)
        if not items or not self._t:
            return self
        groups: dict[tuple[int, ...], dict] = {}
        for m, c in self._t.items():
            if not m & mask:
                groups.setdefault((), {})[m] = c
                continue
            key = tuple((m >> (_BITS * i)) & _FIELD for i, _ in items)
            groups.setdefault(key, {})[m & ~mask] = c
        powers: dict[tuple[int, int], Poly] = {}
        out = ZERO
        for key, rest in groups.items():
            term = Poly(rest, True)
            if key:
                for (i, p), e in zip(items, key):
                    if e:
                        pw = powers.get((i, e))
                        if pw is None:
                            pw = powers[(i, e)] = p ** e
                        term = term * pw
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.subs({k: Poly.var(v) for k, v in mapping.items()})

    # printing
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms():
            names = sorted(exps, key=lambda n: (is_formal(n), _rank(n)))
            body = "*".join(n if exps[n] == 1 else f"{n}^{exps[n]}" for n in names)
            neg = c < 0
            a = -c if neg else c
            if body:
                txt = body if a == 1 else f"{_fmt(a)}*{body}"
            else:
                txt = _fmt(a)
            parts.append(("-" if neg else "+", txt))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, txt in parts[1:]:
            s += f" {sign} {txt}"
        return s

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_key(exps: Mapping[str, int]):
    names = sorted(exps, key=_rank)
    total = sum(exps.values())
    return (-total, [(_rank(n), -exps[n]) for n in names])


ZERO = Poly({}, True)
ONE = Poly({0: Fraction(1)}, True)
Poly.ZERO = ZERO
Poly.ONE = ONE


class PolyParseError(ValueError):
    """Raised for malformed polynomial text; ``position`` is 0-based when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at column {position + 1})")
        self.position = position


def parse_polynomial(text: str, declared_params: Iterable[str] | None = None,
                     allowed_vars: Iterable[str] | None = None) -> Poly:
    """Parse ``text`` in the grammar ``p/q``, identifiers, ``+ - * ^`` and parentheses.

    ``declared_params``/``allowed_vars`` restrict the accepted identifiers;
    ``None`` accepts anything of the matching kind.
    """
    params = None if declared_params is None else set(declared_params)
    allowed = None if allowed_vars is None else set(allowed_vars)
    if "**" in text:
        raise PolyParseError("use '^' for powers", text.index("**"))
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip() or "0", mode="eval")
    except SyntaxError as exc:
        off = (exc.offset or 1) - 1
        raise PolyParseError(f"syntax error: {exc.msg}", off) from None

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return Poly.const(node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if is_formal(name):
                if allowed is not None and name not in allowed:
                    raise PolyParseError(f"variable {name!r} not allowed here", node.col_offset)
            elif params is not None and name not in params:
                raise PolyParseError(f"undeclared parameter {name!r}", node.col_offset)
            return Poly.var(name)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int):
                    raise PolyParseError("exponent must be a nonnegative integer literal",
                                         node.right.col_offset)
                return left ** node.right.value
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or not right:
                    raise PolyParseError("division only by nonzero rational constants",
                                         node.right.col_offset)
                return left / right
        raise PolyParseError("unsupported syntax", getattr(node, "col_offset", None))

    return walk(tree)


def substitute_affine(p: Poly, mapping: Mapping[str, object],
                      allowed_vars: Iterable[str] | None = None) -> Poly:
    """Simultaneous substitution restricted to affine images.

    Raises ``ValueError`` when an image is not of degree <= 1 or mentions a
    formal variable outside ``allowed_vars``.
    """
    allowed = None if allowed_vars is None else set(allowed_vars)
    images = {}
    for name, img in mapping.items():
        img = Poly.coerce(img)
        for exps, _ in img.terms():
            if sum(e for n, e in exps.items() if is_formal(n)) > 1:
                raise ValueError(f"image of {name} is not affine")
        if allowed is not None:
            extra = img.formal_variables() - allowed
            if extra:
                raise ValueError(f"substitution introduces undeclared variables {sorted(extra)}")
        images[name] = img
    return p.subs(images)


def reduce_mod_total(p: Poly, slots: Iterable[str]) -> Poly:
    """Canonical representative modulo the sum of ``slots`` (last slot eliminated)."""
    slots = list(slots)
    if len(slots) < 2:
        raise ValueError("need at least two slot variables")
    last = slots[-1]
    image = ZERO
    for s in slots[:-1]:
        image = image - Poly.var(s)
    return p.subs({last: image})
