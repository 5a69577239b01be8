"""Command line front end (``lconf``)."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import Sequence

from . import __version__
from .bialgebra import CoBracket, check_bialgebra, check_coalgebra, clcybe, coboundary_delta, coboundary_diagnostics
from .conformal import ConformalAlgebra, LeibnizAlgebra, check_jacobi, check_skew, current
from .corpus import BUILTINS
from .errors import PreconditionError
from .io import FormatError, dumps, from_document
from .novikov import (NovikovDialgebra, PermAlgebra, check_novikov, novikov_to_conformal,
                      perm_to_novikov)
from .novikov_bialgebra import (BiDialgebra, CoDialgebra, bidialgebra_diagnostics, cdnybe_N,
                                check_bi_dialgebra, check_co_dialgebra, coboundary_bidialgebra,
                                codialgebra_diagnostics, lift_bidialgebra, relcdn_check)
from .ooperators import LDCA, check_ldca
from .reps import MatchedPair, Representation, bicrossed, check_matched_pair, check_representation, dual_rep, semidirect
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4

CONSTRUCT_KINDS = ("current", "corresponding", "semidirect", "dual_rep", "coboundary",
                   "lift_bidialgebra", "bicrossed", "perm_novikov")


class _Inputs:
    """Loaded inputs plus a digest of their raw bytes."""

    def __init__(self, params: Sequence[str]):
        self.params = list(params)
        self.hash = hashlib.sha256()

    def load(self, token: str):
        if not os.path.exists(token) and token in BUILTINS:
            self.hash.update(f"builtin:{token}\0".encode())
            return BUILTINS[token]()
        try:
            with open(token, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read {token}: {exc.strerror}") from None
        self.hash.update(raw + b"\0")
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FormatError(f"{token}: invalid JSON: {exc}") from None
        return from_document(doc, self.params)

    @property
    def digest(self) -> str:
        return self.hash.hexdigest()


def _check(obj, star_sign: str, lie: bool) -> Report:
    if isinstance(obj, ConformalAlgebra):
        rep = check_jacobi(obj)
        if lie:
            rep.merge(check_skew(obj))
        return rep
    if isinstance(obj, LeibnizAlgebra):
        return obj.check()
    if isinstance(obj, NovikovDialgebra):
        return check_novikov(obj)
    if isinstance(obj, PermAlgebra):
        return obj.check()
    if isinstance(obj, CoDialgebra):
        return check_co_dialgebra(obj)
    if isinstance(obj, BiDialgebra):
        return check_bi_dialgebra(BiDialgebra(obj.algebra, obj.co, star_sign or obj.star_sign))
    if isinstance(obj, CoBracket):
        return check_coalgebra(obj)
    if isinstance(obj, Representation):
        return check_representation(obj)
    if isinstance(obj, MatchedPair):
        return check_matched_pair(obj)
    if isinstance(obj, LDCA):
        return check_ldca(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], ConformalAlgebra):
        return check_bialgebra(*obj)
    raise FormatError("this document kind has no check")


def _rmatrix(obj, basis_names) -> "Tensor":
    if not (isinstance(obj, tuple) and len(obj) == 2 and hasattr(obj[1], "order")):
        raise FormatError("second input must be an rmatrix document")
    B, t = obj
    if B.generators != tuple(basis_names):
        raise FormatError("r-matrix basis differs from the algebra basis")
    return t


def _construct(kind: str, objs: list, star_sign: str):
    """Return ``(object, serialisation kind)``."""
    def want(i, cls, what):
        if len(objs) <= i or not isinstance(objs[i], cls):
            raise FormatError(f"construct {kind} expects a {what} document as input {i + 1}")
        return objs[i]

    if kind == "current":
        return current(want(0, LeibnizAlgebra, "leibniz")), None
    if kind == "corresponding":
        return novikov_to_conformal(want(0, NovikovDialgebra, "novikov_dialgebra")), None
    if kind == "semidirect":
        return semidirect(want(0, Representation, "representation")), None
    if kind == "dual_rep":
        return dual_rep(want(0, Representation, "representation")), None
    if kind == "bicrossed":
        return bicrossed(want(0, MatchedPair, "matched_pair")), None
    if kind == "perm_novikov":
        return perm_to_novikov(want(0, PermAlgebra, "perm")), None
    if kind == "lift_bidialgebra":
        bd = want(0, BiDialgebra, "bidialgebra")
        return lift_bidialgebra(bd), "conformal_bialgebra"
    if kind == "coboundary":
        if len(objs) != 2:
            raise FormatError("construct coboundary expects an algebra and an rmatrix")
        alg = objs[0]
        if isinstance(alg, ConformalAlgebra):
            r = _rmatrix(objs[1], alg.names)
            return (alg, coboundary_delta(alg, r)), "conformal_bialgebra"
        if isinstance(alg, NovikovDialgebra):
            r = _rmatrix(objs[1], alg.names)
            return BiDialgebra(alg, coboundary_bidialgebra(alg, r, star_sign), star_sign), None
        raise FormatError("construct coboundary expects a leibniz_conformal or novikov_dialgebra document")
    raise FormatError(f"unknown construction {kind!r}")


def _ybe(which: str, objs: list) -> Report:
    alg, rm = objs
    if which == "clcybe":
        if isinstance(alg, NovikovDialgebra):
            alg = novikov_to_conformal(alg)
        if not isinstance(alg, ConformalAlgebra):
            raise FormatError("ybe clcybe expects a conformal algebra or a dialgebra")
        r = _rmatrix(rm, alg.names)
        rep = Report("CLCYBE", names=alg.names)
        rep.declare("[[r,r]]=0")
        rep.record("[[r,r]]=0", (), clcybe(alg, r))
        return rep
    if not isinstance(alg, NovikovDialgebra):
        raise FormatError("ybe cdnybe expects a novikov_dialgebra document")
    r = _rmatrix(rm, alg.names)
    rep = Report("CDNYBE", names=alg.names)
    rep.declare("N(r)=0")
    rep.record("N(r)=0", (), cdnybe_N(alg, r))
    return rep


def _diagnose(which: str, objs: list, star_sign: str) -> Report:
    alg, rm = objs
    r = _rmatrix(rm, getattr(alg, "names", ()))
    if which == "coboundary":
        if isinstance(alg, ConformalAlgebra):
            return coboundary_diagnostics(alg, r)
        if isinstance(alg, NovikovDialgebra):
            return codialgebra_diagnostics(alg, r, star_sign)
        raise FormatError("diagnose coboundary expects a conformal algebra or a dialgebra")
    if not isinstance(alg, NovikovDialgebra):
        raise FormatError(f"diagnose {which} expects a novikov_dialgebra document")
    if which == "bidialgebra":
        rep = codialgebra_diagnostics(alg, r, star_sign)
        return rep.merge(bidialgebra_diagnostics(alg, r, star_sign))
    return relcdn_check(alg, r)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write the report or constructed object to this file")
    common.add_argument("--params", default="", help="comma-separated parameter names, e.g. b,c")
    common.add_argument("--star-sign", choices=("plus", "minus"), default=None)

    p = argparse.ArgumentParser(prog="lconf", description="Exact checks for Leibniz conformal "
                                "algebras, Novikov dialgebras and their bialgebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="verify the axioms of a structure")
    c.add_argument("input")
    c.add_argument("--lie", action="store_true", help="also check skew-symmetry")
    k = sub.add_parser("construct", parents=[common], help="build a derived structure")
    k.add_argument("kind", choices=CONSTRUCT_KINDS)
    k.add_argument("inputs", nargs="+")
    y = sub.add_parser("ybe", parents=[common], help="evaluate a Yang-Baxter residual")
    y.add_argument("which", choices=("clcybe", "cdnybe"))
    y.add_argument("algebra")
    y.add_argument("rmatrix")
    d = sub.add_parser("diagnose", parents=[common], help="conditions on an r-matrix")
    d.add_argument("which", choices=("coboundary", "bidialgebra", "relcdn"))
    d.add_argument("algebra")
    d.add_argument("rmatrix")
    return p


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _machine(rep: Report, digest: str) -> str:
    doc = {
        "overall": "pass" if rep.passed else "fail",
        "title": rep.title,
        "items": [it.to_dict() for it in rep.items],
        "meta": {"tool_version": __version__, "input_hash": digest},
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    params = [s.strip() for s in args.params.split(",") if s.strip()]
    inputs = _Inputs(params)
    star = args.star_sign or "plus"
    try:
        if args.command == "construct":
            objs = [inputs.load(t) for t in args.inputs]
            obj, kind = _construct(args.kind, objs, star)
            _emit(dumps(obj, kind), args.out)
            return EXIT_PASS
        if args.command == "check":
            obj = inputs.load(args.input)
            rep = _check(obj, args.star_sign, args.lie)
        elif args.command == "ybe":
            rep = _ybe(args.which, [inputs.load(args.algebra), inputs.load(args.rmatrix)])
        else:
            rep = _diagnose(args.which, [inputs.load(args.algebra), inputs.load(args.rmatrix)], star)
    except FormatError as exc:
        print(f"lconf: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"lconf: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001 - last-resort exit code
        print(f"lconf: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = _machine(rep, inputs.digest) if args.format == "machine" else rep.format_text() + "\n"
    _emit(text, args.out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())
