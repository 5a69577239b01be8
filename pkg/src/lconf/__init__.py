"""Exact verification of Leibniz conformal (bi)algebras and Novikov (bi-)dialgebras."""

__version__ = "0.1.0"

from .errors import PreconditionError
from .poly import Poly, PolyParseError, parse_polynomial, reduce_mod_total
from .tensor import ModuleBasis, Table, Tensor, contract
from .report import Item, Report
from .conformal import (ConformalAlgebra, LeibnizAlgebra, bracket_eval, check_jacobi, check_skew,
                        current, right_table)
from .reps import (ConformalBilinearForm, MatchedPair, Representation, bicrossed, check_invariance,
                   check_manin_triple, check_matched_pair, check_representation, dual_action, dual_rep,
                   regular_rep, semidirect, standard_form)
from .bialgebra import (CoBracket, ConformalLinearMap, F_action, check_bialgebra, check_coalgebra,
                        clcybe, coboundary_delta, coboundary_diagnostics, dualize_algebra,
                        dualize_coalgebra, induced_dual_bracket, is_invariant, operator_form_check, sigma)
from .ooperators import (LDCA, check_ldca, check_o_operator, embed_symmetric_solution, eta,
                         identity_map, ldca_to_lca, o_operator_to_ldca)
from .novikov import (NovikovDialgebra, PermAlgebra, check_novikov, check_right_novikov,
                      convert_left_right, novikov_to_conformal, perm_derivation_conformal,
                      perm_to_novikov)
from .novikov_bialgebra import (BiDialgebra, CoDialgebra, Operators, alpha_from_codialgebra,
                                bidialgebra_diagnostics, cdnybe_M, cdnybe_N, check_bi_dialgebra,
                                check_co_dialgebra, coboundary_bidialgebra, codialgebra_diagnostics,
                                lift_bidialgebra, relcdn_check)
from .io import FormatError, dump, dumps, from_document, load, loads, to_document

__all__ = [n for n in dir() if not n.startswith("_")]
