"""Exact computations in the umbrella Hopf algebras UM(A).

Free algebras and rewriting (:mod:`.freealg`, :mod:`.rewrite`), the Lie
algebras so(A) (:mod:`.liealg`), presentation builders (:mod:`.umbrella`) and
the coalgebra engine (:mod:`.hopf`).  Everything is over Q.
"""
from .freealg import Generator, GeneratorSet, NCPoly, lex_compare, parse_poly, wlex_compare
from .hopf import (AutomorphismData, QuotientHopf, RefusedError, Report, TensorPoly,
                   check_coalgebra_axioms, check_commutator_filtration, check_hopf_ideal,
                   cross_validate_filtrations, nakayama_automorphism, verify_crossed_product,
                   verify_nakayama)
from .liealg import (LieData, ad_trace, ad_trace_closed_form, block_matrix, congruence_normalize,
                     phi_eta, so_basis)
from .rewrite import (Presentation, PresentationError, ReductionSystem, build_reduction_system,
                      check_confluence, enumerate_normal_words, is_pbw, normal_form,
                      pbw_monomial_count)
from .umbrella import (HopfData, build_hopf_data, build_presentation, build_umbrella,
                       build_wzz_example, gkdim, iso_map)

__version__ = "0.1.0"
