"""Exact A1-Brouwer degrees and symmetric bilinear forms over C, R, Q, GF(q)."""

from .fields import (CC, QQ, RR, FFElement, FieldDesc, gf_construct, is_square,
                     legendre_symbol, padic_valuation, squarefree_part)
from .forms import (GWClass, InvariantBundle, add_gw, base_change, diagonalize,
                    get_discriminant, get_invariants, get_rank, get_signature,
                    hasse_witt_invariant, hilbert_symbol, is_isomorphic_form,
                    make_diagonal_form, make_gw_class, make_hyperbolic_form,
                    make_pfister_form, multiply_gw)
from .poly import (GroebnerBasis, Ideal, ParseError, Polynomial, PolyRing,
                   groebner_basis, ideal_quotient, normal_form,
                   parse_polynomial, resultant_univariate, saturation,
                   standard_monomials)
from .witt import (DecompositionReport, anisotropic_dimension,
                   anisotropic_dimension_qp, anisotropic_part, is_anisotropic,
                   is_isotropic, sum_decomposition, witt_index)
from .degrees import (BezoutianMatrix, EndoSystem, LocalAlgebraBasis,
                      bezoutian_matrix, global_a1_degree, local_a1_degree,
                      local_algebra_basis)

__version__ = "0.1.0"
