"""Exact graded commutative algebra in positive characteristic."""

from .arith import GF, QQ, ExactMatrix, PrimeFieldScalar, kernel_basis, weighted_monomials
from .errors import ParseError, PreconditionError
from .frobenius import (CechClass, FrobeniusVerdict, cech_frobenius, cech_is_zero, cech_make,
                        fedder_general, fedder_principal, frobenius_closure_member,
                        frobenius_injective_window, h2_basis, segre_frational_probe)
from .graded import (HilbertSeries, RingSpec, a_invariant_ci, hadamard, hilbert_function,
                     hilbert_series, load_ring, parse_ring, segre_presentation, series_coefficients,
                     veronese)
from .lc import (GradedDimFunction, LCTable, a_invariant_segre, is_cm_segre, kunneth, lc_dim_oracle,
                 lc_table_ci)
from .poly import Ideal, Poly, PolyRing, bracket_power, frobenius_power, groebner, ideal_colon
from .qdivisor import (INF, IntDivisorP1, QDivisorP1, RationalFunctionP1, demazure_presentation,
                       find_relation, floor_identity_check, riemann_roch_space, section_hilbert,
                       section_ring_generators, verify_remark)

__version__ = "0.1.0"
