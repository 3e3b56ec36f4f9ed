"""Exact additive deformations of braided Hopf *-algebras given by
normal-ordering presentations.

Everything is computed over the Gaussian rationals with a formal
deformation parameter t; no floating point anywhere.
"""

from .scalars import Scalar, TPoly
from .presentation import (AlgebraPresentation, PresentationError, Report,
                           parse_presentation, pretty_print)
from .algebra import Algebra, Tensor, tensor_product
from .braidtensor import (braid_mn, braided_product, comul, comul_iter,
                          counit, lambda_n)
from .deform import (Deformation, Functional, MapNode, SesquiForm,
                     cocycle_defect, cocycle_functional, conv_exp, conv_map,
                     convolve_fn, counit_functional, deformed_antipode, mu_t,
                     psi_functional, sesquilinearize, sigma, table_functional,
                     zero_functional)
from .verify import (CHECK_IDS, HermitianMatrix, SchoenbergError,
                     fixture_path, parse_psi, psd_exact, q_presentation,
                     qnogo_eval, run_catalog, schoenberg_check)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraPresentation",
    "CHECK_IDS",
    "Deformation",
    "Functional",
    "HermitianMatrix",
    "MapNode",
    "PresentationError",
    "Report",
    "Scalar",
    "SchoenbergError",
    "SesquiForm",
    "TPoly",
    "Tensor",
    "braid_mn",
    "braided_product",
    "cocycle_defect",
    "cocycle_functional",
    "comul",
    "comul_iter",
    "conv_exp",
    "conv_map",
    "convolve_fn",
    "counit",
    "counit_functional",
    "deformed_antipode",
    "fixture_path",
    "lambda_n",
    "mu_t",
    "parse_presentation",
    "parse_psi",
    "pretty_print",
    "psd_exact",
    "psi_functional",
    "q_presentation",
    "qnogo_eval",
    "run_catalog",
    "schoenberg_check",
    "sesquilinearize",
    "sigma",
    "table_functional",
    "tensor_product",
    "zero_functional",
]
