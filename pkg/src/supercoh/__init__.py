"""Exact relative cohomology of Lie superalgebras of Cartan type."""

from .liesuper import (LieSuperalgebra, SubalgebraSpec, construct_gl_super, construct_S, construct_Sbar,
                       construct_W, cartan_subalgebra, degree_zero_subalgebra, detecting_subalgebra_gl,
                       detecting_subalgebra_sbar, validate, zero_subalgebra)
from .smodule import SuperModule, adjoint, dual, kac_module_sigma, tensor, trivial
from .cohomology import PoincareTable, check_derived_vanishing, cohomology_dims, ext_dims
from .invariants import crosscheck_iso, invariant_dim_bruteforce, symmetric_invariants
from .varieties import rank_point_test, rank_variety_sample, support_kac, support_simple

__version__ = "0.1.0"

__all__ = [
    "LieSuperalgebra", "SubalgebraSpec", "construct_W", "construct_S", "construct_Sbar", "construct_gl_super",
    "cartan_subalgebra", "degree_zero_subalgebra", "zero_subalgebra", "detecting_subalgebra_sbar",
    "detecting_subalgebra_gl", "validate", "SuperModule", "trivial", "adjoint", "dual", "tensor",
    "kac_module_sigma", "PoincareTable", "cohomology_dims", "ext_dims", "check_derived_vanishing",
    "invariant_dim_bruteforce", "symmetric_invariants", "crosscheck_iso", "rank_point_test",
    "rank_variety_sample", "support_simple", "support_kac",
]
