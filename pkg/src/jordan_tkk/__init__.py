"""
Jordan algebras, their Tits-Kantor-Koecher and centrally extended Lie
algebras, Weyl modules and Lie algebra homology over exact rationals.
"""
from .exactlin import Echelon, QuotientMap, SparseMatrix, Subspace, kernel_basis, rank
from .jordan import (JordanAlgebra, albert_algebra, fixture, ground_field, quotient,
                     symmetric_matrices, truncated_polynomial, validate)
from .freejordan import dim_free_jordan, dimension_table, truncated_algebra
from .lie import LieAlgebra
from .tkk import TKKAlgebra, build, central_term, ideal_subalgebra
from .garland import CurrentUEA, verify_garland
from .dominance import JSpace, is_dominant, make_jspace, regular_jspace, trivial_jspace, un_truncated
from .weyl import GradedGModule, WeylModule, smoothness_witness, standard_module, weyl_delta_n, weyl_module
from .homology import (ChainComplex, GradedLieAlgebra, ce_homology, isotypic_decomposition,
                       positive_part_of, relative_homology, top_cycle_relations)

__version__ = "0.1.0"
