"""Maximal symmetric subgroups of classical 3-transposition groups.

The library models symplectic, unitary and orthogonal form spaces over
GF(2), GF(3), GF(4), the projective class D of transvections/reflections
in each, and chains inside D whose non-commuting graph is a path.  The
longest chain length m determines the largest symmetric group S_(m+1)
embedding into the isometry group with transpositions landing in D.
"""

from .gf import ALPHA, ALPHA_BAR, F2, F3, F4, Field, get_field
from .spaces import (
    FormKind,
    FormSpace,
    QuotientSpace,
    bilinear,
    quadratic,
    solve_linear,
    perp_basis,
    radical,
    perp_quotient,
    orthogonal_type_f2,
    discriminant_f3,
    symplectic_pairs,
    unitary_orthonormal,
    f3_diag,
    f2_quadratic,
    f2_perm_symplectic,
    f2_perm_quadratic,
)
from .transpositions import (
    ClassSpec,
    ClassElement,
    class_element,
    in_class,
    canonical_rep,
    enumerate_class,
    apply_transposition,
    matrix_of,
    commutes,
    product_order,
)
from .chains import (
    SearchOutcome,
    chain_violations,
    is_chain,
    max_chain,
    realize_gram,
    witt_extend,
)
from .phi import (
    GroupSpec,
    Discrepancy,
    FilterReport,
    discrepancy_report,
    fischer_filter,
    normalize_spec,
    path_type_f2,
    phi_bruteforce,
    phi_formula,
    phi_resolved,
    realize_spec,
)
from .witnesses import WitnessChain, paper_witness_chain
from .embeddings import (
    EmbeddingReport,
    ConsistencyReport,
    chain_generates_symmetric,
    embed_symmetric,
    embedding_phi_consistency,
    full_injectivity,
    phi_consistency_report,
    verify_embedding,
)
from .norton import NortonReport, norton_check

__version__ = "0.1.0"
