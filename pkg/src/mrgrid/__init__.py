"""Exact-arithmetic workbench for erasure codes on grid-like topologies.

The package builds codes whose parity checks follow an m x n grid
layout (a constraints per column, b per row, h global), classifies
erasure patterns as correctable or not with explicit certificates,
constructs maximally recoverable codes with global parities through a
two-stage Gabidulin encoding, and relates product-topology codes to
tensor-product codes by duality.
"""

from .errors import MrgridError
from .gf import (
    FieldElement,
    FieldSpec,
    arith,
    embed,
    field_from_dict,
    frobenius,
    make_extension,
    make_field,
)
from .fmatrix import (
    FMatrix,
    embed_matrix,
    kron,
    rank,
    restrict_cols,
    right_kernel,
    row_space_equal,
    rref,
    solve_right,
)
from .codes import (
    GridCode,
    LinearCode,
    corrects,
    dual,
    erasure_decode,
    gabidulin,
    grid_code,
    is_information_set,
    is_mds,
    product_code,
    puncture,
    rs_code,
    shorten,
    tensor_product_code,
)
from .topology import (
    CORRECTABLE,
    NO_CERTIFICATE_FOUND,
    PROVEN_UNCORRECTABLE,
    ErasurePattern,
    GridTopology,
    KernelCertificate,
    TPReport,
    Verdict,
    add_global_redundancy,
    classify_pattern,
    classify_patterns,
    counterexample_orbit,
    counterexample_pattern,
    dual_correctable,
    emax_global,
    enumerate_regular_max,
    find_mr_code,
    is_mr,
    is_regular,
    kernel_codeword,
    lift_extend,
    lift_puncture,
    max_pattern_size,
    pmds_block_code,
    sample_mds_pair,
    tp_correctable_check,
)

__version__ = "0.1.0"
