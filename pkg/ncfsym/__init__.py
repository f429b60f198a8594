"""
ncfsym
Symmetry structure and recognition of nested canalyzing functions.
"""

from .config import Limits, get_limits
from .errors import (
    CapacityError,
    ConfigurationError,
    DegenerateRestrictionError,
    DimensionError,
    DomainError,
    DuplicateVariableError,
    InconsistentDefaultError,
    InvariantViolation,
    NcfSymError,
    NormalizationRequiredError,
    NotSymmetricError,
    ParseError,
    RangeError,
)
from .hardness import (
    ClaimsVerdict,
    CnfFormula,
    ReductionInstance,
    evaluate_cnf,
    parse_dimacs,
    reduce,
    verify_claims,
)
from .ncf import (
    Layer,
    LayerDecomposition,
    NcfRepr,
    Rule,
    count_strongly_asymmetric,
    count_strongly_asymmetric_layered,
    evaluate_ncf,
    is_strongly_asymmetric_ncf,
    layers,
    make_fn_example,
    normalize,
    parse_ncf,
    permute_within_layer,
    render_ncf,
    symmetric_pair,
    symmetry_level_ncf,
    symmetry_partition_ncf,
    to_truth_table,
)
from .oracle import (
    AsymmetryVerdict,
    EnumerationReport,
    enumerate_ncfs,
    is_canalyzing_bf,
    is_ncf_bf,
    is_strongly_asymmetric_bf,
    pairwise_symmetric_bf,
    symmetry_level_bf,
    symmetry_partition_bf,
)
from .symtable import CanalyzingFinding, NotNcf, SymTable, find_canalyzing, recognize_ncf
from .truthtable import (
    Permutation,
    SymmetryPartition,
    TruthTable,
    apply_permutation,
    evaluate,
    format_truth_table,
    is_constant,
    parse_truth_table,
    restrict,
    restrict_with_mapping,
)

__version__ = "1.0.0"
