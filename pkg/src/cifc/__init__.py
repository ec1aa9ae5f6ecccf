"""Capacity-analysis toolkit for K-user cognitive interference channels."""

from .bounds import (
    BoundReport,
    RegimeKind,
    RegimeLabel,
    SymLdaParams,
    bounds_agree,
    classify_regime,
    cms_sum_outer,
    f_term,
    ifc_cr_sum_outer,
    sym_cms_sum_outer,
)
from .gaussian import (
    CorrelationTriple,
    GaussianSymParams,
    PowerSplit,
    SplitCase,
    SplitRates,
    compound_mac_sum_inner,
    dpc_reference_gap,
    gain_to_lda_exponent,
    gdof,
    k_user_sum_outer,
    power_split_achievable,
    power_split_case,
    power_split_gap_bound,
    strong_conditions_hold,
    strong_sum_outer,
)
from .gf2 import BinaryMatrix
from .lda import (
    KnowledgeStructure,
    LdaChannel,
    LinearScheme,
    UndecodableSchemeError,
    decodable,
    receive_map,
    scheme_rates,
    shift_matrix,
)
from .schemes import (
    OracleBudgetError,
    OracleResult,
    brute_force_best,
    example_scheme,
    relay_zero_force,
    sneak_bits_extension,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
