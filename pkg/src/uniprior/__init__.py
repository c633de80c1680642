"""Spanning-tree index codes for single-uniprior broadcast problems."""

from .advantage import (
    AdvantageEntry,
    ModifiedAdvantageEntry,
    advantage,
    advantage_report,
    modified_advantage,
    q_value,
)
from .bounds import BoundsReport, OptimalityCertificate, certify, lower_bounds, max_weight_tree
from .census import CensusRecord, census, enumerate_classes, tightness_sweep
from .channel import (
    ChannelModel,
    SimulationResult,
    analytic_pavg,
    awgn,
    bit_error_prob,
    bsc,
    monte_carlo,
    prob_demand_error,
    rayleigh,
)
from .code import (
    DecodingProfile,
    IndexCode,
    PairTx,
    SingletonTx,
    decode_paths,
    decoding_profile,
    encode,
    full_encode,
    verify_code,
)
from .errors import UnipriorError
from .graph import (
    InformationFlowGraph,
    conn,
    cut_structure,
    load_ifg,
    parse_ifg,
    scc_decompose,
    simplify,
)
from .oracle import OracleResult, oracle_optimal
from .trees import (
    SpanningTree,
    algorithm1,
    algorithm2,
    algorithm3,
    algorithm4,
    algorithm5,
    resolve_algorithm,
    star,
    update_tree,
    update_tree_new,
)

__version__ = "0.1.0"
