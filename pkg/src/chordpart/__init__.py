"""Partition graphs into vertex-disjoint cycles with required chord counts."""

from .graph import (
    Block,
    Graph,
    GraphError,
    GraphParseError,
    blocks,
    complete_bipartite,
    complete_graph,
    components,
    cycle_graph,
    induced,
    min_degree,
    sigma2,
)
from .cycles import (
    ChordSet,
    CycleError,
    OrientedCycle,
    chord_count,
    chord_root_bipartite,
    chord_root_complete,
    chords,
    dirac_order_threshold,
    is_c_chorded,
    min_chorded_order,
    min_chorded_side,
    packing_order_threshold,
    packing_sigma2_threshold,
    partition_order_threshold,
)
from .packing import (
    Packing,
    PackingPreconditions,
    check_packing_preconditions,
    find_packing,
    find_packing_detailed,
)
from .oracle import (
    DEFAULT_ORACLE_LIMIT,
    OracleLimitError,
    oracle_packing,
    oracle_partition,
)
from .partition import (
    Certificate,
    DockingEdge,
    EngineError,
    FailureReport,
    Move,
    MoveApplicationError,
    MoveLog,
    PartitionState,
    PartitionSuccess,
    StallDiagnostics,
    TwoChords,
    TwoChordsError,
    apply_move,
    find_chorded_cycle_in,
    find_docking_edge,
    find_next_move,
    find_two_chords,
    low_degree_set,
    partition,
    potential,
    stall_diagnostics,
    try_move_absorb_large_leftover,
    try_move_absorb_small_leftover,
    try_move_crossing,
    try_move_split,
    verify_partition,
    verify_state,
)
from .generators import (
    GeneratedInstance,
    InstanceSpec,
    build_instance,
    enumerate_nonisomorphic,
    gen_complete,
    gen_complete_bipartite,
    gen_dirac_random,
    gen_extremal_degree,
    gen_extremal_order,
    gen_large_leftover_state,
    gen_ore_random,
    gen_random,
    gen_small_leftover_near_state,
    gen_small_leftover_state,
    gen_split_state,
)

__version__ = "0.1.0"
