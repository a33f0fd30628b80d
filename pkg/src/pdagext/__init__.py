"""Consistent extension and maximal orientation of partially directed acyclic graphs."""

from .edgelist import format_edgelist, parse_edgelist, read_edgelist, write_edgelist
from .errors import InvalidInput, InvariantBreach, ParseError, PdagError, UsageError
from .extension import (
    DticState,
    ExtensionOutcome,
    extend_dt,
    extend_dth,
    extend_dtic,
    get_extender,
    is_consistent_extension,
)
from .graph import BrokenInvariant, Dag, DirectedCycle, Edge, EdgeKind, Pdag
from .oracles import brute_force_cpdag, brute_force_extend, brute_force_mpdag
from .orientation import (
    OrientationTrace,
    PhaseTimings,
    RuleApplication,
    dag_to_cpdag,
    direct_meek,
    direct_meek_naive,
    maximal_orientation_ce,
)

__version__ = "0.1.0"
