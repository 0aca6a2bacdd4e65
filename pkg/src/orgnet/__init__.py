"""Hierarchical vs. self-organised networks: generation, robustness and coordination dynamics."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    UNREACHABLE,
    DuplicateEdgeError,
    EmptyGraphError,
    Graph,
    GraphError,
    SelfLoopError,
    UnknownNodeError,
    read_edgelist,
    write_edgelist,
)
from .generators import (  # noqa: E402
    GeneratorParams,
    NetworkKind,
    build_network,
    generate_ba,
    generate_hierarchical,
    generate_random,
)
from .metrics import (  # noqa: E402
    NodeFeatures,
    OlsFit,
    clustering_by_degree,
    clustering_scaling,
    degree_histogram,
    loglog_slope,
    mean_std,
    ols_fit,
)
from .robustness import RemovalExperiment, run_attack, run_failure  # noqa: E402
from .friction import FrictionModel, run_friction  # noqa: E402
from .synergy import SynergyModel, run_synergy  # noqa: E402
