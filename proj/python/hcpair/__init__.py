"""Exact closest pair in Hamming space via error-correcting codes."""

from ._core import (
    ConfigError,
    ConstructionError,
    DataError,
    DimensionError,
    DomainError,
    GilbertCode,
    HcpError,
    Instance,
    InvariantError,
    PairResult,
    ParseError,
    ReedSolomon,
    ResourceError,
    brute_force,
    gapped_trial_count,
    generate_planted,
    h2,
    h2_inv,
    kappa_gv,
    kappa_z,
    lightbulb,
    read_instance,
    sample_dimension,
    search_dmin,
    solve_bichromatic,
    solve_deterministic,
    solve_gapped,
    solve_randomized,
    table1,
    trial_count,
    write_instance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
