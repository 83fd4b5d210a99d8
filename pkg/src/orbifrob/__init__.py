"""Exact reconstruction and verification of the Frobenius potentials of
orbifold projective lines from the WDVV equations.

The public surface re-exports the geometry layer (multiplets, labels,
pairing), the coefficient store, the WDVV extraction and residual scan,
the reconstruction solver with its seed modes, the theorem checks and the
canonical file formats.
"""

from .geometry import (
    Geometry,
    Multiplet,
    MultipletClass,
    POINT,
    Twisted,
    UNIT,
    build_geometry,
    classify,
    format_label,
)
from .rationals import QQ, format_rational, parse_rational
from .series import (
    Potential,
    SeriesKey,
    admissible_keys,
    alpha_from_pairs,
    basis_alpha,
    format_exponents,
    format_key,
    is_admissible,
    s_factor,
    weighted_degree,
    zero_alpha,
)
from .wdvv import (
    ResidualReport,
    WdvvQuad,
    admissible_targets,
    residual_scan,
    wdvv_coefficient,
)
from .reconstruct import (
    InconsistentSeed,
    NoProgress,
    ReconstructionError,
    ReconstructionTrace,
    STANDARD,
    ScheduleEntry,
    SeedMode,
    SolverStuck,
    VANISHING,
    VANISHING_NO_QUARTIC,
    build_schedule,
    exhaustive_candidates,
    probe_candidate,
    reconstruct,
    rescale_novikov,
    rescaled_mode,
    seed,
    solve_target,
)
from .verify import (
    CheckReport,
    LimitRing,
    build_limit_ring,
    check_euler,
    check_limit_product,
    check_sector_universality,
    check_separation,
    check_symmetry,
    check_vanishing,
    sector_restriction,
)
from .formats import (
    diff_potentials,
    parse_key_query,
    parse_potential,
    read_potential,
    serialize_potential,
    write_potential,
    write_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Geometry",
    "Multiplet",
    "MultipletClass",
    "POINT",
    "Twisted",
    "UNIT",
    "build_geometry",
    "classify",
    "format_label",
    "QQ",
    "format_rational",
    "parse_rational",
    "Potential",
    "SeriesKey",
    "admissible_keys",
    "alpha_from_pairs",
    "basis_alpha",
    "format_exponents",
    "format_key",
    "is_admissible",
    "s_factor",
    "weighted_degree",
    "zero_alpha",
    "ResidualReport",
    "WdvvQuad",
    "admissible_targets",
    "residual_scan",
    "wdvv_coefficient",
    "InconsistentSeed",
    "NoProgress",
    "ReconstructionError",
    "ReconstructionTrace",
    "STANDARD",
    "ScheduleEntry",
    "SeedMode",
    "SolverStuck",
    "VANISHING",
    "VANISHING_NO_QUARTIC",
    "build_schedule",
    "exhaustive_candidates",
    "probe_candidate",
    "reconstruct",
    "rescale_novikov",
    "rescaled_mode",
    "seed",
    "solve_target",
    "CheckReport",
    "LimitRing",
    "build_limit_ring",
    "check_euler",
    "check_limit_product",
    "check_sector_universality",
    "check_separation",
    "check_symmetry",
    "check_vanishing",
    "sector_restriction",
    "diff_potentials",
    "parse_key_query",
    "parse_potential",
    "read_potential",
    "serialize_potential",
    "write_potential",
    "write_trace",
]
