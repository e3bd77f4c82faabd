"""
RIS Secure Location Modulation
Author: Gabriel Demetrios Lafis
Year: 2025

Este pacote implementa o simulador de Secure Location Modulation (SLM) para
segurança de camada física em campo próximo assistida por RIS: focalização,
squeeze-nulling, sequências temporais validadas por EVM e simulação de enlace.
"""

from .errors import (
    SlmError,
    GeometryError,
    QuantizationError,
    NullingError,
    InfeasibleSolutionError,
    EvmError,
    LibraryError,
    LinkError,
    ConfigError
)
from .geometry import (
    ArrayConfig,
    CartesianPoint,
    PolarPoint,
    element_position,
    polar_to_cartesian,
    path_length,
    fraunhofer_distance,
    is_near_field
)
from .field_engine import (
    PhaseMatrix,
    Scenario,
    FieldKernel,
    quantize_2bit,
    quantize_complex,
    compute_field,
    compute_field_grid,
    scenario_hash
)
from .focusing import ideal_focus_phase, focus_matrix, reference_field
from .nulling import (
    NullSpec,
    ZoneModel,
    SnmSolution,
    aligned_zone_model,
    build_zone_model,
    baseline_spec,
    focal_points,
    null_matrix,
    null_depth,
    snm_constraints,
    solve_snm
)
from .temporal import (
    PhaseSequence,
    SequenceKind,
    SlotProgram,
    SequenceLibrary,
    SlmStream,
    field_sequence,
    evm,
    evm_to_snr,
    interleave,
    evm_interleaved_direct,
    evm_interleaved_closed,
    ratio_bounds,
    validate_perturbed,
    build_library,
    save_library,
    load_library,
    revalidate_library,
    program_stream,
    slm_pipeline
)
from .link_sim import (
    ModulationScheme,
    LinkConfig,
    LinkResult,
    modulation_scheme,
    modulate,
    simulate_rx,
    demodulate,
    ber,
    random_guess_ber,
    secrecy_capacity,
    run_link
)
from .config import ScenarioPreset, SweepGrid, get_preset, dump_config, load_config
from .cli_sweep import run_subcommand, write_heatmap_csv, secure_area

__version__ = "1.0.0"
__author__ = "Gabriel Demetrios Lafis"

__all__ = [
    "SlmError",
    "GeometryError",
    "QuantizationError",
    "NullingError",
    "InfeasibleSolutionError",
    "EvmError",
    "LibraryError",
    "LinkError",
    "ConfigError",
    "ArrayConfig",
    "CartesianPoint",
    "PolarPoint",
    "element_position",
    "polar_to_cartesian",
    "path_length",
    "fraunhofer_distance",
    "is_near_field",
    "PhaseMatrix",
    "Scenario",
    "FieldKernel",
    "quantize_2bit",
    "quantize_complex",
    "compute_field",
    "compute_field_grid",
    "scenario_hash",
    "ideal_focus_phase",
    "focus_matrix",
    "reference_field",
    "NullSpec",
    "ZoneModel",
    "SnmSolution",
    "aligned_zone_model",
    "build_zone_model",
    "baseline_spec",
    "focal_points",
    "null_matrix",
    "null_depth",
    "snm_constraints",
    "solve_snm",
    "PhaseSequence",
    "SequenceKind",
    "SlotProgram",
    "SequenceLibrary",
    "SlmStream",
    "field_sequence",
    "evm",
    "evm_to_snr",
    "interleave",
    "evm_interleaved_direct",
    "evm_interleaved_closed",
    "ratio_bounds",
    "validate_perturbed",
    "build_library",
    "save_library",
    "load_library",
    "revalidate_library",
    "program_stream",
    "slm_pipeline",
    "ModulationScheme",
    "LinkConfig",
    "LinkResult",
    "modulation_scheme",
    "modulate",
    "simulate_rx",
    "demodulate",
    "ber",
    "random_guess_ber",
    "secrecy_capacity",
    "run_link",
    "ScenarioPreset",
    "SweepGrid",
    "get_preset",
    "dump_config",
    "load_config",
    "run_subcommand",
    "write_heatmap_csv",
    "secure_area"
]
