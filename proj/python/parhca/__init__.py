"""Prioritized multi-agent path finding: HCA* and a parallel independent-set variant."""

from ._core import (
    CodecError,
    GenerationError,
    GridMap,
    Instance,
    MapFormatError,
    ScenarioError,
    balanced_factorization,
    bits_source_goal,
    decode_path,
    downsample_map,
    encode_path,
    generate_instance,
    parse_map,
    partition_of,
    path_bits,
    random_map,
    random_order,
    read_scenario,
    run_benchmark,
    solve_hca,
    solve_variant,
    speedup,
    validate,
    write_map,
    write_scenario,
)

__all__ = [
    "CodecError",
    "GenerationError",
    "GridMap",
    "Instance",
    "MapFormatError",
    "ScenarioError",
    "balanced_factorization",
    "bits_source_goal",
    "decode_path",
    "downsample_map",
    "encode_path",
    "generate_instance",
    "parse_map",
    "partition_of",
    "path_bits",
    "random_map",
    "random_order",
    "read_scenario",
    "run_benchmark",
    "solve_hca",
    "solve_variant",
    "speedup",
    "validate",
    "write_map",
    "write_scenario",
]

__version__ = "0.1.0"
