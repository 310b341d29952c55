"""Exact toolkit for diagonal products of finite alternating groups."""

from ._core import (
    Perm,
    admissible_params,
    alt_normalized_value,
    alt_table_csv,
    ball_sizes,
    bekka_window,
    classify_null,
    embedding_radius,
    find_witness,
    hook_dimension,
    mn_value,
    neumann_generators,
    partitions_of,
    stability_trial,
    sym_table_csv,
)

__all__ = [
    "Perm",
    "admissible_params",
    "alt_normalized_value",
    "alt_table_csv",
    "ball_sizes",
    "bekka_window",
    "classify_null",
    "embedding_radius",
    "find_witness",
    "hook_dimension",
    "mn_value",
    "neumann_generators",
    "partitions_of",
    "stability_trial",
    "sym_table_csv",
]

__version__ = "0.1.0"
