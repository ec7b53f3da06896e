"""Coin-scheme simulator and linkability attack harness.

Thin wrapper around the compiled core. The heavy lifting (world simulation,
attack games, the evaluation grid) happens in C++; this package re-exports it
with plain lists/dicts at the boundary.
"""

try:
    from ._anonylink import (  # type: ignore[attr-defined]
        build_matrix,
        compose_linkage,
        converse_counterexamples,
        default_fixture_path,
        deviation_from_uniform,
        is_unlinkable,
        render_matrix,
        run_game,
        schemes,
        sender_unlinkability_product,
        transpose_linkage,
        verify_matrix,
    )
except ImportError:  # build-tree layout: extension sits next to the package
    from _anonylink import (  # type: ignore[no-redef]
        build_matrix,
        compose_linkage,
        converse_counterexamples,
        default_fixture_path,
        deviation_from_uniform,
        is_unlinkable,
        render_matrix,
        run_game,
        schemes,
        sender_unlinkability_product,
        transpose_linkage,
        verify_matrix,
    )

__all__ = [
    "build_matrix",
    "compose_linkage",
    "converse_counterexamples",
    "default_fixture_path",
    "deviation_from_uniform",
    "is_unlinkable",
    "render_matrix",
    "run_game",
    "schemes",
    "sender_unlinkability_product",
    "transpose_linkage",
    "verify_matrix",
]
