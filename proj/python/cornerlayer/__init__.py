"""Exact calculus for matched corner-and-thin-layer Helmholtz expansions."""

from ._core import (
    Config,
    Element,
    Engine,
    layer_correctors,
    rim_solve,
    run_checks,
    tangent_coefficients,
    __version__,
)

__all__ = [
    "Config",
    "Element",
    "Engine",
    "layer_correctors",
    "rim_solve",
    "run_checks",
    "tangent_coefficients",
    "__version__",
]
