"""Discrete conformal structures: curvature, energies and flows on triangulated surfaces."""

from ._core import (
    Background,
    DcsError,
    Surface,
    WeightedSurface,
    curvature,
    curvature_jacobian,
    degenerate_faces,
    euclidean_threshold,
    flow,
    ricci_energy,
    solve,
    verify_builtin,
)

__all__ = [
    "Background",
    "DcsError",
    "Surface",
    "WeightedSurface",
    "curvature",
    "curvature_jacobian",
    "degenerate_faces",
    "euclidean_threshold",
    "flow",
    "ricci_energy",
    "solve",
    "verify_builtin",
]
