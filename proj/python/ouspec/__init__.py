"""First Dirichlet eigenvalue of the Ornstein-Uhlenbeck operator on convex polygons."""

from ._ouspec import (
    ConvexPolygon,
    OuspecError,
    bm_sweep,
    bm_tolerance,
    concavity,
    convergence_study,
    equality_probe,
    gaussian_density,
    interval_eigenvalue,
    minkowski_combine,
    monotonicity_check,
    radial_disk_eigenvalue,
    random_convex_polygon,
    run,
    shape,
    solve,
)

__all__ = [
    "ConvexPolygon",
    "OuspecError",
    "bm_sweep",
    "bm_tolerance",
    "concavity",
    "convergence_study",
    "equality_probe",
    "gaussian_density",
    "interval_eigenvalue",
    "minkowski_combine",
    "monotonicity_check",
    "radial_disk_eigenvalue",
    "random_convex_polygon",
    "run",
    "shape",
    "solve",
]
