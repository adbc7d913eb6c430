"""Joint similarity learning and kernel clustering.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    EngineError,
    FitResult,
    LabelSource,
    __version__,
    accuracy,
    combine,
    connected_components,
    evaluate,
    fit_scmk,
    fit_scsk,
    gaussian_kernel,
    kernel_kmeans,
    kmeans,
    laplacian,
    linear_kernel,
    load_csv,
    nmi,
    polynomial_kernel,
    project_simplex,
    purity,
    rescale_kernel,
    smallest_eigenvectors,
    spectral_clustering,
    standard_bank,
    standardize,
)

__all__ = [
    "EngineError",
    "FitResult",
    "LabelSource",
    "accuracy",
    "combine",
    "connected_components",
    "evaluate",
    "fit_scmk",
    "fit_scsk",
    "gaussian_kernel",
    "kernel_kmeans",
    "kmeans",
    "laplacian",
    "linear_kernel",
    "load_csv",
    "nmi",
    "polynomial_kernel",
    "project_simplex",
    "purity",
    "rescale_kernel",
    "smallest_eigenvectors",
    "spectral_clustering",
    "standard_bank",
    "standardize",
]
