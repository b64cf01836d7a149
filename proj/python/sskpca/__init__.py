"""Semi-supervised kernel component analysis."""

from ._sskpca import (
    InvalidArgumentError,
    NumericalErrorException,
    build_kernel,
    gaussian_kernel,
    kpca_fit,
    lr_kpca_fit,
    ls_kpca_fit,
    mv_kpca_fit,
    predict,
    risk_bound,
    risk_bound_constant,
    risk_bound_general,
    solve_secular,
    threshold_head,
    transductive_error,
    two_gaussians,
    two_moons,
)

__all__ = [
    "InvalidArgumentError",
    "NumericalErrorException",
    "build_kernel",
    "gaussian_kernel",
    "kpca_fit",
    "lr_kpca_fit",
    "ls_kpca_fit",
    "mv_kpca_fit",
    "predict",
    "risk_bound",
    "risk_bound_constant",
    "risk_bound_general",
    "solve_secular",
    "threshold_head",
    "transductive_error",
    "two_gaussians",
    "two_moons",
]
