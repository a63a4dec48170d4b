"""Dense numerical kernels: LP (two-phase simplex), SDP (splitting method with
certified bound pairs), symmetric eigendecomposition, complex matrix helpers."""

from .cmat import adjoint, is_hermitian, is_projector, multiply, tensor_product, trace
from .eig import eig_sym
from .lp import LinearProgram, LpError, LpResult, lp_solve
from .sdp import SdpError, SdpResult, sdp_solve

__all__ = [
    "adjoint",
    "is_hermitian",
    "is_projector",
    "multiply",
    "tensor_product",
    "trace",
    "eig_sym",
    "LinearProgram",
    "LpError",
    "LpResult",
    "lp_solve",
    "SdpError",
    "SdpResult",
    "sdp_solve",
]
