"""Exclusivity-graph contextuality toolkit.

Classical, quantum, and exclusivity-principle bounds of noncontextuality
inequalities from their exclusivity graphs; set membership tests;
definite-value colorability of ray systems; Bell-box protocols.
"""

from .bounds import (
    BoundsReport,
    bounds_report,
    fractional_packing,
    independence_number,
    lovasz_theta,
    qstab_membership,
    stab_membership,
    th_membership,
)
from .graph import Graph, GraphError

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "Graph",
    "GraphError",
    "bounds_report",
    "fractional_packing",
    "independence_number",
    "lovasz_theta",
    "qstab_membership",
    "stab_membership",
    "th_membership",
    "__version__",
]
