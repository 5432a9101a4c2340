"""Exact construction and spectral analysis of block graphs of geometric Steiner systems.

The package builds the point-line geometries PG(n, q) and AG(n, q) over
finite fields, the Steiner systems their lines form, and the block graphs
of those systems (Grassmann graphs J_q(n+1, 2) and their affine analogues
X_q(n, 1)).  On top of that it provides exact strongly-regular-graph
spectra, eigenfunctions of the adjacency matrix, weight-distribution
bounds, regulus constructions, equitable 2-partitions and Cameron-Liebler
line class checks.  All arithmetic is exact: finite-field tables and
rational numbers, never floating point.
"""

from __future__ import annotations

__version__ = "0.1.0"

from . import designs, eigenfunctions, geometry, gf, linalg, partitions, reguli
from .errors import SteinerError

__all__ = [
    "SteinerError",
    "designs",
    "eigenfunctions",
    "geometry",
    "gf",
    "linalg",
    "partitions",
    "reguli",
]
