"""Steklov, Dirichlet and Laplacian spectra of weighted graphs with boundary."""

__version__ = "0.1.0"

from graphsteklov._kernels import BACKEND  # noqa: E402
from graphsteklov.graph_core import BoundaryGraph, WeightedGraph, new_graph, parse_graph, read_graph  # noqa: E402
from graphsteklov.spectral import (  # noqa: E402
    dirichlet_spectrum,
    dtn_matrix,
    harmonic_extension,
    laplacian_spectrum,
    steklov_spectrum,
)
from graphsteklov.comparison import compare_spectra, full_equality_rigidity, verify  # noqa: E402
from graphsteklov.curvature import ollivier_kappa  # noqa: E402
