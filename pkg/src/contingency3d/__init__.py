"""Realization of three-dimensional binary contingency tables and 3-uniform hypergraphs."""

from .partitions import CoverStep, Partition, conjugate, covering_chain, dominance_leq
from .tables import MarginalTriple, Table3D, marginals

__version__ = "0.1.0"

__all__ = ["CoverStep", "Partition", "conjugate", "covering_chain", "dominance_leq",
           "MarginalTriple", "Table3D", "marginals", "__version__"]
