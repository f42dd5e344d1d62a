from lattice.analysis import (
    InvalidLatticeError,
    LatticeStats,
    ValidationReport,
    count_paths,
    enumerate_paths,
    lattice_stats,
    topological_order,
    validate,
)
from lattice.core import EPSILON, Arc, Lattice, epsilon, or_, seq, wrd
from lattice.io import LatticeFormatError, read_lattice, write_lattice

__all__ = [
    "EPSILON",
    "Arc",
    "InvalidLatticeError",
    "Lattice",
    "LatticeFormatError",
    "LatticeStats",
    "ValidationReport",
    "count_paths",
    "enumerate_paths",
    "epsilon",
    "lattice_stats",
    "or_",
    "read_lattice",
    "seq",
    "topological_order",
    "validate",
    "wrd",
    "write_lattice",
]
