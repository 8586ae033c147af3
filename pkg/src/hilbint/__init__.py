"""Exact Heisenberg Fock space computations for integral cohomology of Hilbert schemes of points."""

from .exact_linalg import ExactMatrix, det
from .fock import ClassVector, FockState, FrobeniusModel, annihilate, create, pairing, vacuum
from .partitions import Partition, enumerate_multipartitions, enumerate_partitions, z_of

__all__ = [
    "ClassVector",
    "ExactMatrix",
    "FockState",
    "FrobeniusModel",
    "Partition",
    "annihilate",
    "create",
    "det",
    "enumerate_multipartitions",
    "enumerate_partitions",
    "pairing",
    "vacuum",
    "z_of",
]
