"""Bi-infinite linear recurrences as recurrence matrices, in exact arithmetic."""
from .field import QQ, ModP, PrimeField
from .recmat import (DenseWindow, EPSeq, RecMat, compose_banded, dense_window,
                     entry, is_reduced, pivot_matrix, shape)
from .reduction import (equivalent, factor_witness, is_trivial, reduce,
                        reduce_system, row_reduce_step)
from .dsl import SystemSpec, parse

__version__ = "0.1.0"

__all__ = ["QQ", "ModP", "PrimeField", "DenseWindow", "EPSeq", "RecMat",
           "compose_banded", "dense_window", "entry", "is_reduced", "pivot_matrix",
           "shape", "equivalent", "factor_witness", "is_trivial", "reduce",
           "reduce_system", "row_reduce_step", "SystemSpec", "parse"]
