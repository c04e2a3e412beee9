"""Exact nilpotent highest-weight modules of quantum algebras at odd roots of unity."""

from .cyclotomic import Field, Cyc
from .bases import FactorShape, shape_for
from .build import ModuleSpec, GeneratorSet, SparseOp, build

__all__ = ["Field", "Cyc", "FactorShape", "shape_for", "ModuleSpec",
           "GeneratorSet", "SparseOp", "build"]
__version__ = "0.1.0"
