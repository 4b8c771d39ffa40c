"""Coherent-state transforms for the affine group and the normal-ordering
algebra behind exp(m QD).

Submodules: opcore (Weyl-algebra normal ordering), opdsl (operator
expression language), actions, quad, spaces (weighted Bergman spaces),
xform (the odd/even transforms), equiv (unitarily equivalent operators),
verify and cli.
"""
from affinecs._accel import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
