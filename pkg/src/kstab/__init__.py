"""Exact K-stability and VGIT computations for hypersurface tuples in projective space."""
__version__ = "0.1.0"
