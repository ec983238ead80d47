"""Exact calculus for Thompson's groups F, T, V, their braided and coefficient
extensions built from tree-pair symbols, the flip groupoid of Farey-type
tessellations, cluster-seed mutation with shear/lambda coordinates, and the
quantum (di)logarithm special functions."""

__version__ = "0.1.0"
