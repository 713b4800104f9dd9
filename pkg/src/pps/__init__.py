"""Exact spectral data for the association scheme of partial permutations.

The scheme lives on injections from 1..n into 1..m.  This package computes
its classes, valencies, multiplicities, dual eigenvalue rows (by several
closed-form routes and by brute-force group averaging), Krein parameters,
and the quantities feeding the adversary bound for index erasure, all in
exact rational arithmetic.
"""

__version__ = "0.1.0"
