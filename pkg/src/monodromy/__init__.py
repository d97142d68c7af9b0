"""Exact verification of the Lie-theoretic inputs to Galois representations with
prescribed monodromy: root systems, Chevalley algebras over F_l, adjoint
decompositions, regular semisimple transporters, principal sl2 data and
Wiles-formula dimension ledgers."""

__version__ = "0.1.0"
