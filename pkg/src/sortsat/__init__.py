"""Saturation-based first-order prover with structural and computation
induction over parameterized lists, plus a sorting-algorithm theory
library, a finite-model semantic oracle, and a benchmark harness."""

__version__ = "0.1.0"
