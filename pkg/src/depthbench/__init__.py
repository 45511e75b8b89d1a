"""Instrumented workbench contrasting serial and parallel solvers.

Problem families: circuit evaluation (serial vs layered), elementary
cellular automata (plain vs k-row compiled stepping), products in the
5-point permutation group (serial vs tree fold), depth-of-one extraction
from value probes, and majority-vote derandomization.  Every solver
charges a CostMeter so work/depth tradeoffs are measurable.
"""

from .meters import CostMeter

__all__ = ["CostMeter"]
__version__ = "0.1.0"
