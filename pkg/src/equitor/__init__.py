"""Exact-arithmetic engine for diagonalizable group actions on affine
semigroup rings: divisor classes of relative invariants, reduced class
groups, pseudo-reflection and obstruction subgroups, and
equidimensionality / cofreeness verdicts, all cross-checked against
brute-force oracles.
"""

__version__ = "0.1.0"
