"""Quadratic rotation-symmetric Boolean functions: weights, periods and balance.

Submodules: gf2poly, boolfn, quad_analysis, gf2field, rules_matrix, zcyclo, cli.
"""

__version__ = "0.1.0"
