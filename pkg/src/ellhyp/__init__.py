"""Exact and high-precision verification tools for two CM elliptic curves.

Subpackages cover arbitrary-precision special functions (mpnum), accelerated
3F2(1) evaluation (hyp3f2), Hecke L-series coefficients and L-values (hecke),
exact arithmetic in Q(zeta_24) (cyclo), the curve group law and Bloch-group
reductions (ecdiv), function-field symbol calculus (ksym), periods and
torsion labels (ellper), and the verification CLI (cli).
"""

__version__ = "0.1.0"
