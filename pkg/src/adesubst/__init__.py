"""Generating series of Euler characteristics of affine ADE quiver varieties.

Modules:
  rootsys  Dynkin diagrams, Cartan data, subdiagram decompositions
  cyclo    exact arithmetic in cyclotomic fields
  series   truncated multivariate series with cyclotomic coefficients
  subst    the root-of-unity substitution and its constants
  parts    colored partitions in type A: projection, fibers, enumeration
  theta    theta-function formulas and q-series
  fock     Fock-space operators and rectangle modules
  checks   registry of exact verification suites
  cli      command-line front end
"""

__version__ = "0.1.0"
