"""Exact verification toolkit for spin local models of even orthogonal groups.

Modules:
    exactpoly    sparse polynomials over Q and F_p, Buchberger, ideal tests
    weylcomb     affine Weyl combinatorics, faces, orbit counts
    latticegeom  lattice chains and points of the naive local model
    spinalg      wedge-power involution, spin relations, explicit ideals
    chartideals  the affine chart ideals and the special fiber
    blowup       blow-up charts of the i = 1 model
    cli          command line entry point
"""

__version__ = "0.1.0"
