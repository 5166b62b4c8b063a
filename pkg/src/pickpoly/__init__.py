"""Three-point Pick-Nevanlinna interpolation on the polydisc.

Subpackages and modules:

``mpoly``    exact polynomials over Q(i), reflection, irreducibility, factorization, zero-freeness
``moebius``  disc and polydisc automorphisms, pseudohyperbolic distance
``pick``     Pick matrices, positivity, two-point Blaschke interpolation
``rif``      rational inner functions: canonical form, factors, slices, zeros
``engine``   the three-point search, assembly and verification
"""

__version__ = "0.1.0"
