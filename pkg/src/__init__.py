"""
Curved N-Body Toolkit

The N-body problem on spheres and hyperbolic spheres of constant
curvature κ, with κ→0 continuation to the Newtonian problem.
"""

__version__ = "0.1.0"
__author__ = "Curved N-Body Team"
