"""
hopfcalc - exact computations in connected graded Hopf algebras
"""
__version__ = "1.0.0"
