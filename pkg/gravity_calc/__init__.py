"""
Gravity filtration and cobar spectral sequence calculator.
"""
__version__ = "0.1.0"
