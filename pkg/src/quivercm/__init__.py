"""quivercm: exact Gorenstein projective / Cohen-Macaulay computations
for bound quiver algebras, their loop extensions and triangular matrix
algebras."""

__version__ = "0.1.0"
