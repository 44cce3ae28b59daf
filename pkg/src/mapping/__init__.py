"""
Mapping module for qrtrap
The piecewise quasiconformal map, its inverse and its dilatation
"""
