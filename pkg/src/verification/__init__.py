"""Numerical verification suites for the piecewise map"""
