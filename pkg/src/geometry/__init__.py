"""Trapezoid, parallelogram and region decomposition"""
