"""Bounds for the quasiconformal reflection coefficient"""
