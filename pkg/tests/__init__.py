"""
Test suite for qrtrap
"""
