"""
REST API module for qrtrap
Provides programmatic access to bounds, map evaluation and scans
"""
