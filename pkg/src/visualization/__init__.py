"""
Visualization module for qrtrap
SVG grid-distortion rendering and text/JSON/CSV reports
"""
