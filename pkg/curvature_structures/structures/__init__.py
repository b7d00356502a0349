"""
Classifier checks of curvature restricted structures.
"""
