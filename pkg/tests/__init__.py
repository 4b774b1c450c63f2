"""
Test package for qdual.
"""
