"""
tests Module.
"""
