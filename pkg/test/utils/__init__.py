"""
tests utils Module.
"""
