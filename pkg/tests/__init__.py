"""
Test suite for olx.
"""
