"""
Test suite for the coprime toolkit

Run tests with: pytest
"""
