"""Hierarchical exact-sequence shape functions."""
