"""Exact calculus for two-face amalgamated free products and a free-group boundary model."""
