"""Exact dynamical quantum group computations."""
