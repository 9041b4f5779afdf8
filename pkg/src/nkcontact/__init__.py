"""Exact verification of contact metric and *-Ricci identities on frame manifolds."""

__version__ = "0.1.0"
