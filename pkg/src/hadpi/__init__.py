"""Exact toolchain for reversible and quantum combinator circuits.

Scalars live in the ring Z[1/rt2], matrices are orthogonal with entries in
that ring, and every decision procedure here (synthesis, word rewriting,
program equivalence, the translations between the term languages and the
generator words) is exact: no floats are consulted anywhere.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
