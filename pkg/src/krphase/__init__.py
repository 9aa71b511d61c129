"""KR-theory invariants of model Hamiltonians on the real torus."""

__version__ = "0.1.0"
