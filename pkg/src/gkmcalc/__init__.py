"""gkmcalc: combinatorial GKM theory for simplicial GKM graph complexes."""

__version__ = "0.1.0"
