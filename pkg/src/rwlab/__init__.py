"""rwlab: desk-scale experiments on long-range random walks and electric networks."""

__version__ = "0.1.0"
