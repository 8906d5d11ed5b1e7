"""spreadlab: redundant influence measurement and multi-spreader selection."""

__version__ = "0.1.0"
