"""Fat graphs and filling systems of maximum size on closed surfaces."""

__version__ = "0.1.0"
