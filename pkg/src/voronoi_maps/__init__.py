"""Exact generating functions, bijections and scaling checks for Voronoi cells
in bi-pointed planar maps."""

__version__ = "0.1.0"
