"""List colorings of uniform hypergraphs that distinguish intersecting edges."""

__version__ = "0.1.0"
