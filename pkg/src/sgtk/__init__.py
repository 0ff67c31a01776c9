"""sgtk: structural graph toolkit.

Finite, checkable implementations of tree-decomposition machinery, chordal
partitions of minor-free graphs, universal-graph truncations, product and
layered-partition embeddings, generalized colouring numbers, and disjoint-path
routing in planar grids.  Everything is backed by brute-force oracles at desk
scale; see the tests for the cross-checks.
"""

from .graphs import Graph, Orientation, Layering, build_named

__all__ = ["Graph", "Orientation", "Layering", "build_named"]
__version__ = "0.1.0"
