"""
Initialization for `src.geometry` package: planar primitives, vertex/edge
partitions of a triangle, and the proximity maps built on them.
"""
__all__ = ["predicates", "core", "region", "partitions", "proximity", "mapspec"]
