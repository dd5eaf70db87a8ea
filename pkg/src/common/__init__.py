"""
Initialization for `src.common` package.
"""
__all__ = ["config", "utils"]
