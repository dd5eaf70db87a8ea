"""
Package root for pcdlab.

Keep this file minimal: it marks `src` as a package so imports like
`from src.geometry import core` work when running tests or modules as scripts.
"""
__version__ = "0.3.0"
__all__ = ["__version__"]
