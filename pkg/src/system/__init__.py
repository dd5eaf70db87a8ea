"""
Initialization for `src.system` package: logging, JSON helpers, workspace
folders, run manifests and the command-line surface.
"""
__all__ = ["log", "json", "startup", "manifest", "CLI"]
