# Test package for pcdlab
__all__ = []
