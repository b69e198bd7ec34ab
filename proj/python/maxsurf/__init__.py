"""Maximal space-like surfaces in the neutral 4-space from holomorphic generators."""

try:
    from ._maxsurf import *  # noqa: F401,F403
    from . import _maxsurf as _impl
except ImportError:  # in-tree builds put the extension next to the package
    from _maxsurf import *  # noqa: F401,F403
    import _maxsurf as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
