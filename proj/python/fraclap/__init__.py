"""Fractional-Laplacian toolkit: python bindings for the C++ core."""

try:
    from ._fraclap import *  # noqa: F401,F403  (installed package layout)
    from ._fraclap import __version__  # noqa: F401
except ImportError:  # in-tree builds put the module next to the package
    from _fraclap import *  # noqa: F401,F403
    from _fraclap import __version__  # noqa: F401
