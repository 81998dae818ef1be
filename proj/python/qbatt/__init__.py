"""Driven collective-spin quantum battery simulator.

Thin wrapper over the C++ extension module. Installed wheels carry the
extension inside this package; during development the build tree exposes it
as a top-level module instead, so both locations are tried.
"""

try:
    from ._qbatt import *  # noqa: F401,F403
    from ._qbatt import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _qbatt import *  # noqa: F401,F403
    from _qbatt import __version__  # noqa: F401
