"""K-beam epsilon-subgradient descent for continuous minimax problems.

Thin wrapper around the compiled extension module. Installed wheels carry the
extension inside this package; in-tree builds put it on sys.path instead.
"""

try:
    from ._kbeam import *  # noqa: F401,F403
    from ._kbeam import __doc__ as _doc
except ImportError:  # in-tree build: extension next to the package on sys.path
    from _kbeam import *  # noqa: F401,F403
    from _kbeam import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
