"""Python interface to the Riemann multifractal laboratory."""

try:
    from ._rml import *  # noqa: F401,F403  (installed wheel layout)
    from ._rml import __version__  # noqa: F401
except ImportError:  # in-build layout: extension next to the build tree
    from _rml import *  # noqa: F401,F403
    from _rml import __version__  # noqa: F401
