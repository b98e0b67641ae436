"""Strata, invariants and realization of polynomial vector fields z' = P(z)."""

try:
    from stratakit._stratakit import *  # noqa: F401,F403  (installed layout)
    from stratakit._stratakit import __version__  # noqa: F401
except ImportError:  # development layout: module sits next to the package
    from _stratakit import *  # noqa: F401,F403
    from _stratakit import __version__  # noqa: F401
