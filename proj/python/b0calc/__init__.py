"""Bogomolov and Schur multipliers of class-2 finite p-groups."""

try:
    from ._b0calc import *  # noqa: F401,F403
    from ._b0calc import __doc__  # noqa: F401
except ImportError:  # running from a build tree, module next to the package
    from _b0calc import *  # noqa: F401,F403
    from _b0calc import __doc__  # noqa: F401
