"""Matrix perturbation toolkit: python bindings for the C++ core."""

try:
    from ._mpt import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - build-tree layout used by ctest
    from _mpt import *  # noqa: F401,F403
