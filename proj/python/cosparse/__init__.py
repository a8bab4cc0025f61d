"""Cosparse analysis-model recovery: frames, solvers, RIP constants, bounds."""

try:
    from . import _core
except ImportError:  # build-tree layout exposes _core as a top-level module
    import _core

__version__ = _core.__version__


def __getattr__(name):
    return getattr(_core, name)


def __dir__():
    return sorted(set(globals()) | set(dir(_core)))
