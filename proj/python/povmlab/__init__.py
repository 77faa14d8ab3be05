"""Finite-outcome POVM toolkit.

Spectral and mixture representations of commutative observables, fuzzy
versions via Markov kernels, and joint observables for commuting pairs.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = __doc__ or _core_doc
