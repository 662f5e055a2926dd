"""Two-atom single-mode cavity simulator: entanglement dynamics, photon
statistics and Wigner distributions on a truncated Fock space."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
