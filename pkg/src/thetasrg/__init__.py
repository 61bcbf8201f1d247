"""theta-symmetric scaled relative graphs of complex matrices and graphical
stability certificates for cyclic cascades of MIMO LTI systems."""

from .backend import active_backend, set_backend, using_backend

__version__ = "0.1.0"

__all__ = ["active_backend", "set_backend", "using_backend", "__version__"]
