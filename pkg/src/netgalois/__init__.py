"""Verification toolkit for the net description of subgroups between the
diagonal and general linear groups over finite chain rings, built on explicit
modular-lattice computations."""

__version__ = "0.1.0"

from .errors import CapExceeded, InputError
from .glnr import DNet, Instance
from .lattice import FiniteLattice, SublatticeHandle
from .rings import RingSpec

__all__ = [
    "CapExceeded",
    "DNet",
    "FiniteLattice",
    "InputError",
    "Instance",
    "RingSpec",
    "SublatticeHandle",
    "__version__",
]
