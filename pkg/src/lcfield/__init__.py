"""1+1D light-cone field simulator.

Relativistic Doppler transformations for classical wave packets and
single-photon blip amplitude states, with numerical verification of the
associated conservation laws and transformation identities.
"""

__version__ = "0.1.0"

from .grid import Axis, Representation, SampledFunction
from .kinematics import BoostParams, make_boost, kappa, xi

__all__ = [
    "__version__",
    "Axis",
    "Representation",
    "SampledFunction",
    "BoostParams",
    "make_boost",
    "kappa",
    "xi",
]
