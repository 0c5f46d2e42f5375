"""LEO Earth-observation downlink simulator.

Thin Python surface over the C++ core: pass geometry, DVB-S2 rate
adaptation, capacity-constrained pixel selection, payload codec and
fidelity metrics.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
