from .linemap import LineMap
from .linemap import build_linemap
from .linemap import lookup
from .linemap import SIDECAR_SUFFIX

__all__ = [
    "LineMap",
    "build_linemap",
    "lookup",
    "SIDECAR_SUFFIX",
]
