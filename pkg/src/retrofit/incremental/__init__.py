from .scan import Scan
from .scan import scan_dependencies
from .scan import scan_unit
from .scan import scan_units
from .stale import Trigger
from .stale import stale_reasons
from .stale import select_stale
from .stale import commit

__all__ = [
    "Scan",
    "scan_dependencies",
    "scan_unit",
    "scan_units",
    "Trigger",
    "stale_reasons",
    "select_stale",
    "commit",
]
