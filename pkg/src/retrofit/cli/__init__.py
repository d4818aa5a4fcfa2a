from . import run
from . import trace
from . import status
from .run import Run
from .run import RunConfig
from .run import mirror_tree
from .trace import Trace
from .status import Status

__all__ = [
    "run",
    "trace",
    "status",
    "Run",
    "RunConfig",
    "mirror_tree",
    "Trace",
    "Status",
]
