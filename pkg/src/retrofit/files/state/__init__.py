from .records import FileRecord
from .records import UnitRecord
from .records import RelationRecord
from .store import ProjectState
from .store import state_path
from .store import SCHEMA_VERSION
from .store import STATE_DIR
from .store import STATE_FILE

__all__ = [
    "FileRecord",
    "UnitRecord",
    "RelationRecord",
    "ProjectState",
    "state_path",
    "SCHEMA_VERSION",
    "STATE_DIR",
    "STATE_FILE",
]
