from . import cli
from . import incremental
from . import semantics
from . import transforms
from .files import compdb
from .files import cpp
from .files import state
from .files import trace
from .files import utils
from .files.compdb import CompilationDatabase
from .files.state import ProjectState
from .files.trace import LineMap

from .version import __version__, __version_tuple__

__all__ = [
    "cli",
    "incremental",
    "semantics",
    "transforms",
    "compdb",
    "cpp",
    "state",
    "trace",
    "utils",
    "CompilationDatabase",
    "ProjectState",
    "LineMap",
]
