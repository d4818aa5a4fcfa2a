from .command import CompileCommand
from .command import extract_include_dirs
from .database import CompilationDatabase
from .database import load_database

__all__ = [
    "CompileCommand",
    "CompilationDatabase",
    "extract_include_dirs",
    "load_database",
]
