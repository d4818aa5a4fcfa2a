"""
``scan`` contains the include dependency scanner.

``scan`` packages the ``scan_dependencies`` and ``scan_units`` functions.
Includes are followed transitively and attached flat to their unit; includes
that resolve nowhere, or outside the project root, count as external.
"""


import os
import logging
import dataclasses

from ..files.compdb import CompileCommand
from ..files.compdb import CompilationDatabase
from ..files.utils import types
from ..files.utils._parser import Preprocessor


logger = logging.getLogger(__name__)
MISSING = -1


def mtime(path: str) -> int:
    """
    ``mtime`` reads modification times in nanoseconds.

    Parameters:
        path: File path.

    Returns:
        Modification time, or ``MISSING`` for missing files.
    """

    try:
        return os.stat(path).st_mtime_ns
    except OSError:
        return MISSING


def read_includes(path: str) -> list[tuple[str, str]]:
    """
    ``read_includes`` lists the include directives of files.

    Parameters:
        path: File path.

    Returns:
        List of tuples of delimiter (``"`` or ``<``) and included name.
    """

    try:
        with open(path, "rb") as file:
            text = file.read().decode("utf-8", errors="replace")
    except OSError as err:
        logger.warning("cannot read %s: %s", path, err)
        return []

    return Preprocessor.includes(text)


def forced_includes(unit: CompileCommand) -> list[str]:
    """
    ``forced_includes`` collects files named by ``-include`` flags.

    Parameters:
        unit: Compilation database entry.

    Returns:
        Absolute paths, in command order.
    """

    arguments = unit.to_arguments()
    return [types.normalize_path(name, base=unit.directory) for flag, name in zip(arguments, arguments[1:]) if flag == "-include"]


def resolve_include(delimiter: str, name: str, including: str, include_dirs: list[str]) -> str | None:
    """
    ``resolve_include`` finds the file an include directive names.

    Quoted includes search the including file's directory first, then the
    include directories; angle includes search the include directories.

    Parameters:
        delimiter: ``"`` or ``<``.
        name: Included name.
        including: Path of the including file.
        include_dirs: Ordered include directories.

    Returns:
        Absolute path, or None if unresolved.
    """

    if types.is_absolute(name):
        return types.normalize_path(name) if os.path.isfile(name) else None

    dirs = ([os.path.dirname(including)] if delimiter == '"' else []) + list(include_dirs)

    for directory in dirs:
        candidate = types.normalize_path(name, base=directory)
        if os.path.isfile(candidate):
            return candidate

    return None


def scan_dependencies(unit: CompileCommand, include_dirs: list[str] = None, root: str = None) -> set[str]:
    """
    ``scan_dependencies`` finds the transitive dependencies of units.

    Include cycles terminate, since every file is visited once.

    Parameters:
        unit: Compilation database entry.
        include_dirs: Ordered include directories, defaults to the unit's.
        root: Project root; files outside it count as external.

    Returns:
        Set of absolute dependency paths, excluding the unit itself.
    """

    include_dirs = unit.extract_include_dirs() if include_dirs is None else include_dirs
    root = types.normalize_path(root) if root is not None else None

    visited = {unit.file}
    stack = [unit.file]
    found = set()

    for forced in forced_includes(unit):
        if os.path.isfile(forced) and forced not in visited:
            visited.add(forced)
            stack.append(forced)

    while stack:
        current = stack.pop()
        if current != unit.file:
            found.add(current)

        for delimiter, name in read_includes(current):
            resolved = resolve_include(delimiter, name, current, include_dirs)
            if resolved is None or (root is not None and not types.is_under(resolved, root)):
                logger.debug("%s: external include %s%s", current, delimiter, name)
                continue
            if resolved not in visited:
                visited.add(resolved)
                stack.append(resolved)

    return found


@dataclasses.dataclass(frozen=True)
class Scan:
    """
    ``Scan`` represents the state of one unit on disk.

    Attributes:
        timestamp: Unit file mtime in nanoseconds.
        dependencies: Dictionary from dependency paths to mtimes.
    """

    timestamp: int
    dependencies: dict[str, int]


def scan_unit(unit: CompileCommand, root: str = None) -> Scan:
    dependencies = scan_dependencies(unit, root=root)
    return Scan(mtime(unit.file), {path: mtime(path) for path in sorted(dependencies)})


def scan_units(db: CompilationDatabase, root: str = None) -> dict[str, Scan]:
    """
    ``scan_units`` scans every unit of compilation databases.

    Parameters:
        db: Compilation database.
        root: Project root.

    Returns:
        Dictionary from unit paths to scans.
    """

    return {unit.file: scan_unit(unit, root) for unit in db}
