"""
``store`` contains the class representing incremental state stores.

``store`` packages the ``ProjectState`` class, which keeps the
``compilation_unit``, ``files``, and ``relations`` tables of one work
directory in memory and persists them to a SQLite file. Writes go to a
temporary file renamed over the store, so an interrupted run leaves the
previous state intact.
"""


import os
import sqlite3
import logging
import contextlib

from .records import FileRecord
from .records import UnitRecord
from .records import RelationRecord
from ..utils import errors
from ..utils import types


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
STATE_DIR = ".retrofit"
STATE_FILE = "state.db"

SCHEMA = """
CREATE TABLE IF NOT EXISTS meta (
    key TEXT PRIMARY KEY,
    value TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS files (
    id INTEGER PRIMARY KEY,
    path TEXT NOT NULL UNIQUE
);

CREATE TABLE IF NOT EXISTS compilation_unit (
    id INTEGER PRIMARY KEY,
    file_id INTEGER NOT NULL UNIQUE REFERENCES files(id),
    timestamp INTEGER NOT NULL,
    cmd_args TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS relations (
    file_id INTEGER NOT NULL REFERENCES files(id),
    dep_id INTEGER NOT NULL REFERENCES files(id),
    dependency_timestamp INTEGER NOT NULL,
    PRIMARY KEY (file_id, dep_id)
);
"""


def state_path(workdir: str) -> str:
    """
    ``state_path`` locates the state store of work directories.

    Parameters:
        workdir: Work directory.

    Returns:
        Path to ``<workdir>/.retrofit/state.db``.
    """

    return types.normalize_path(os.path.join(workdir, STATE_DIR, STATE_FILE))


class ProjectState:
    """
    ``ProjectState`` represents the incremental state of one project.

    Attributes:
        files: File records by key.
        units: Unit records by unit file key.
        relations: Relation records by unit file key, then dependency key.
    """

    def __init__(self, files: list[FileRecord] = (), units: list[UnitRecord] = (), relations: list[RelationRecord] = ()):
        """
        ``__init__`` initializes ``ProjectState``.

        Parameters:
            files: File rows.
            units: Compilation unit rows.
            relations: Relation rows.
        """

        self.files: dict[int, FileRecord] = {record.id: record for record in files}
        self.units: dict[int, UnitRecord] = {record.file_id: record for record in units}
        self.relations: dict[int, dict[int, RelationRecord]] = {}
        self._by_path: dict[str, FileRecord] = {record.path: record for record in files}

        for relation in relations:
            self.relations.setdefault(relation.file_id, {})[relation.dep_id] = relation

    @classmethod
    def from_file(cls, path: str):
        """
        ``from_file`` loads state stores.

        Missing stores load as empty states.

        Parameters:
            path: Path to the store.

        Returns:
            ``ProjectState`` object.

        Raises:
            StateError: NEWER_SCHEMA, CORRUPT_STORE.
        """

        if not os.path.isfile(path):
            logger.info("no state store at %s, starting fresh", path)
            return cls()

        try:
            with contextlib.closing(sqlite3.connect(path)) as connection:
                version = connection.execute("SELECT value FROM meta WHERE key = 'schema_version'").fetchone()
                if version is None:
                    raise errors.StateError(errors.StateCodes.CORRUPT_STORE, path=path, detail="no schema version")
                if int(version[0]) > SCHEMA_VERSION:
                    raise errors.StateError(errors.StateCodes.NEWER_SCHEMA, path=path, detail=version[0])

                files = [FileRecord(*row) for row in connection.execute("SELECT id, path FROM files")]
                units = [UnitRecord(*row) for row in connection.execute("SELECT id, file_id, timestamp, cmd_args FROM compilation_unit")]
                relations = [
                    RelationRecord(*row) for row in connection.execute("SELECT file_id, dep_id, dependency_timestamp FROM relations")
                ]
        except (sqlite3.Error, ValueError) as err:
            raise errors.StateError(errors.StateCodes.CORRUPT_STORE, path=path, detail=str(err)) from err

        return cls(files, units, relations)

    def to_file(self, path: str) -> None:
        """
        ``to_file`` writes state stores through a temporary file.

        Parameters:
            path: Path to the store.

        Raises:
            StateError: STORE_WRITE_FAILURE.
        """

        temporary = path + ".tmp"

        try:
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
            if os.path.exists(temporary):
                os.remove(temporary)

            with contextlib.closing(sqlite3.connect(temporary)) as connection:
                connection.executescript(SCHEMA)
                connection.execute("INSERT INTO meta (key, value) VALUES ('schema_version', ?)", (str(SCHEMA_VERSION),))
                connection.executemany("INSERT INTO files (id, path) VALUES (?, ?)", [(r.id, r.path) for r in self.files.values()])
                connection.executemany(
                    "INSERT INTO compilation_unit (id, file_id, timestamp, cmd_args) VALUES (?, ?, ?, ?)",
                    [(r.id, r.file_id, r.timestamp, r.cmd_args) for r in self.units.values()],
                )
                connection.executemany(
                    "INSERT INTO relations (file_id, dep_id, dependency_timestamp) VALUES (?, ?, ?)",
                    [(r.file_id, r.dep_id, r.dependency_timestamp) for deps in self.relations.values() for r in deps.values()],
                )
                connection.commit()

            os.replace(temporary, path)
        except (OSError, sqlite3.Error) as err:
            with contextlib.suppress(OSError):
                os.remove(temporary)
            raise errors.StateError(errors.StateCodes.STORE_WRITE_FAILURE, path=path, detail=str(err)) from err

        logger.debug("wrote state store %s: %d units, %d files", path, len(self.units), len(self.files))

    def file(self, path: str) -> FileRecord | None:
        return self._by_path.get(types.normalize_path(path))

    def register(self, path: str) -> FileRecord:
        """
        ``register`` finds or adds file records.

        Parameters:
            path: File path.

        Returns:
            File record.
        """

        path = types.normalize_path(path)
        record = self._by_path.get(path)

        if record is None:
            record = FileRecord(max(self.files, default=0) + 1, path)
            self.files[record.id] = record
            self._by_path[path] = record

        return record

    def unit(self, path: str) -> UnitRecord | None:
        record = self.file(path)
        return self.units.get(record.id) if record is not None else None

    def dependencies(self, path: str) -> dict[str, int]:
        """
        ``dependencies`` reads recorded dependencies of units.

        Parameters:
            path: Unit path.

        Returns:
            Dictionary from dependency paths to recorded mtimes.
        """

        record = self.file(path)
        if record is None:
            return {}

        return {self.files[dep_id].path: relation.dependency_timestamp for dep_id, relation in self.relations.get(record.id, {}).items()}

    def set_unit(self, path: str, timestamp: int, cmd_args: str, dependencies: dict[str, int]) -> UnitRecord:
        """
        ``set_unit`` records successful transformations.

        Relations are replaced by the given dependencies; file records of
        dropped dependencies stay.

        Parameters:
            path: Unit path.
            timestamp: Unit file mtime in nanoseconds.
            cmd_args: Unit command line.
            dependencies: Dictionary from dependency paths to mtimes.

        Returns:
            Unit record.
        """

        file = self.register(path)
        previous = self.units.get(file.id)
        key = previous.id if previous is not None else max((unit.id for unit in self.units.values()), default=0) + 1

        record = UnitRecord(key, file.id, timestamp, cmd_args)
        self.units[file.id] = record
        self.relations[file.id] = {}

        for dependency, dependency_timestamp in sorted(dependencies.items()):
            dep = self.register(dependency)
            self.relations[file.id][dep.id] = RelationRecord(file.id, dep.id, dependency_timestamp)

        return record

    def drop_unit(self, path: str) -> None:
        record = self.file(path)
        if record is not None:
            self.units.pop(record.id, None)
            self.relations.pop(record.id, None)

    def unit_paths(self) -> list[str]:
        return sorted(self.files[file_id].path for file_id in self.units)

    def __len__(self) -> int:
        return len(self.units)
