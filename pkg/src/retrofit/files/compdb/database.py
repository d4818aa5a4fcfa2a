"""
``database`` contains the class representing compilation databases.

``database`` packages the ``CompilationDatabase`` class, providing an
object-oriented, importable interface for ``compile_commands.json`` files.
"""


import json

from .command import CompileCommand
from ..utils import errors
from ..utils import types


class CompilationDatabase:
    """
    ``CompilationDatabase`` represents ``compile_commands.json`` files.

    ``CompilationDatabase`` keeps entries in file order, which is also the
    order units are scheduled, written, and committed in.

    Attributes:
        entries: Ordered compilation database entries.
    """

    def __init__(self, entries: list[CompileCommand]):
        """
        ``__init__`` initializes ``CompilationDatabase``.

        Parameters:
            entries: Ordered compilation database entries.

        Raises:
            CompdbError: DUPLICATE_UNIT.
        """

        seen = set()
        for index, entry in enumerate(entries):
            if entry.file in seen:
                raise errors.CompdbError(errors.CompdbCodes.DUPLICATE_UNIT, line=index, detail=entry.file)
            seen.add(entry.file)

        self.entries: tuple[CompileCommand, ...] = tuple(entries)
        self._by_file: dict[str, CompileCommand] = {entry.file: entry for entry in entries}

    @staticmethod
    def from_json(source: str, path: str = None):
        """
        ``from_json`` generates ``CompilationDatabase`` objects from JSON.

        Parameters:
            source: ``compile_commands.json`` content.
            path: File path used in error messages.

        Returns:
            ``CompilationDatabase`` object.

        Raises:
            CompdbError: UNREADABLE_FILE, NOT_AN_ARRAY.
        """

        try:
            decoded = json.loads(source)
        except json.JSONDecodeError as err:
            raise errors.CompdbError(errors.CompdbCodes.UNREADABLE_FILE, path=path, detail=err.msg)

        if not isinstance(decoded, list):
            raise errors.CompdbError(errors.CompdbCodes.NOT_AN_ARRAY, path=path)

        entries = []
        for index, entry in enumerate(decoded):
            try:
                entries.append(CompileCommand.from_json(entry, index))
            except errors.CompdbError as err:
                err.path = path
                raise

        try:
            return CompilationDatabase(entries)
        except errors.CompdbError as err:
            err.path = path
            raise

    @classmethod
    def from_json_file(cls, filename: str):
        """
        ``from_json_file`` generates ``CompilationDatabase`` objects from files.

        Parameters:
            filename: Path to ``compile_commands.json``.

        Returns:
            ``CompilationDatabase`` object.

        Raises:
            CompdbError: UNREADABLE_FILE.
        """

        try:
            with open(filename, "rb") as file:
                source = file.read().decode("utf-8")
        except (OSError, UnicodeDecodeError) as err:
            raise errors.CompdbError(errors.CompdbCodes.UNREADABLE_FILE, path=filename, detail=str(err))

        return cls.from_json(source, path=filename)

    def to_json(self) -> str:
        """
        ``to_json`` generates JSON from ``CompilationDatabase`` objects.

        Returns:
            ``compile_commands.json`` content.
        """

        return json.dumps([entry.to_json() for entry in self.entries], indent=2)

    def check_root(self, project_root: str) -> None:
        """
        ``check_root`` checks that every unit lies under the project root.

        Parameters:
            project_root: Project root directory.

        Raises:
            CompdbError: OUTSIDE_ROOT.
        """

        root = types.normalize_path(project_root)
        for index, entry in enumerate(self.entries):
            if not types.is_under(entry.file, root):
                raise errors.CompdbError(errors.CompdbCodes.OUTSIDE_ROOT, line=index, detail=entry.file)

    def get(self, file: str) -> CompileCommand | None:
        """
        ``get`` finds entries by unit path.

        Parameters:
            file: Unit path.

        Returns:
            Matching entry or None.
        """

        return self._by_file.get(types.normalize_path(file))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> CompileCommand:
        return self.entries[index]


def load_database(path: str) -> CompilationDatabase:
    """
    ``load_database`` reads ``compile_commands.json`` files.

    Parameters:
        path: Path to the compilation database.

    Returns:
        ``CompilationDatabase`` with entries in file order.
    """

    return CompilationDatabase.from_json_file(path)
