"""
``command`` contains the class representing compilation database entries.

``command`` packages the ``CompileCommand`` class, providing an
object-oriented, importable interface for one compilation unit's
``directory``/``command``/``file`` record.
"""


import shlex
import logging
import posixpath

from ..utils import errors
from ..utils import types


logger = logging.getLogger(__name__)

KEYS = ("directory", "command", "file")


class CompileCommand:
    """
    ``CompileCommand`` represents one ``compile_commands.json`` entry.

    Attributes:
        directory: Normalized build directory.
        command: Compiler command line, verbatim.
        file: Normalized absolute path of the compilation unit.
    """

    def __init__(self, directory: str, command: str, file: str):
        """
        ``__init__`` initializes ``CompileCommand``.

        Parameters:
            directory: Build directory.
            command: Compiler command line.
            file: Unit path, absolute or relative to ``directory``.

        Raises:
            CompdbError: EMPTY_VALUE, FILE_NOT_IN_COMMAND.
        """

        if not directory:
            raise errors.CompdbError(errors.CompdbCodes.EMPTY_VALUE, detail="directory")

        self.directory: str = types.normalize_path(directory)
        self.command: str = command
        self.file: str = types.normalize_path(file, base=self.directory)

        if posixpath.basename(self.file) not in command:
            raise errors.CompdbError(errors.CompdbCodes.FILE_NOT_IN_COMMAND, detail=posixpath.basename(self.file))

    @staticmethod
    def from_json(entry: dict, index: int = None):
        """
        ``from_json`` generates ``CompileCommand`` objects from JSON objects.

        ``from_json`` validates decoded ``compile_commands.json`` entries, so
        it operates as a class constructor method and entry parser.

        Parameters:
            entry: Decoded JSON object.
            index: Entry position within the database.

        Returns:
            ``CompileCommand`` object.

        Raises:
            CompdbError: NOT_AN_OBJECT, MISSING_KEY, INVALID_VALUE, EMPTY_VALUE,
                FILE_NOT_IN_COMMAND.
        """

        if not isinstance(entry, dict):
            raise errors.CompdbError(errors.CompdbCodes.NOT_AN_OBJECT, line=index)

        for key in KEYS:
            if key not in entry:
                raise errors.CompdbError(errors.CompdbCodes.MISSING_KEY, line=index, detail=key)
            if not isinstance(entry[key], str):
                raise errors.CompdbError(errors.CompdbCodes.INVALID_VALUE, line=index, detail=key)

        extra = sorted(set(entry) - set(KEYS))
        if extra:
            logger.warning("compilation database entry %s: ignoring keys %s", index, ", ".join(extra))

        try:
            return CompileCommand(entry["directory"], entry["command"], entry["file"])
        except errors.CompdbError as err:
            err.line = index
            raise

    def to_json(self) -> dict:
        """
        ``to_json`` generates JSON objects from ``CompileCommand`` objects.

        Returns:
            Dictionary with ``directory``, ``command``, and ``file`` keys.
        """

        return {"directory": self.directory, "command": self.command, "file": self.file}

    def to_arguments(self) -> list[str]:
        """
        ``to_arguments`` splits the command line into arguments.

        Malformed quoting falls back to whitespace splitting.

        Returns:
            List of command line arguments.
        """

        try:
            return shlex.split(self.command)
        except ValueError:
            return self.command.split()

    def extract_include_dirs(self) -> list[str]:
        """
        ``extract_include_dirs`` collects ``-I`` directories.

        ``extract_include_dirs`` returns the unit's own directory followed by
        every ``-I<dir>`` and ``-I <dir>`` directory in command order,
        resolved against ``directory``. Other flags are ignored.

        Returns:
            Ordered list of absolute include directories.
        """

        dirs = [posixpath.dirname(self.file)]

        arguments = self.to_arguments()
        index = 0
        while index < len(arguments):
            argument = arguments[index]

            if argument == "-I" and index + 1 < len(arguments):
                index += 1
                dirs.append(types.normalize_path(arguments[index], base=self.directory))
            elif argument.startswith("-I") and len(argument) > 2:
                dirs.append(types.normalize_path(argument[2:], base=self.directory))

            index += 1

        return dirs

    def __eq__(self, other) -> bool:
        return isinstance(other, CompileCommand) and self.to_json() == other.to_json()

    def __hash__(self) -> int:
        return hash((self.directory, self.command, self.file))

    def __repr__(self) -> str:
        return f"CompileCommand({self.file!r})"


def extract_include_dirs(cmd: CompileCommand) -> list[str]:
    """
    ``extract_include_dirs`` collects a unit's include directories.

    Parameters:
        cmd: Compilation database entry.

    Returns:
        Ordered list of absolute include directories.
    """

    return cmd.extract_include_dirs()
