"""
``status`` contains the ``retrofit status`` command.

``status`` lists the units the next run would transform, with the change
triggers that make them stale, without transforming anything.
"""


import sys

import docopt

from . import _io
from .. import incremental
from ..files.compdb import load_database
from ..files.state import ProjectState
from ..files.state import state_path
from ..files.utils import errors


class Status:
    """
    ``Status`` encapsulates stale unit reporting.

    Attributes:
        reasons: Dictionary from stale unit paths to firing triggers, in
            database order.
    """

    def __init__(self, compdb: str, root: str, workdir: str):
        """
        ``__init__`` initializes ``Status``.

        Parameters:
            compdb: Path to ``compile_commands.json``.
            root: Project root directory.
            workdir: Work directory.

        Raises:
            CompdbError: Database errors.
            StateError: NEWER_SCHEMA, CORRUPT_STORE.
        """

        db = load_database(compdb)
        db.check_root(root)
        state = ProjectState.from_file(state_path(workdir))
        scans = incremental.scan_units(db, root)

        self.reasons: dict[str, list[incremental.Trigger]] = {}
        for unit in db:
            reasons = incremental.stale_reasons(state, unit, scans[unit.file])
            if reasons:
                self.reasons[unit.file] = reasons

    def to_text(self) -> str:
        if not self.reasons:
            return "all units up to date"
        return "\n".join(f"{path}: {', '.join(reasons)}" for path, reasons in self.reasons.items())


RETROFIT_STATUS_DOC = """
Usage:
    retrofit status -p <compdb> -r <root> -w <workdir>

Options:
    -p --compdb=<compdb>      Path to compile_commands.json.
    -r --root=<root>          Project root directory.
    -w --workdir=<workdir>    Work directory.
"""


def main(argv: list[str] = sys.argv[1:]) -> None:
    """
    ``main`` executes the ``retrofit status`` command.

    Parameters:
        argv: Tokenized list of CLI arguments.
    """

    args = docopt.docopt(RETROFIT_STATUS_DOC, argv=argv)
    _io.configure_logging()

    try:
        status = Status(args["--compdb"], args["--root"], args["--workdir"])
    except errors.RetrofitError as err:
        _io.error(str(err))

    print(status.to_text())
