"""
``trace`` contains the ``retrofit trace`` command.

``trace`` maps lines of transformed files back to original lines through the
``.trace`` sidecar written next to every transformed file.
"""


import sys

import docopt

from . import _io
from ..files.trace import LineMap
from ..files.trace import lookup
from ..files.utils import errors


class Trace:
    """
    ``Trace`` answers line lookups for one transformed file.

    Attributes:
        linemap: Line map read from the sidecar.
    """

    def __init__(self, transformed: str):
        """
        ``__init__`` initializes ``Trace``.

        Parameters:
            transformed: Transformed file path.

        Raises:
            TraceError: MISSING_SIDECAR, MALFORMED_SIDECAR.
        """

        self.linemap: LineMap = LineMap.from_sidecar(transformed)

    def locate(self, line: int) -> str:
        """
        ``locate`` formats original locations of transformed lines.

        Parameters:
            line: Transformed line.

        Returns:
            ``path:line``, prefixed by ``~`` when the line lies in a
            transformed region.

        Raises:
            TraceError: LINE_OUT_OF_RANGE.
        """

        path, original, exact = lookup(self.linemap, line)
        return f"{'' if exact else '~'}{path}:{original}"


RETROFIT_TRACE_DOC = """
Usage:
    retrofit trace <transformed-file> <line>
"""


def main(argv: list[str] = sys.argv[1:]) -> None:
    """
    ``main`` executes the ``retrofit trace`` command.

    Parameters:
        argv: Tokenized list of CLI arguments.
    """

    args = docopt.docopt(RETROFIT_TRACE_DOC, argv=argv)
    _io.configure_logging()

    try:
        line = int(args["<line>"])
    except ValueError:
        _io.error(_io.ERROR_INVALID_LINE)

    try:
        print(Trace(args["<transformed-file>"]).locate(line))
    except errors.TraceError as err:
        _io.error(str(err))
