"""
``_io`` contains terminal messages and logging setup for the command line.
"""


import sys
import logging


ERROR = "\x1b[1mretrofit: \x1b[31mERROR:\x1b[0m "
WARNING = "\x1b[1mretrofit: \x1b[33mWARNING:\x1b[0m "
INFO = "\x1b[1mretrofit: \x1b[34mINFO:\x1b[0m "
DEBUG = "\x1b[1mretrofit: \x1b[2mDEBUG:\x1b[0m "

ERROR_INVALID_LINE = ERROR + "Invalid Line Number."

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2

PREFIXES = {
    logging.ERROR: ERROR,
    logging.WARNING: WARNING,
    logging.INFO: INFO,
    logging.DEBUG: DEBUG,
}


class Formatter(logging.Formatter):
    """
    ``Formatter`` prefixes log records with colored ``retrofit:`` levels.
    """

    def __init__(self, color: bool = True):
        super().__init__("%(message)s")
        self.color: bool = color

    def format(self, record: logging.LogRecord) -> str:
        prefix = PREFIXES.get(record.levelno, ERROR if record.levelno > logging.ERROR else DEBUG)
        if not self.color:
            prefix = "retrofit: " + logging.getLevelName(record.levelno) + ": "
        return prefix + super().format(record)


def configure_logging(verbosity: int = 0) -> None:
    """
    ``configure_logging`` sends ``retrofit`` logs to standard error.

    Parameters:
        verbosity: -1 for errors only, 0 for warnings, 1 for info, 2 for debug.
    """

    level = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(Formatter(color=sys.stderr.isatty()))

    logger = logging.getLogger("retrofit")
    logger.handlers = [handler]
    logger.setLevel(level)
    logger.propagate = False


def verbosity(args: dict) -> int:
    return -1 if args.get("--quiet") else min(args.get("--verbose") or 0, 2)


def error(msg: str, code: int = EXIT_USAGE):
    print(msg if msg.startswith("\x1b") else ERROR + msg, file=sys.stderr)
    sys.exit(code)
