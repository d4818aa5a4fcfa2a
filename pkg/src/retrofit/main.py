"""
``main`` the RETROFIT command line entrypoint.

``main`` runs the retrofit command line using ``docopt``. This module
implements retrofit as a script (``python3 main.py``) and command
(``retrofit``).
"""


import sys

import docopt

import retrofit


RETROFIT_TITLE = f"""
    \x1b[1mretrofit\x1b[0m
    Version {retrofit.version.__version__}

    C++11 to C++03 backporting.
"""

RETROFIT_DOC = """
\x1b[1mretrofit\x1b[0m - C++11 to C++03 source backporting.

Usage:
    retrofit [<command> [<args>...]]

Commands:
    run       Transform stale units into the work directory.
    status    List stale units and why they are stale.
    trace     Map transformed lines back to original lines.
    help      Show help.
"""


def main(argv: list[str] = sys.argv[1:]) -> None:
    """
    ``main`` executes the ``retrofit`` command.

    ``main`` processes the given command line arguments, and selects the
    corresponding subcommand.

    Parameters:
        argv: Tokenized list of CLI arguments.
    """

    args = docopt.docopt(RETROFIT_DOC, argv=argv, version=retrofit.version.__version__, options_first=True)

    match args["<command>"]:
        case "run":
            retrofit.cli.run.main(argv=argv)
        case "status":
            retrofit.cli.status.main(argv=argv)
        case "trace":
            retrofit.cli.trace.main(argv=argv)
        case "help":
            print(RETROFIT_DOC)
        case None:
            print(RETROFIT_TITLE)
        case _:
            print(RETROFIT_DOC)
            sys.exit(2)


if __name__ == "__main__":
    import retrofit

    main()
