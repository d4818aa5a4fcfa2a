"""
``run`` contains the end-to-end transformation run.

``run`` packages the ``RunConfig`` and ``Run`` classes and the
``mirror_tree`` and ``run`` functions, providing an object-oriented,
importable interface for transforming whole projects: mirror the source tree
into a work directory, transform stale units across worker processes, write
outputs and trace sidecars, then commit the incremental state.
"""


import os
import sys
import time
import shutil
import logging
import dataclasses
import concurrent.futures

import docopt

from . import _io
from ._pipeline import UnitJob
from ._pipeline import UnitOutcome
from ._pipeline import crashed_unit
from ._pipeline import transform_unit
from ._report import SETUP
from ._report import WRITE
from ._report import RunSummary
from ._report import write_report
from .. import incremental
from ..files.compdb import CompileCommand
from ..files.compdb import load_database
from ..files.cpp.lexer import encode
from ..files.state import ProjectState
from ..files.state import STATE_DIR
from ..files.state import state_path
from ..files.utils import errors
from ..files.utils import types


logger = logging.getLogger(__name__)

DEFAULT_JOBS = 1


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    ``RunConfig`` represents validated run options.

    Attributes:
        project_root: Project root directory.
        compdb_path: Path to ``compile_commands.json``.
        workdir: Work directory receiving the transformed tree.
        jobs: Worker processes.
        force_full: Whether to transform every unit.
        fail_fast: Whether to stop scheduling after the first failure.
        report: JSON-lines report path, if any.
        allow_nested: Whether the work directory may lie inside the root.
    """

    project_root: str
    compdb_path: str
    workdir: str
    jobs: int = DEFAULT_JOBS
    force_full: bool = False
    fail_fast: bool = False
    report: str | None = None
    allow_nested: bool = False

    def __post_init__(self):
        """
        ``__post_init__`` normalizes and validates ``RunConfig``.

        Raises:
            RunError: INVALID_CONFIG.
        """

        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, detail=f"jobs must be at least 1, got {self.jobs}")

        for name in ("project_root", "compdb_path", "workdir"):
            if not getattr(self, name):
                raise errors.RunError(errors.RunCodes.INVALID_CONFIG, detail=f"missing {name}")
            object.__setattr__(self, name, types.normalize_path(getattr(self, name), base=os.getcwd()))

        if not os.path.isdir(self.project_root):
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, path=self.project_root, detail="project root is not a directory")
        if self.workdir == self.project_root:
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, path=self.workdir, detail="work directory is the project root")
        if types.is_under(self.workdir, self.project_root) and not self.allow_nested:
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, path=self.workdir, detail="work directory inside the project root")
        if types.is_under(self.project_root, self.workdir):
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, path=self.workdir, detail="project root inside the work directory")

    @staticmethod
    def from_args(args: dict):
        """
        ``from_args`` generates ``RunConfig`` objects from docopt arguments.

        Parameters:
            args: Parsed ``retrofit run`` arguments.

        Returns:
            ``RunConfig`` object.

        Raises:
            RunError: INVALID_CONFIG.
        """

        try:
            jobs = int(args.get("--jobs") or DEFAULT_JOBS)
        except ValueError:
            raise errors.RunError(errors.RunCodes.INVALID_CONFIG, detail=f"jobs must be an integer, got {args['--jobs']}")

        return RunConfig(
            project_root=args["--root"],
            compdb_path=args["--compdb"],
            workdir=args["--workdir"],
            jobs=jobs,
            force_full=bool(args.get("--full")),
            fail_fast=bool(args.get("--fail-fast")),
            report=args.get("--report"),
            allow_nested=bool(args.get("--allow-nested")),
        )

    def mirrored(self, path: str) -> str:
        return types.normalize_path(os.path.relpath(path, self.project_root), base=self.workdir)


def mirror_tree(project_root: str, workdir: str, stale: set[str] = None) -> list[str]:
    """
    ``mirror_tree`` copies project files into the work directory.

    ``mirror_tree`` copies the whole tree when ``stale`` is None and only the
    listed files otherwise. Copies keep their modification times. The work
    directory and state directories are never copied.

    Parameters:
        project_root: Project root directory.
        workdir: Work directory.
        stale: Absolute paths to refresh, or None for everything.

    Returns:
        Copied paths, relative to the root.

    Raises:
        RunError: COPY_FAILURE.
    """

    project_root = types.normalize_path(project_root)
    workdir = types.normalize_path(workdir)

    if stale is None:
        sources = []
        for directory, dirnames, filenames in os.walk(project_root):
            dirnames[:] = sorted(
                name for name in dirnames if name != STATE_DIR and types.normalize_path(name, base=directory) != workdir
            )
            sources += [types.normalize_path(name, base=directory) for name in sorted(filenames)]
    else:
        sources = sorted(path for path in stale if types.is_under(path, project_root))

    copied = []

    for source in sources:
        relative = os.path.relpath(source, project_root)
        target = os.path.join(workdir, relative)
        try:
            os.makedirs(os.path.dirname(target), exist_ok=True)
            shutil.copy2(source, target)
        except OSError as err:
            raise errors.RunError(errors.RunCodes.COPY_FAILURE, path=source, detail=str(err)) from err
        copied.append(relative)

    logger.info("mirrored %d files into %s", len(copied), workdir)
    return copied


def write_text(path: str, text: str) -> None:
    """
    ``write_text`` writes transformed files through a temporary file.

    Raises:
        RunError: COPY_FAILURE.
    """

    temporary = path + ".tmp"

    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(temporary, "wb") as file:
            file.write(encode(text))
        os.replace(temporary, path)
    except OSError as err:
        raise errors.RunError(errors.RunCodes.COPY_FAILURE, path=path, detail=str(err)) from err


class Run:
    """
    ``Run`` encapsulates one transformation run over a project.

    Attributes:
        config: Run options.
        db: Compilation database.
        state: Incremental state from the last run.
        scans: Current scans of every unit.
        stale: Units to transform, in database order.
        summary: Run totals.
    """

    def __init__(self, config: RunConfig):
        """
        ``__init__`` loads the database and selects stale units.

        Parameters:
            config: Run options.

        Raises:
            CompdbError: Database errors.
            StateError: NEWER_SCHEMA, CORRUPT_STORE.
        """

        self.started: float = time.perf_counter()
        self.config: RunConfig = config
        self.db = load_database(config.compdb_path)
        self.db.check_root(config.project_root)
        self.state: ProjectState = ProjectState.from_file(state_path(config.workdir))
        self.scans: dict[str, incremental.Scan] = incremental.scan_units(self.db, config.project_root)

        if config.force_full:
            self.stale: list[CompileCommand] = list(self.db)
        else:
            self.stale: list[CompileCommand] = incremental.select_stale(self.state, self.db, self.scans)

        self.summary: RunSummary = RunSummary(units=len(self.db), skipped=len(self.db) - len(self.stale))

    @property
    def first_run(self) -> bool:
        return not os.path.isfile(state_path(self.config.workdir))

    def jobs(self) -> list[UnitJob]:
        """
        ``jobs`` schedules stale units.

        Each header is transformed once, by the first stale unit in database
        order that depends on it.

        Returns:
            Unit jobs, in database order.
        """

        owners = set()
        jobs = []

        for unit in self.stale:
            headers = tuple(sorted(self.scans[unit.file].dependencies))
            owned = tuple(header for header in headers if header not in owners and self.db.get(header) is None)
            owners.update(owned)
            outputs = {path: self.config.mirrored(path) for path in (unit.file,) + owned}
            jobs.append(UnitJob(unit.file, headers, owned, outputs))

        return jobs

    def mirror(self) -> None:
        if self.first_run:
            mirror_tree(self.config.project_root, self.config.workdir)
        else:
            refresh = {unit.file for unit in self.stale}
            for unit in self.stale:
                refresh.update(self.scans[unit.file].dependencies)
            mirror_tree(self.config.project_root, self.config.workdir, refresh)

    def execute(self, jobs: list[UnitJob]) -> list[UnitOutcome]:
        """
        ``execute`` transforms units, in parallel when ``jobs`` exceeds one.

        Parameters:
            jobs: Unit jobs.

        Returns:
            Unit outcomes, in database order.
        """

        outcomes = []

        if self.config.jobs == 1:
            for job in jobs:
                try:
                    outcome = transform_unit(job)
                except Exception as err:
                    outcome = crashed_unit(job, err)
                outcomes.append(outcome)
                if outcome.failed and self.config.fail_fast:
                    logger.error("%s: failed, not scheduling further units", job.unit)
                    break
            return outcomes

        with concurrent.futures.ProcessPoolExecutor(max_workers=self.config.jobs) as executor:
            futures = [executor.submit(transform_unit, job) for job in jobs]
            for job, future in zip(jobs, futures):
                if future.cancelled():
                    continue
                try:
                    outcome = future.result()
                except Exception as err:
                    outcome = crashed_unit(job, err)
                outcomes.append(outcome)
                if outcome.failed and self.config.fail_fast:
                    logger.error("%s: failed, not scheduling further units", job.unit)
                    for pending in futures:
                        pending.cancel()

        return outcomes

    def write(self, outcomes: list[UnitOutcome]) -> None:
        """
        ``write`` writes outputs and trace sidecars of successful units.

        Failed units leave their mirrored copies untouched.

        Parameters:
            outcomes: Unit outcomes.
        """

        for outcome in outcomes:
            if outcome.failed:
                for file in outcome.files:
                    for message in file.errors:
                        logger.error("%s", message)
                continue
            for file in outcome.files:
                write_text(file.output, file.text)
                file.linemap.to_sidecar(file.output)

    def run(self) -> int:
        """
        ``run`` runs the transformation.

        Returns:
            Exit status: 0 if every unit succeeded, 1 otherwise.

        Raises:
            RunError: COPY_FAILURE.
            StateError: STORE_WRITE_FAILURE.
        """

        self.mirror()
        jobs = self.jobs()
        transforming = time.perf_counter()
        outcomes = self.execute(jobs)
        writing = time.perf_counter()
        self.write(outcomes)

        for outcome in outcomes:
            self.summary.add(outcome)
        self.summary.failed += len(jobs) - len(outcomes)

        succeeded = {outcome.unit for outcome in outcomes if not outcome.failed}
        incremental.commit(self.state, [unit for unit in self.stale if unit.file in succeeded], self.scans, self.db)
        self.state.to_file(state_path(self.config.workdir))

        done = time.perf_counter()
        self.summary.phase_millis[SETUP] = (transforming - self.started) * 1000.0
        self.summary.phase_millis[WRITE] = (done - writing) * 1000.0
        self.summary.total_millis = (done - self.started) * 1000.0

        if self.config.report:
            write_report(self.config.report, outcomes, self.summary)

        logger.info("%s", self.summary)
        return _io.EXIT_FAILURES if self.summary.failed else _io.EXIT_OK


def run(config: RunConfig) -> tuple[int, RunSummary]:
    """
    ``run`` transforms projects.

    Parameters:
        config: Run options.

    Returns:
        Tuple of exit status and run totals.
    """

    session = Run(config)
    status = session.run()
    return (status, session.summary)


RETROFIT_RUN_DOC = """
Usage:
    retrofit run -p <compdb> -r <root> -w <workdir> [-v...] [options]

Options:
    -p --compdb=<compdb>      Path to compile_commands.json.
    -r --root=<root>          Project root directory.
    -w --workdir=<workdir>    Work directory for the transformed tree.
    -j --jobs=<jobs>          Worker processes [default: 1].
    --full                    Transform every unit.
    --fail-fast               Stop scheduling units after the first failure.
    --report=<file>           Write a JSON-lines report.
    --allow-nested            Allow the work directory inside the root.
    -v --verbose              Log more, repeat for debug output.
    -q --quiet                Log errors only.
"""


def main(argv: list[str] = sys.argv[1:]) -> None:
    """
    ``main`` executes the ``retrofit run`` command.

    Parameters:
        argv: Tokenized list of CLI arguments.
    """

    args = docopt.docopt(RETROFIT_RUN_DOC, argv=argv)
    _io.configure_logging(_io.verbosity(args))

    try:
        status, summary = run(RunConfig.from_args(args))
    except errors.RetrofitError as err:
        _io.error(str(err))

    print(summary)
    sys.exit(status)
