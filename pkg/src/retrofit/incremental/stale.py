"""
``stale`` contains the stale unit selection and state commit.

``stale`` compares compilation databases and on-disk scans against project
states. A unit is stale when it is new, or when any of the five change
triggers fires for it.
"""


import logging
from enum import StrEnum

from .scan import Scan
from ..files.compdb import CompileCommand
from ..files.compdb import CompilationDatabase
from ..files.state import ProjectState


logger = logging.getLogger(__name__)


class Trigger(StrEnum):
    """
    ``Trigger`` represents reasons for re-transforming units.
    """

    NEW_UNIT = "new-unit"
    UNIT_MODIFIED = "unit-modified"
    COMMAND_CHANGED = "command-changed"
    DEPENDENCY_MODIFIED = "dependency-modified"
    DEPENDENCY_ADDED = "dependency-added"
    DEPENDENCY_REMOVED = "dependency-removed"


def stale_reasons(state: ProjectState, unit: CompileCommand, scan: Scan) -> list[Trigger]:
    """
    ``stale_reasons`` lists the triggers firing for units.

    Parameters:
        state: Project state from the last run.
        unit: Compilation database entry.
        scan: Current scan of the unit.

    Returns:
        Firing triggers, empty for up-to-date units.
    """

    record = state.unit(unit.file)
    if record is None:
        return [Trigger.NEW_UNIT]

    reasons = []
    recorded = state.dependencies(unit.file)

    if record.timestamp != scan.timestamp:
        reasons.append(Trigger.UNIT_MODIFIED)
    if record.cmd_args != unit.command:
        reasons.append(Trigger.COMMAND_CHANGED)
    if any(path in recorded and recorded[path] != timestamp for path, timestamp in scan.dependencies.items()):
        reasons.append(Trigger.DEPENDENCY_MODIFIED)
    if scan.dependencies.keys() - recorded.keys():
        reasons.append(Trigger.DEPENDENCY_ADDED)
    if recorded.keys() - scan.dependencies.keys():
        reasons.append(Trigger.DEPENDENCY_REMOVED)

    return reasons


def select_stale(state: ProjectState, db: CompilationDatabase, scans: dict[str, Scan]) -> list[CompileCommand]:
    """
    ``select_stale`` selects the units to re-transform.

    Parameters:
        state: Project state from the last run.
        db: Current compilation database.
        scans: Dictionary from unit paths to current scans.

    Returns:
        Stale units, in database order.
    """

    stale = []

    for unit in db:
        reasons = stale_reasons(state, unit, scans[unit.file])
        if reasons:
            logger.debug("%s: stale (%s)", unit.file, ", ".join(reasons))
            stale.append(unit)

    logger.info("%d of %d units stale", len(stale), len(db))
    return stale


def commit(state: ProjectState, units: list[CompileCommand], scans: dict[str, Scan], db: CompilationDatabase = None) -> ProjectState:
    """
    ``commit`` records successful transformations in project states.

    Units absent from ``units`` keep their previous records, so failed units
    stay stale. Units missing from ``db`` are dropped; their file records stay.

    Parameters:
        state: Project state to update in place.
        units: Successfully transformed units.
        scans: Dictionary from unit paths to the scans taken before the run.
        db: Current compilation database, if known.

    Returns:
        Updated project state.
    """

    for unit in units:
        scan = scans[unit.file]
        state.set_unit(unit.file, scan.timestamp, unit.command, scan.dependencies)

    if db is not None:
        current = {unit.file for unit in db}
        for path in state.unit_paths():
            if path not in current:
                logger.info("%s: removed from the compilation database", path)
                state.drop_unit(path)

    return state
