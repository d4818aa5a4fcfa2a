"""
``records`` contains the rows of the incremental state store.
"""


import dataclasses


@dataclasses.dataclass(frozen=True)
class FileRecord:
    """
    ``FileRecord`` represents files known to the store.

    Attributes:
        id: Integer key.
        path: Absolute normalized path, unique.
    """

    id: int
    path: str


@dataclasses.dataclass(frozen=True)
class UnitRecord:
    """
    ``UnitRecord`` represents compilation units transformed before.

    Attributes:
        id: Integer key.
        file_id: Key of the unit file.
        timestamp: Unit file mtime in nanoseconds at the last successful
            transformation.
        cmd_args: Command line at the last successful transformation,
            compared byte-wise.
    """

    id: int
    file_id: int
    timestamp: int
    cmd_args: str


@dataclasses.dataclass(frozen=True)
class RelationRecord:
    """
    ``RelationRecord`` represents dependencies of compilation units.

    Dependencies are flat: headers included by headers are attached directly
    to the unit.

    Attributes:
        file_id: Key of the unit file.
        dep_id: Key of the dependency file.
        dependency_timestamp: Dependency mtime in nanoseconds when recorded.
    """

    file_id: int
    dep_id: int
    dependency_timestamp: int
