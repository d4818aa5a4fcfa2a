"""
``test_incremental`` tests the ``retrofit.incremental`` module.
"""


import os

import pytest

from retrofit.files.compdb import CompileCommand
from retrofit.files.compdb import CompilationDatabase
from retrofit.files.state import ProjectState
from retrofit.incremental import Trigger
from retrofit.incremental import commit
from retrofit.incremental import scan_dependencies
from retrofit.incremental import scan_units
from retrofit.incremental import select_stale
from retrofit.incremental import stale_reasons


SECOND = 1_000_000_000


class Project:
    """
    ``Project`` builds small projects on disk whose files can be changed with
    strictly increasing modification times.
    """

    def __init__(self, root):
        self.root = root
        self.command = f"g++ -I{root}/include -c main.cpp"

        self.write("src/main.cpp", '#include "util.h"\n#include <lib.h>\nint main() { return 0; }\n')
        self.write("src/util.h", '#include "detail.h"\n')
        self.write("src/detail.h", "int detail();\n")
        self.write("src/other.cpp", "int other() { return 1; }\n")
        self.write("include/lib.h", "int lib();\n")
        self.write("include/extra.h", "int extra();\n")

    def path(self, relative: str) -> str:
        return str(self.root / relative)

    def write(self, relative: str, text: str) -> None:
        path = self.root / relative
        before = path.stat().st_mtime_ns if path.exists() else 0
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        after = max(path.stat().st_mtime_ns, before + SECOND)
        os.utime(path, ns=(after, after))

    def touch(self, relative: str) -> None:
        after = (self.root / relative).stat().st_mtime_ns + SECOND
        os.utime(self.root / relative, ns=(after, after))

    def remove(self, relative: str) -> None:
        (self.root / relative).unlink()

    def database(self) -> CompilationDatabase:
        src = self.path("src")
        return CompilationDatabase([CompileCommand(src, self.command, "main.cpp"), CompileCommand(src, "g++ -c other.cpp", "other.cpp")])

    def scan(self):
        db = self.database()
        return (db, scan_units(db, str(self.root)))

    def committed(self) -> ProjectState:
        db, scans = self.scan()
        return commit(ProjectState(), list(db), scans, db)


@pytest.fixture
def project(tmp_path):
    return Project(tmp_path / "project")


def _add_include(project):
    project.write("src/main.cpp", '#include "util.h"\n#include <lib.h>\n#include <extra.h>\nint main() { return 0; }\n')


def _drop_include(project):
    project.write("src/main.cpp", "#include <lib.h>\nint main() { return 0; }\n")


def _header_includes(project):
    project.write("src/util.h", '#include "detail.h"\n#include <extra.h>\n')


def _force_include(project):
    project.command += f" -include {project.root}/include/extra.h"


def _drop_include_dir(project):
    project.command = "g++ -c main.cpp"


def _respace(project):
    project.command = project.command.replace(" -c", "  -c")


def _touch_both(project):
    project.touch("src/main.cpp")
    project.touch("src/util.h")


SCENARIOS = [
    ("unchanged", lambda project: None, []),
    ("unit touched", lambda project: project.touch("src/main.cpp"), [Trigger.UNIT_MODIFIED]),
    ("unit rewritten", lambda project: project.write("src/main.cpp", '#include "util.h"\n#include <lib.h>\nint main() { return 1; }\n'), [Trigger.UNIT_MODIFIED]),
    ("flag added", lambda project: setattr(project, "command", project.command + " -O2"), [Trigger.COMMAND_CHANGED]),
    ("flag respaced", _respace, [Trigger.COMMAND_CHANGED]),
    ("header touched", lambda project: project.touch("src/util.h"), [Trigger.DEPENDENCY_MODIFIED]),
    ("nested header touched", lambda project: project.touch("src/detail.h"), [Trigger.DEPENDENCY_MODIFIED]),
    ("system header touched", lambda project: project.touch("include/lib.h"), [Trigger.DEPENDENCY_MODIFIED]),
    ("include added", _add_include, [Trigger.UNIT_MODIFIED, Trigger.DEPENDENCY_ADDED]),
    ("include dropped", _drop_include, [Trigger.UNIT_MODIFIED, Trigger.DEPENDENCY_REMOVED]),
    ("header includes more", _header_includes, [Trigger.DEPENDENCY_MODIFIED, Trigger.DEPENDENCY_ADDED]),
    ("nested header deleted", lambda project: project.remove("src/detail.h"), [Trigger.DEPENDENCY_REMOVED]),
    ("forced include", _force_include, [Trigger.COMMAND_CHANGED, Trigger.DEPENDENCY_ADDED]),
    ("include dir dropped", _drop_include_dir, [Trigger.COMMAND_CHANGED, Trigger.DEPENDENCY_REMOVED]),
    ("unit and header touched", _touch_both, [Trigger.UNIT_MODIFIED, Trigger.DEPENDENCY_MODIFIED]),
    ("sibling touched", lambda project: project.touch("src/other.cpp"), []),
]


class Test_ScanDependencies:
    def test_valid(self, project):
        db, _ = project.scan()

        assert scan_dependencies(db[0]) == {project.path("src/util.h"), project.path("src/detail.h"), project.path("include/lib.h")}
        assert scan_dependencies(db[1]) == set()

    def test_include_dirs(self, project):
        db, _ = project.scan()

        assert scan_dependencies(db[0], include_dirs=[]) == {project.path("src/util.h"), project.path("src/detail.h")}

    def test_cycle(self, project):
        project.write("src/detail.h", '#include "util.h"\n#include "detail.h"\n')
        db, _ = project.scan()

        assert scan_dependencies(db[0]) == {project.path("src/util.h"), project.path("src/detail.h"), project.path("include/lib.h")}

    def test_forced(self, project):
        project.command += " -include ../include/extra.h"
        db, _ = project.scan()

        assert project.path("include/extra.h") in scan_dependencies(db[0])

    def test_outside_root(self, project):
        db, _ = project.scan()

        assert scan_dependencies(db[0], root=project.path("src")) == {project.path("src/util.h"), project.path("src/detail.h")}

    def test_unresolved(self, project):
        project.write("src/other.cpp", "#include <vector>\n#include \"missing.h\"\nint other();\n")
        db, _ = project.scan()

        assert scan_dependencies(db[1]) == set()


class Test_ScanUnits:
    def test_valid(self, project):
        _, scans = project.scan()
        main = scans[project.path("src/main.cpp")]

        assert main.timestamp == os.stat(project.path("src/main.cpp")).st_mtime_ns
        assert list(main.dependencies) == sorted(main.dependencies)
        assert main.dependencies[project.path("src/util.h")] == os.stat(project.path("src/util.h")).st_mtime_ns


class Test_StaleReasons:
    def test_new(self, project):
        db, scans = project.scan()

        assert stale_reasons(ProjectState(), db[0], scans[db[0].file]) == [Trigger.NEW_UNIT]

    @pytest.mark.parametrize("name, change, expected", SCENARIOS, ids=[name for name, _, _ in SCENARIOS])
    def test_valid(self, project, name, change, expected):
        state = project.committed()
        change(project)
        db, scans = project.scan()

        assert stale_reasons(state, db[0], scans[db[0].file]) == expected


class Test_SelectStale:
    def test_valid(self, project):
        db, scans = project.scan()

        assert select_stale(ProjectState(), db, scans) == list(db)

    def test_order(self, project):
        state = project.committed()
        project.touch("src/other.cpp")
        project.touch("src/main.cpp")
        db, scans = project.scan()

        assert [unit.file for unit in select_stale(state, db, scans)] == [project.path("src/main.cpp"), project.path("src/other.cpp")]

    def test_up_to_date(self, project):
        state = project.committed()
        db, scans = project.scan()

        assert select_stale(state, db, scans) == []


class Test_Commit:
    def test_valid(self, project):
        db, scans = project.scan()
        state = commit(ProjectState(), list(db), scans, db)

        assert len(state) == 2
        assert state.unit(db[0].file).cmd_args == project.command
        assert state.dependencies(db[0].file) == scans[db[0].file].dependencies

    def test_failed_stays_stale(self, project):
        db, scans = project.scan()
        state = commit(ProjectState(), [db[1]], scans, db)

        assert select_stale(state, db, scans) == [db[0]]

    def test_dropped_units(self, project):
        state = project.committed()
        db, scans = project.scan()
        shrunk = CompilationDatabase([db[0]])
        commit(state, [], scans, shrunk)

        assert state.unit_paths() == [db[0].file]
        assert state.file(db[1].file) is not None

    def test_scans_before_run(self, project):
        db, scans = project.scan()
        project.touch("src/util.h")
        state = commit(ProjectState(), list(db), scans, db)
        _, rescans = project.scan()

        assert stale_reasons(state, db[0], rescans[db[0].file]) == [Trigger.DEPENDENCY_MODIFIED]
