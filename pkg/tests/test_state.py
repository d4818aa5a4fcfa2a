"""
``test_state`` tests the ``retrofit.files.state`` module.
"""


import sqlite3

import pytest
import hypothesis as hy
import hypothesis.strategies as st

import _config
from retrofit.files.state import ProjectState
from retrofit.files.state import SCHEMA_VERSION
from retrofit.files.state import state_path
from retrofit.files.utils import errors


@st.composite
def unit_rows(draw):
    names = draw(st.lists(st.text(alphabet="abcdefghij", min_size=1, max_size=6), min_size=1, max_size=5, unique=True))
    rows = []
    for name in names:
        timestamp = draw(st.integers(min_value=0, max_value=2**62))
        command = draw(st.text(alphabet="abc -_=/", max_size=20))
        headers = draw(st.lists(st.sampled_from(["a.h", "b.h", "c.h"]), unique=True))
        rows.append((f"/p/{name}.cpp", timestamp, command, {f"/p/{header}": timestamp + 1 for header in headers}))
    return rows


def write_meta(path, version) -> None:
    with sqlite3.connect(path) as connection:
        connection.execute("CREATE TABLE meta (key TEXT PRIMARY KEY, value TEXT NOT NULL)")
        if version is not None:
            connection.execute("INSERT INTO meta (key, value) VALUES ('schema_version', ?)", (str(version),))


class Test_ProjectState:
    class Test_FromFile:
        def test_missing(self, tmp_path):
            state = ProjectState.from_file(state_path(str(tmp_path)))

            assert len(state) == 0
            assert state.unit_paths() == []

        @pytest.mark.parametrize(
            "version, code",
            [
                (SCHEMA_VERSION + 1, errors.StateCodes.NEWER_SCHEMA),
                (None, errors.StateCodes.CORRUPT_STORE),
                ("one", errors.StateCodes.CORRUPT_STORE),
            ],
        )
        def test_invalid(self, tmp_path, version, code):
            path = str(tmp_path / "state.db")
            write_meta(path, version)

            with pytest.raises(errors.StateError) as err:
                ProjectState.from_file(path)

            assert err.value.code == code
            assert err.value.path == path

        def test_garbage(self, tmp_path):
            path = tmp_path / "state.db"
            path.write_bytes(b"definitely not sqlite\n" * 64)

            with pytest.raises(errors.StateError) as err:
                ProjectState.from_file(str(path))

            assert err.value.code == errors.StateCodes.CORRUPT_STORE

    class Test_ToFile:
        @hy.settings(max_examples=_config.HY_TRIALS, suppress_health_check=[hy.HealthCheck.function_scoped_fixture])
        @hy.given(rows=unit_rows())
        def test_valid(self, tmp_path, rows):
            path = str(tmp_path / "nested" / "state.db")
            state = ProjectState()
            for unit, timestamp, command, dependencies in rows:
                state.set_unit(unit, timestamp, command, dependencies)

            state.to_file(path)
            loaded = ProjectState.from_file(path)

            assert loaded.unit_paths() == state.unit_paths()
            for unit, timestamp, command, dependencies in rows:
                assert loaded.unit(unit) == state.unit(unit)
                assert loaded.unit(unit).cmd_args == command
                assert loaded.dependencies(unit) == dependencies

        def test_no_leftovers(self, tmp_path):
            path = tmp_path / "state.db"
            ProjectState().to_file(str(path))

            assert [child.name for child in tmp_path.iterdir()] == ["state.db"]

        def test_invalid(self, tmp_path):
            blocker = tmp_path / "blocker"
            blocker.write_text("", encoding="utf-8")

            with pytest.raises(errors.StateError) as err:
                ProjectState().to_file(str(blocker / "state.db"))

            assert err.value.code == errors.StateCodes.STORE_WRITE_FAILURE

        def test_previous_kept(self, tmp_path):
            path = tmp_path / "state.db"
            state = ProjectState()
            state.set_unit("/p/a.cpp", 1, "g++ -c a.cpp", {})
            state.to_file(str(path))
            (tmp_path / "state.db.tmp").mkdir()

            with pytest.raises(errors.StateError):
                ProjectState().to_file(str(path))

            assert ProjectState.from_file(str(path)).unit_paths() == ["/p/a.cpp"]

    class Test_SetUnit:
        def test_valid(self):
            state = ProjectState()
            first = state.set_unit("/p/a.cpp", 5, "g++ -c a.cpp", {"/p/a.h": 3, "/p/b.h": 4})
            again = state.set_unit("/p/a.cpp", 6, "g++ -c a.cpp", {"/p/a.h": 3})

            assert again.id == first.id
            assert state.dependencies("/p/a.cpp") == {"/p/a.h": 3}
            assert state.file("/p/b.h") is not None

        def test_normalized(self):
            state = ProjectState()
            state.set_unit("/p/src/../a.cpp", 1, "g++", {})

            assert state.unit("/p/a.cpp") is not None
            assert state.unit("/p/./a.cpp") is not None

        def test_drop(self):
            state = ProjectState()
            state.set_unit("/p/a.cpp", 1, "g++", {"/p/a.h": 1})
            state.drop_unit("/p/a.cpp")

            assert state.unit("/p/a.cpp") is None
            assert state.dependencies("/p/a.cpp") == {}


def test_state_path():
    assert state_path("/work/") == "/work/.retrofit/state.db"
