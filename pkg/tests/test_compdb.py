"""
``test_compdb`` tests the ``retrofit.files.compdb`` module.
"""


import json

import pytest
import hypothesis as hy
import hypothesis.strategies as st

import _config
from retrofit.files.compdb import CompileCommand
from retrofit.files.compdb import CompilationDatabase
from retrofit.files.compdb import extract_include_dirs
from retrofit.files.compdb import load_database
from retrofit.files.utils import errors
from retrofit.files.utils import types


@st.composite
def directory_name(draw):
    return draw(st.text(alphabet="abcdefghijklmnopqrstuvwxyz_", min_size=1, max_size=8))


def write_database(tmp_path, entries) -> str:
    path = tmp_path / "compile_commands.json"
    path.write_text(json.dumps(entries), encoding="utf-8")
    return str(path)


class Test_CompileCommand:
    class Test_Init:
        def test_valid(self):
            command = CompileCommand("/project/build/", "g++ -c ../src/a.cpp", "../src/a.cpp")

            assert command.directory == "/project/build"
            assert command.file == "/project/src/a.cpp"
            assert command.command == "g++ -c ../src/a.cpp"

        def test_windows_paths(self):
            command = CompileCommand("C:\\project\\build", "cl /c a.cpp", "a.cpp")

            assert command.file == "C:/project/build/a.cpp"

        @pytest.mark.parametrize(
            "directory, command, code",
            [
                ("", "g++ -c a.cpp", errors.CompdbCodes.EMPTY_VALUE),
                ("/p", "g++ -c b.cpp", errors.CompdbCodes.FILE_NOT_IN_COMMAND),
            ],
        )
        def test_invalid(self, directory, command, code):
            with pytest.raises(errors.CompdbError) as err:
                CompileCommand(directory, command, "a.cpp")

            assert err.value.code == code

    class Test_FromJson:
        def test_valid(self):
            command = CompileCommand.from_json({"directory": "/p", "command": "g++ -c a.cpp", "file": "a.cpp", "output": "a.o"}, 0)

            assert command.to_json() == {"directory": "/p", "command": "g++ -c a.cpp", "file": "/p/a.cpp"}

        @pytest.mark.parametrize(
            "value, code",
            [
                (["/p", "g++", "a.cpp"], errors.CompdbCodes.NOT_AN_OBJECT),
                ({"directory": "/p", "file": "a.cpp"}, errors.CompdbCodes.MISSING_KEY),
                ({"directory": "/p", "command": "g++", "file": 3}, errors.CompdbCodes.INVALID_VALUE),
                ({"directory": "", "command": "g++ -c a.cpp", "file": "a.cpp"}, errors.CompdbCodes.EMPTY_VALUE),
                ({"directory": "/p", "command": "g++ -c main.cpp", "file": "a.cpp"}, errors.CompdbCodes.FILE_NOT_IN_COMMAND),
            ],
        )
        def test_invalid(self, value, code):
            with pytest.raises(errors.CompdbError) as err:
                CompileCommand.from_json(value, 4)

            assert err.value.code == code
            assert err.value.line == 4

    class Test_ExtractIncludeDirs:
        def test_valid(self):
            command = CompileCommand("/p/build", "g++ -I../include -I /usr/local/include -Iinc -DX -isystem /sys -c ../src/a.cpp", "../src/a.cpp")

            assert extract_include_dirs(command) == ["/p/src", "/p/include", "/usr/local/include", "/p/build/inc"]

        def test_quoted(self):
            command = CompileCommand("/p", 'g++ -I"dir with space" -c a.cpp', "a.cpp")

            assert extract_include_dirs(command) == ["/p", "/p/dir with space"]

        @hy.settings(max_examples=_config.HY_TRIALS)
        @hy.given(st.lists(directory_name(), max_size=6), st.booleans())
        def test_order(self, names, joined):
            flags = " ".join(f"-I{name}" if joined else f"-I {name}" for name in names)
            command = CompileCommand("/p", f"g++ {flags} -c a.cpp", "src/a.cpp")

            assert extract_include_dirs(command) == ["/p/src"] + [f"/p/{name}" for name in names]


class Test_CompilationDatabase:
    class Test_Load:
        @hy.settings(max_examples=_config.HY_TRIALS)
        @hy.given(st.lists(directory_name(), min_size=1, max_size=8, unique=True))
        def test_order(self, names):
            entries = [{"directory": "/p", "command": f"g++ -c {name}.cpp", "file": f"{name}.cpp"} for name in names]
            db = CompilationDatabase.from_json(json.dumps(entries))

            assert [command.file for command in db] == [f"/p/{name}.cpp" for name in names]
            assert len(db) == len(names)
            assert db.get(f"/p/{names[0]}.cpp") is db[0]

        def test_file(self, tmp_path):
            path = write_database(tmp_path, [{"directory": str(tmp_path), "command": "g++ -c a.cpp", "file": "a.cpp"}])
            db = load_database(path)

            assert db[0].file == types.normalize_path(str(tmp_path / "a.cpp"))

        def test_empty(self):
            assert len(CompilationDatabase.from_json("[]")) == 0

        @pytest.mark.parametrize(
            "source, code",
            [
                ("{not json", errors.CompdbCodes.UNREADABLE_FILE),
                ('{"directory": "/p"}', errors.CompdbCodes.NOT_AN_ARRAY),
                ('[{"directory": "/p", "command": "g++"}]', errors.CompdbCodes.MISSING_KEY),
                ('[1]', errors.CompdbCodes.NOT_AN_OBJECT),
                (
                    '[{"directory": "/p", "command": "g++ -c a.cpp", "file": "a.cpp"},'
                    ' {"directory": "/p/x/..", "command": "g++ -O2 -c a.cpp", "file": "a.cpp"}]',
                    errors.CompdbCodes.DUPLICATE_UNIT,
                ),
            ],
        )
        def test_invalid(self, source, code):
            with pytest.raises(errors.CompdbError) as err:
                CompilationDatabase.from_json(source, "compile_commands.json")

            assert err.value.code == code
            assert err.value.path == "compile_commands.json"

        def test_missing_file(self, tmp_path):
            with pytest.raises(errors.CompdbError) as err:
                load_database(str(tmp_path / "absent.json"))

            assert err.value.code == errors.CompdbCodes.UNREADABLE_FILE

    class Test_CheckRoot:
        def test_valid(self):
            db = CompilationDatabase.from_json('[{"directory": "/p", "command": "g++ -c src/a.cpp", "file": "src/a.cpp"}]')

            db.check_root("/p")
            db.check_root("/p/src/")

        def test_invalid(self):
            db = CompilationDatabase.from_json('[{"directory": "/p", "command": "g++ -c ../q/a.cpp", "file": "../q/a.cpp"}]')

            with pytest.raises(errors.CompdbError) as err:
                db.check_root("/p")

            assert err.value.code == errors.CompdbCodes.OUTSIDE_ROOT

    def test_round_trip(self):
        db = CompilationDatabase.from_json('[{"directory": "/p", "command": "g++ -c a.cpp", "file": "a.cpp"}]')

        assert CompilationDatabase.from_json(db.to_json())[0] == db[0]
