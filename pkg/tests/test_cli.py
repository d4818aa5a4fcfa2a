"""
``test_cli`` tests the ``retrofit.cli`` module.
"""


import os
import json
import time
import hashlib

import pytest

import _config
import retrofit.main
from retrofit.cli import RunConfig
from retrofit.cli import Status
from retrofit.cli import Trace
from retrofit.cli import mirror_tree
from retrofit import transforms
from retrofit.cli.run import Run
from retrofit.cli.run import run
from retrofit.files.state import STATE_DIR
from retrofit.files.trace import SIDECAR_SUFFIX
from retrofit.files.utils import errors


MAIN = """#include "shapes.h"

int area(const Shape &s)
{
  auto w = s.width;
  return w * s.height;
}
"""

SHAPES = """#ifndef SHAPES_H
#define SHAPES_H

using Length = int;

struct Shape {
  int width = 2;
  int height = 3;
  Length sides() const { return 4; }
};

#endif
"""

PLAIN = """// nothing to backport here

int twice(int x)
{
  return 2 * x;
}
"""

CYCLE = """struct Loop {
  int v;
  Loop() : Loop(1) {}
  Loop(int x) : Loop() { v = x; }
};
"""


def tree_digest(work) -> str:
    digest = hashlib.sha256()
    for path in sorted(work.rglob("*")):
        if path.is_file() and STATE_DIR not in path.relative_to(work).parts:
            digest.update(str(path.relative_to(work)).encode("utf-8"))
            digest.update(path.read_bytes())
    return digest.hexdigest()


class Workspace:
    """
    ``Workspace`` lays out a project with its compilation database next to
    an empty work directory.
    """

    def __init__(self, tmp_path, units: dict[str, str], headers: dict[str, str] = None):
        self.root = tmp_path / "project"
        self.work = tmp_path / "work"
        self.compdb = tmp_path / "compile_commands.json"

        for name, text in {**units, **(headers or {})}.items():
            self.write(name, text)

        entries = [{"directory": str(self.root), "command": f"g++ -std=c++11 -c {name}", "file": name} for name in units]
        self.compdb.write_text(json.dumps(entries), encoding="utf-8")

    def write(self, name: str, text: str) -> None:
        path = self.root / name
        before = path.stat().st_mtime_ns if path.exists() else 0
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        after = max(path.stat().st_mtime_ns, before + 1_000_000_000)
        os.utime(path, ns=(after, after))

    def config(self, **kwargs) -> RunConfig:
        work = kwargs.pop("work", self.work)
        return RunConfig(project_root=str(self.root), compdb_path=str(self.compdb), workdir=str(work), **kwargs)

    def output(self, name: str, work=None) -> str:
        return ((work or self.work) / name).read_text(encoding="utf-8")


@pytest.fixture
def workspace(tmp_path):
    return Workspace(tmp_path, {"src/area.cpp": MAIN, "src/plain.cpp": PLAIN}, {"src/shapes.h": SHAPES})


class Test_RunConfig:
    def test_valid(self, tmp_path):
        (tmp_path / "project").mkdir()
        config = RunConfig(str(tmp_path / "project/"), str(tmp_path / "cc.json"), str(tmp_path / "work/./"), jobs=3)

        assert config.project_root == str(tmp_path / "project")
        assert config.workdir == str(tmp_path / "work")
        assert config.mirrored(str(tmp_path / "project/src/a.cpp")) == str(tmp_path / "work/src/a.cpp")

    def test_nested(self, tmp_path):
        (tmp_path / "project").mkdir()
        config = RunConfig(str(tmp_path / "project"), "cc.json", str(tmp_path / "project/out"), allow_nested=True)

        assert config.allow_nested

    @pytest.mark.parametrize(
        "root, workdir, jobs",
        [
            ("project", "work", 0),
            ("project", "work", -2),
            ("project", "", 1),
            ("missing", "work", 1),
            ("project", "project", 1),
            ("project", "project/out", 1),
            ("project/inner", "project", 1),
        ],
    )
    def test_invalid(self, tmp_path, root, workdir, jobs):
        (tmp_path / "project" / "inner").mkdir(parents=True)
        workdir = str(tmp_path / workdir) if workdir else ""

        with pytest.raises(errors.RunError) as err:
            RunConfig(str(tmp_path / root), str(tmp_path / "cc.json"), workdir, jobs=jobs)

        assert err.value.code == errors.RunCodes.INVALID_CONFIG

    def test_from_args(self, tmp_path):
        (tmp_path / "project").mkdir()
        args = {"--root": str(tmp_path / "project"), "--compdb": "cc.json", "--workdir": str(tmp_path / "work"), "--jobs": "4", "--full": True}
        config = RunConfig.from_args(args)

        assert config.jobs == 4
        assert config.force_full
        assert not config.fail_fast
        assert config.report is None

        with pytest.raises(errors.RunError) as err:
            RunConfig.from_args({**args, "--jobs": "four"})

        assert err.value.code == errors.RunCodes.INVALID_CONFIG


class Test_MirrorTree:
    def test_valid(self, workspace):
        (workspace.root / STATE_DIR).mkdir()
        (workspace.root / STATE_DIR / "state.db").write_bytes(b"")
        copied = mirror_tree(str(workspace.root), str(workspace.work))

        assert copied == ["src/area.cpp", "src/plain.cpp", "src/shapes.h"]
        assert workspace.output("src/shapes.h") == SHAPES
        assert os.stat(workspace.work / "src/area.cpp").st_mtime_ns == os.stat(workspace.root / "src/area.cpp").st_mtime_ns

    def test_nested(self, workspace):
        inside = workspace.root / "out"
        mirror_tree(str(workspace.root), str(inside))
        copied = mirror_tree(str(workspace.root), str(inside))

        assert copied == ["src/area.cpp", "src/plain.cpp", "src/shapes.h"]

    def test_stale(self, workspace):
        mirror_tree(str(workspace.root), str(workspace.work))
        workspace.write("src/plain.cpp", "int once(int x) { return x; }\n")
        workspace.write("src/area.cpp", "int changed;\n")
        copied = mirror_tree(str(workspace.root), str(workspace.work), {str(workspace.root / "src/plain.cpp"), "/elsewhere/x.cpp"})

        assert copied == ["src/plain.cpp"]
        assert workspace.output("src/plain.cpp") == "int once(int x) { return x; }\n"
        assert workspace.output("src/area.cpp") == MAIN

    def test_invalid(self, workspace):
        with pytest.raises(errors.RunError) as err:
            mirror_tree(str(workspace.root), str(workspace.work), {str(workspace.root / "src/gone.cpp")})

        assert err.value.code == errors.RunCodes.COPY_FAILURE


class Test_Run:
    def test_valid(self, workspace):
        status, summary = run(workspace.config())

        assert status == 0
        assert (summary.units, summary.transformed, summary.skipped, summary.failed) == (2, 2, 0, 0)
        assert "int w = s.width;" in workspace.output("src/area.cpp")
        assert workspace.output("src/plain.cpp") == PLAIN
        assert "typedef int Length;" in workspace.output("src/shapes.h")
        assert "Shape() : width(2), height(3) {}" in workspace.output("src/shapes.h")
        assert (workspace.work / ("src/area.cpp" + SIDECAR_SUFFIX)).is_file()
        assert (workspace.work / STATE_DIR / "state.db").is_file()
        assert summary.feature_edits["auto"] == 1

    def test_incremental(self, workspace):
        run(workspace.config())
        _, rerun = run(workspace.config())

        assert (rerun.transformed, rerun.skipped) == (0, 2)

        workspace.write("src/shapes.h", SHAPES.replace("= 3", "= 4"))
        _, touched = run(workspace.config())

        assert (touched.transformed, touched.skipped) == (1, 1)
        assert "height(4)" in workspace.output("src/shapes.h")

        _, forced = run(workspace.config(force_full=True))

        assert (forced.transformed, forced.skipped) == (2, 0)

    def test_untransformed_kept(self, workspace):
        run(workspace.config())
        (workspace.work / "src/plain.cpp").write_text("// edited in the work directory\n", encoding="utf-8")
        run(workspace.config())

        assert workspace.output("src/plain.cpp") == "// edited in the work directory\n"

    def test_failed(self, tmp_path):
        workspace = Workspace(tmp_path, {"loop.cpp": CYCLE, "plain.cpp": PLAIN})
        status, summary = run(workspace.config())

        assert status == 1
        assert (summary.transformed, summary.failed) == (1, 1)
        assert workspace.output("loop.cpp") == CYCLE
        assert not (workspace.work / ("loop.cpp" + SIDECAR_SUFFIX)).exists()

        _, again = run(workspace.config())

        assert (again.failed, again.skipped) == (1, 1)

    def test_fail_fast(self, tmp_path):
        workspace = Workspace(tmp_path, {"loop.cpp": CYCLE, "plain.cpp": PLAIN})
        status, summary = run(workspace.config(fail_fast=True))

        assert status == 1
        assert (summary.transformed, summary.failed) == (0, 2)

    def test_report(self, workspace, tmp_path):
        report = tmp_path / "report.jsonl"
        run(workspace.config(report=str(report)))
        lines = [json.loads(line) for line in report.read_text(encoding="utf-8").splitlines()]

        phases = [line for line in lines if line["record"] == "phase"]
        passes = [line for line in lines if line["record"] == "pass"]
        assert len(phases) == 3 * 5
        assert {line["file"] for line in phases} == {str(workspace.root / name) for name in ("src/area.cpp", "src/plain.cpp", "src/shapes.h")}
        assert len(passes) == 3 * 8
        assert lines[-1]["record"] == "summary"
        assert lines[-1]["transformed"] == 2

    def test_parallel(self, tmp_path):
        units = {f"src/unit{index}.cpp": MAIN.replace("area", f"area{index}") for index in range(6)}
        workspace = Workspace(tmp_path, {**units, "src/plain.cpp": PLAIN}, {"src/shapes.h": SHAPES})
        digests = {}

        for jobs in (1, 2, 4):
            work = tmp_path / f"work{jobs}"
            _, summary = run(workspace.config(work=work, jobs=jobs))
            digests[jobs] = tree_digest(work)
            assert (summary.transformed, summary.feature_edits["auto"]) == (7, 6)

        assert digests[1] == digests[2] == digests[4]

    def test_phase_times(self, workspace):
        _, summary = run(workspace.config())

        assert summary.phase_millis["SyntaxCheck"] > 0
        assert sum(summary.phase_millis.values()) == pytest.approx(summary.total_millis, rel=0.05)

    def test_bytes_kept(self, tmp_path):
        workspace = Workspace(tmp_path, {"latin.cpp": ""})
        (workspace.root / "latin.cpp").write_bytes(b'const char *s = "\xe9\xc3\xa9";\nint f() { auto x = 1; return x; }\n')
        status, _ = run(workspace.config())

        assert status == 0
        assert (workspace.work / "latin.cpp").read_bytes() == b'const char *s = "\xe9\xc3\xa9";\nint f() { int x = 1; return x; }\n'

    def test_unreadable_unit(self, workspace):
        session = Run(workspace.config())
        os.remove(workspace.root / "src/area.cpp")
        status = session.run()

        assert status == 1
        assert (session.summary.transformed, session.summary.failed) == (1, 1)
        assert (workspace.work / ("src/plain.cpp" + SIDECAR_SUFFIX)).is_file()
        assert not (workspace.work / ("src/area.cpp" + SIDECAR_SUFFIX)).exists()

    def test_crashing_pass(self, workspace, monkeypatch):
        run_phases = transforms.run_phases

        def crash(syntax, *args, **kwargs):
            if syntax.path.endswith("area.cpp"):
                raise RuntimeError("boom")
            return run_phases(syntax, *args, **kwargs)

        monkeypatch.setattr(transforms, "run_phases", crash)
        status, summary = run(workspace.config())

        assert status == 1
        assert (summary.transformed, summary.failed) == (1, 1)
        assert workspace.output("src/area.cpp") == MAIN
        assert workspace.output("src/plain.cpp") == PLAIN

    @pytest.mark.slow
    @pytest.mark.skipif(not _config.SLOW, reason="set RETROFIT_SLOW=1")
    def test_scaling(self, tmp_path):
        body = "".join(f"int f{k}(int a) {{ auto g = [a](int b) {{ return a + b; }}; return g({k}); }}\n" for k in range(20))
        workspace = Workspace(tmp_path, {f"src/u{index}.cpp": body for index in range(200)})

        start = time.perf_counter()
        run(workspace.config(work=tmp_path / "one", jobs=1))
        serial = time.perf_counter() - start

        start = time.perf_counter()
        run(workspace.config(work=tmp_path / "four", jobs=4))
        parallel = time.perf_counter() - start

        assert parallel <= 0.75 * serial
        assert tree_digest(tmp_path / "one") == tree_digest(tmp_path / "four")


class Test_Trace:
    def test_valid(self, workspace):
        run(workspace.config())
        trace = Trace(str(workspace.work / "src/area.cpp"))

        assert trace.locate(1) == f"{workspace.root}/src/area.cpp:1"
        assert trace.locate(5) == f"~{workspace.root}/src/area.cpp:5"

    def test_invalid(self, workspace):
        run(workspace.config())
        trace = Trace(str(workspace.work / "src/area.cpp"))

        with pytest.raises(errors.TraceError) as err:
            trace.locate(100)

        assert err.value.code == errors.TraceCodes.LINE_OUT_OF_RANGE

    def test_main(self, workspace, capsys):
        run(workspace.config())
        retrofit.main.main(["trace", str(workspace.work / "src/plain.cpp"), "3"])

        assert capsys.readouterr().out == f"{workspace.root}/src/plain.cpp:3\n"

    @pytest.mark.parametrize("line", ["three", "0"])
    def test_main_invalid(self, workspace, line):
        run(workspace.config())

        with pytest.raises(SystemExit) as err:
            retrofit.main.main(["trace", str(workspace.work / "src/plain.cpp"), line])

        assert err.value.code == 2


class Test_Status:
    def test_valid(self, workspace):
        status = Status(str(workspace.compdb), str(workspace.root), str(workspace.work))

        assert status.to_text() == f"{workspace.root}/src/area.cpp: new-unit\n{workspace.root}/src/plain.cpp: new-unit"

        run(workspace.config())

        assert Status(str(workspace.compdb), str(workspace.root), str(workspace.work)).to_text() == "all units up to date"

    def test_changed(self, workspace):
        run(workspace.config())
        workspace.write("src/shapes.h", SHAPES + "\n")

        assert Status(str(workspace.compdb), str(workspace.root), str(workspace.work)).reasons == {
            f"{workspace.root}/src/area.cpp": ["dependency-modified"]
        }


class Test_Main:
    def test_title(self, capsys):
        retrofit.main.main([])

        assert "retrofit" in capsys.readouterr().out

    def test_unknown(self):
        with pytest.raises(SystemExit) as err:
            retrofit.main.main(["frobnicate"])

        assert err.value.code == 2

    def test_run(self, workspace, capsys):
        with pytest.raises(SystemExit) as err:
            retrofit.main.main(["run", "-p", str(workspace.compdb), "-r", str(workspace.root), "-w", str(workspace.work), "-q"])

        assert err.value.code == 0
        assert "2 transformed" in capsys.readouterr().out
