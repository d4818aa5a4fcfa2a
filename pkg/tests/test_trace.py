"""
``test_trace`` tests the ``retrofit.files.trace`` module.
"""


import pytest
import hypothesis as hy
import hypothesis.strategies as st

import _config
from retrofit.files.cpp import Edit
from retrofit.files.cpp import Segment
from retrofit.files.cpp import apply_edits
from retrofit.files.trace import LineMap
from retrofit.files.trace import SIDECAR_SUFFIX
from retrofit.files.trace import build_linemap
from retrofit.files.trace import lookup
from retrofit.files.utils import errors
from retrofit.files.utils.types import Feature


ORIGINAL = "int a;\nauto b = a;\nint c;\n"


@st.composite
def rewrite(draw):
    count = draw(st.integers(min_value=1, max_value=12))
    lines = [f"int v{index};" for index in range(count)]
    replaced = draw(st.sets(st.integers(min_value=0, max_value=count - 1)))

    edits = []
    offset = 0
    for index, line in enumerate(lines):
        if index in replaced:
            width = draw(st.integers(min_value=0, max_value=3))
            text = "\n".join(f"long w{index}_{k};" for k in range(width))
            edits.append(Edit(offset, offset + len(line), text, Feature.AUTO))
        offset += len(line) + 1

    return ("\n".join(lines) + "\n", edits)


def line_of(text: str, line: int) -> str:
    return text.split("\n")[line - 1]


class Test_BuildLinemap:
    def test_identity(self):
        linemap = build_linemap([], "a.cpp", lines=3)

        assert linemap.lines == 3
        assert linemap.transformed == "a.cpp"
        assert [lookup(linemap, line) for line in (1, 2, 3)] == [("a.cpp", 1, True), ("a.cpp", 2, True), ("a.cpp", 3, True)]

    def test_replacement(self):
        _, segment_map = apply_edits(ORIGINAL, [Edit(7, 18, "int b0;\nint b = a;", Feature.AUTO)])
        linemap = build_linemap([segment_map], "a.cpp", "out/a.cpp")

        assert linemap.lines == 4
        assert linemap.segments == [
            Segment("identity", (1, 1), (1, 1)),
            Segment("transformed", (2, 2), (2, 3), Feature.AUTO),
            Segment("identity", (3, 3), (4, 4)),
        ]
        assert lookup(linemap, 3) == ("a.cpp", 2, False)
        assert lookup(linemap, 4) == ("a.cpp", 3, True)

    def test_composed(self):
        first, first_map = apply_edits(ORIGINAL, [Edit(7, 18, "int b0;\nint b = a;", Feature.AUTO)])
        start = first.index("int c;")
        second, second_map = apply_edits(first, [Edit(start, start + 3, "long", Feature.TYPE_ALIAS)])
        linemap = build_linemap([first_map, second_map], "a.cpp")

        assert second == "int a;\nint b0;\nint b = a;\nlong c;\n"
        assert lookup(linemap, 1) == ("a.cpp", 1, True)
        assert lookup(linemap, 2) == ("a.cpp", 2, False)
        assert lookup(linemap, 4) == ("a.cpp", 3, False)
        assert linemap.segment_at(4).feature == Feature.TYPE_ALIAS

    def test_deleted(self):
        _, segment_map = apply_edits("[[noreturn]]\nvoid f();\nint x;\n", [Edit(0, 13, "", Feature.ATTRIBUTE)])
        linemap = build_linemap([segment_map], "a.cpp")

        assert linemap.lines == 2
        assert lookup(linemap, 1) == ("a.cpp", 2, True)
        assert lookup(linemap, 2) == ("a.cpp", 3, True)

    @hy.settings(max_examples=_config.HY_TRIALS)
    @hy.given(case=rewrite())
    def test_property(self, case):
        original, edits = case
        transformed, segment_map = apply_edits(original, edits)
        linemap = build_linemap([segment_map], "a.cpp")
        count = original.count("\n")

        assert linemap.lines == transformed.count("\n")
        for line in range(1, linemap.lines + 1):
            path, back, exact = lookup(linemap, line)
            assert path == "a.cpp"
            assert 1 <= back <= count
            if exact:
                assert line_of(transformed, line) == line_of(original, back)


class Test_Lookup:
    @pytest.mark.parametrize("line", [0, -1, 4, 100])
    def test_invalid(self, line):
        linemap = build_linemap([], "a.cpp", "out/a.cpp", lines=3)

        with pytest.raises(errors.TraceError) as err:
            lookup(linemap, line)

        assert err.value.code == errors.TraceCodes.LINE_OUT_OF_RANGE
        assert err.value.path == "out/a.cpp"

    def test_clamped(self):
        linemap = LineMap("a.cpp", "b.cpp", [Segment("identity", (1, 1), (1, 1)), Segment("transformed", (3, 2), (2, 2), Feature.LAMBDA)])

        assert lookup(linemap, 2) == ("a.cpp", 2, False)


class Test_Sidecar:
    def test_text(self):
        linemap = LineMap(
            "/src/a.cpp",
            "/out/a.cpp",
            [Segment("identity", (1, 3), (1, 3)), Segment("transformed", (4, 9), (4, 20), Feature.LAMBDA)],
            [Segment("transformed", (6, 6), (10, 12), Feature.AUTO, False)],
        )

        assert linemap.to_text() == "F /src/a.cpp\nO 1 3 T 1 3\nO 4 9 T 4 20 X lambda\nO 6 6 T 10 12 X auto I\n"
        assert LineMap.from_text(linemap.to_text(), "/out/a.cpp") == linemap

    def test_file(self, tmp_path):
        transformed = str(tmp_path / "out" / "a.cpp")
        _, segment_map = apply_edits(ORIGINAL, [Edit(7, 11, "int", Feature.AUTO)])
        linemap = build_linemap([segment_map], "/src/a.cpp", transformed)

        path = linemap.to_sidecar()

        assert path == transformed + SIDECAR_SUFFIX
        assert LineMap.from_sidecar(transformed) == linemap

    def test_missing(self, tmp_path):
        with pytest.raises(errors.TraceError) as err:
            LineMap.from_sidecar(str(tmp_path / "a.cpp"))

        assert err.value.code == errors.TraceCodes.MISSING_SIDECAR
        assert err.value.path.endswith("a.cpp.trace")

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", None),
            ("O 1 1 T 1 1\n", None),
            ("F a.cpp\nO 1 x T 1 1\n", 2),
            ("F a.cpp\nO 1 1 T 1\n", 2),
            ("F a.cpp\nO 1 1 T 1 1\nO 2 2 T 2 2 X nonsense\n", 3),
            ("F a.cpp\nO 1 1 T 1 1 Z\n", 2),
            ("F a.cpp\nO 1 1 S 1 1\n", 2),
        ],
    )
    def test_invalid(self, text, line):
        with pytest.raises(errors.TraceError) as err:
            LineMap.from_text(text, "a.cpp")

        assert err.value.code == errors.TraceCodes.MALFORMED_SIDECAR
        assert err.value.line == line
