"""
``test_golden`` tests the ``retrofit.transforms`` module against expected listings.
"""


import os

import pytest

import _config
from retrofit.files.cpp import tokenize
from retrofit.files.cpp import parse_source
from retrofit.transforms import run_phases


def significant(text: str) -> list[str]:
    return [token.text for token in tokenize(text) if not token.is_trivia]


def golden_pairs() -> list[str]:
    return sorted(name[: -len(".cpp")] for name in os.listdir(_config.GOLDEN) if name.endswith(".cpp") and not name.endswith(".expected.cpp"))


def read(name: str) -> str:
    with open(os.path.join(_config.GOLDEN, name), encoding="utf-8") as file:
        return file.read()


class Test_Golden:
    @pytest.mark.parametrize("name", golden_pairs())
    def test_listing(self, name):
        original = read(f"{name}.cpp")
        expected = read(f"{name}.expected.cpp")

        result = run_phases(parse_source(original, f"{name}.cpp"))

        assert not result.failed, result.errors
        assert not result.warnings
        assert significant(result.text) == significant(expected)

    def test_listings_present(self):
        assert len(golden_pairs()) == 7


class Test_Attributes:
    @pytest.mark.parametrize(
        "original, expected",
        [
            ("[[attr1, attr2, attr3(args)]] void f();\n", "void f();\n"),
            ("[[namespace::attr(args)]] int g();\n", "int g();\n"),
            ("[[noreturn]] void stop();\nvoid go();\n", "void stop();\nvoid go();\n"),
        ],
    )
    def test_byte_exact(self, original, expected):
        result = run_phases(parse_source(original, "attributes.cpp"))

        assert not result.failed
        assert result.text == expected

    def test_array_subscripts_kept(self):
        original = "int a[2][3];\nint f(int *p) { return p[p[0]]; }\n"
        result = run_phases(parse_source(original, "subscripts.cpp"))

        assert not result.failed
        assert result.text == original
        assert result.edits == 0
