"""
``test_corpus`` tests the transformation of the snippet corpus.
"""


import os
import subprocess

import pytest

import _config
from retrofit.files.cpp import check_syntax
from retrofit.files.cpp import parse_source
from retrofit.files.trace import build_linemap
from retrofit.files.trace import lookup
from retrofit.files.utils.types import Feature
from retrofit.transforms import find_features
from retrofit.transforms import run_phases


MINIMUM = {
    Feature.MEMBER_INIT: 3,
    Feature.AUTO: 37,
    Feature.LAMBDA: 31,
    Feature.ATTRIBUTE: 3,
    Feature.FINAL_OVERRIDE: 3,
    Feature.RANGE_FOR: 9,
    Feature.CTOR_DELEGATION: 2,
    Feature.TYPE_ALIAS: 3,
}

DRIVER = "//@ main"


def snippets() -> list[str]:
    found = []
    for directory, _, filenames in sorted(os.walk(_config.CORPUS)):
        found += [os.path.join(directory, name) for name in sorted(filenames) if name.endswith(".cpp")]
    return found


def drivers() -> list[str]:
    return [path for path in snippets() if read(path).startswith(DRIVER)]


def read(path: str) -> str:
    with open(path, encoding="utf-8") as file:
        return file.read()


def ident(path: str) -> str:
    return os.path.relpath(path, _config.CORPUS)


def transform(path: str):
    return run_phases(parse_source(read(path), path))


class Test_Corpus:
    def test_counts(self):
        counts = {feature: 0 for feature in Feature}
        for path in snippets():
            counts[Feature(os.path.basename(os.path.dirname(path)))] += 1

        for feature, minimum in MINIMUM.items():
            assert counts[feature] >= minimum, feature

    def test_drivers(self):
        assert len(drivers()) >= 20

    @pytest.mark.parametrize("path", snippets(), ids=ident)
    def test_transform(self, path):
        result = transform(path)
        feature = Feature(os.path.basename(os.path.dirname(path)))

        assert not result.failed, result.errors
        assert not result.warnings, [str(warning) for warning in result.warnings]
        assert feature in result.features
        assert check_syntax(result.text, path) == []
        assert not find_features(parse_source(result.text, path))

    @pytest.mark.parametrize("path", snippets(), ids=ident)
    def test_idempotent(self, path):
        once = transform(path)
        twice = run_phases(parse_source(once.text, path))

        assert not twice.failed
        assert twice.edits == 0
        assert twice.text == once.text

    @pytest.mark.parametrize("path", snippets(), ids=ident)
    def test_traceable(self, path):
        original = read(path)
        result = transform(path)
        linemap = build_linemap(result.maps, path, path)

        original_lines = original.split("\n")
        transformed_lines = result.text.split("\n")

        assert linemap.lines == len(transformed_lines) - (1 if result.text.endswith("\n") else 0)

        for line in range(1, linemap.lines + 1):
            source, mapped, exact = lookup(linemap, line)
            assert source == path
            assert 1 <= mapped <= len(original_lines)
            if exact:
                assert transformed_lines[line - 1] == original_lines[mapped - 1]


@pytest.mark.skipif(_config.GXX is None, reason="g++ not found")
class Test_Behavior:
    @staticmethod
    def build_and_run(source: str, standard: str, directory) -> str:
        stem = f"{directory}/{standard.replace('+', 'x')}"
        with open(f"{stem}.cpp", "w", encoding="utf-8") as file:
            file.write(source)

        subprocess.run([_config.GXX, f"-std={standard}", "-o", stem, f"{stem}.cpp"], check=True, capture_output=True)
        return subprocess.run([stem], check=True, capture_output=True, text=True).stdout

    @pytest.mark.parametrize("path", drivers(), ids=ident)
    def test_same_output(self, path, tmp_path):
        result = transform(path)
        assert not result.failed

        before = self.build_and_run(read(path), "c++11", tmp_path)
        after = self.build_and_run(result.text, "c++03", tmp_path)

        assert before == after
