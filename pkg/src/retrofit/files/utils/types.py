"""
``types`` contains enumerations and casts shared across retrofit.

``types`` packages the ``TokenKind`` and ``Feature`` enumerations and the
path normalization used by every module that compares file paths.
"""


import re
import posixpath
from enum import StrEnum


DRIVE_PATTERN = re.compile(r"^[A-Za-z]:/")


class TokenKind(StrEnum):
    """
    ``TokenKind`` represents C++ token categories.
    """

    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    PUNCTUATOR = "punctuator"
    LITERAL = "literal"
    COMMENT = "comment"
    WHITESPACE = "whitespace"
    PREPROCESSOR = "preprocessor-line"


class Feature(StrEnum):
    """
    ``Feature`` represents the C++11 features retrofit lowers to C++03.

    ``Feature`` values double as the names used in warnings, trace sidecars,
    diagnostics, and reports.
    """

    MEMBER_INIT = "member-init"
    AUTO = "auto"
    LAMBDA = "lambda"
    ATTRIBUTE = "attribute"
    FINAL_OVERRIDE = "final-override"
    RANGE_FOR = "range-for"
    CTOR_DELEGATION = "ctor-delegation"
    TYPE_ALIAS = "type-alias"


def is_absolute(path: str) -> bool:
    """
    ``is_absolute`` checks whether slash-separated paths are absolute.

    POSIX roots and drive-letter roots (``c:/``) both count as absolute, so
    compilation databases written on either platform compare equal.

    Parameters:
        path: Slash-separated path.

    Returns:
        True if the path is absolute.
    """

    return path.startswith("/") or DRIVE_PATTERN.match(path) is not None


def normalize_path(path: str, base: str = None) -> str:
    """
    ``normalize_path`` unifies separators and collapses ``.``/``..``.

    Parameters:
        path: Path to normalize.
        base: Directory that relative paths are resolved against.

    Returns:
        Normalized path, absolute whenever ``path`` or ``base`` is.
    """

    path = path.replace("\\", "/")

    if base is not None and not is_absolute(path):
        path = base.replace("\\", "/").rstrip("/") + "/" + path

    normalized = posixpath.normpath(path)

    # POSIX keeps a leading double slash
    if normalized.startswith("//"):
        normalized = "/" + normalized.lstrip("/")

    return normalized


def is_under(path: str, root: str) -> bool:
    """
    ``is_under`` checks whether normalized paths lie below a root directory.

    Parameters:
        path: Normalized path.
        root: Normalized directory.

    Returns:
        True if ``path`` equals ``root`` or lies inside it.
    """

    root = root.rstrip("/")
    return path == root or path.startswith(root + "/")
