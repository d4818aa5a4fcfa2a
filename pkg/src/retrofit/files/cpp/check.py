"""
``check`` contains the post-transformation syntax check.
"""


import logging
import dataclasses

from . import tree
from .lexer import Lexer
from .token import SourceLocation
from .parser import parse
from .markers import find_markers
from ..utils import errors


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Diagnostic:
    """
    ``Diagnostic`` represents syntax check findings.

    Attributes:
        code: ``lex-error``, ``unbalanced-braces``, or ``<feature>-remains``.
        location: Where the finding is.
        message: Human-readable description.
    """

    code: str
    location: SourceLocation
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.code}: {self.message}"


def check_syntax(source: tree.SyntaxTree | bytes | str, path: str = None) -> list[Diagnostic]:
    """
    ``check_syntax`` re-lexes and re-parses transformed code.

    The check also reports every remaining C++11 feature marker, since
    transformed code must be valid C++03.

    Parameters:
        source: Syntax tree of, or text of, the transformed code.
        path: File identifier, defaults to the tree path.

    Returns:
        List of diagnostics, empty on success.
    """

    if isinstance(source, tree.SyntaxTree):
        path = source.path if path is None else path
        source = source.text

    lexer = Lexer(source, path)
    tokens = lexer.tokenize()
    diagnostics = []

    for err in lexer.errors:
        location = SourceLocation(path, 0, err.line or 1, 1)
        diagnostics.append(Diagnostic("lex-error", location, str(err)))

    try:
        syntax = parse(tokens, path=path)
    except errors.CppSyntaxError as err:
        location = SourceLocation(path, 0, err.line or 1, 1)
        diagnostics.append(Diagnostic("unbalanced-braces", location, str(err)))
        return diagnostics

    for feature, offsets in find_markers(syntax).items():
        location = syntax.location(offsets[0])
        diagnostics.append(Diagnostic(f"{feature}-remains", location, f"{len(offsets)} occurrence(s) of {feature} remain"))

    for diagnostic in diagnostics:
        logger.debug("%s", diagnostic)

    return diagnostics
