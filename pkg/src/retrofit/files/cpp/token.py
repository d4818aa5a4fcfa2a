"""
``token`` contains the classes representing C++ tokens.

``token`` packages the ``SourceLocation`` and ``Token`` classes. Tokens are
full-fidelity: concatenating their texts reproduces the file exactly.
"""


import dataclasses

from ..utils.types import TokenKind


@dataclasses.dataclass(frozen=True, slots=True)
class SourceLocation:
    """
    ``SourceLocation`` represents positions inside source files.

    Attributes:
        file_id: File identifier, usually its path.
        offset: Byte index from the start of the file.
        line: 1-based line number.
        column: 1-based column number.
    """

    file_id: str
    offset: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file_id}:{self.line}:{self.column}"


@dataclasses.dataclass(frozen=True, slots=True)
class Token:
    """
    ``Token`` represents C++ tokens.

    Attributes:
        kind: Token category.
        text: Exact source text.
        start: Location of the first byte.
        end: Location one past the last byte.
    """

    kind: TokenKind
    text: str
    start: SourceLocation
    end: SourceLocation

    @property
    def span(self) -> tuple[SourceLocation, SourceLocation]:
        return (self.start, self.end)

    @property
    def offset(self) -> int:
        return self.start.offset

    @property
    def stop(self) -> int:
        return self.end.offset

    @property
    def line(self) -> int:
        return self.start.line

    @property
    def is_trivia(self) -> bool:
        return self.kind in (TokenKind.WHITESPACE, TokenKind.COMMENT)
