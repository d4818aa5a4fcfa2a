"""
``lexer`` contains the full-fidelity C++ lexer.

``lexer`` packages the ``Lexer`` class and the ``tokenize`` function. The
lexer keeps whitespace, comments, and preprocessor lines as tokens, so token
texts concatenate back to the input byte-for-byte. Bytes are decoded as
Latin-1, which maps every byte to one character and back.
"""


import re
import logging

from .token import Token
from .token import SourceLocation
from ..utils import errors
from ..utils.types import TokenKind


logger = logging.getLogger(__name__)

KEYWORDS = frozenset(
    {
        "alignas", "alignof", "asm", "auto", "bool", "break", "case", "catch",
        "char", "char16_t", "char32_t", "class", "const", "constexpr",
        "const_cast", "continue", "decltype", "default", "delete", "do",
        "double", "dynamic_cast", "else", "enum", "explicit", "export",
        "extern", "false", "float", "for", "friend", "goto", "if", "inline",
        "int", "long", "mutable", "namespace", "new", "noexcept", "nullptr",
        "operator", "private", "protected", "public", "register",
        "reinterpret_cast", "return", "short", "signed", "sizeof", "static",
        "static_assert", "static_cast", "struct", "switch", "template", "this",
        "thread_local", "throw", "true", "try", "typedef", "typeid",
        "typename", "union", "unsigned", "using", "virtual", "void",
        "volatile", "wchar_t", "while",
    }
)

# `>>` and `>>=` are left split so template argument lists close cleanly.
PUNCTUATORS = sorted(
    [
        "...", "<<=", "->*", "::", "->", "++", "--", "<<", "<=", ">=", "==",
        "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
        ".*", "##", "{", "}", "[", "]", "(", ")", ";", ":", ",", ".", "?",
        "+", "-", "*", "/", "%", "^", "&", "|", "~", "!", "=", "<", ">", "#",
    ],
    key=len,
    reverse=True,
)

TOKEN_SPEC = [
    ("WHITESPACE", r"[ \t\r\n\f\v]+"),
    ("LINE_COMMENT", r"//(?:[^\\\n]|\\\r?\n|\\.)*"),
    ("BLOCK_COMMENT", r"(?s:/\*.*?\*/)"),
    ("RAW_STRING", r'(?:u8|u|U|L)?R"[^ ()\\\t\v\f\n"]{0,16}\('),
    ("STRING", r'(?:u8|u|U|L)?"(?:[^"\\\n]|\\\r?\n|\\.)*"(?:[A-Za-z_]\w*)?'),
    ("CHAR", r"(?:u8|u|U|L)?'(?:[^'\\\n]|\\.)+'(?:[A-Za-z_]\w*)?"),
    ("NUMBER", r"\.?[0-9](?:[eEpP][+-]|'[0-9A-Za-z_]|[0-9A-Za-z_.])*"),
    ("IDENTIFIER", r"[A-Za-z_$][A-Za-z0-9_$]*"),
    ("UNTERMINATED_COMMENT", r"/\*"),
    ("PUNCTUATOR", "|".join(re.escape(punctuator) for punctuator in PUNCTUATORS)),
    ("UNTERMINATED_STRING", r"""(?:u8|u|U|L)?["'](?:[^\\\n]|\\.)*"""),
    ("OTHER", r"(?s:.)"),
]

TOKEN_PATTERN = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))
DIRECTIVE_PATTERN = re.compile(r"#(?:[^\\\n]|\\\r?\n|\\.)*")
ATTRIBUTE_START_PATTERN = re.compile(r"[ \t\r\n]*(?:[A-Za-z_]|\])")

KINDS = {
    "WHITESPACE": TokenKind.WHITESPACE,
    "LINE_COMMENT": TokenKind.COMMENT,
    "BLOCK_COMMENT": TokenKind.COMMENT,
    "RAW_STRING": TokenKind.LITERAL,
    "STRING": TokenKind.LITERAL,
    "CHAR": TokenKind.LITERAL,
    "NUMBER": TokenKind.LITERAL,
    "PUNCTUATOR": TokenKind.PUNCTUATOR,
    "UNTERMINATED_COMMENT": TokenKind.COMMENT,
    "UNTERMINATED_STRING": TokenKind.LITERAL,
    "OTHER": TokenKind.PUNCTUATOR,
}


def decode(content: bytes | str) -> str:
    """
    ``decode`` turns file bytes into lexer text without normalization.

    Parameters:
        content: File content.

    Returns:
        Latin-1 decoded text.
    """

    if isinstance(content, str):
        return content

    return content.decode("latin-1")


def encode(text: str) -> bytes:
    """
    ``encode`` turns lexer text back into file bytes.

    Parameters:
        text: Latin-1 decoded text.

    Returns:
        File content.
    """

    return text.encode("latin-1")


class Lexer:
    """
    ``Lexer`` tokenizes C++ sources.

    ``Lexer`` records unterminated literals and comments in ``errors``
    instead of raising, and lexes the remainder as one opaque token.

    Attributes:
        text: Source text.
        file_id: File identifier used in locations.
        errors: Lexical errors found while tokenizing.
    """

    def __init__(self, content: bytes | str, file_id: str = None):
        """
        ``__init__`` initializes ``Lexer``.

        Parameters:
            content: File content.
            file_id: File identifier used in locations.
        """

        self.text: str = decode(content)
        self.file_id: str = file_id
        self.errors: list[errors.CppSyntaxError] = []

        self._line = 1
        self._line_start = 0

    def _location(self, offset: int) -> SourceLocation:
        return SourceLocation(self.file_id, offset, self._line, offset - self._line_start + 1)

    def _emit(self, tokens: list[Token], kind: TokenKind, start: int, stop: int) -> None:
        text = self.text[start:stop]
        begin = self._location(start)

        newlines = text.count("\n")
        if newlines:
            self._line += newlines
            self._line_start = start + text.rfind("\n") + 1

        tokens.append(Token(kind, text, begin, self._location(stop)))

    def _error(self, code: errors.CppSyntaxCodes, offset: int) -> None:
        err = errors.CppSyntaxError(code, line=self._location(offset).line, path=self.file_id)
        self.errors.append(err)
        logger.warning("%s", err)

    def tokenize(self) -> list[Token]:
        """
        ``tokenize`` splits the source into tokens.

        Returns:
            Full-fidelity token list.
        """

        text = self.text
        size = len(text)
        tokens = []

        pos = 0
        at_line_start = True
        in_attribute = False
        attribute_depth = 0

        while pos < size:
            # Processing Directives
            if at_line_start and text[pos] == "#":
                match = DIRECTIVE_PATTERN.match(text, pos)
                self._emit(tokens, TokenKind.PREPROCESSOR, pos, match.end())
                pos = match.end()
                at_line_start = False
                continue

            # Processing Attributes
            if not in_attribute and text.startswith("[[", pos) and ATTRIBUTE_START_PATTERN.match(text, pos + 2):
                self._emit(tokens, TokenKind.PUNCTUATOR, pos, pos + 2)
                pos += 2
                in_attribute = True
                attribute_depth = 0
                at_line_start = False
                continue

            if in_attribute and attribute_depth == 0 and text.startswith("]]", pos):
                self._emit(tokens, TokenKind.PUNCTUATOR, pos, pos + 2)
                pos += 2
                in_attribute = False
                at_line_start = False
                continue

            match = TOKEN_PATTERN.match(text, pos)
            group = match.lastgroup
            stop = match.end()

            match group:
                case "IDENTIFIER":
                    kind = TokenKind.KEYWORD if match.group() in KEYWORDS else TokenKind.IDENTIFIER
                case "RAW_STRING":
                    opening = match.group()
                    delimiter = opening[opening.index('"') + 1 : -1]
                    closing = text.find(")" + delimiter + '"', stop)
                    if closing < 0:
                        self._error(errors.CppSyntaxCodes.UNTERMINATED_STRING, pos)
                        stop = size
                    else:
                        stop = closing + len(delimiter) + 2
                    kind = TokenKind.LITERAL
                case "UNTERMINATED_COMMENT":
                    self._error(errors.CppSyntaxCodes.UNTERMINATED_COMMENT, pos)
                    stop = size
                    kind = TokenKind.COMMENT
                case "UNTERMINATED_STRING":
                    self._error(errors.CppSyntaxCodes.UNTERMINATED_STRING, pos)
                    kind = TokenKind.LITERAL
                case _:
                    kind = KINDS[group]

            if in_attribute and kind == TokenKind.PUNCTUATOR:
                if match.group() == "[":
                    attribute_depth += 1
                elif match.group() == "]":
                    attribute_depth -= 1

            self._emit(tokens, kind, pos, stop)

            if kind == TokenKind.WHITESPACE:
                at_line_start = at_line_start or "\n" in text[pos:stop]
            else:
                at_line_start = False

            pos = stop

        return tokens


def tokenize(content: bytes | str, file_id: str = None) -> list[Token]:
    """
    ``tokenize`` splits C++ sources into full-fidelity tokens.

    Parameters:
        content: File content.
        file_id: File identifier used in locations.

    Returns:
        Token list whose texts concatenate to ``content``.
    """

    return Lexer(content, file_id).tokenize()
