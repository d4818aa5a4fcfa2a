from .token import Token
from .token import SourceLocation
from .lexer import Lexer
from .lexer import tokenize
from .tree import SyntaxTree
from .parser import CppParser
from .parser import parse
from .parser import parse_source
from .edit import Edit
from .edit import Segment
from .edit import SegmentMap
from .edit import apply_edits
from .check import Diagnostic
from .check import check_syntax
from .markers import find_markers


__all__ = [
    "Token",
    "SourceLocation",
    "Lexer",
    "tokenize",
    "SyntaxTree",
    "CppParser",
    "parse",
    "parse_source",
    "Edit",
    "Segment",
    "SegmentMap",
    "apply_edits",
    "Diagnostic",
    "check_syntax",
    "find_markers",
]
