"""
``errors`` contains custom exceptions for the ``retrofit`` package.

Retrofit catches malformed inputs, unsupported constructs, and store
failures, and it throws custom errors with error codes. ``errors`` contains
the exception subclasses and error code enumerations.
"""


from enum import Enum


def _where(path: str = None, line: int = None) -> str:
    """
    ``_where`` formats error locations.

    Parameters:
        path: File path.
        line: Line number.

    Returns:
        Location suffix for error messages.
    """

    if path is not None and line is not None:
        return f", {path}:{line}"
    if path is not None:
        return f", {path}"
    if line is not None:
        return f", line {line}"
    return ""


class CompdbCodes(Enum):
    """
    ``CompdbCodes`` represents ``CompdbError`` error codes.
    """

    MISSING_KEY = 0
    DUPLICATE_UNIT = 1
    NOT_AN_ARRAY = 2
    UNREADABLE_FILE = 3
    NOT_AN_OBJECT = 4
    INVALID_VALUE = 5
    OUTSIDE_ROOT = 6
    EMPTY_VALUE = 7
    FILE_NOT_IN_COMMAND = 8


class CppSyntaxCodes(Enum):
    """
    ``CppSyntaxCodes`` represents ``CppSyntaxError`` error codes.

    ``CppSyntaxCodes`` enumerates lexical and structural errors found in C++
    sources, and errors found while applying edits to them.
    """

    UNTERMINATED_STRING = 10
    UNTERMINATED_COMMENT = 11
    UNBALANCED_BRACES = 12
    OVERLAPPING_EDITS = 13


class SemanticCodes(Enum):
    """
    ``SemanticCodes`` represents ``SemanticError`` error codes.

    ``SemanticCodes`` enumerates the reasons type deduction gives up on an
    expression or declaration.
    """

    UNRESOLVED_IDENTIFIER = 20
    UNSUPPORTED_EXPRESSION = 21
    DEDUCTION_MISMATCH = 22
    UNSUPPORTED_DECLTYPE_OPERAND = 23
    NO_RANGE_PROTOCOL = 24
    UNSUPPORTED_TYPE = 25


class TransformCodes(Enum):
    """
    ``TransformCodes`` represents ``TransformError`` error codes.
    """

    UNSUPPORTED_CAPTURE = 30
    UNSUPPORTED_LAMBDA_CONTEXT = 31
    DELEGATION_CYCLE = 32
    TEMPLATE_CLASS = 33
    UNSUPPORTED_ALIAS_USE = 34
    UNSUPPORTED_MEMBER = 35
    UNRESOLVED_DELEGATION = 36


class StateCodes(Enum):
    """
    ``StateCodes`` represents ``StateError`` error codes.
    """

    STORE_WRITE_FAILURE = 40
    NEWER_SCHEMA = 41
    CORRUPT_STORE = 42


class TraceCodes(Enum):
    """
    ``TraceCodes`` represents ``TraceError`` error codes.
    """

    LINE_OUT_OF_RANGE = 50
    MISSING_SIDECAR = 51
    MALFORMED_SIDECAR = 52


class RunCodes(Enum):
    """
    ``RunCodes`` represents ``RunError`` error codes.
    """

    COPY_FAILURE = 60
    INVALID_CONFIG = 61


class RetrofitError(Exception):
    """
    ``RetrofitError`` is the base class of retrofit exceptions.

    Attributes:
        code: Error code.
        path: Path of the offending file.
        line: Line number of error.
        detail: Offending name, key, or value.
    """

    def __init__(self, code: Enum, line: int = None, path: str = None, detail: str = None):
        """
        ``__init__`` initializes ``RetrofitError``.

        Parameters:
            code: Error code.
            line: Line number.
            path: File path.
            detail: Offending name, key, or value.
        """

        super().__init__(code, line, path, detail)

        self.code: Enum = code
        self.line: int = line
        self.path: str = path
        self.detail: str = detail


class CompdbError(RetrofitError):
    """
    ``CompdbError`` represents compilation database errors.

    Retrofit raises compilation database errors when ``compile_commands.json``
    files cannot be read or violate the entry format.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``CompdbError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case CompdbCodes.MISSING_KEY:
                return f"Compilation database entry lacks `{self.detail}` key{where}."
            case CompdbCodes.DUPLICATE_UNIT:
                return f"Duplicate compilation unit `{self.detail}`{where}."
            case CompdbCodes.NOT_AN_ARRAY:
                return f"Compilation database is not an array{where}."
            case CompdbCodes.UNREADABLE_FILE:
                return f"Unreadable compilation database{where}: {self.detail}."
            case CompdbCodes.NOT_AN_OBJECT:
                return f"Compilation database entry is not an object{where}."
            case CompdbCodes.INVALID_VALUE:
                return f"Compilation database value for `{self.detail}` is not a string{where}."
            case CompdbCodes.OUTSIDE_ROOT:
                return f"Compilation unit `{self.detail}` lies outside the project root{where}."
            case CompdbCodes.EMPTY_VALUE:
                return f"Compilation database value for `{self.detail}` is empty{where}."
            case CompdbCodes.FILE_NOT_IN_COMMAND:
                return f"Compilation command does not mention `{self.detail}`{where}."


class CppSyntaxError(RetrofitError):
    """
    ``CppSyntaxError`` represents lexer and parser generated syntax errors.

    Retrofit raises syntax errors when C++ sources hold unterminated literals,
    unbalanced braces, or when edits to them overlap.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``CppSyntaxError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case CppSyntaxCodes.UNTERMINATED_STRING:
                return f"Unterminated string literal{where}."
            case CppSyntaxCodes.UNTERMINATED_COMMENT:
                return f"Unterminated block comment{where}."
            case CppSyntaxCodes.UNBALANCED_BRACES:
                return f"Unbalanced braces{where}."
            case CppSyntaxCodes.OVERLAPPING_EDITS:
                return f"Overlapping edits {self.detail}{where}."


class SemanticError(RetrofitError):
    """
    ``SemanticError`` represents type deduction errors.

    Retrofit raises semantic errors when an expression lies outside the typed
    subset or a deduction rule does not apply. Passes catch them and skip the
    affected declaration.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``SemanticError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case SemanticCodes.UNRESOLVED_IDENTIFIER:
                return f"Unresolved identifier `{self.detail}`{where}."
            case SemanticCodes.UNSUPPORTED_EXPRESSION:
                return f"Unsupported expression `{self.detail}`{where}."
            case SemanticCodes.DEDUCTION_MISMATCH:
                return f"Cannot deduce `{self.detail}`{where}."
            case SemanticCodes.UNSUPPORTED_DECLTYPE_OPERAND:
                return f"Unsupported decltype operand `{self.detail}`{where}."
            case SemanticCodes.NO_RANGE_PROTOCOL:
                return f"No begin/end for range `{self.detail}`{where}."
            case SemanticCodes.UNSUPPORTED_TYPE:
                return f"Unsupported type `{self.detail}`{where}."


class TransformError(RetrofitError):
    """
    ``TransformError`` represents transformation errors.

    Retrofit raises transformation errors when a construct cannot be lowered.
    Most are skips reported as warnings; delegation cycles make the whole unit
    untransformable.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``TransformError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case TransformCodes.UNSUPPORTED_CAPTURE:
                return f"Unsupported lambda capture `{self.detail}`{where}."
            case TransformCodes.UNSUPPORTED_LAMBDA_CONTEXT:
                return f"Unsupported lambda context{where}."
            case TransformCodes.DELEGATION_CYCLE:
                return f"Constructor delegation cycle in `{self.detail}`{where}."
            case TransformCodes.TEMPLATE_CLASS:
                return f"Template `{self.detail}` not transformed{where}."
            case TransformCodes.UNSUPPORTED_ALIAS_USE:
                return f"Unsupported use of alias `{self.detail}`{where}."
            case TransformCodes.UNSUPPORTED_MEMBER:
                return f"Unsupported member initializer `{self.detail}`{where}."
            case TransformCodes.UNRESOLVED_DELEGATION:
                return f"Cannot resolve delegation target `{self.detail}`{where}."


class StateError(RetrofitError):
    """
    ``StateError`` represents incremental store errors.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``StateError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case StateCodes.STORE_WRITE_FAILURE:
                return f"Cannot write state store{where}: {self.detail}."
            case StateCodes.NEWER_SCHEMA:
                return f"State store schema version {self.detail} is newer than supported{where}."
            case StateCodes.CORRUPT_STORE:
                return f"Corrupt state store{where}: {self.detail}."


class TraceError(RetrofitError):
    """
    ``TraceError`` represents line map errors.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``TraceError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case TraceCodes.LINE_OUT_OF_RANGE:
                return f"Line out of range{where}."
            case TraceCodes.MISSING_SIDECAR:
                return f"No trace sidecar{where}."
            case TraceCodes.MALFORMED_SIDECAR:
                return f"Malformed trace sidecar entry `{self.detail}`{where}."


class RunError(RetrofitError):
    """
    ``RunError`` represents orchestration errors.
    """

    def __str__(self) -> str:
        """
        ``__str__`` stringifies ``RunError``.
        """

        where = _where(self.path, self.line)

        match self.code:
            case RunCodes.COPY_FAILURE:
                return f"Cannot copy{where}: {self.detail}."
            case RunCodes.INVALID_CONFIG:
                return f"Invalid configuration: {self.detail}{where}."
