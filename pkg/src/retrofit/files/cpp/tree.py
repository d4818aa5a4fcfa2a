"""
``tree`` contains the syntax tree of C++ translation units.

``tree`` packages the ``SyntaxTree`` class and its node classes, providing an
object-oriented, importable interface for the declarations, statements, and
expressions of the supported C++ subset. Nodes address tokens by position in
the significant token list and by byte offsets in the file, so passes can
turn any node into an ``Edit`` span.
"""


import bisect
import dataclasses
from enum import StrEnum
from typing import ClassVar, Iterator

from .token import Token
from .token import SourceLocation


class NodeKind(StrEnum):
    """
    ``NodeKind`` represents syntax tree node categories.
    """

    TRANSLATION_UNIT = "translation-unit"
    NAMESPACE = "namespace"
    CLASS = "class"
    FUNCTION = "function"
    VARIABLE = "variable"
    TYPEDEF = "typedef"
    USING_ALIAS = "using-alias"
    USING = "using"
    ACCESS = "access"
    DIRECTIVE = "directive"
    OPAQUE = "opaque"
    EMPTY = "empty"
    MEM_INIT = "mem-init"
    COMPOUND = "compound"
    DECLARATION_STATEMENT = "declaration-statement"
    EXPRESSION_STATEMENT = "expression-statement"
    RETURN = "return"
    FOR = "for"
    RANGE_FOR = "range-for"
    CONTROL = "control"
    JUMP = "jump"
    LABEL = "label"
    LITERAL = "literal"
    NAME = "identifier"
    THIS = "this"
    CALL = "call"
    MEMBER = "member-access"
    SUBSCRIPT = "subscript"
    UNARY = "unary"
    BINARY = "binary"
    CONDITIONAL = "conditional"
    CAST = "cast"
    NEW = "new"
    DELETE = "delete"
    LAMBDA = "lambda"
    PAREN = "paren"
    INIT_LIST = "init-list"
    SIZEOF = "sizeof"
    THROW = "throw"


# Helper records (not nodes)


@dataclasses.dataclass(eq=False)
class Template:
    """
    ``Template`` represents ``template<...>`` headers.

    Attributes:
        first: Position of ``template``.
        last: Position after the closing ``>``.
        params: Template parameter names.
    """

    first: int
    last: int
    params: list[str]


@dataclasses.dataclass(eq=False)
class TypeSpec:
    """
    ``TypeSpec`` represents declaration specifier sequences.

    Attributes:
        first: Position of the first specifier.
        last: Position after the last specifier.
        tokens: Texts of type-forming specifiers, in order.
        flags: Storage and function specifiers, plus ``const``/``volatile``.
        auto: Position of the ``auto`` placeholder, if any.
        class_def: Class defined inline by the specifiers, if any.
        has_type: Whether the specifiers name a type.
    """

    first: int
    last: int
    tokens: list[str]
    flags: set[str]
    auto: int | None = None
    class_def: "Class | None" = None
    has_type: bool = True

    @property
    def is_const(self) -> bool:
        return "const" in self.flags

    @property
    def is_static(self) -> bool:
        return "static" in self.flags

    @property
    def is_empty(self) -> bool:
        return not self.has_type


@dataclasses.dataclass(eq=False)
class FunctionSuffix:
    """
    ``FunctionSuffix`` represents parameter lists and what follows them.

    Attributes:
        open: Position of ``(``.
        close: Position of ``)``.
        params: Parameters.
        qualifiers: Texts of cv- and ref-qualifiers and exception specs.
        virt: Positions of contextual ``final``/``override``.
        trailing: Positions spanning the ``->`` clause, if any.
    """

    open: int
    close: int
    params: list["Param"]
    qualifiers: list[str] = dataclasses.field(default_factory=list)
    virt: list[int] = dataclasses.field(default_factory=list)
    trailing: tuple[int, int] | None = None


@dataclasses.dataclass(eq=False)
class Initializer:
    """
    ``Initializer`` represents declarator initializers.

    Attributes:
        form: ``=``, ``()``, or ``{}``.
        first: Position of ``=`` or the opening bracket.
        last: Position after the initializer.
        exprs: Initializer expressions.
    """

    form: str
    first: int
    last: int
    exprs: list["Node"]


@dataclasses.dataclass(eq=False)
class Declarator:
    """
    ``Declarator`` represents declarators.

    Attributes:
        first: Position of the first declarator token.
        last: Position after the declarator, before any initializer.
        name: Declared name, qualified when defined out of class.
        name_pos: Position of the (last component of the) name.
        ops: Pointer and reference operators with their cv-qualifiers.
        arrays: Array extents, None for unknown bounds.
        function: Parameter list suffix, if any.
        nested: Operators inside a parenthesized declarator.
        initializer: Initializer, if any.
        bitfield: Whether the declarator is a bit-field.
    """

    first: int
    last: int
    name: str | None
    name_pos: int | None
    ops: list[str] = dataclasses.field(default_factory=list)
    arrays: list[str | None] = dataclasses.field(default_factory=list)
    function: FunctionSuffix | None = None
    nested: list[str] | None = None
    initializer: Initializer | None = None
    bitfield: bool = False

    @property
    def stop(self) -> int:
        return self.initializer.last if self.initializer is not None else self.last


@dataclasses.dataclass(eq=False)
class Param:
    """
    ``Param`` represents function and lambda parameters.
    """

    first: int
    last: int
    type_spec: TypeSpec | None
    declarator: Declarator | None
    default: "Node | None" = None
    variadic: bool = False


@dataclasses.dataclass(eq=False)
class Capture:
    """
    ``Capture`` represents lambda captures.

    Attributes:
        name: Captured name, ``this`` for the object.
        by_ref: Whether the capture is by reference.
        pos: Position of the name.
        init: Whether the capture has an initializer.
    """

    name: str
    by_ref: bool
    pos: int
    init: bool = False


# Nodes


@dataclasses.dataclass(eq=False, kw_only=True)
class Node:
    """
    ``Node`` is the base class of syntax tree nodes.

    Attributes:
        first: Position of the first significant token.
        last: Position after the last significant token.
        start: Byte offset of the first byte.
        stop: Byte offset after the last byte.
    """

    KIND: ClassVar[NodeKind] = NodeKind.OPAQUE

    first: int
    last: int
    start: int = 0
    stop: int = 0

    @property
    def kind(self) -> NodeKind:
        return self.KIND

    @property
    def children(self) -> list["Node"]:
        return []

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.start}:{self.stop})"


def _params_children(params: list[Param] | None) -> list[Node]:
    return [param.default for param in params or [] if param.default is not None]


def _declarator_children(declarator: Declarator) -> list[Node]:
    out = []
    if declarator.function is not None:
        out += _params_children(declarator.function.params)
    if declarator.initializer is not None:
        out += declarator.initializer.exprs
    return out


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class TranslationUnit(Node):
    KIND: ClassVar[NodeKind] = NodeKind.TRANSLATION_UNIT

    declarations: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.declarations)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Namespace(Node):
    KIND: ClassVar[NodeKind] = NodeKind.NAMESPACE

    name: str | None
    body: list[Node]
    linkage: bool = False

    @property
    def children(self) -> list[Node]:
        return list(self.body)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Class(Node):
    """
    ``Class`` represents class, struct, and union definitions.

    Attributes:
        key: ``class``, ``struct``, or ``union``.
        name: Class name, None when anonymous.
        name_pos: Position of the name.
        final: Position of a contextual ``final`` on the head.
        bases: Base class names.
        open: Position of ``{``.
        close: Position of ``}``.
        members: Member declarations.
        template: Template header, if any.
    """

    KIND: ClassVar[NodeKind] = NodeKind.CLASS

    key: str
    name: str | None
    name_pos: int | None
    final: int | None
    bases: list[str]
    open: int
    close: int
    members: list[Node]
    template: Template | None = None

    @property
    def is_template(self) -> bool:
        return self.template is not None

    @property
    def children(self) -> list[Node]:
        return list(self.members)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class MemInit(Node):
    """
    ``MemInit`` represents constructor init-list entries.

    Attributes:
        name: Initialized member or base name.
        open: Position of ``(`` or ``{``.
        close: Position of ``)`` or ``}``.
        args: Argument expressions.
    """

    KIND: ClassVar[NodeKind] = NodeKind.MEM_INIT

    name: str
    open: int
    close: int
    args: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.args)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Function(Node):
    """
    ``Function`` represents function declarations and definitions.

    Attributes:
        type_spec: Declaration specifiers.
        declarator: Declarator holding the name and parameters.
        name: Function name, qualified when defined out of class.
        body: Body, None for declarations.
        colon: Position of the init-list colon.
        inits: Constructor init-list entries.
        template: Template header, if any.
        is_ctor: Constructor flag.
        is_dtor: Destructor flag.
        class_name: Name of the class the function belongs to.
        default: ``0``, ``default``, or ``delete`` after ``=``.
    """

    KIND: ClassVar[NodeKind] = NodeKind.FUNCTION

    type_spec: TypeSpec
    declarator: Declarator
    name: str
    body: "Compound | None"
    colon: int | None = None
    inits: list[MemInit] = dataclasses.field(default_factory=list)
    template: Template | None = None
    is_ctor: bool = False
    is_dtor: bool = False
    class_name: str | None = None
    default: str | None = None

    @property
    def is_template(self) -> bool:
        return self.template is not None

    @property
    def params(self) -> list[Param]:
        return self.declarator.function.params

    @property
    def children(self) -> list[Node]:
        out = _params_children(self.declarator.function.params) + list(self.inits)
        if self.type_spec.class_def is not None:
            out.insert(0, self.type_spec.class_def)
        if self.body is not None:
            out.append(self.body)
        return out


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Variable(Node):
    KIND: ClassVar[NodeKind] = NodeKind.VARIABLE

    type_spec: TypeSpec
    declarators: list[Declarator]
    template: Template | None = None

    @property
    def children(self) -> list[Node]:
        out = [self.type_spec.class_def] if self.type_spec.class_def is not None else []
        for declarator in self.declarators:
            out += _declarator_children(declarator)
        return out


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Typedef(Node):
    KIND: ClassVar[NodeKind] = NodeKind.TYPEDEF

    type_spec: TypeSpec
    declarators: list[Declarator]

    @property
    def children(self) -> list[Node]:
        return [self.type_spec.class_def] if self.type_spec.class_def is not None else []


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class UsingAlias(Node):
    """
    ``UsingAlias`` represents ``using N = T;`` aliases.

    Attributes:
        name: Alias name.
        name_pos: Position of the alias name.
        target: Positions spanning the target type.
        template: Template header, if any.
    """

    KIND: ClassVar[NodeKind] = NodeKind.USING_ALIAS

    name: str
    name_pos: int
    target: tuple[int, int]
    template: Template | None = None


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Using(Node):
    KIND: ClassVar[NodeKind] = NodeKind.USING

    name: str
    directive: bool = False


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Access(Node):
    KIND: ClassVar[NodeKind] = NodeKind.ACCESS

    label: str


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Directive(Node):
    KIND: ClassVar[NodeKind] = NodeKind.DIRECTIVE

    text: str
    include: tuple[str, str] | None = None


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Opaque(Node):
    KIND: ClassVar[NodeKind] = NodeKind.OPAQUE

    inactive: bool = False


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Empty(Node):
    KIND: ClassVar[NodeKind] = NodeKind.EMPTY


# Statements


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Compound(Node):
    KIND: ClassVar[NodeKind] = NodeKind.COMPOUND

    statements: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.statements)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class DeclarationStatement(Node):
    KIND: ClassVar[NodeKind] = NodeKind.DECLARATION_STATEMENT

    declaration: Node

    @property
    def children(self) -> list[Node]:
        return [self.declaration]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class ExpressionStatement(Node):
    KIND: ClassVar[NodeKind] = NodeKind.EXPRESSION_STATEMENT

    expression: Node | None

    @property
    def children(self) -> list[Node]:
        return [self.expression] if self.expression is not None else []


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Return(Node):
    KIND: ClassVar[NodeKind] = NodeKind.RETURN

    expression: Node | None

    @property
    def children(self) -> list[Node]:
        return [self.expression] if self.expression is not None else []


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class For(Node):
    KIND: ClassVar[NodeKind] = NodeKind.FOR

    init: Node | None
    condition: Node | None
    increment: Node | None
    body: Node

    @property
    def children(self) -> list[Node]:
        return [node for node in (self.init, self.condition, self.increment, self.body) if node is not None]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class RangeFor(Node):
    """
    ``RangeFor`` represents range-based for loops.

    Attributes:
        type_spec: Loop variable specifiers.
        declarator: Loop variable declarator.
        open: Position of ``(``.
        colon: Position of ``:``.
        close: Position of ``)``.
        range: Range expression.
        body: Loop body.
    """

    KIND: ClassVar[NodeKind] = NodeKind.RANGE_FOR

    type_spec: TypeSpec
    declarator: Declarator
    open: int
    colon: int
    close: int
    range: Node
    body: Node

    @property
    def children(self) -> list[Node]:
        return [self.range, self.body]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Control(Node):
    KIND: ClassVar[NodeKind] = NodeKind.CONTROL

    keyword: str
    parts: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.parts)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Jump(Node):
    KIND: ClassVar[NodeKind] = NodeKind.JUMP

    keyword: str


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Label(Node):
    KIND: ClassVar[NodeKind] = NodeKind.LABEL

    value: Node | None = None

    @property
    def children(self) -> list[Node]:
        return [self.value] if self.value is not None else []


# Expressions


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Literal(Node):
    """
    ``Literal`` represents literals.

    Attributes:
        text: Literal spelling, adjacent strings concatenated.
        category: ``int``, ``float``, ``string``, ``char``, ``bool``, or
            ``nullptr``.
    """

    KIND: ClassVar[NodeKind] = NodeKind.LITERAL

    text: str
    category: str


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Name(Node):
    """
    ``Name`` represents possibly qualified identifiers.

    Attributes:
        name: Spelling without whitespace.
        parts: Qualified name components.
        args: Template argument token texts of the last component, split at
            top-level commas, or None.
        pos: Position of the last component.
    """

    KIND: ClassVar[NodeKind] = NodeKind.NAME

    name: str
    parts: list[str]
    args: list[list[str]] | None = None
    pos: int = -1

    @property
    def base(self) -> str:
        return self.parts[-1]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class This(Node):
    KIND: ClassVar[NodeKind] = NodeKind.THIS


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Call(Node):
    KIND: ClassVar[NodeKind] = NodeKind.CALL

    callee: Node
    args: list[Node]

    @property
    def children(self) -> list[Node]:
        return [self.callee] + list(self.args)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Member(Node):
    KIND: ClassVar[NodeKind] = NodeKind.MEMBER

    obj: Node
    op: str
    member: str

    @property
    def children(self) -> list[Node]:
        return [self.obj]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Subscript(Node):
    KIND: ClassVar[NodeKind] = NodeKind.SUBSCRIPT

    obj: Node
    index: Node

    @property
    def children(self) -> list[Node]:
        return [self.obj, self.index]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Unary(Node):
    KIND: ClassVar[NodeKind] = NodeKind.UNARY

    op: str
    operand: Node
    postfix: bool = False

    @property
    def children(self) -> list[Node]:
        return [self.operand]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Binary(Node):
    KIND: ClassVar[NodeKind] = NodeKind.BINARY

    op: str
    lhs: Node
    rhs: Node

    @property
    def children(self) -> list[Node]:
        return [self.lhs, self.rhs]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Conditional(Node):
    KIND: ClassVar[NodeKind] = NodeKind.CONDITIONAL

    condition: Node
    then: Node
    other: Node

    @property
    def children(self) -> list[Node]:
        return [self.condition, self.then, self.other]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Cast(Node):
    """
    ``Cast`` represents C-style and named casts.

    Attributes:
        style: ``c`` or the cast keyword.
        type_tokens: Texts of the target type.
        operand: Cast operand.
    """

    KIND: ClassVar[NodeKind] = NodeKind.CAST

    style: str
    type_tokens: list[str]
    operand: Node

    @property
    def children(self) -> list[Node]:
        return [self.operand]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class New(Node):
    """
    ``New`` represents new-expressions.

    Attributes:
        type_spec: Allocated type specifiers.
        ops: Abstract pointer operators after the specifiers.
        type_last: Position after the allocated type.
        array: Whether the expression allocates an array.
        args: Initializer arguments.
    """

    KIND: ClassVar[NodeKind] = NodeKind.NEW

    type_spec: TypeSpec
    ops: list[str]
    type_last: int
    array: bool
    args: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.args)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Delete(Node):
    KIND: ClassVar[NodeKind] = NodeKind.DELETE

    operand: Node

    @property
    def children(self) -> list[Node]:
        return [self.operand]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Lambda(Node):
    """
    ``Lambda`` represents lambda expressions.

    Attributes:
        default: Capture default, ``&`` or ``=``, if any.
        captures: Explicit captures.
        params: Parameters, None when the list is omitted.
        mutable: Whether the lambda is mutable.
        trailing: Positions spanning the return type after ``->``.
        body: Lambda body.
    """

    KIND: ClassVar[NodeKind] = NodeKind.LAMBDA

    default: str | None
    captures: list[Capture]
    params: list[Param] | None
    mutable: bool
    trailing: tuple[int, int] | None
    body: Compound

    @property
    def children(self) -> list[Node]:
        return _params_children(self.params) + [self.body]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Paren(Node):
    KIND: ClassVar[NodeKind] = NodeKind.PAREN

    inner: Node

    @property
    def children(self) -> list[Node]:
        return [self.inner]


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class InitList(Node):
    KIND: ClassVar[NodeKind] = NodeKind.INIT_LIST

    items: list[Node]

    @property
    def children(self) -> list[Node]:
        return list(self.items)


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class SizeOf(Node):
    KIND: ClassVar[NodeKind] = NodeKind.SIZEOF

    operand: Node | None

    @property
    def children(self) -> list[Node]:
        return [self.operand] if self.operand is not None else []


@dataclasses.dataclass(eq=False, kw_only=True, repr=False)
class Throw(Node):
    KIND: ClassVar[NodeKind] = NodeKind.THROW

    operand: Node | None

    @property
    def children(self) -> list[Node]:
        return [self.operand] if self.operand is not None else []


class SyntaxTree:
    """
    ``SyntaxTree`` represents parsed C++ translation units.

    ``SyntaxTree`` keeps the full token list next to the tree, so the
    unedited file is always the concatenation of token texts.

    Attributes:
        path: File identifier.
        text: Source text.
        tokens: Full-fidelity token list.
        significant: Tokens the parser reads.
        root: Translation unit node.
        inactive: Significant positions standing for ``#if 0`` regions.
        attributes: Byte spans of attribute sequences.
        known_types: Type names seen while parsing or imported.
        known_templates: Template names seen while parsing or imported.
    """

    def __init__(
        self,
        path: str,
        text: str,
        tokens: list[Token],
        significant: list[Token],
        root: TranslationUnit,
        inactive: set[int],
        attributes: list[tuple[int, int]],
        known_types: set[str],
        known_templates: set[str],
    ):
        """
        ``__init__`` initializes ``SyntaxTree``.
        """

        self.path: str = path
        self.text: str = text
        self.tokens: list[Token] = tokens
        self.significant: list[Token] = significant
        self.root: TranslationUnit = root
        self.inactive: set[int] = inactive
        self.attributes: list[tuple[int, int]] = attributes
        self.known_types: set[str] = known_types
        self.known_templates: set[str] = known_templates

        self._offsets = [token.offset for token in tokens]
        self._line_starts = [0] + [index + 1 for index, char in enumerate(text) if char == "\n"]

    def to_source(self) -> str:
        """
        ``to_source`` reprints the unedited file.

        Returns:
            Concatenation of token texts.
        """

        return "".join(token.text for token in self.tokens)

    def sig(self, pos: int) -> Token:
        return self.significant[pos]

    def sig_text(self, first: int, last: int) -> list[str]:
        """
        ``sig_text`` reads significant token texts.

        Parameters:
            first: First position.
            last: Position after the last token.

        Returns:
            Token texts.
        """

        return [token.text for token in self.significant[first:last]]

    def start_of(self, pos: int) -> int:
        return self.significant[pos].offset

    def stop_of(self, pos: int) -> int:
        return self.significant[pos].stop

    def source(self, start: int, stop: int) -> str:
        return self.text[start:stop]

    def node_text(self, node: Node) -> str:
        return self.text[node.start : node.stop]

    def span_text(self, first: int, last: int) -> str:
        """
        ``span_text`` reads source text between significant positions.

        Parameters:
            first: First position.
            last: Position after the last token.

        Returns:
            Source text including trivia between the tokens.
        """

        if last <= first:
            return ""

        return self.text[self.start_of(first) : self.stop_of(last - 1)]

    def tokens_between(self, start: int, stop: int) -> list[Token]:
        """
        ``tokens_between`` collects full-fidelity tokens inside byte spans.

        Parameters:
            start: First byte offset.
            stop: Byte offset after the span.

        Returns:
            Tokens lying inside the span.
        """

        first = bisect.bisect_left(self._offsets, start)
        last = bisect.bisect_left(self._offsets, stop)
        return self.tokens[first:last]

    def line_of(self, offset: int) -> int:
        return bisect.bisect_right(self._line_starts, offset)

    def line_start(self, offset: int) -> int:
        return self._line_starts[self.line_of(offset) - 1]

    def location(self, offset: int) -> SourceLocation:
        line = self.line_of(offset)
        return SourceLocation(self.path, offset, line, offset - self._line_starts[line - 1] + 1)

    def walk(self, node: Node = None, ancestors: tuple = ()) -> Iterator[tuple[Node, tuple]]:
        """
        ``walk`` iterates nodes in pre-order.

        Parameters:
            node: Subtree root, defaults to the translation unit.
            ancestors: Ancestors of ``node``.

        Returns:
            Iterator of tuples of node and its ancestors, outermost first.
        """

        node = self.root if node is None else node
        stack = [(node, ancestors)]

        while stack:
            current, parents = stack.pop()
            yield (current, parents)
            nested = parents + (current,)
            stack.extend((child, nested) for child in reversed(current.children))

    def nodes(self, kind: type) -> list[Node]:
        return [node for node, _ in self.walk() if isinstance(node, kind)]
