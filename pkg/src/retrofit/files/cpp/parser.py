"""
``parser`` contains the recursive descent parser for the supported C++ subset.

``parser`` packages the ``CppParser`` class and the ``parse`` function. The
parser structures namespaces, classes, functions, variables, aliases, the
statement forms, and the expression forms transformations need. Anything
else becomes an ``Opaque`` node covering its exact span, so parsing never
fails on brace-balanced input.
"""


import logging
from enum import StrEnum
from typing import Iterable

from . import tree
from .token import Token
from .lexer import Lexer
from ..utils import errors
from ..utils._parser import Parser
from ..utils._parser import Preprocessor
from ..utils._parser import Postprocessor
from ..utils.types import TokenKind


logger = logging.getLogger(__name__)

FUNDAMENTALS = frozenset(
    {"void", "bool", "char", "wchar_t", "char16_t", "char32_t", "short", "int", "long", "float", "double", "signed", "unsigned"}
)
STORAGE = frozenset(
    {"static", "extern", "inline", "virtual", "explicit", "friend", "mutable", "constexpr", "register", "thread_local", "typedef"}
)
CV = frozenset({"const", "volatile"})
CASTS = frozenset({"static_cast", "dynamic_cast", "reinterpret_cast", "const_cast"})
STD_TEMPLATES = frozenset(
    {
        "vector", "list", "deque", "set", "map", "multimap", "multiset", "pair", "basic_string", "auto_ptr",
        "shared_ptr", "unique_ptr", "array", "function", "allocator", "less", "greater", "stack", "queue",
        "priority_queue", "unordered_map", "unordered_set", "numeric_limits",
    }
)
STD_TYPES = STD_TEMPLATES | {"string", "wstring", "size_t", "ostream", "istream", "iterator", "const_iterator", "size_type"}
ASSIGNMENTS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="})
PRECEDENCE = {
    ".*": 14, "->*": 14,
    "*": 13, "/": 13, "%": 13,
    "+": 12, "-": 12,
    "<<": 11, ">>": 11,
    "<": 10, ">": 10, "<=": 10, ">=": 10,
    "==": 9, "!=": 9,
    "&": 8, "^": 7, "|": 6, "&&": 5, "||": 4,
}
PREFIX_OPERATORS = frozenset({"++", "--", "!", "~", "-", "+", "*", "&"})
CONTINUE_AFTER_BRACE = frozenset({",", ")", ".", "->", "+", "-", "*", "/", "=", "<", ">", "&", "|", "?", ":", "[", "("})
EOF = Token(None, "", None, None)


class ParseFailure(Exception):
    """
    ``ParseFailure`` signals that a tentative parse did not match.

    ``CppParser`` catches it at declaration and statement granularity and
    falls back to opaque nodes.
    """


class Context(StrEnum):
    """
    ``Context`` represents where declarations appear.
    """

    NAMESPACE = "namespace"
    CLASS = "class"
    BLOCK = "block"
    PARAM = "param"
    TYPE = "type"


def category(text: str) -> str:
    """
    ``category`` classifies literal spellings.

    Parameters:
        text: Literal token text.

    Returns:
        ``int``, ``float``, ``string``, or ``char``.
    """

    if text[0].isdigit() or text[0] == ".":
        lower = text.lower()
        if lower.startswith("0x"):
            return "float" if "p" in lower or "." in lower else "int"
        return "float" if "." in lower or "e" in lower else "int"

    quote = min((index for index in (text.find('"'), text.find("'")) if index >= 0), default=-1)
    if quote >= 0 and text[quote] == "'":
        return "char"

    return "string"


class CppParser:
    """
    ``CppParser`` parses token lists into ``SyntaxTree`` objects.

    ``CppParser`` walks the significant tokens: trivia, attribute sequences,
    and ``#if 0`` regions are skipped, the latter standing in as single
    inactive items. Tentative parses backtrack through the cursor; failures
    become opaque nodes.

    Attributes:
        tokens: Full-fidelity token list.
        path: File identifier.
        known_types: Names known to denote types.
        known_templates: Names known to denote templates.
    """

    def __init__(self, tokens: list[Token], path: str = None, known_types: Iterable[str] = (), known_templates: Iterable[str] = ()):
        """
        ``__init__`` initializes ``CppParser``.

        Parameters:
            tokens: Full-fidelity token list.
            path: File identifier.
            known_types: Type names declared elsewhere, such as headers.
            known_templates: Template names declared elsewhere.

        Raises:
            CppSyntaxError: UNBALANCED_BRACES.
        """

        self.tokens: list[Token] = tokens
        self.path: str = path
        self.source: str = "".join(token.text for token in tokens)
        self.known_types: set[str] = set(known_types) | STD_TYPES
        self.known_templates: set[str] = set(known_templates) | STD_TEMPLATES

        skipped = [False] * len(tokens)
        attributes = Preprocessor.attribute_regions(tokens)
        for start, stop in attributes:
            for index in range(start, stop):
                skipped[index] = True
        self.attributes: list[tuple[int, int]] = [(tokens[start].offset, tokens[stop - 1].stop) for start, stop in attributes]

        regions = {start: stop for start, stop in Preprocessor.inactive_regions(tokens)}
        significant = []
        self.inactive: set[int] = set()

        index = 0
        while index < len(tokens):
            if index in regions:
                stop = regions[index]
                body = [token for token in tokens[index:stop] if token.kind != TokenKind.WHITESPACE]
                if body:
                    self.inactive.add(len(significant))
                    text = self.source[body[0].offset : body[-1].stop]
                    significant.append(Token(TokenKind.COMMENT, text, body[0].start, body[-1].end))
                index = stop
                continue

            token = tokens[index]
            if not skipped[index] and not token.is_trivia:
                significant.append(token)
            index += 1

        self.significant: list[Token] = significant
        self.cursor = Parser(significant, ParseFailure, EOF)
        self.matches: dict[int, int] = self._match_brackets()

    # Cursor helpers

    @property
    def pos(self) -> int:
        return self.cursor.index

    def tok(self, offset: int = 0) -> Token:
        return self.cursor.peekl(offset)

    def text(self, offset: int = 0) -> str:
        if self.pos + offset in self.inactive:
            return ""
        return self.cursor.peekl(offset).text

    def kind(self, offset: int = 0) -> TokenKind:
        if self.pos + offset in self.inactive:
            return None
        return self.cursor.peekl(offset).kind

    def is_ident(self, offset: int = 0) -> bool:
        return self.kind(offset) == TokenKind.IDENTIFIER

    def advance(self) -> Token:
        return self.cursor.popl()

    def accept(self, text: str) -> bool:
        if self.text() == text and self.cursor:
            self.advance()
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise ParseFailure()

    def fail(self):
        raise ParseFailure()

    def at_end(self) -> bool:
        return not self.cursor

    def adjacent(self, offset: int = 0) -> bool:
        left, right = self.tok(offset), self.tok(offset + 1)
        return left is not EOF and right is not EOF and left.stop == right.offset

    def node(self, cls: type, first: int, **fields) -> tree.Node:
        last = self.pos
        start = self.significant[first].offset if first < len(self.significant) else len(self.source)
        stop = self.significant[last - 1].stop if last > first else start
        return cls(first=first, last=last, start=start, stop=stop, **fields)

    def sig_text(self, first: int, last: int) -> list[str]:
        return [token.text for token in self.significant[first:last]]

    def skip_balanced(self) -> None:
        close = self.matches.get(self.pos)
        if close is None:
            self.fail()
        self.cursor.reset(close + 1)

    def _match_brackets(self) -> dict[int, int]:
        """
        ``_match_brackets`` pairs brackets and checks brace balance.

        Returns:
            Dictionary from opening to closing bracket positions.

        Raises:
            CppSyntaxError: UNBALANCED_BRACES.
        """

        pairs = {")": "(", "]": "[", "}": "{"}
        matches = {}
        stack = []

        for pos, token in enumerate(self.significant):
            if pos in self.inactive or token.kind != TokenKind.PUNCTUATOR:
                continue

            if token.text in ("(", "[", "{"):
                stack.append(pos)
            elif token.text == "}":
                while stack and self.significant[stack[-1]].text != "{":
                    stack.pop()
                if not stack:
                    raise errors.CppSyntaxError(errors.CppSyntaxCodes.UNBALANCED_BRACES, line=token.line, path=self.path)
                matches[stack.pop()] = pos
            elif token.text in pairs:
                if stack and self.significant[stack[-1]].text == pairs[token.text]:
                    matches[stack.pop()] = pos

        for pos in stack:
            if self.significant[pos].text == "{":
                raise errors.CppSyntaxError(errors.CppSyntaxCodes.UNBALANCED_BRACES, line=self.significant[pos].line, path=self.path)

        return matches

    def find_angle_close(self, pos: int) -> int | None:
        """
        ``find_angle_close`` finds the ``>`` closing a template argument list.

        Parameters:
            pos: Position of ``<``.

        Returns:
            Position of the matching ``>``, or None.
        """

        depth = 0
        index = pos

        while index < len(self.significant):
            token = self.significant[index]
            if index in self.inactive or token.kind == TokenKind.PREPROCESSOR:
                return None

            match token.text:
                case "<":
                    depth += 1
                case ">":
                    depth -= 1
                    if depth == 0:
                        return index
                case "(" | "[":
                    close = self.matches.get(index)
                    if close is None:
                        return None
                    index = close
                case ";" | "{" | "}" | ")" | "]" | "&&" | "||":
                    return None

            index += 1

        return None

    def template_args(self, open: int, close: int) -> list[list[str]]:
        """
        ``template_args`` splits template argument lists.

        Parameters:
            open: Position of ``<``.
            close: Position of ``>``.

        Returns:
            Token texts of each argument.
        """

        args = [[]]
        depth = 0

        for token in self.significant[open + 1 : close]:
            if token.text in ("<", "(", "["):
                depth += 1
            elif token.text in (">", ")", "]"):
                depth -= 1
            if depth == 0 and token.text == ",":
                args.append([])
            else:
                args[-1].append(token.text)

        return [arg for arg in args if arg]

    # Names

    def parse_name(self, expression: bool = False) -> tree.Name:
        """
        ``parse_name`` parses possibly qualified names.

        Parameters:
            expression: Whether ``<`` may be a comparison.

        Returns:
            Name node.
        """

        first = self.pos
        texts = []
        parts = []
        args = None
        last_pos = first

        if self.accept("::"):
            texts.append("::")

        while True:
            if self.accept("template"):
                texts.append("template")

            if not self.is_ident():
                self.fail()

            last_pos = self.pos
            ident = self.advance().text
            texts.append(ident)
            args = None

            if self.text() == "<":
                close = self.find_angle_close(self.pos)
                if close is not None and (
                    not expression
                    or ident in self.known_templates
                    or self.significant[close + 1 : close + 2] and self.significant[close + 1].text in ("(", "::")
                ):
                    args = self.template_args(self.pos, close)
                    texts += self.sig_text(self.pos, close + 1)
                    self.cursor.reset(close + 1)

            parts.append(ident)

            if self.text() == "::" and (self.is_ident(1) or self.text(1) == "template"):
                self.advance()
                texts.append("::")
                continue

            break

        return self.node(tree.Name, first, name=Postprocessor.squeeze(texts), parts=parts, args=args, pos=last_pos)

    def parse_operator_name(self) -> str:
        self.expect("operator")

        if self.text() in ("(", "[") and self.text(1) in (")", "]"):
            name = self.text() + self.text(1)
            self.advance()
            self.advance()
            return "operator" + name

        if self.text() in ("new", "delete"):
            name = self.advance().text
            if self.text() == "[" and self.text(1) == "]":
                self.advance()
                self.advance()
                name += "[]"
            return "operator " + name

        if self.kind() == TokenKind.PUNCTUATOR and self.text() != "(":
            if self.text() == ">" and self.text(1) in (">", ">=") and self.adjacent():
                name = self.advance().text + self.advance().text
            else:
                name = self.advance().text
            return "operator" + name

        texts = []
        while not self.at_end() and self.text() != "(":
            texts.append(self.advance().text)
        if not texts:
            self.fail()

        return "operator " + Postprocessor.squeeze(texts)

    def parse_declarator_id(self) -> tuple[str, int]:
        parts = []
        prefix = "::" if self.accept("::") else ""
        name_pos = self.pos

        while True:
            name_pos = self.pos
            if self.text() == "~":
                self.advance()
                if not self.is_ident():
                    self.fail()
                parts.append("~" + self.advance().text)
            elif self.text() == "operator":
                parts.append(self.parse_operator_name())
            elif self.is_ident():
                ident = self.advance().text
                if self.text() == "<" and self.text(1) != "<":
                    close = self.find_angle_close(self.pos)
                    if close is not None and self.significant[close + 1 : close + 2] and self.significant[close + 1].text == "::":
                        ident += Postprocessor.squeeze(self.sig_text(self.pos, close + 1))
                        self.cursor.reset(close + 1)
                parts.append(ident)
            else:
                self.fail()

            if self.text() == "::" and (self.is_ident(1) or self.text(1) in ("~", "operator", "template")):
                self.advance()
                self.accept("template")
                continue

            break

        return (prefix + "::".join(parts), name_pos)

    # Types

    def starts_type(self) -> bool:
        """
        ``starts_type`` checks whether the cursor is at a type.

        Returns:
            True if a type specifier starts here.
        """

        text = self.text()

        if text in FUNDAMENTALS or text in CV or text in ("auto", "struct", "class", "enum", "union", "typename", "decltype"):
            return True
        if not (self.is_ident() or text == "::"):
            return False

        mark = self.cursor.mark()
        try:
            name = self.parse_name()
        except ParseFailure:
            return False
        finally:
            self.cursor.reset(mark)

        return name.base in self.known_types or name.args is not None

    def _class_head_follows(self) -> bool:
        index = self.pos + 1

        while index < len(self.significant) and index not in self.inactive:
            token = self.significant[index]
            if token.kind == TokenKind.IDENTIFIER or token.text == "::":
                index += 1
            elif token.text == "<":
                close = self.find_angle_close(index)
                if close is None:
                    return False
                index = close + 1
            else:
                return token.text == "{" or token.text == ":"

        return False

    def parse_decl_specifiers(self, ctx: Context, scope_name: str = None) -> tree.TypeSpec:
        """
        ``parse_decl_specifiers`` parses declaration specifier sequences.

        Parameters:
            ctx: Declaration context.
            scope_name: Enclosing class name, used to spot constructors.

        Returns:
            Type specifier record, possibly without a type.
        """

        first = self.pos
        tokens = []
        flags = set()
        auto = None
        has_type = False
        fundamental = False
        class_def = None

        while not self.at_end() and self.pos not in self.inactive:
            text = self.text()

            if text in STORAGE:
                flags.add(text)
                self.advance()
            elif text in CV:
                flags.add(text)
                tokens.append(text)
                self.advance()
            elif text == "auto" and not has_type:
                auto = self.pos
                has_type = True
                tokens.append(text)
                self.advance()
            elif text in FUNDAMENTALS:
                if has_type and not fundamental:
                    break
                has_type = fundamental = True
                tokens.append(text)
                self.advance()
            elif text in ("class", "struct", "union") and not has_type:
                if self._class_head_follows():
                    class_def = self.parse_class()
                    tokens += [text, class_def.name or ""]
                else:
                    self.advance()
                    tokens += [text, self.parse_name().name]
                has_type = True
            elif text == "enum" and not has_type:
                self.advance()
                if not self.accept("class"):
                    self.accept("struct")
                name = self.parse_name().name if self.is_ident() else ""
                if self.accept(":"):
                    while not self.at_end() and self.text() not in ("{", ";"):
                        self.advance()
                if self.text() == "{":
                    self.skip_balanced()
                tokens += ["enum", name]
                has_type = True
            elif text == "typename" and not has_type:
                self.advance()
                tokens.append(self.parse_name().name)
                has_type = True
            elif text == "decltype" and not has_type:
                open = self.pos + 1
                self.advance()
                if self.text() != "(":
                    self.fail()
                self.skip_balanced()
                tokens.append("decltype" + Postprocessor.squeeze(self.sig_text(open, self.pos)))
                has_type = True
            elif (self.is_ident() or text == "::") and not has_type:
                if ctx == Context.CLASS and text == scope_name and self.text(1) == "(":
                    break
                mark = self.cursor.mark()
                name = self.parse_name()
                if self.text() == "(" and len(name.parts) >= 2 and name.parts[-1] == name.parts[-2]:
                    self.cursor.reset(mark)
                    break
                if self.text() == "::" and self.text(1) in ("~", "operator"):
                    self.cursor.reset(mark)
                    break
                tokens.append(name.name)
                has_type = True
            else:
                break

        return tree.TypeSpec(first, self.pos, tokens, flags, auto, class_def, has_type)

    def skip_type(self, stops: tuple[str, ...]) -> None:
        depth = 0

        while not self.at_end():
            text = self.text()
            if depth == 0 and text in stops:
                break
            if self.kind() in (None, TokenKind.PREPROCESSOR) or text in ("{", "}", ";") and text not in stops:
                self.fail()
            if text == "<":
                depth += 1
            elif text == ">":
                depth -= 1
            if text in ("(", "["):
                self.skip_balanced()
            else:
                self.advance()

    # Declarators

    def parse_declarator(self, ctx: Context, abstract: bool = False) -> tree.Declarator:
        """
        ``parse_declarator`` parses declarators without initializers.

        Parameters:
            ctx: Declaration context.
            abstract: Whether the name may be omitted.

        Returns:
            Declarator record.
        """

        first = self.pos
        ops = []

        while self.text() in ("*", "&", "&&"):
            ops.append(self.advance().text)
            while self.text() in CV:
                ops.append(self.advance().text)

        name = None
        name_pos = None
        nested = None

        if self.text() == "(" and self.text(1) in ("*", "&", "&&"):
            self.advance()
            nested = []
            while self.text() in ("*", "&", "&&") or self.text() in CV:
                nested.append(self.advance().text)
            if self.is_ident():
                name_pos = self.pos
                name = self.advance().text
            elif not abstract:
                self.fail()
            self.expect(")")
        elif self.is_ident() or self.text() in ("::", "~", "operator"):
            if self.is_ident() and self.text() in ("final", "override") and abstract:
                pass
            else:
                name, name_pos = self.parse_declarator_id()
        elif not abstract:
            self.fail()

        arrays = []
        while self.text() == "[":
            open = self.pos
            self.skip_balanced()
            extent = Postprocessor.squeeze(self.sig_text(open + 1, self.pos - 1))
            arrays.append(extent or None)

        function = None
        if self.text() == "(" and not arrays:
            mark = self.cursor.mark()
            try:
                function = self.parse_function_suffix(strict=ctx == Context.BLOCK and nested is None)
            except ParseFailure:
                if nested is not None:
                    raise
                self.cursor.reset(mark)

        return tree.Declarator(first, self.pos, name, name_pos, ops, arrays, function, nested)

    def parse_function_suffix(self, strict: bool) -> tree.FunctionSuffix:
        open = self.pos
        params = self.parse_parameters(strict)
        suffix = tree.FunctionSuffix(open, self.pos - 1, params)

        while not self.at_end():
            text = self.text()
            if text in CV or text in ("&", "&&"):
                suffix.qualifiers.append(self.advance().text)
            elif text in ("noexcept", "throw"):
                start = self.pos
                self.advance()
                if self.text() == "(":
                    self.skip_balanced()
                suffix.qualifiers.append(Postprocessor.squeeze(self.sig_text(start, self.pos)))
            elif text == "->" and suffix.trailing is None:
                self.advance()
                start = self.pos
                self.skip_type(("{", ";", "=", ",", ")", "override", "final", ":"))
                if self.pos == start:
                    self.fail()
                suffix.trailing = (start, self.pos)
            elif text in ("override", "final") and self.is_ident():
                suffix.virt.append(self.pos)
                self.advance()
            else:
                break

        return suffix

    def parse_parameters(self, strict: bool = False) -> list[tree.Param]:
        """
        ``parse_parameters`` parses parenthesized parameter lists.

        Parameters:
            strict: Whether every parameter must start with a known type.

        Returns:
            List of parameters.
        """

        self.expect("(")
        params = []

        if self.accept(")"):
            return params
        if self.text() == "void" and self.text(1) == ")":
            self.advance()
            self.advance()
            return params

        while True:
            first = self.pos
            if self.accept("..."):
                params.append(tree.Param(first, self.pos, None, None, variadic=True))
                self.expect(")")
                break

            if strict and not self.starts_type():
                self.fail()

            spec = self.parse_decl_specifiers(Context.PARAM)
            if spec.is_empty:
                self.fail()
            declarator = self.parse_declarator(Context.PARAM, abstract=True)

            default = None
            if self.accept("="):
                default = self.parse_braced_init_list() if self.text() == "{" else self.parse_assignment_expression()
            self.accept("...")

            params.append(tree.Param(first, self.pos, spec, declarator, default))

            if self.accept(","):
                continue
            self.expect(")")
            break

        return params

    def parse_initializer(self) -> tree.Initializer:
        first = self.pos

        if self.accept("="):
            expr = self.parse_braced_init_list() if self.text() == "{" else self.parse_assignment_expression()
            return tree.Initializer("=", first, self.pos, [expr])

        if self.text() == "(":
            args = self.parse_call_args()
            return tree.Initializer("()", first, self.pos, args)

        items = self.parse_braced_init_list().items
        return tree.Initializer("{}", first, self.pos, items)

    # Declarations

    def parse_declaration_seq(self, ctx: Context, scope_name: str = None) -> list[tree.Node]:
        items = []

        while not self.at_end() and not (self.text() == "}" and self.pos not in self.inactive):
            items.append(self.parse_declaration_guarded(ctx, scope_name))

        return items

    def parse_declaration_guarded(self, ctx: Context, scope_name: str = None) -> tree.Node:
        mark = self.cursor.mark()

        try:
            node = self.parse_declaration(ctx, scope_name)
        except (ParseFailure, RecursionError):
            self.cursor.reset(mark)
            node = self.parse_opaque()

        if self.pos == mark:
            node = self.parse_opaque()

        return node

    def parse_declaration(self, ctx: Context, scope_name: str = None) -> tree.Node:
        """
        ``parse_declaration`` parses declarations.

        Parameters:
            ctx: Declaration context.
            scope_name: Enclosing class name.

        Returns:
            Declaration node.
        """

        first = self.pos

        if first in self.inactive:
            self.advance()
            return self.node(tree.Opaque, first, inactive=True)
        if self.kind() == TokenKind.PREPROCESSOR:
            return self.parse_directive()

        text = self.text()

        if text == ";":
            self.advance()
            return self.node(tree.Empty, first)
        if text == "namespace" or text == "inline" and self.text(1) == "namespace":
            return self.parse_namespace()
        if text == "extern" and self.kind(1) == TokenKind.LITERAL:
            return self.parse_linkage(ctx)
        if text == "template":
            return self.parse_template_declaration(ctx, scope_name, first)
        if text == "using":
            return self.parse_using(None, first)
        if ctx == Context.CLASS and text in ("public", "private", "protected") and self.text(1) == ":":
            self.advance()
            self.advance()
            return self.node(tree.Access, first, label=text)

        return self.parse_simple_declaration(ctx, scope_name, None, first)

    def parse_directive(self) -> tree.Directive:
        first = self.pos
        text = self.advance().text
        return self.node(tree.Directive, first, text=text, include=Preprocessor.include(text))

    def parse_namespace(self) -> tree.Node:
        first = self.pos
        self.accept("inline")
        self.expect("namespace")

        name = self.parse_name().name if self.is_ident() else None

        if self.accept("="):
            target = self.parse_name().name
            self.expect(";")
            return self.node(tree.Using, first, name=f"{name}={target}")

        self.expect("{")
        body = self.parse_declaration_seq(Context.NAMESPACE)
        self.expect("}")

        return self.node(tree.Namespace, first, name=name, body=body)

    def parse_linkage(self, ctx: Context) -> tree.Node:
        first = self.pos
        self.advance()
        self.advance()

        if self.accept("{"):
            body = self.parse_declaration_seq(Context.NAMESPACE)
            self.expect("}")
        else:
            body = [self.parse_declaration(ctx)]

        return self.node(tree.Namespace, first, name=None, body=body, linkage=True)

    def parse_template_declaration(self, ctx: Context, scope_name: str, first: int) -> tree.Node:
        self.expect("template")
        if self.text() != "<":
            self.fail()

        open = self.pos
        close = self.find_angle_close(open)
        if close is None:
            self.fail()

        params = self._template_params(open, close)
        self.cursor.reset(close + 1)
        template = tree.Template(first, self.pos, params)
        self.known_types.update(params)

        if self.text() == "template":
            return self.parse_template_declaration(ctx, scope_name, first)
        if self.text() == "using":
            return self.parse_using(template, first)

        node = self.parse_simple_declaration(ctx, scope_name, template, first)
        if isinstance(node, tree.Class) and node.name:
            self.known_templates.add(node.name)
        elif isinstance(node, tree.Function):
            self.known_templates.add(node.name.split("::")[-1])

        return node

    def _template_params(self, open: int, close: int) -> list[str]:
        names = []
        current = []
        depth = 0

        def flush():
            head = []
            for token in current:
                if token.text == "=":
                    break
                head.append(token)
            idents = [token.text for token in head if token.kind == TokenKind.IDENTIFIER]
            if idents and len(head) > 1:
                names.append(idents[-1])

        for token in self.significant[open + 1 : close]:
            if token.text in ("<", "(", "["):
                depth += 1
            elif token.text in (">", ")", "]"):
                depth -= 1
            if depth == 0 and token.text == ",":
                flush()
                current = []
            else:
                current.append(token)
        flush()

        return names

    def parse_using(self, template: tree.Template | None, first: int) -> tree.Node:
        self.expect("using")

        if self.accept("namespace"):
            name = self.parse_name().name
            self.expect(";")
            return self.node(tree.Using, first, name=name, directive=True)

        if self.is_ident() and self.text(1) == "=":
            name_pos = self.pos
            name = self.advance().text
            self.advance()
            start = self.pos
            self.skip_type((";",))
            target = (start, self.pos)
            if target[0] == target[1]:
                self.fail()
            self.expect(";")

            self.known_types.add(name)
            if template is not None:
                self.known_templates.add(name)

            return self.node(tree.UsingAlias, first, name=name, name_pos=name_pos, target=target, template=template)

        self.accept("typename")
        name = self.parse_name()
        self.expect(";")

        return self.node(tree.Using, first, name=name.name)

    def parse_class(self) -> tree.Class:
        """
        ``parse_class`` parses class heads and bodies.

        Returns:
            Class node spanning the key through the closing brace.
        """

        first = self.pos
        key = self.advance().text

        name = None
        name_pos = None
        final = None

        if self.is_ident():
            parsed = self.parse_name()
            name = parsed.base
            name_pos = parsed.pos
            self.known_types.add(name)

        if name is not None and self.text() == "final" and self.is_ident():
            final = self.pos
            self.advance()

        bases = []
        if self.accept(":"):
            while True:
                while self.text() in ("public", "private", "protected", "virtual"):
                    self.advance()
                bases.append(self.parse_name().name)
                self.accept("...")
                if not self.accept(","):
                    break

        open = self.pos
        self.expect("{")
        members = self.parse_declaration_seq(Context.CLASS, name)
        close = self.pos
        self.expect("}")

        return self.node(
            tree.Class, first, key=key, name=name, name_pos=name_pos, final=final, bases=bases, open=open, close=close, members=members
        )

    def parse_simple_declaration(self, ctx: Context, scope_name: str, template: tree.Template | None, first: int) -> tree.Node:
        """
        ``parse_simple_declaration`` parses variable, function, and class
        declarations.

        Parameters:
            ctx: Declaration context.
            scope_name: Enclosing class name.
            template: Template header, if any.
            first: Position where the declaration starts.

        Returns:
            Declaration node.
        """

        spec = self.parse_decl_specifiers(ctx, scope_name)

        if spec.class_def is not None and template is not None:
            spec.class_def.template = template

        if self.text() == ";" and spec.has_type:
            self.advance()
            if spec.class_def is not None:
                node = spec.class_def
                node.first = first
                node.start = self.significant[first].offset
                node.last = self.pos
                node.stop = self.significant[self.pos - 1].stop
                return node
            return self.node(tree.Variable, first, type_spec=spec, declarators=[], template=template)

        if ctx == Context.BLOCK and spec.is_empty:
            self.fail()

        typedef = "typedef" in spec.flags
        declarators = []

        while True:
            declarator = self.parse_declarator(ctx)

            if declarator.function is not None and declarator.nested is None and not declarators and not typedef:
                return self.parse_function_rest(spec, declarator, template, first, ctx, scope_name)
            if spec.is_empty:
                self.fail()
            if ctx == Context.BLOCK and declarator.nested is not None and declarator.function is None and not declarator.arrays:
                self.fail()

            if ctx == Context.CLASS and self.text() == ":":
                self.advance()
                self.parse_conditional()
                declarator.bitfield = True

            if self.text() in ("=", "(", "{"):
                declarator.initializer = self.parse_initializer()

            declarators.append(declarator)

            if not self.accept(","):
                break

        self.expect(";")

        if typedef:
            self.known_types.update(declarator.name for declarator in declarators if declarator.name)
            return self.node(tree.Typedef, first, type_spec=spec, declarators=declarators)

        return self.node(tree.Variable, first, type_spec=spec, declarators=declarators, template=template)

    def parse_function_rest(
        self,
        spec: tree.TypeSpec,
        declarator: tree.Declarator,
        template: tree.Template | None,
        first: int,
        ctx: Context,
        scope_name: str,
    ) -> tree.Function:
        name = declarator.name or ""
        parts = name.split("::")
        base = parts[-1]

        if ctx == Context.CLASS:
            class_name = scope_name
        elif len(parts) >= 2:
            class_name = parts[-2].split("<")[0]
        else:
            class_name = None

        is_dtor = base.startswith("~")
        is_ctor = spec.is_empty and not is_dtor and class_name is not None and base.split("<")[0] == class_name

        if spec.is_empty and not (is_ctor or is_dtor or base.startswith("operator")):
            self.fail()

        colon = None
        inits = []
        if self.text() == ":":
            if not is_ctor:
                self.fail()
            colon = self.pos
            self.advance()
            while True:
                inits.append(self.parse_mem_init())
                if not self.accept(","):
                    break

        body = None
        default = None
        if self.text() == "{":
            body = self.parse_compound()
        elif self.accept("="):
            if self.text() not in ("0", "default", "delete"):
                self.fail()
            default = self.advance().text
            self.expect(";")
        else:
            self.expect(";")

        return self.node(
            tree.Function,
            first,
            type_spec=spec,
            declarator=declarator,
            name=name,
            body=body,
            colon=colon,
            inits=inits,
            template=template,
            is_ctor=is_ctor,
            is_dtor=is_dtor,
            class_name=class_name,
            default=default,
        )

    def parse_mem_init(self) -> tree.MemInit:
        first = self.pos
        name = self.parse_name().name

        open = self.pos
        if self.text() == "(":
            args = self.parse_call_args()
        elif self.text() == "{":
            args = self.parse_braced_init_list().items
        else:
            self.fail()
        close = self.pos - 1
        self.accept("...")

        return self.node(tree.MemInit, first, name=name, open=open, close=close, args=args)

    def parse_opaque(self) -> tree.Node:
        """
        ``parse_opaque`` consumes unparseable regions.

        Regions run through the next ``;`` or brace-balanced group at the
        current nesting level.

        Returns:
            Opaque node.
        """

        first = self.pos

        if first in self.inactive:
            self.advance()
            return self.node(tree.Opaque, first, inactive=True)
        if self.kind() == TokenKind.PREPROCESSOR:
            return self.parse_directive()

        while not self.at_end():
            if self.pos in self.inactive or self.kind() == TokenKind.PREPROCESSOR:
                break

            text = self.text()
            if text == ";":
                self.advance()
                break
            if text == "}":
                break
            if text == "{":
                self.skip_balanced()
                if self.text() == ";":
                    self.advance()
                    break
                if self.text() in CONTINUE_AFTER_BRACE:
                    continue
                break
            if text in ("(", "[") and self.pos in self.matches:
                self.skip_balanced()
                continue

            self.advance()

        if self.pos == first:
            self.advance()

        return self.node(tree.Opaque, first)

    # Statements

    def parse_compound(self) -> tree.Compound:
        first = self.pos
        self.expect("{")

        statements = []
        while not self.at_end() and not (self.text() == "}" and self.pos not in self.inactive):
            statements.append(self.parse_statement_guarded())

        self.expect("}")
        return self.node(tree.Compound, first, statements=statements)

    def parse_statement_guarded(self) -> tree.Node:
        mark = self.cursor.mark()

        try:
            node = self.parse_statement()
        except (ParseFailure, RecursionError):
            self.cursor.reset(mark)
            node = self.parse_opaque()

        if self.pos == mark:
            node = self.parse_opaque()

        return node

    def parse_statement(self) -> tree.Node:
        """
        ``parse_statement`` parses statements.

        Returns:
            Statement node.
        """

        first = self.pos

        if first in self.inactive:
            self.advance()
            return self.node(tree.Opaque, first, inactive=True)
        if self.kind() == TokenKind.PREPROCESSOR:
            return self.parse_directive()

        text = self.text()

        match text:
            case "{":
                return self.parse_compound()
            case ";":
                self.advance()
                return self.node(tree.ExpressionStatement, first, expression=None)
            case "return":
                self.advance()
                expression = None
                if self.text() == "{":
                    expression = self.parse_braced_init_list()
                elif self.text() != ";":
                    expression = self.parse_expression()
                self.expect(";")
                return self.node(tree.Return, first, expression=expression)
            case "for":
                return self.parse_for()
            case "if":
                self.advance()
                self.accept("constexpr")
                self.expect("(")
                parts = [self.parse_condition()]
                self.expect(")")
                parts.append(self.parse_statement_guarded())
                if self.accept("else"):
                    parts.append(self.parse_statement_guarded())
                return self.node(tree.Control, first, keyword="if", parts=parts)
            case "while" | "switch":
                self.advance()
                self.expect("(")
                condition = self.parse_condition()
                self.expect(")")
                body = self.parse_statement_guarded()
                return self.node(tree.Control, first, keyword=text, parts=[condition, body])
            case "do":
                self.advance()
                body = self.parse_statement_guarded()
                self.expect("while")
                self.expect("(")
                condition = self.parse_expression()
                self.expect(")")
                self.expect(";")
                return self.node(tree.Control, first, keyword="do", parts=[body, condition])
            case "try":
                self.advance()
                parts = [self.parse_compound()]
                while self.accept("catch"):
                    if self.text() != "(":
                        self.fail()
                    self.skip_balanced()
                    parts.append(self.parse_compound())
                return self.node(tree.Control, first, keyword="try", parts=parts)
            case "case":
                self.advance()
                value = self.parse_conditional()
                self.expect(":")
                return self.node(tree.Label, first, value=value)
            case "default" if self.text(1) == ":":
                self.advance()
                self.advance()
                return self.node(tree.Label, first)
            case "break" | "continue":
                self.advance()
                self.expect(";")
                return self.node(tree.Jump, first, keyword=text)
            case "goto":
                self.advance()
                self.advance()
                self.expect(";")
                return self.node(tree.Jump, first, keyword=text)
            case "using":
                declaration = self.parse_using(None, first)
                return self.node(tree.DeclarationStatement, first, declaration=declaration)

        if self.is_ident() and self.text(1) == ":":
            self.advance()
            self.advance()
            return self.node(tree.Label, first)

        mark = self.cursor.mark()
        try:
            declaration = self.parse_simple_declaration(Context.BLOCK, None, None, first)
            if isinstance(declaration, tree.Function) and declaration.body is not None:
                self.fail()
            return self.node(tree.DeclarationStatement, first, declaration=declaration)
        except ParseFailure:
            self.cursor.reset(mark)

        expression = self.parse_expression()
        self.expect(";")
        return self.node(tree.ExpressionStatement, first, expression=expression)

    def parse_condition(self) -> tree.Node:
        first = self.pos

        mark = self.cursor.mark()
        try:
            spec = self.parse_decl_specifiers(Context.BLOCK)
            if spec.is_empty:
                self.fail()
            declarator = self.parse_declarator(Context.BLOCK)
            if self.text() not in ("=", "{"):
                self.fail()
            declarator.initializer = self.parse_initializer()
            variable = self.node(tree.Variable, first, type_spec=spec, declarators=[declarator])
            return self.node(tree.DeclarationStatement, first, declaration=variable)
        except ParseFailure:
            self.cursor.reset(mark)

        return self.parse_expression()

    def parse_for(self) -> tree.Node:
        first = self.pos
        self.expect("for")
        open = self.pos
        self.expect("(")

        mark = self.cursor.mark()
        try:
            spec = self.parse_decl_specifiers(Context.BLOCK)
            if spec.is_empty:
                self.fail()
            declarator = self.parse_declarator(Context.BLOCK)
            colon = self.pos
            self.expect(":")
            range = self.parse_braced_init_list() if self.text() == "{" else self.parse_expression()
            close = self.pos
            self.expect(")")
            body = self.parse_statement_guarded()
            return self.node(
                tree.RangeFor,
                first,
                type_spec=spec,
                declarator=declarator,
                open=open,
                colon=colon,
                close=close,
                range=range,
                body=body,
            )
        except ParseFailure:
            self.cursor.reset(mark)

        init = None
        if not self.accept(";"):
            start = self.pos
            try:
                declaration = self.parse_simple_declaration(Context.BLOCK, None, None, start)
                init = self.node(tree.DeclarationStatement, start, declaration=declaration)
            except ParseFailure:
                self.cursor.reset(start)
                expression = self.parse_expression()
                self.expect(";")
                init = self.node(tree.ExpressionStatement, start, expression=expression)

        condition = None if self.text() == ";" else self.parse_condition()
        self.expect(";")
        increment = None if self.text() == ")" else self.parse_expression()
        self.expect(")")
        body = self.parse_statement_guarded()

        return self.node(tree.For, first, init=init, condition=condition, increment=increment, body=body)

    # Expressions

    def parse_expression(self) -> tree.Node:
        first = self.pos
        expr = self.parse_assignment_expression()

        while self.text() == ",":
            self.advance()
            rhs = self.parse_assignment_expression()
            expr = self.node(tree.Binary, first, op=",", lhs=expr, rhs=rhs)

        return expr

    def assignment_op(self) -> tuple[str, int] | None:
        if self.kind() != TokenKind.PUNCTUATOR:
            return None
        if self.text() == ">" and self.text(1) == ">=" and self.adjacent():
            return (">>=", 2)
        if self.text() in ASSIGNMENTS:
            return (self.text(), 1)
        return None

    def binary_op(self) -> tuple[str, int] | None:
        if self.kind() != TokenKind.PUNCTUATOR:
            return None
        if self.text() == ">" and self.adjacent():
            if self.text(1) == ">":
                if self.text(2) == "=" and self.adjacent(1):
                    return None
                return (">>", 2)
            if self.text(1) == ">=":
                return None
        if self.text() in PRECEDENCE:
            return (self.text(), 1)
        return None

    def parse_assignment_expression(self) -> tree.Node:
        first = self.pos

        if self.text() == "throw":
            self.advance()
            operand = None
            if self.text() not in (";", ")", ",", ":"):
                operand = self.parse_assignment_expression()
            return self.node(tree.Throw, first, operand=operand)

        lhs = self.parse_conditional()

        op = self.assignment_op()
        if op is None:
            return lhs

        for _ in range(op[1]):
            self.advance()
        rhs = self.parse_braced_init_list() if self.text() == "{" else self.parse_assignment_expression()

        return self.node(tree.Binary, first, op=op[0], lhs=lhs, rhs=rhs)

    def parse_conditional(self) -> tree.Node:
        first = self.pos
        condition = self.parse_binary(4)

        if not self.accept("?"):
            return condition

        then = self.parse_expression()
        self.expect(":")
        other = self.parse_assignment_expression()

        return self.node(tree.Conditional, first, condition=condition, then=then, other=other)

    def parse_binary(self, precedence: int) -> tree.Node:
        first = self.pos
        lhs = self.parse_unary()

        while True:
            op = self.binary_op()
            if op is None or PRECEDENCE[op[0]] < precedence:
                break
            for _ in range(op[1]):
                self.advance()
            rhs = self.parse_binary(PRECEDENCE[op[0]] + 1)
            lhs = self.node(tree.Binary, first, op=op[0], lhs=lhs, rhs=rhs)

        return lhs

    def looks_like_cast(self) -> bool:
        """
        ``looks_like_cast`` checks whether parentheses hold a cast type.

        Returns:
            True if ``(`` at the cursor opens a C-style cast.
        """

        close = self.matches.get(self.pos)
        if close is None or close == self.pos + 1:
            return False

        inner = self.significant[self.pos + 1 : close]
        allowed = FUNDAMENTALS | CV | {"::", "<", ">", "*", "&", ",", "struct", "class", "typename"}
        if not all(token.kind == TokenKind.IDENTIFIER or token.text in allowed for token in inner):
            return False

        head = inner[0].text
        if head in FUNDAMENTALS or head in CV or head in ("struct", "class", "typename"):
            return True
        if inner[-1].text in ("*", "&"):
            return True

        following = self.significant[close + 1] if close + 1 < len(self.significant) else EOF
        names = [token.text for token in inner if token.kind == TokenKind.IDENTIFIER]
        if not names or names[-1] not in self.known_types and names[0] not in self.known_types:
            return False

        return following.kind in (TokenKind.IDENTIFIER, TokenKind.LITERAL) or following.text in ("(", "!", "~", "this", "new", "sizeof")

    def parse_unary(self) -> tree.Node:
        first = self.pos
        text = self.text()

        if text in PREFIX_OPERATORS and self.kind() == TokenKind.PUNCTUATOR:
            self.advance()
            operand = self.parse_unary()
            return self.node(tree.Unary, first, op=text, operand=operand)

        if text == "sizeof":
            self.advance()
            self.accept("...")
            if self.text() == "(" and self.looks_like_cast():
                self.skip_balanced()
                return self.node(tree.SizeOf, first, operand=None)
            operand = self.parse_unary()
            return self.node(tree.SizeOf, first, operand=operand)

        if text == "new" or text == "::" and self.text(1) == "new":
            return self.parse_new()

        if text == "delete" or text == "::" and self.text(1) == "delete":
            self.accept("::")
            self.advance()
            if self.text() == "[" and self.text(1) == "]":
                self.advance()
                self.advance()
            operand = self.parse_unary()
            return self.node(tree.Delete, first, operand=operand)

        if text == "(" and self.looks_like_cast():
            close = self.matches[self.pos]
            type_tokens = self.sig_text(self.pos + 1, close)
            self.cursor.reset(close + 1)
            operand = self.parse_unary()
            return self.node(tree.Cast, first, style="c", type_tokens=type_tokens, operand=operand)

        return self.parse_postfix()

    def parse_new(self) -> tree.New:
        first = self.pos
        self.accept("::")
        self.expect("new")

        if self.text() == "(":
            self.skip_balanced()

        spec = self.parse_decl_specifiers(Context.TYPE)
        if spec.is_empty:
            self.fail()

        ops = []
        while self.text() in ("*", "&") or self.text() in CV:
            ops.append(self.advance().text)

        array = False
        while self.text() == "[":
            array = True
            self.skip_balanced()

        type_last = self.pos
        args = []
        if self.text() == "(":
            args = self.parse_call_args()
        elif self.text() == "{":
            args = self.parse_braced_init_list().items

        return self.node(tree.New, first, type_spec=spec, ops=ops, type_last=type_last, array=array, args=args)

    def parse_postfix(self) -> tree.Node:
        first = self.pos
        expr = self.parse_primary()

        while True:
            text = self.text()
            if text == "(":
                args = self.parse_call_args()
                expr = self.node(tree.Call, first, callee=expr, args=args)
            elif text == "[":
                self.advance()
                index = self.parse_expression()
                self.expect("]")
                expr = self.node(tree.Subscript, first, obj=expr, index=index)
            elif text in (".", "->"):
                self.advance()
                self.accept("template")
                if self.text() == "~":
                    self.advance()
                    member = "~" + self.parse_name().name
                elif self.text() == "operator":
                    member = self.parse_operator_name()
                else:
                    member = self.parse_name(expression=True).name
                expr = self.node(tree.Member, first, obj=expr, op=text, member=member)
            elif text in ("++", "--"):
                self.advance()
                expr = self.node(tree.Unary, first, op=text, operand=expr, postfix=True)
            else:
                break

        return expr

    def parse_primary(self) -> tree.Node:
        first = self.pos
        kind = self.kind()
        text = self.text()

        if kind is None or kind == TokenKind.PREPROCESSOR:
            self.fail()

        if kind == TokenKind.LITERAL:
            self.advance()
            kinds = category(text)
            texts = [text]
            while kinds == "string" and self.kind() == TokenKind.LITERAL and category(self.text()) == "string":
                texts.append(self.advance().text)
            return self.node(tree.Literal, first, text=" ".join(texts), category=kinds)

        match text:
            case "true" | "false":
                self.advance()
                return self.node(tree.Literal, first, text=text, category="bool")
            case "nullptr":
                self.advance()
                return self.node(tree.Literal, first, text=text, category="nullptr")
            case "this":
                self.advance()
                return self.node(tree.This, first)
            case "(":
                self.advance()
                inner = self.parse_expression()
                self.expect(")")
                return self.node(tree.Paren, first, inner=inner)
            case "[":
                return self.parse_lambda()
            case "{":
                return self.parse_braced_init_list()
            case "typeid" | "alignof" | "decltype" | "noexcept":
                self.advance()
                if self.text() != "(":
                    self.fail()
                self.skip_balanced()
                return self.node(tree.Opaque, first)

        if text in CASTS:
            self.advance()
            if self.text() != "<":
                self.fail()
            close = self.find_angle_close(self.pos)
            if close is None:
                self.fail()
            type_tokens = self.sig_text(self.pos + 1, close)
            self.cursor.reset(close + 1)
            self.expect("(")
            operand = self.parse_expression()
            self.expect(")")
            return self.node(tree.Cast, first, style=text, type_tokens=type_tokens, operand=operand)

        if text in FUNDAMENTALS:
            parts = []
            while self.text() in FUNDAMENTALS:
                parts.append(self.advance().text)
            if self.text() != "(":
                self.fail()
            return self.node(tree.Name, first, name=" ".join(parts), parts=[" ".join(parts)], pos=first)

        if kind == TokenKind.IDENTIFIER or text == "::":
            return self.parse_name(expression=True)

        self.fail()

    def parse_call_args(self) -> list[tree.Node]:
        self.expect("(")
        args = []

        if self.accept(")"):
            return args

        while True:
            args.append(self.parse_braced_init_list() if self.text() == "{" else self.parse_assignment_expression())
            self.accept("...")
            if self.accept(","):
                continue
            self.expect(")")
            break

        return args

    def parse_braced_init_list(self) -> tree.InitList:
        first = self.pos
        self.expect("{")
        items = []

        while not self.accept("}"):
            items.append(self.parse_braced_init_list() if self.text() == "{" else self.parse_assignment_expression())
            if not self.accept(","):
                self.expect("}")
                break

        return self.node(tree.InitList, first, items=items)

    def parse_lambda(self) -> tree.Lambda:
        """
        ``parse_lambda`` parses lambda expressions.

        Returns:
            Lambda node.
        """

        first = self.pos
        self.expect("[")

        default = None
        captures = []

        if not self.accept("]"):
            while True:
                if self.text() == "&" and self.text(1) in (",", "]"):
                    default = "&"
                    self.advance()
                elif self.text() == "=" and self.text(1) in (",", "]"):
                    default = "="
                    self.advance()
                elif self.text() == "this" or self.text() == "*" and self.text(1) == "this":
                    self.accept("*")
                    captures.append(tree.Capture("this", False, self.pos))
                    self.advance()
                else:
                    by_ref = self.accept("&")
                    if not self.is_ident():
                        self.fail()
                    pos = self.pos
                    name = self.advance().text
                    init = False
                    if self.text() in ("=", "(", "{"):
                        init = True
                        if self.text() == "=":
                            self.advance()
                            self.parse_assignment_expression()
                        else:
                            self.skip_balanced()
                    self.accept("...")
                    captures.append(tree.Capture(name, by_ref, pos, init))

                if self.accept(","):
                    continue
                self.expect("]")
                break

        params = None
        if self.text() == "(":
            params = self.parse_parameters()

        mutable = False
        while self.text() in ("mutable", "constexpr", "noexcept", "throw"):
            if self.advance().text == "mutable":
                mutable = True
            elif self.text() == "(":
                self.skip_balanced()

        trailing = None
        if self.accept("->"):
            start = self.pos
            self.skip_type(("{",))
            trailing = (start, self.pos)

        body = self.parse_compound()

        return self.node(
            tree.Lambda, first, default=default, captures=captures, params=params, mutable=mutable, trailing=trailing, body=body
        )

    def parse(self) -> tree.SyntaxTree:
        """
        ``parse`` parses the whole token list.

        Returns:
            Syntax tree.
        """

        declarations = self.parse_declaration_seq(Context.NAMESPACE)

        while not self.at_end():
            declarations.append(self.parse_opaque())

        root = tree.TranslationUnit(first=0, last=len(self.significant), start=0, stop=len(self.source), declarations=declarations)

        return tree.SyntaxTree(
            self.path,
            self.source,
            self.tokens,
            self.significant,
            root,
            self.inactive,
            self.attributes,
            self.known_types,
            self.known_templates,
        )


def parse(
    tokens: list[Token],
    unit=None,
    known_types: Iterable[str] = (),
    known_templates: Iterable[str] = (),
    path: str = None,
) -> tree.SyntaxTree:
    """
    ``parse`` parses C++ token lists.

    Parameters:
        tokens: Full-fidelity token list.
        unit: Compile command of the translation unit, if any.
        known_types: Type names declared elsewhere.
        known_templates: Template names declared elsewhere.
        path: File identifier, defaults to the unit file.

    Returns:
        Syntax tree.

    Raises:
        CppSyntaxError: UNBALANCED_BRACES.
    """

    if path is None and unit is not None:
        path = unit.file
    if path is None and tokens and tokens[0].start is not None:
        path = tokens[0].start.file_id

    return CppParser(tokens, path, known_types, known_templates).parse()


def parse_source(content: bytes | str, path: str = None, known_types: Iterable[str] = (), known_templates: Iterable[str] = ()) -> tree.SyntaxTree:
    """
    ``parse_source`` tokenizes and parses C++ sources.

    Parameters:
        content: File content.
        path: File identifier.
        known_types: Type names declared elsewhere.
        known_templates: Template names declared elsewhere.

    Returns:
        Syntax tree.

    Raises:
        CppSyntaxError: UNBALANCED_BRACES.
    """

    return parse(Lexer(content, path).tokenize(), known_types=known_types, known_templates=known_templates, path=path)
