"""
``typerepr`` contains the structural C++ type model.

``typerepr`` packages the ``TypeRepr`` classes, the constructors that keep
types normalized, the ``render`` function that prints C++03 declarators, and
the ``parse_type`` function that reads type spellings back. Types are frozen
dataclasses, so equal spellings compare and hash equal.
"""


import dataclasses

from ..files.cpp.lexer import tokenize
from ..files.utils import errors
from ..files.utils._parser import Parser
from ..files.utils._parser import Postprocessor
from ..files.utils.types import TokenKind


FUNDAMENTAL_WORDS = frozenset(
    {"void", "bool", "char", "wchar_t", "char16_t", "char32_t", "short", "int", "long", "float", "double", "signed", "unsigned"}
)
ELABORATED = frozenset({"struct", "class", "union", "enum", "typename"})
CV = frozenset({"const", "volatile"})

PROMOTED = frozenset({"bool", "char", "signed char", "unsigned char", "short", "unsigned short", "wchar_t", "char16_t", "char32_t"})
RANKS = ("int", "unsigned", "long", "unsigned long", "long long", "unsigned long long", "float", "double", "long double")


class TypeRepr:
    """
    ``TypeRepr`` is the base class of type representations.
    """

    def __str__(self) -> str:
        return render(self)


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Fundamental(TypeRepr):
    """
    ``Fundamental`` represents fundamental types.

    Attributes:
        name: Canonical spelling, like ``unsigned long``.
    """

    name: str


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Named(TypeRepr):
    """
    ``Named`` represents class, enumeration, and typedef names.

    Attributes:
        name: Possibly qualified name without template arguments.
        args: Template arguments, or None.
        owner: Enclosing type of nested names, like ``std::vector<int>`` of
            ``std::vector<int>::iterator``.
    """

    name: str
    args: tuple[TypeRepr, ...] | None = None
    owner: TypeRepr | None = None

    @property
    def base(self) -> str:
        return self.name.split("::")[-1]

    @property
    def library_name(self) -> str:
        return self.name[5:] if self.name.startswith("std::") else self.name


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Pointer(TypeRepr):
    pointee: TypeRepr


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Reference(TypeRepr):
    referent: TypeRepr


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Function(TypeRepr):
    """
    ``Function`` represents function types.

    Attributes:
        params: Parameter types, adjusted.
        ret: Return type.
    """

    params: tuple[TypeRepr, ...]
    ret: TypeRepr


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Array(TypeRepr):
    """
    ``Array`` represents array types.

    Attributes:
        element: Element type.
        extent: Extent spelling, or None for unknown bounds.
    """

    element: TypeRepr
    extent: str | None


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Const(TypeRepr):
    inner: TypeRepr


@dataclasses.dataclass(frozen=True, eq=True, repr=True)
class Auto(TypeRepr):
    """
    ``Auto`` represents the ``auto`` placeholder inside declared patterns.
    """


VOID = Fundamental("void")
BOOL = Fundamental("bool")
CHAR = Fundamental("char")
INT = Fundamental("int")
DOUBLE = Fundamental("double")
SIZE_T = Named("size_t")


# Normalizing constructors


def const(inner: TypeRepr) -> TypeRepr:
    """
    ``const`` const-qualifies types.

    References and already-const types are returned unchanged; arrays
    qualify their elements.

    Parameters:
        inner: Type to qualify.

    Returns:
        Const-qualified type.
    """

    match inner:
        case Const() | Reference() | Function():
            return inner
        case Array(element, extent):
            return Array(const(element), extent)

    return Const(inner)


def reference(referent: TypeRepr) -> TypeRepr:
    if isinstance(referent, Reference):
        return referent
    return Reference(referent)


def array(element: TypeRepr, extent: str | None) -> TypeRepr:
    if isinstance(element, Reference):
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail="array of references")
    return Array(element, extent)


def strip_reference(t: TypeRepr) -> TypeRepr:
    return t.referent if isinstance(t, Reference) else t


def strip_const(t: TypeRepr) -> TypeRepr:
    return t.inner if isinstance(t, Const) else t


def strip(t: TypeRepr) -> TypeRepr:
    """
    ``strip`` removes top-level references and const qualification.
    """

    return strip_const(strip_reference(t))


def is_const(t: TypeRepr) -> bool:
    t = strip_reference(t)
    if isinstance(t, Array):
        return is_const(t.element)
    return isinstance(t, Const)


def decay(t: TypeRepr) -> TypeRepr:
    """
    ``decay`` applies array-to-pointer and function-to-pointer conversions.

    Parameters:
        t: Type without top-level reference.

    Returns:
        Decayed type.
    """

    match t:
        case Array(element, _):
            return Pointer(element)
        case Function():
            return Pointer(t)

    return t


def substitute(pattern: TypeRepr, replacement: TypeRepr) -> TypeRepr:
    """
    ``substitute`` replaces ``Auto`` placeholders and renormalizes.

    Parameters:
        pattern: Type containing placeholders.
        replacement: Type to put in their place.

    Returns:
        Type without placeholders.
    """

    match pattern:
        case Auto():
            return replacement
        case Const(inner):
            return const(substitute(inner, replacement))
        case Pointer(pointee):
            return Pointer(substitute(pointee, replacement))
        case Reference(referent):
            return reference(substitute(referent, replacement))
        case Array(element, extent):
            return array(substitute(element, replacement), extent)
        case Function(params, ret):
            return Function(tuple(substitute(param, replacement) for param in params), substitute(ret, replacement))

    return pattern


def contains_auto(t: TypeRepr) -> bool:
    match t:
        case Auto():
            return True
        case Const(inner) | Pointer(inner) | Reference(inner) | Array(inner, _):
            return contains_auto(inner)
        case Function(params, ret):
            return contains_auto(ret) or any(contains_auto(param) for param in params)

    return False


def adjust_parameter(t: TypeRepr) -> TypeRepr:
    """
    ``adjust_parameter`` applies parameter type adjustments.

    Array and function parameters become pointers and top-level const is
    dropped, as in function types.

    Parameters:
        t: Declared parameter type.

    Returns:
        Adjusted parameter type.
    """

    if isinstance(t, Reference):
        return t
    return strip_const(decay(strip_const(t)))


# Fundamentals


def fundamental(words: list[str]) -> Fundamental:
    """
    ``fundamental`` canonicalizes fundamental type specifier words.

    Parameters:
        words: Specifier words in any order, like ``["long", "unsigned", "int"]``.

    Returns:
        Fundamental type with canonical spelling.

    Raises:
        SemanticError: UNSUPPORTED_TYPE.
    """

    words = [word for word in words if word not in CV]
    longs = words.count("long")
    unsigned = "unsigned" in words
    signed = "signed" in words
    others = [word for word in words if word not in ("long", "unsigned", "signed", "int")]

    if len(others) > 1 or unsigned and signed:
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=" ".join(words))

    if others:
        base = others[0]
        if base == "char":
            return Fundamental("unsigned char" if unsigned else "signed char" if signed else "char")
        if base == "short":
            return Fundamental("unsigned short" if unsigned else "short")
        if base == "double":
            return Fundamental("long double" if longs else "double")
        if longs or unsigned or signed:
            raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=" ".join(words))
        return Fundamental(base)

    if longs == 0:
        return Fundamental("unsigned" if unsigned else "int")

    name = "long long" if longs >= 2 else "long"
    return Fundamental(f"unsigned {name}" if unsigned else name)


def is_arithmetic(t: TypeRepr) -> bool:
    t = strip(t)
    return isinstance(t, Fundamental) and t.name != "void"


def promote(t: Fundamental) -> Fundamental:
    return INT if t.name in PROMOTED else t


def usual_arithmetic(lhs: TypeRepr, rhs: TypeRepr) -> Fundamental:
    """
    ``usual_arithmetic`` computes the common type of arithmetic operands.

    Parameters:
        lhs: Left operand type.
        rhs: Right operand type.

    Returns:
        Common fundamental type.
    """

    left, right = promote(strip(lhs)), promote(strip(rhs))
    rank = max(RANKS.index(left.name) if left.name in RANKS else 0, RANKS.index(right.name) if right.name in RANKS else 0)
    return Fundamental(RANKS[rank])


# Rendering


def _wrap(decl: str, inner: TypeRepr) -> str:
    if isinstance(inner, (Array, Function)):
        return f"({decl})"
    return decl


def render_parts(t: TypeRepr, decl: str = "") -> tuple[str, str]:
    """
    ``render_parts`` splits types into specifiers and declarator.

    Parameters:
        t: Type to render.
        decl: Declarator text built so far, such as the declared name.

    Returns:
        Tuple of specifier text (like ``const int``) and declarator text
        (like ``(*fp)(int)``).
    """

    match t:
        case Fundamental(name):
            return (name, decl)
        case Named():
            return (_render_named(t), decl)
        case Auto():
            return ("auto", decl)
        case Const(Pointer(pointee)):
            return render_parts(pointee, _wrap("*const " + decl if decl else "*const", pointee))
        case Const(inner):
            spec, declarator = render_parts(inner, decl)
            return ("const " + spec, declarator)
        case Pointer(pointee):
            return render_parts(pointee, _wrap("*" + decl, pointee))
        case Reference(referent):
            return render_parts(referent, _wrap("&" + decl, referent))
        case Array(element, extent):
            return render_parts(element, f"{decl}[{extent or ''}]")
        case Function(params, ret):
            return render_parts(ret, f"{decl}({', '.join(render(param) for param in params)})")

    raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=repr(t))


def _render_named(t: Named) -> str:
    text = t.name
    if t.owner is not None:
        text = render(t.owner) + "::" + text
    if t.args is not None:
        args = ", ".join(render(arg) for arg in t.args)
        text += "<" + args + (" >" if args.endswith(">") else ">")
    return text


def render(t: TypeRepr, name: str = "") -> str:
    """
    ``render`` prints types as C++03 declarations.

    Parameters:
        t: Type to render.
        name: Declared name, empty for abstract declarators.

    Returns:
        Declaration text like ``int (*fp)(int)``.
    """

    spec, declarator = render_parts(t, name)
    return f"{spec} {declarator}" if declarator else spec


# Parsing


class _TypeParser:
    """
    ``_TypeParser`` reads type spellings into ``TypeRepr`` objects.
    """

    def __init__(self, texts: list[tuple[TokenKind, str]]):
        self.cursor = Parser(texts, lambda: errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE), (None, ""))

    def text(self, offset: int = 0) -> str:
        return self.cursor.peekl(offset)[1]

    def kind(self, offset: int = 0) -> TokenKind:
        return self.cursor.peekl(offset)[0]

    def accept(self, text: str) -> bool:
        if self.cursor and self.text() == text:
            self.cursor.popl()
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.cursor.err()

    def parse(self) -> TypeRepr:
        t = self.parse_type()
        if self.cursor:
            raise self.cursor.err()
        return t

    def parse_type(self) -> TypeRepr:
        constant = False
        words = []
        base = None

        while self.cursor:
            text = self.text()
            if text in CV:
                constant = constant or text == "const"
                self.cursor.popl()
            elif text in ELABORATED:
                self.cursor.popl()
            elif text in FUNDAMENTAL_WORDS and base is None:
                words.append(self.cursor.popl()[1])
            elif (self.kind() == TokenKind.IDENTIFIER or text == "::") and base is None and not words:
                base = self.parse_name()
            else:
                break

        if base is None:
            if not words:
                raise self.cursor.err()
            base = fundamental(words)

        if constant:
            base = const(base)

        return self.parse_abstract(base)

    def parse_name(self) -> Named:
        current = None
        parts = []

        if self.accept("::"):
            parts.append("")

        while True:
            if self.kind() != TokenKind.IDENTIFIER:
                raise self.cursor.err()
            parts.append(self.cursor.popl()[1])

            if self.text() == "<":
                current = Named("::".join(parts), self.parse_args(), current)
                parts = []

            if self.text() == "::" and self.kind(1) == TokenKind.IDENTIFIER:
                self.cursor.popl()
                continue
            break

        if parts:
            current = Named("::".join(parts), None, current)

        return current

    def parse_args(self) -> tuple[TypeRepr, ...]:
        self.expect("<")
        args = []
        chunk = []
        depth = 0

        while self.cursor:
            kind, text = self.cursor.popl()
            if text in ("<", "(", "["):
                depth += 1
            elif text in (")", "]"):
                depth -= 1
            elif text == ">":
                if depth == 0:
                    break
                depth -= 1
            if text == "," and depth == 0:
                args.append(_parse_arg(chunk))
                chunk = []
            else:
                chunk.append((kind, text))
        else:
            raise self.cursor.err()

        if chunk:
            args.append(_parse_arg(chunk))

        return tuple(args)

    def parse_abstract(self, base: TypeRepr) -> TypeRepr:
        t = base

        while self.text() in ("*", "&"):
            op = self.cursor.popl()[1]
            t = Pointer(t) if op == "*" else reference(t)
            if op == "*" and self.accept("const"):
                t = const(t)
            self.accept("volatile")

        if self.text() == "&&":
            raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail="&&")

        nested = None
        if self.text() == "(" and self.text(1) in ("*", "&"):
            self.cursor.popl()
            nested = []
            while self.text() in ("*", "&", "const"):
                nested.append(self.cursor.popl()[1])
            self.expect(")")

        t = self.parse_suffixes(t)

        for op in nested or []:
            if op == "*":
                t = Pointer(t)
            elif op == "&":
                t = reference(t)
            else:
                t = const(t)

        return t

    def parse_suffixes(self, t: TypeRepr) -> TypeRepr:
        extents = []

        while self.text() == "[":
            self.cursor.popl()
            texts = []
            while self.cursor and self.text() != "]":
                texts.append(self.cursor.popl()[1])
            self.expect("]")
            extents.append(Postprocessor.squeeze(texts) or None)

        if extents:
            for extent in reversed(extents):
                t = array(t, extent)
            return t

        if self.text() == "(":
            self.cursor.popl()
            params = []
            if not self.accept(")"):
                if self.text() == "void" and self.text(1) == ")":
                    self.cursor.popl()
                    self.cursor.popl()
                else:
                    while True:
                        params.append(adjust_parameter(self.parse_type()))
                        if self.accept(","):
                            continue
                        self.expect(")")
                        break
            while self.text() in CV:
                self.cursor.popl()
            return Function(tuple(params), t)

        return t


def _parse_arg(chunk: list[tuple[TokenKind, str]]) -> TypeRepr:
    try:
        return _TypeParser(chunk).parse()
    except errors.SemanticError:
        return Named(Postprocessor.squeeze([text for _, text in chunk]))


def _significant(text: str) -> list[tuple[TokenKind, str]]:
    return [(token.kind, token.text) for token in tokenize(text) if not token.is_trivia]


def parse_type(text: str | list[str]) -> TypeRepr:
    """
    ``parse_type`` reads type spellings.

    Parameters:
        text: Type spelling, or its token texts.

    Returns:
        Type representation.

    Raises:
        SemanticError: UNSUPPORTED_TYPE.
    """

    if not isinstance(text, str):
        text = Postprocessor.squeeze(text)

    return _TypeParser(_significant(text)).parse()
