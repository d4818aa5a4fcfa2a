"""
``deduce`` contains expression typing and ``auto`` deduction.

``deduce`` packages the ``type_of_expr``, ``deduce_auto``,
``deduce_trailing_return``, and ``range_element_type`` functions, plus the
helpers that turn declaration specifiers and declarators into ``TypeRepr``
objects. Deduction follows template argument deduction: plain ``auto``
decays and drops top-level const and references, reference patterns bind
to the initializer type as is.
"""


import re
import logging
import dataclasses

from . import typerepr as types
from .typerepr import TypeRepr
from ..files.cpp import tree
from ..files.utils import errors
from ..files.utils._parser import Postprocessor


logger = logging.getLogger(__name__)

STORAGE = frozenset(
    {"static", "extern", "inline", "virtual", "explicit", "friend", "mutable", "constexpr", "register", "thread_local", "typedef"}
)

SEQUENCES = frozenset({"vector", "list", "deque", "set", "multiset", "array", "basic_string", "valarray"})
ASSOCIATIVE = frozenset({"map", "multimap"})
STRINGS = {"string": types.CHAR, "wstring": types.Fundamental("wchar_t")}
ITERATOR_MEMBERS = {"begin": "iterator", "end": "iterator", "rbegin": "reverse_iterator", "rend": "reverse_iterator", "find": "iterator"}
CONST_ITERATOR_MEMBERS = {"cbegin": "const_iterator", "cend": "const_iterator"}
SIZE_MEMBERS = frozenset({"size", "length", "max_size", "capacity", "count"})
ELEMENT_MEMBERS = frozenset({"front", "back", "at", "operator[]"})
COMPARISONS = frozenset({"<", ">", "<=", ">=", "==", "!=", "&&", "||"})
ARITHMETIC = frozenset({"+", "-", "*", "/", "%", "&", "|", "^", "<<", ">>"})

INT_SUFFIX = re.compile(r"[uUlL]+$")
STRING_PIECE = re.compile(r'(u8|u|U|L)?(R?)"')
ESCAPE = re.compile(r"\\(?:x[0-9a-fA-F]+|[0-7]{1,3}|u[0-9a-fA-F]{4}|U[0-9a-fA-F]{8}|.)|.", re.DOTALL)


def _unsupported(node: tree.Node, detail: str = None) -> errors.SemanticError:
    return errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_EXPRESSION, detail=detail or type(node).__name__)


# Declared types


def spec_type(spec: tree.TypeSpec) -> TypeRepr:
    """
    ``spec_type`` reads the type named by declaration specifiers.

    Parameters:
        spec: Declaration specifiers.

    Returns:
        Specified type, ``Auto`` for the placeholder.

    Raises:
        SemanticError: UNSUPPORTED_TYPE.
    """

    tokens = [token for token in spec.tokens if token and token not in STORAGE]
    constant = "const" in tokens
    words = [token for token in tokens if token not in types.CV and token not in types.ELABORATED]

    if spec.auto is not None:
        base = types.Auto()
    elif words and all(word in types.FUNDAMENTAL_WORDS for word in words):
        base = types.fundamental(words)
    elif len(words) == 1:
        try:
            base = types.parse_type(words[0])
        except errors.SemanticError:
            base = types.Named(words[0])
    else:
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=" ".join(tokens))

    return types.const(base) if constant else base


def _apply_ops(t: TypeRepr, ops: list[str]) -> TypeRepr:
    for op in ops:
        match op:
            case "*":
                t = types.Pointer(t)
            case "&":
                t = types.reference(t)
            case "const":
                t = types.const(t)
            case "&&":
                raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail="&&")
    return t


def declared_type(spec: tree.TypeSpec, declarator: tree.Declarator | None) -> TypeRepr:
    """
    ``declared_type`` reads the type a declarator declares.

    Pointer operators bind first, then array and parameter suffixes, then
    operators inside a parenthesized declarator.

    Parameters:
        spec: Declaration specifiers.
        declarator: Declarator, or None for abstract declarations.

    Returns:
        Declared type.

    Raises:
        SemanticError: UNSUPPORTED_TYPE.
    """

    t = spec_type(spec)
    if declarator is None:
        return t

    t = _apply_ops(t, declarator.ops)

    for extent in reversed(declarator.arrays):
        t = types.array(t, extent)

    if declarator.function is not None:
        t = types.Function(function_params(declarator.function.params), t)

    if declarator.nested is not None:
        t = _apply_ops(t, declarator.nested)

    return t


def function_params(params: list[tree.Param]) -> tuple[TypeRepr, ...]:
    return tuple(types.adjust_parameter(declared_type(param.type_spec, param.declarator)) for param in params if not param.variadic)


def pattern_of(spec: tree.TypeSpec, declarator: tree.Declarator) -> TypeRepr:
    """
    ``pattern_of`` reads the declared shape of ``auto`` declarations.

    Parameters:
        spec: Declaration specifiers containing ``auto``.
        declarator: Declarator.

    Returns:
        Declared type containing an ``Auto`` placeholder.
    """

    return declared_type(spec, declarator)


# Deduction


def _match(pattern: TypeRepr, t: TypeRepr) -> TypeRepr:
    match pattern:
        case types.Auto():
            return t
        case types.Const(inner):
            return _match(inner, types.strip_const(t))
        case types.Pointer(pointee):
            t = types.strip_const(t)
            if not isinstance(t, types.Pointer):
                raise errors.SemanticError(errors.SemanticCodes.DEDUCTION_MISMATCH, detail=f"{types.render(pattern)} from {types.render(t)}")
            return _match(pointee, t.pointee)

    raise errors.SemanticError(errors.SemanticCodes.DEDUCTION_MISMATCH, detail=f"{types.render(pattern)} from {types.render(t)}")


def deduce_auto(declared: TypeRepr, init_type: TypeRepr) -> TypeRepr:
    """
    ``deduce_auto`` deduces ``auto`` declarations from initializer types.

    Parameters:
        declared: Declared shape containing ``Auto``, like ``Pointer(Auto())``.
        init_type: Initializer type.

    Returns:
        Declared type with the placeholder replaced.

    Raises:
        SemanticError: DEDUCTION_MISMATCH.
    """

    if not types.contains_auto(declared):
        return declared

    if isinstance(declared, types.Reference):
        bound = _match(declared.referent, types.strip_reference(init_type))
    else:
        bound = _match(declared, types.strip_const(types.decay(types.strip_reference(init_type))))

    if types.contains_auto(bound):
        raise errors.SemanticError(errors.SemanticCodes.DEDUCTION_MISMATCH, detail="auto")

    return types.substitute(declared, bound)


def initializer_expression(declarator: tree.Declarator) -> tree.Node:
    """
    ``initializer_expression`` picks the expression ``auto`` deduces from.

    Parameters:
        declarator: Declarator with initializer.

    Returns:
        Initializer expression.

    Raises:
        SemanticError: UNSUPPORTED_EXPRESSION.
    """

    init = declarator.initializer
    if init is None:
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_EXPRESSION, detail="auto without initializer")
    if init.form == "{}" or len(init.exprs) != 1 or isinstance(init.exprs[0], tree.InitList):
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_EXPRESSION, detail="braced initializer")

    return init.exprs[0]


def deduce_declarator(spec: tree.TypeSpec, declarator: tree.Declarator, scope) -> TypeRepr:
    """
    ``deduce_declarator`` deduces the type of ``auto`` declarators.

    Parameters:
        spec: Declaration specifiers containing ``auto``.
        declarator: Declarator with initializer.
        scope: Scope tree the initializer is looked up in.

    Returns:
        Deduced declared type.
    """

    return deduce_auto(pattern_of(spec, declarator), type_of_expr(initializer_expression(declarator), scope))


def deduce_trailing_return(fn: tree.Function, syntax: tree.SyntaxTree) -> TypeRepr:
    """
    ``deduce_trailing_return`` resolves trailing return types.

    Parameters:
        fn: Function declared ``auto f(...) -> T``.
        syntax: Syntax tree holding the function.

    Returns:
        Return type.

    Raises:
        SemanticError: UNSUPPORTED_DECLTYPE_OPERAND, UNSUPPORTED_TYPE.
    """

    suffix = fn.declarator.function
    if suffix is None or suffix.trailing is None:
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=fn.name)

    texts = syntax.sig_text(*suffix.trailing)

    if texts[0] != "decltype":
        return types.parse_type(texts)

    operand = texts[2:-1]
    if len(operand) != 1:
        raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_DECLTYPE_OPERAND, detail=Postprocessor.squeeze(operand))

    for param in suffix.params:
        if param.declarator is not None and param.declarator.name == operand[0]:
            return types.decay(declared_type(param.type_spec, param.declarator))

    raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_DECLTYPE_OPERAND, detail=operand[0])


# Library knowledge


def _container(t: TypeRepr) -> types.Named | None:
    t = types.strip(t)
    if isinstance(t, types.Named) and t.owner is None and (t.library_name in SEQUENCES | ASSOCIATIVE or t.library_name in STRINGS):
        return t
    return None


def container_element(t: types.Named) -> TypeRepr:
    """
    ``container_element`` reads standard container value types.

    Parameters:
        t: Standard container type.

    Returns:
        Value type.

    Raises:
        SemanticError: UNSUPPORTED_TYPE.
    """

    name = t.library_name

    if name in STRINGS:
        return STRINGS[name]
    if t.args and name in SEQUENCES:
        return t.args[0]
    if t.args and len(t.args) >= 2 and name in ASSOCIATIVE:
        return types.Named(t.name[: -len(name)] + "pair", (types.const(t.args[0]), t.args[1]))

    raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=types.render(t))


def container_member(t: TypeRepr, member: str) -> TypeRepr | None:
    """
    ``container_member`` types member calls on standard containers.

    Parameters:
        t: Object type.
        member: Member function name.

    Returns:
        Result type, or None if the member is unknown.
    """

    owner = _container(t)
    if owner is None:
        return None

    constant = types.is_const(t)
    element = container_element(owner)
    mapped = owner.args[1] if owner.library_name in ASSOCIATIVE and owner.args and len(owner.args) >= 2 else None

    if member in ITERATOR_MEMBERS:
        name = ITERATOR_MEMBERS[member]
        return types.Named("const_" + name if constant else name, None, owner)
    if member in CONST_ITERATOR_MEMBERS:
        return types.Named(CONST_ITERATOR_MEMBERS[member], None, owner)
    if member in SIZE_MEMBERS:
        return types.Named("size_type", None, owner)
    if member == "empty":
        return types.BOOL
    if member in ("c_str", "data") and owner.library_name in STRINGS:
        return types.Pointer(types.const(element))
    if member == "substr":
        return owner
    if member in ELEMENT_MEMBERS:
        value = mapped if mapped is not None and member in ("at", "operator[]") else element
        return types.reference(types.const(value) if constant else value)
    if member in ("push_back", "push_front", "pop_back", "pop_front", "clear", "reserve", "resize", "swap"):
        return types.VOID

    return None


def iterator_element(t: TypeRepr) -> TypeRepr | None:
    t = types.strip(t)
    if isinstance(t, types.Named) and t.owner is not None and t.name.endswith("iterator"):
        owner = _container(t.owner)
        if owner is not None:
            element = container_element(owner)
            return types.reference(types.const(element) if t.name.startswith("const_") else element)
    return None


def pair_member(t: TypeRepr, member: str) -> TypeRepr | None:
    t = types.strip(t)
    if isinstance(t, types.Named) and t.library_name == "pair" and t.args and len(t.args) == 2 and member in ("first", "second"):
        return t.args[0] if member == "first" else t.args[1]
    return None


# Literals


def literal_type(node: tree.Literal) -> TypeRepr:
    """
    ``literal_type`` types literals.

    Parameters:
        node: Literal node.

    Returns:
        Literal type.

    Raises:
        SemanticError: UNSUPPORTED_EXPRESSION.
    """

    text = node.text

    match node.category:
        case "bool":
            return types.BOOL
        case "int":
            suffix = INT_SUFFIX.search(text.replace("'", ""))
            suffix = suffix.group().lower() if suffix is not None else ""
            name = ("unsigned " if "u" in suffix else "") + ("long long" if "ll" in suffix else "long" if "l" in suffix else "int")
            return types.Fundamental({"unsigned int": "unsigned"}.get(name, name))
        case "float":
            lower = text.lower()
            if lower.endswith("f") and not lower.startswith("0x"):
                return types.Fundamental("float")
            if lower.endswith("l"):
                return types.Fundamental("long double")
            return types.DOUBLE
        case "char":
            if text.startswith("L"):
                return types.Fundamental("wchar_t")
            return types.CHAR
        case "string":
            element = types.Fundamental("wchar_t") if text.startswith("L") else types.CHAR
            return types.Array(types.Const(element), str(_string_length(text) + 1))

    raise _unsupported(node, node.text)


def _string_length(text: str) -> int:
    length = 0

    for match in STRING_PIECE.finditer(text):
        begin = match.end()
        if match.group(2):
            delimiter = text[begin : text.index("(", begin)]
            end = text.index(")" + delimiter + '"', begin)
            length += end - (begin + len(delimiter) + 1)
            continue
        end = begin
        while end < len(text) and text[end] != '"':
            end += 2 if text[end] == "\\" else 1
        length += len(ESCAPE.findall(text[begin:end]))

    return length


# Expressions


@dataclasses.dataclass
class ExprTyper:
    """
    ``ExprTyper`` types expressions against a scope tree.

    Attributes:
        scope: Scope tree lookups start from.
    """

    scope: object

    def lookup_scope(self, node: tree.Node):
        return self.scope.scope_at(node.start)

    def type_of(self, node: tree.Node) -> TypeRepr:
        """
        ``type_of`` types expressions.

        Parameters:
            node: Expression node.

        Returns:
            Expression type; lvalues are references.

        Raises:
            SemanticError: UNRESOLVED_IDENTIFIER, UNSUPPORTED_EXPRESSION.
        """

        match node:
            case tree.Literal():
                return literal_type(node)
            case tree.Paren(inner=inner):
                return self.type_of(inner)
            case tree.Name():
                return self.name(node)
            case tree.This():
                return self.lookup_scope(node).lookup("this", node.start).type
            case tree.Unary():
                return self.unary(node)
            case tree.Binary():
                return self.binary(node)
            case tree.Conditional():
                return self.conditional(node)
            case tree.Call():
                return self.call(node)
            case tree.Member():
                return self.member(node)
            case tree.Subscript():
                return self.subscript(node)
            case tree.New():
                return self.new(node)
            case tree.Cast(type_tokens=type_tokens):
                return types.parse_type(type_tokens)
            case tree.SizeOf():
                return types.SIZE_T
            case tree.Throw() | tree.Delete():
                return types.VOID

        raise _unsupported(node)

    def name(self, node: tree.Name) -> TypeRepr:
        scope = self.lookup_scope(node)
        binding = scope.lookup(node.name, node.start)

        if binding.kind == "function":
            overloads = scope.lookup_all(node.name, node.start)
            if len(overloads) > 1:
                raise _unsupported(node, f"overloaded {node.name}")
            return binding.type

        return types.reference(binding.type) if binding.kind in ("variable", "parameter", "member") else binding.type

    def dereference(self, t: TypeRepr, node: tree.Node) -> TypeRepr:
        stripped = types.strip(t)

        match stripped:
            case types.Pointer(pointee):
                return types.reference(pointee)
            case types.Array(element, _):
                return types.reference(element)

        element = iterator_element(stripped)
        if element is not None:
            return element

        method = self.method(t, "operator*", [], node)
        if method is not None:
            return method

        raise _unsupported(node, f"dereference of {types.render(t)}")

    def unary(self, node: tree.Unary) -> TypeRepr:
        operand = self.type_of(node.operand)

        match node.op:
            case "&":
                return types.Pointer(types.strip_reference(operand))
            case "*":
                return self.dereference(operand, node)
            case "!":
                return types.BOOL
            case "++" | "--":
                if node.postfix:
                    return types.strip(operand)
                return types.reference(types.strip_reference(operand))
            case "-" | "+" | "~":
                if types.is_arithmetic(operand):
                    return types.promote(types.strip(operand))

        raise _unsupported(node, node.op)

    def binary(self, node: tree.Binary) -> TypeRepr:
        lhs = self.type_of(node.lhs)
        op = node.op

        if op == ",":
            return self.type_of(node.rhs)
        if op in COMPARISONS:
            return types.BOOL

        rhs = self.type_of(node.rhs)

        if op.endswith("=") and op not in ("<=", ">=", "==", "!="):
            return types.reference(types.strip_reference(lhs))

        if op in ARITHMETIC and types.is_arithmetic(lhs) and types.is_arithmetic(rhs):
            if op in ("<<", ">>"):
                return types.promote(types.strip(lhs))
            return types.usual_arithmetic(lhs, rhs)

        left, right = types.decay(types.strip(lhs)), types.decay(types.strip(rhs))
        if op in ("+", "-") and isinstance(left, types.Pointer) and types.is_arithmetic(right):
            return left
        if op == "+" and isinstance(right, types.Pointer) and types.is_arithmetic(left):
            return right
        if op == "-" and isinstance(left, types.Pointer) and isinstance(right, types.Pointer):
            return types.Named("ptrdiff_t")

        for operand in (left, right):
            if isinstance(operand, types.Named) and operand.library_name in STRINGS and op == "+":
                return operand

        method = self.method(lhs, "operator" + op, [node.rhs], node)
        if method is not None:
            return method

        raise _unsupported(node, op)

    def conditional(self, node: tree.Conditional) -> TypeRepr:
        then, other = self.type_of(node.then), self.type_of(node.other)

        if types.strip(then) == types.strip(other):
            return then if then == other else types.strip(then)
        if types.is_arithmetic(then) and types.is_arithmetic(other):
            return types.usual_arithmetic(then, other)

        raise _unsupported(node, "conditional")

    def type_name(self, node: tree.Name) -> TypeRepr | None:
        """
        ``type_name`` reads names that denote types.

        Parameters:
            node: Name node.

        Returns:
            Named type, or None if the name is not a type.
        """

        if all(word in types.FUNDAMENTAL_WORDS for word in node.name.split()):
            return types.fundamental(node.name.split())

        scope = self.lookup_scope(node)
        if scope.is_type(node.base):
            return types.parse_type(node.name)

        return None

    def select(self, overloads: list, args: list[tree.Node], node: tree.Node):
        """
        ``select`` picks overloads by arity, then by argument types.

        Parameters:
            overloads: Function bindings.
            args: Argument expressions.
            node: Call node, for error reporting.

        Returns:
            Selected binding.

        Raises:
            SemanticError: UNSUPPORTED_EXPRESSION.
        """

        viable = []
        for binding in overloads:
            function = types.strip_reference(binding.type)
            if isinstance(function, types.Pointer):
                function = function.pointee
            if not isinstance(function, types.Function):
                continue
            if len(function.params) - binding.defaults <= len(args) <= len(function.params):
                viable.append((binding, function))

        if len(viable) > 1:
            arg_types = [types.strip(types.decay(types.strip(self.type_of(arg)))) for arg in args]
            exact = [
                (binding, function)
                for binding, function in viable
                if all(types.strip(param) == arg for param, arg in zip(function.params, arg_types))
            ]
            viable = exact

        if len(viable) != 1:
            raise _unsupported(node, "overload resolution")

        return viable[0]

    def call(self, node: tree.Call) -> TypeRepr:
        callee = node.callee
        if isinstance(callee, tree.Paren) and isinstance(callee.inner, tree.Name):
            callee = callee.inner

        if isinstance(callee, tree.Name):
            constructed = self.type_name(callee)
            if constructed is not None:
                return constructed

            scope = self.lookup_scope(callee)
            overloads = scope.lookup_all(callee.name, callee.start)
            if not overloads:
                raise errors.SemanticError(errors.SemanticCodes.UNRESOLVED_IDENTIFIER, detail=callee.name)
            if overloads and overloads[0].kind in ("variable", "parameter", "member"):
                return self.call_object(overloads[0].type, node)

            _, function = self.select(overloads, node.args, node)
            return function.ret

        if isinstance(callee, tree.Member):
            obj = self.object_type(callee)
            result = container_member(obj, callee.member)
            if result is not None:
                return result
            result = self.method(obj, callee.member, node.args, node)
            if result is not None:
                return result
            raise _unsupported(node, callee.member)

        return self.call_object(self.type_of(callee), node)

    def call_object(self, t: TypeRepr, node: tree.Call) -> TypeRepr:
        stripped = types.strip(t)
        if isinstance(stripped, types.Pointer):
            stripped = stripped.pointee
        if isinstance(stripped, types.Function):
            return stripped.ret

        result = self.method(t, "operator()", node.args, node)
        if result is None:
            raise _unsupported(node, "call")
        return result

    def object_type(self, node: tree.Member) -> TypeRepr:
        obj = self.type_of(node.obj)
        if node.op == "->":
            stripped = types.strip(obj)
            if not isinstance(stripped, types.Pointer):
                return types.strip_reference(self.method(obj, "operator->", [], node) or obj)
            return types.reference(stripped.pointee)
        return obj

    def class_of(self, t: TypeRepr, node: tree.Node):
        scope = self.lookup_scope(node)
        stripped = types.strip(scope.resolve(types.strip(t)))
        if isinstance(stripped, types.Named) and stripped.owner is None:
            return scope.find_class(stripped.base)
        return None

    def method(self, obj: TypeRepr, name: str, args: list[tree.Node], node: tree.Node) -> TypeRepr | None:
        """
        ``method`` types member function calls on known classes.

        Parameters:
            obj: Object type.
            name: Member function name.
            args: Argument expressions.
            node: Expression node, for lookups and errors.

        Returns:
            Result type, or None if the class or member is unknown.
        """

        info = self.class_of(obj, node)
        if info is None:
            return None

        overloads = info.methods(name, self.lookup_scope(node))
        if not overloads:
            return None

        if len(overloads) > 1:
            constant = types.is_const(obj)
            matching = [binding for binding in overloads if binding.const_method == constant]
            overloads = matching or overloads

        _, function = self.select(overloads, args, node)
        return function.ret

    def member(self, node: tree.Member) -> TypeRepr:
        obj = self.object_type(node)

        paired = pair_member(obj, node.member)
        if paired is not None:
            return types.reference(types.const(paired) if types.is_const(obj) else paired)

        info = self.class_of(obj, node)
        field = info.field(node.member, self.lookup_scope(node)) if info is not None else None
        if field is None:
            raise _unsupported(node, node.member)

        if types.is_const(obj) and not isinstance(field, types.Reference):
            field = types.const(field)
        return types.reference(field)

    def subscript(self, node: tree.Subscript) -> TypeRepr:
        obj = self.type_of(node.obj)
        stripped = types.strip(obj)

        match stripped:
            case types.Pointer(pointee):
                return types.reference(pointee)
            case types.Array(element, _):
                return types.reference(element)

        result = container_member(obj, "operator[]")
        if result is None:
            result = self.method(obj, "operator[]", [node.index], node)
        if result is None:
            raise _unsupported(node, "subscript")
        return result

    def new(self, node: tree.New) -> TypeRepr:
        if node.type_spec.auto is not None:
            if len(node.args) != 1:
                raise _unsupported(node, "new auto")
            return types.Pointer(deduce_auto(types.Auto(), self.type_of(node.args[0])))

        allocated = _apply_ops(spec_type(node.type_spec), node.ops)
        return types.Pointer(allocated)


def type_of_expr(e: tree.Node, s) -> TypeRepr:
    """
    ``type_of_expr`` types expressions.

    Parameters:
        e: Expression node.
        s: Scope tree, looked up at the expression's offset.

    Returns:
        Expression type; lvalue expressions have reference types.

    Raises:
        SemanticError: UNRESOLVED_IDENTIFIER, UNSUPPORTED_EXPRESSION.
    """

    return ExprTyper(s).type_of(e)


# Ranges


@dataclasses.dataclass(frozen=True)
class RangePlan:
    """
    ``RangePlan`` represents how range-for loops iterate.

    Attributes:
        element: Type of ``*__begin``.
        iterator: Iterator type.
        style: ``array``, ``member``, or ``free``.
        extent: Array extent spelling, for ``array`` plans.
    """

    element: TypeRepr
    iterator: TypeRepr
    style: str
    extent: str | None = None

    def begin(self, expr: str) -> str:
        match self.style:
            case "array":
                return f"({expr})"
            case "member":
                return f"{expr}.begin()"
        return f"begin({expr})"

    def end(self, expr: str) -> str:
        match self.style:
            case "array":
                return f"({expr})+{self.extent}"
            case "member":
                return f"{expr}.end()"
        return f"end({expr})"


def range_element_type(range_expr: tree.Node, s) -> RangePlan:
    """
    ``range_element_type`` finds how to iterate range expressions.

    Parameters:
        range_expr: Range expression.
        s: Scope tree.

    Returns:
        Iteration plan.

    Raises:
        SemanticError: NO_RANGE_PROTOCOL.
    """

    typer = ExprTyper(s)

    try:
        t = typer.type_of(range_expr)
    except errors.SemanticError as err:
        raise errors.SemanticError(errors.SemanticCodes.NO_RANGE_PROTOCOL, detail=str(err)) from err

    scope = typer.lookup_scope(range_expr)
    stripped = types.strip_reference(scope.resolve(types.strip_reference(t)))

    if isinstance(stripped, types.Array):
        if stripped.extent is None:
            raise errors.SemanticError(errors.SemanticCodes.NO_RANGE_PROTOCOL, detail="array of unknown bound")
        return RangePlan(types.reference(stripped.element), types.Pointer(stripped.element), "array", stripped.extent)

    style = "member"
    iterator = container_member(stripped, "begin")
    if iterator is None:
        iterator = typer.method(stripped, "begin", [], range_expr)

    if iterator is None:
        overloads = [binding for binding in scope.lookup_all("begin", range_expr.start) if binding.kind == "function"]
        candidates = [binding for binding in overloads if len(types.strip_reference(binding.type).params) == 1]
        if len(candidates) == 1:
            iterator = candidates[0].type.ret
            style = "free"

    if iterator is None:
        if scope.syntax is None:
            expr = types.render(t)
        else:
            expr = Postprocessor.squeeze(scope.syntax.sig_text(range_expr.first, range_expr.last))
        raise errors.SemanticError(errors.SemanticCodes.NO_RANGE_PROTOCOL, detail=expr)

    try:
        element = typer.dereference(iterator, range_expr)
    except errors.SemanticError as err:
        raise errors.SemanticError(errors.SemanticCodes.NO_RANGE_PROTOCOL, detail=str(err)) from err

    return RangePlan(element, types.strip_reference(iterator), style)
