"""
``scope`` contains the lexical scope tree used for name lookup.

``scope`` packages the ``Scope`` tree, ``Binding`` and ``ClassInfo`` records,
and the ``build_scope`` function that fills them from syntax trees. Local
names are visible from the end of their declarator; class members are
visible throughout the class and its member function bodies.
"""


import sys
import logging
import dataclasses
from enum import StrEnum
from typing import Callable

from . import deduce
from . import typerepr as types
from .typerepr import TypeRepr
from ..files.cpp import tree
from ..files.cpp.markers import strip_args
from ..files.utils import errors


logger = logging.getLogger(__name__)


class ScopeKind(StrEnum):
    """
    ``ScopeKind`` represents the kinds of scopes.
    """

    GLOBAL = "global"
    NAMESPACE = "namespace"
    CLASS = "class"
    FUNCTION = "function"
    BLOCK = "block"


@dataclasses.dataclass(eq=False)
class Binding:
    """
    ``Binding`` represents declared names.

    Types of ``auto`` declarations resolve lazily, on first use.

    Attributes:
        name: Declared name.
        kind: ``variable``, ``parameter``, ``member``, ``function``,
            ``method``, or ``type``.
        offset: Byte offset the name is visible from.
        scope: Scope the name is declared in.
        resolver: Callable computing the type.
        defaults: Number of defaulted parameters, for functions.
        const_method: Whether member functions are const-qualified.
        node: Declaring node.
    """

    name: str
    kind: str
    offset: int
    scope: "Scope" = None
    resolver: Callable[[], TypeRepr] = None
    defaults: int = 0
    const_method: bool = False
    node: tree.Node = None

    def __post_init__(self):
        self._type: TypeRepr | None = None

    @property
    def type(self) -> TypeRepr:
        if self._type is None:
            self._type = self.resolver()
        return self._type

    @property
    def is_local(self) -> bool:
        return self.scope is not None and self.scope.kind in (ScopeKind.FUNCTION, ScopeKind.BLOCK) and self.kind in ("variable", "parameter")


class ClassInfo:
    """
    ``ClassInfo`` represents classes known to lookup.

    Attributes:
        name: Class name.
        node: Class node, or None for out-of-file classes.
        scope: Class member scope.
        bases: Base class names.
    """

    def __init__(self, name: str, node: tree.Class, scope: "Scope", bases: list[str]):
        """
        ``__init__`` initializes ``ClassInfo``.
        """

        self.name: str = name
        self.node: tree.Class = node
        self.scope: Scope = scope
        self.bases: list[str] = bases

    def members(self, name: str, scope: "Scope", seen: frozenset = frozenset()) -> list[Binding]:
        """
        ``members`` looks up members, searching base classes second.

        Parameters:
            name: Member name.
            scope: Scope base class names are looked up from.
            seen: Classes already searched.

        Returns:
            Bindings of the first class declaring the name.
        """

        own = self.scope.bindings.get(name, [])
        if own:
            return own

        for base in self.bases:
            info = scope.find_class(strip_args(base))
            if info is not None and info.name not in seen:
                found = info.members(name, scope, seen | {self.name})
                if found:
                    return found

        return []

    def field(self, name: str, scope: "Scope") -> TypeRepr | None:
        found = [binding for binding in self.members(name, scope) if binding.kind == "member"]
        return found[0].type if found else None

    def methods(self, name: str, scope: "Scope") -> list[Binding]:
        return [binding for binding in self.members(name, scope) if binding.kind == "method"]


class Scope:
    """
    ``Scope`` represents lexical scopes.

    Attributes:
        kind: Scope kind.
        parent: Enclosing scope, None for the outermost.
        start: First byte offset covered.
        stop: Byte offset after the scope.
        name: Namespace or class name, if any.
        owner: Class whose members are visible, if any.
        node: Node opening the scope.
        syntax: Syntax tree the scope was built from.
        children: Nested scopes, in source order.
        bindings: Dictionary from names to bindings.
        classes: Dictionary from class names to class records.
        aliases: Dictionary from typedef names to types.
        type_names: Further names known to denote types.
    """

    def __init__(
        self,
        kind: ScopeKind,
        parent: "Scope" = None,
        start: int = 0,
        stop: int = sys.maxsize,
        name: str = None,
        owner: ClassInfo = None,
        node: tree.Node = None,
    ):
        """
        ``__init__`` initializes ``Scope``.
        """

        self.kind: ScopeKind = kind
        self.parent: Scope = parent
        self.start: int = start
        self.stop: int = stop
        self.name: str = name
        self.owner: ClassInfo = owner
        self.node: tree.Node = node
        self.syntax: tree.SyntaxTree = None
        self.children: list[Scope] = []
        self.bindings: dict[str, list[Binding]] = {}
        self.classes: dict[str, ClassInfo] = {}
        self.aliases: dict[str, TypeRepr] = {}
        self.type_names: set[str] = set()

    def child(self, kind: ScopeKind, node: tree.Node, name: str = None, owner: ClassInfo = None) -> "Scope":
        scope = Scope(kind, self, node.start, node.stop, name, owner, node)
        scope.syntax = self.syntax
        self.children.append(scope)
        return scope

    def bind(self, binding: Binding) -> Binding:
        binding.scope = self
        self.bindings.setdefault(binding.name, []).append(binding)
        return binding

    def _visible(self, name: str, offset: int | None) -> list[Binding]:
        if self.kind == ScopeKind.CLASS and self.owner is not None:
            return self.owner.members(name, self)

        found = [binding for binding in self.bindings.get(name, []) if offset is None or binding.offset <= offset]
        if not found and self.kind == ScopeKind.FUNCTION and self.owner is not None:
            found = self.owner.members(name, self)
        return found

    def lookup_all(self, name: str, offset: int = None) -> list[Binding]:
        """
        ``lookup_all`` finds every binding of the innermost declaring scope.

        Parameters:
            name: Possibly qualified name.
            offset: Byte offset of the use, or None to ignore order.

        Returns:
            Bindings, several for overloaded functions, or an empty list.
        """

        if "::" in name:
            *qualifier, base = name.lstrip(":").split("::")
            info = self.find_class(strip_args(qualifier[-1]))
            if info is not None:
                return info.members(base, self)
            scope = self
            while scope is not None:
                found = scope.bindings.get(name.lstrip(":"), [])
                if found:
                    return found
                scope = scope.parent
            return []

        scope = self
        while scope is not None:
            found = scope._visible(name, offset)
            if found:
                return found
            scope = scope.parent

        return []

    def lookup(self, name: str, offset: int = None) -> Binding:
        """
        ``lookup`` finds the innermost visible binding of names.

        Parameters:
            name: Possibly qualified name.
            offset: Byte offset of the use, or None to ignore order.

        Returns:
            Binding.

        Raises:
            SemanticError: UNRESOLVED_IDENTIFIER.
        """

        found = self.lookup_all(name, offset)
        if not found:
            raise errors.SemanticError(errors.SemanticCodes.UNRESOLVED_IDENTIFIER, detail=name)

        return found[-1] if found[0].kind not in ("function", "method") else found[0]

    def scope_at(self, offset: int) -> "Scope":
        """
        ``scope_at`` finds the innermost scope containing byte offsets.

        Parameters:
            offset: Byte offset.

        Returns:
            Innermost scope, this one if no child contains the offset.
        """

        scope = self
        descended = True

        while descended:
            descended = False
            for child in scope.children:
                if child.start <= offset < child.stop:
                    scope = child
                    descended = True
                    break

        return scope

    def find_class(self, name: str) -> ClassInfo | None:
        name = name.lstrip(":")
        scope = self
        while scope is not None:
            if name in scope.classes:
                return scope.classes[name]
            if scope.owner is not None and name == scope.owner.name:
                return scope.owner
            scope = scope.parent
        return None

    def find_alias(self, name: str) -> TypeRepr | None:
        if "::" in name:
            *qualifier, base = name.lstrip(":").split("::")
            info = self.find_class(strip_args(qualifier[-1]))
            return info.scope.aliases.get(base) if info is not None else None

        scope = self
        while scope is not None:
            if name in scope.aliases:
                return scope.aliases[name]
            if scope.owner is not None and name in scope.owner.scope.aliases:
                return scope.owner.scope.aliases[name]
            scope = scope.parent
        return None

    def is_type(self, name: str) -> bool:
        """
        ``is_type`` checks whether names denote types.

        Parameters:
            name: Unqualified name.

        Returns:
            True for classes, typedefs, and known type names.
        """

        scope = self
        while scope is not None:
            if name in scope.classes or name in scope.aliases or name in scope.type_names:
                return True
            scope = scope.parent
        return False

    def resolve(self, t: TypeRepr, depth: int = 0) -> TypeRepr:
        """
        ``resolve`` expands typedef names.

        Parameters:
            t: Type possibly naming typedefs.
            depth: Expansion depth so far.

        Returns:
            Type without typedef names at the top level.
        """

        if depth > 32:
            return t

        match t:
            case types.Named(name, None, None):
                target = self.find_alias(name)
                return self.resolve(target, depth + 1) if target is not None else t
            case types.Const(inner):
                return types.const(self.resolve(inner, depth))
            case types.Reference(referent):
                return types.reference(self.resolve(referent, depth))

        return t


def member_name(name: str) -> str:
    """
    ``member_name`` strips qualifiers from declared names.

    Parameters:
        name: Possibly qualified name, like ``A::operator()``.

    Returns:
        Unqualified name.
    """

    if "operator" in name:
        return name[name.index("operator") :]
    return name.split("::")[-1]


class ScopeBuilder:
    """
    ``ScopeBuilder`` fills scope trees from syntax trees.

    Attributes:
        syntax: Syntax tree.
        root: Outermost scope of the tree.
        imported: Whether every binding is visible from offset zero.
    """

    def __init__(self, syntax: tree.SyntaxTree, parent: Scope = None, imported: bool = False):
        """
        ``__init__`` initializes ``ScopeBuilder``.
        """

        self.syntax: tree.SyntaxTree = syntax
        self.root: Scope = Scope(ScopeKind.GLOBAL, parent, 0, len(syntax.text) + 1, node=syntax.root)
        self.root.syntax = syntax
        self.root.type_names |= syntax.known_types | syntax.known_templates
        self.imported: bool = imported

    def offset(self, offset: int) -> int:
        return -1 if self.imported else offset

    def build(self) -> Scope:
        for declaration in self.syntax.root.declarations:
            self.declaration(declaration, self.root)
        return self.root

    def declaration(self, node: tree.Node, scope: Scope) -> None:
        match node:
            case tree.Namespace(linkage=True):
                for declaration in node.body:
                    self.declaration(declaration, scope)
            case tree.Namespace():
                inner = scope.child(ScopeKind.NAMESPACE, node, node.name)
                for declaration in node.body:
                    self.declaration(declaration, inner)
                self.export(inner, scope)
            case tree.Class():
                self.class_scope(node, scope)
            case tree.Function():
                self.function(node, scope)
            case tree.Variable():
                self.variable(node, scope)
            case tree.Typedef():
                self.typedef(node, scope)
            case tree.UsingAlias(template=None):
                self.alias(node, scope)
            case tree.DeclarationStatement():
                self.declaration(node.declaration, scope)

    def export(self, inner: Scope, scope: Scope) -> None:
        """
        ``export`` makes namespace members reachable by qualified names.
        """

        for name, bindings in inner.bindings.items():
            scope.bindings.setdefault(f"{inner.name}::{name}", []).extend(bindings)
        for name, info in inner.classes.items():
            scope.classes.setdefault(f"{inner.name}::{name}", info)
            scope.type_names.add(name)
        for name, target in inner.aliases.items():
            scope.aliases.setdefault(f"{inner.name}::{name}", target)

    def class_scope(self, node: tree.Class, scope: Scope) -> None:
        if node.name is None:
            inner = scope.child(ScopeKind.CLASS, node)
            for member in node.members:
                self.member(member, inner)
            return

        name = strip_args(node.name)
        info = ClassInfo(name, node, None, list(node.bases))
        info.scope = scope.child(ScopeKind.CLASS, node, name, info)
        scope.classes[name] = info
        scope.type_names.add(name)

        for member in node.members:
            self.member(member, info.scope)

    def member(self, node: tree.Node, scope: Scope) -> None:
        match node:
            case tree.Variable():
                if node.type_spec.class_def is not None:
                    self.class_scope(node.type_spec.class_def, scope)
                for declarator in node.declarators:
                    if declarator.name is not None:
                        binding = Binding(declarator.name, "member", -1, node=node)
                        binding.resolver = self.declared(node.type_spec, declarator, declarator.function is not None)
                        if declarator.function is not None:
                            binding.kind = "method"
                            binding.defaults = sum(param.default is not None for param in declarator.function.params)
                            binding.const_method = "const" in declarator.function.qualifiers
                        scope.bind(binding)
            case tree.Function():
                self.function(node, scope)
            case tree.Class():
                self.class_scope(node, scope)
            case tree.Typedef():
                self.typedef(node, scope)
            case tree.UsingAlias(template=None):
                self.alias(node, scope)

    def declared(self, spec: tree.TypeSpec, declarator: tree.Declarator, function: bool = False) -> Callable[[], TypeRepr]:
        if spec.auto is not None and not function:
            return lambda: deduce.deduce_declarator(spec, declarator, self.root)
        return lambda: deduce.declared_type(spec, declarator)

    def function_type(self, node: tree.Function) -> Callable[[], TypeRepr]:
        def resolve() -> TypeRepr:
            declared = deduce.declared_type(node.type_spec, node.declarator)
            if node.type_spec.auto is not None:
                return types.substitute(declared, deduce.deduce_trailing_return(node, self.syntax))
            return declared

        return resolve

    def function(self, node: tree.Function, scope: Scope) -> None:
        owner = scope.owner if scope.kind == ScopeKind.CLASS else None

        if owner is None and node.class_name is not None and "::" in node.name:
            owner = scope.find_class(node.class_name)
        elif not (node.is_ctor or node.is_dtor) and node.type_spec.has_type:
            binding = Binding(
                member_name(node.name),
                "method" if owner is not None else "function",
                self.offset(node.start),
                resolver=self.function_type(node),
                defaults=sum(param.default is not None for param in node.params),
                const_method="const" in node.declarator.function.qualifiers,
                node=node,
            )
            scope.bind(binding)

        if node.body is None:
            return

        inner = scope.child(ScopeKind.FUNCTION, node, node.name, owner)
        self.parameters(node.params, inner, node.start)

        if owner is not None:
            this = types.Named(owner.name)
            if "const" in node.declarator.function.qualifiers:
                this = types.const(this)
            inner.bind(Binding("this", "parameter", node.start, resolver=lambda: types.Pointer(this), node=node))

        for init in node.inits:
            self.expression(init, inner)
        for statement in node.body.statements:
            self.statement(statement, inner)

    def parameters(self, params: list[tree.Param] | None, scope: Scope, offset: int) -> None:
        for param in params or []:
            if param.variadic or param.declarator is None or param.declarator.name is None:
                continue
            binding = Binding(param.declarator.name, "parameter", offset, node=param)
            binding.resolver = self.declared(param.type_spec, param.declarator)
            scope.bind(binding)

    def variable(self, node: tree.Variable, scope: Scope) -> None:
        if node.type_spec.class_def is not None:
            self.class_scope(node.type_spec.class_def, scope)

        for declarator in node.declarators:
            if declarator.name is None:
                continue

            if declarator.function is not None and declarator.nested is None:
                binding = Binding(
                    member_name(declarator.name),
                    "function",
                    self.offset(node.start),
                    defaults=sum(param.default is not None for param in declarator.function.params),
                    node=node,
                )
            else:
                binding = Binding(declarator.name, "variable", self.offset(self.syntax.stop_of(declarator.last - 1)), node=node)
                if declarator.initializer is not None:
                    for expr in declarator.initializer.exprs:
                        self.expression(expr, scope)

            binding.resolver = self.declared(node.type_spec, declarator, binding.kind == "function")
            scope.bind(binding)

    def typedef(self, node: tree.Typedef, scope: Scope) -> None:
        if node.type_spec.class_def is not None:
            self.class_scope(node.type_spec.class_def, scope)

        for declarator in node.declarators:
            if declarator.name is None:
                continue
            try:
                scope.aliases[declarator.name] = deduce.declared_type(node.type_spec, declarator)
            except errors.SemanticError as err:
                logger.debug("typedef %s not modeled: %s", declarator.name, err)
                scope.type_names.add(declarator.name)

    def alias(self, node: tree.UsingAlias, scope: Scope) -> None:
        try:
            scope.aliases[node.name] = types.parse_type(self.syntax.sig_text(*node.target))
        except errors.SemanticError as err:
            logger.debug("alias %s not modeled: %s", node.name, err)
            scope.type_names.add(node.name)

    def statement(self, node: tree.Node, scope: Scope) -> None:
        match node:
            case tree.Compound():
                inner = scope.child(ScopeKind.BLOCK, node)
                for statement in node.statements:
                    self.statement(statement, inner)
            case tree.DeclarationStatement():
                self.declaration(node.declaration, scope)
            case tree.For():
                inner = scope.child(ScopeKind.BLOCK, node)
                for part in (node.init, node.condition, node.increment):
                    if part is not None:
                        self.statement(part, inner)
                self.statement(node.body, inner)
            case tree.RangeFor():
                self.expression(node.range, scope)
                inner = scope.child(ScopeKind.BLOCK, node)
                self.range_variable(node, inner)
                self.statement(node.body, inner)
            case tree.Control():
                inner = scope.child(ScopeKind.BLOCK, node)
                for part in node.parts:
                    self.statement(part, inner)
            case tree.Variable() | tree.Typedef() | tree.Class() | tree.UsingAlias():
                self.declaration(node, scope)
            case _:
                self.expression(node, scope)

    def range_variable(self, node: tree.RangeFor, scope: Scope) -> None:
        declarator = node.declarator

        def resolve() -> TypeRepr:
            if node.type_spec.auto is None:
                return deduce.declared_type(node.type_spec, declarator)
            element = deduce.range_element_type(node.range, self.root).element
            return deduce.deduce_auto(deduce.pattern_of(node.type_spec, declarator), element)

        scope.bind(Binding(declarator.name, "variable", self.syntax.stop_of(declarator.last - 1), resolver=resolve, node=node))

    def expression(self, node: tree.Node, scope: Scope) -> None:
        """
        ``expression`` opens scopes for lambdas nested in expressions.
        """

        if isinstance(node, tree.Lambda):
            inner = scope.child(ScopeKind.FUNCTION, node)
            self.parameters(node.params, inner, node.start)
            for param in node.params or []:
                if param.default is not None:
                    self.expression(param.default, scope)
            for statement in node.body.statements:
                self.statement(statement, inner)
            return

        for child in node.children:
            if isinstance(child, (tree.Compound, tree.DeclarationStatement)):
                self.statement(child, scope)
            else:
                self.expression(child, scope)


def build_scope(syntax: tree.SyntaxTree, imported: Scope = None) -> Scope:
    """
    ``build_scope`` builds scope trees.

    Parameters:
        syntax: Syntax tree.
        imported: Scope of included headers, searched after the file scope.

    Returns:
        Outermost scope of the file.
    """

    return ScopeBuilder(syntax, imported).build()


def import_scope(headers: list[tree.SyntaxTree]) -> Scope | None:
    """
    ``import_scope`` builds the scope of included headers.

    Header declarations are visible everywhere in including files.

    Parameters:
        headers: Syntax trees of included headers, in inclusion order.

    Returns:
        Scope chain of the headers, or None without headers.
    """

    scope = None

    for syntax in headers:
        scope = ScopeBuilder(syntax, scope, imported=True).build()
        scope.children.clear()

    return scope
