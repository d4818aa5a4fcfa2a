"""
``delegation`` contains the delegating constructor inlining.

A delegating constructor takes over the init list of its target, with the
target's parameters replaced by the delegating call's arguments, and runs the
target's body in a block of its own before its own statements.
"""


import logging
import dataclasses

from .result import TransformResult
from .result import line_indent
from ..semantics import typerepr as types
from ..semantics.deduce import declared_type
from ..semantics.deduce import type_of_expr
from ..files.cpp import tree
from ..files.cpp.lexer import tokenize
from ..files.cpp.markers import is_delegating
from ..files.cpp.markers import strip_args
from ..files.utils import errors
from ..files.utils.types import Feature
from ..files.utils.types import TokenKind


logger = logging.getLogger(__name__)

SIMPLE = (tree.Name, tree.Literal, tree.This)


def substitute_names(text: str, mapping: dict[str, str]) -> str:
    """
    ``substitute_names`` replaces identifiers in code fragments.

    Identifiers after ``.``, ``->``, or ``::`` name members, not variables,
    and stay.

    Parameters:
        text: Code fragment.
        mapping: Dictionary from identifiers to replacement texts.

    Returns:
        Fragment with the identifiers replaced.
    """

    if not mapping:
        return text

    out = []
    previous = None

    for token in tokenize(text):
        if token.kind == TokenKind.IDENTIFIER and token.text in mapping and previous not in (".", "->", "::"):
            out.append(mapping[token.text])
        else:
            out.append(token.text)
        if not token.is_trivia:
            previous = token.text

    return "".join(out)


@dataclasses.dataclass
class Inlined:
    """
    ``Inlined`` represents what constructors contribute to their callers.

    Attributes:
        inits: Tuples of member name and init-list entry text.
        bodies: Body texts, outermost target first.
    """

    inits: list[tuple[str, str]]
    bodies: list[str]

    def substitute(self, mapping: dict[str, str]) -> "Inlined":
        return Inlined(
            [(name, substitute_names(text, mapping)) for name, text in self.inits],
            [substitute_names(body, mapping) for body in self.bodies],
        )


class Delegations:
    """
    ``Delegations`` resolves and inlines the delegating constructors of one
    syntax tree.

    Attributes:
        syntax: Syntax tree.
        scope: Scope tree, used to pick overloads by argument types.
        constructors: Constructor definitions per class name.
        classes: Class nodes per name.
        targets: Resolved target per delegating constructor.
    """

    def __init__(self, syntax: tree.SyntaxTree, scope=None):
        """
        ``__init__`` initializes ``Delegations``.
        """

        self.syntax: tree.SyntaxTree = syntax
        self.scope = scope
        self.constructors: dict[str, list[tree.Function]] = {}
        self.classes: dict[str, tree.Class] = {}
        self.targets: dict[tree.Function, tree.Function] = {}
        self._inlined: dict[tree.Function, Inlined] = {}

        for node, _ in syntax.walk():
            if isinstance(node, tree.Class) and node.name is not None:
                self.classes.setdefault(node.name, node)
            elif isinstance(node, tree.Function) and node.is_ctor and node.body is not None and node.class_name is not None:
                self.constructors.setdefault(node.class_name, []).append(node)

    def is_template(self, ctor: tree.Function) -> bool:
        owner = self.classes.get(ctor.class_name)
        return ctor.template is not None or (owner is not None and owner.template is not None)

    def arity_matches(self, ctor: tree.Function, count: int) -> bool:
        params = [param for param in ctor.params if not param.variadic]
        if len(params) == 1 and params[0].declarator is None and self.syntax.sig_text(params[0].first, params[0].last) == ["void"]:
            params = []
        defaults = sum(param.default is not None for param in params)
        return len(params) - defaults <= count <= len(params)

    def types_match(self, ctor: tree.Function, args: list[tree.Node]) -> bool:
        for param, arg in zip(ctor.params, args):
            expected = types.strip(types.adjust_parameter(declared_type(param.type_spec, param.declarator)))
            actual = types.strip(types.decay(types.strip(type_of_expr(arg, self.scope))))
            if expected != actual:
                return False
        return True

    def resolve(self, ctor: tree.Function) -> tree.Function:
        """
        ``resolve`` finds the constructors delegating constructors call.

        Candidates are filtered by arity, then by exact argument types.

        Parameters:
            ctor: Delegating constructor.

        Returns:
            Target constructor definition.

        Raises:
            TransformError: UNRESOLVED_DELEGATION.
        """

        args = ctor.inits[0].args
        candidates = [other for other in self.constructors.get(ctor.class_name, []) if self.arity_matches(other, len(args))]

        if len(candidates) > 1 and self.scope is not None:
            try:
                candidates = [other for other in candidates if self.types_match(other, args)]
            except errors.SemanticError as err:
                logger.debug("delegation argument types unknown: %s", err)

        if len(candidates) != 1:
            raise errors.TransformError(errors.TransformCodes.UNRESOLVED_DELEGATION, detail=self.syntax.node_text(ctor.inits[0]))

        target = candidates[0]
        if any(isinstance(node, tree.Return) for node, _ in self.syntax.walk(target.body)):
            raise errors.TransformError(errors.TransformCodes.UNRESOLVED_DELEGATION, detail=f"{target.name} returns early")

        return target

    def find_cycle(self) -> tree.Function | None:
        """
        ``find_cycle`` detects cyclic delegation.

        Returns:
            A constructor on a cycle, or None.
        """

        done = set()

        for start in self.targets:
            path = []
            current = start
            while current in self.targets and current not in done:
                if current in path:
                    return current
                path.append(current)
                current = self.targets[current]
            done.update(path)

        return None

    def mapping(self, caller: tree.Function, target: tree.Function) -> dict[str, str]:
        args = caller.inits[0].args
        mapping = {}

        for index, param in enumerate(target.params):
            if param.variadic or param.declarator is None or param.declarator.name is None:
                continue
            if index < len(args):
                arg = args[index]
                text = self.syntax.node_text(arg)
                mapping[param.declarator.name] = text if isinstance(arg, SIMPLE) else f"({text})"
            elif param.default is not None:
                mapping[param.declarator.name] = f"({self.syntax.node_text(param.default)})"

        return mapping

    def inlined(self, ctor: tree.Function) -> Inlined:
        """
        ``inlined`` computes what constructors contribute to callers.

        Parameters:
            ctor: Constructor definition.

        Returns:
            Init-list entries and bodies in terms of the constructor's own
            parameters.
        """

        if ctor in self._inlined:
            return self._inlined[ctor]

        syntax = self.syntax
        body = syntax.source(ctor.body.start + 1, ctor.body.stop - 1).strip()
        own = [body] if body else []

        if ctor in self.targets:
            target = self.targets[ctor]
            inherited = self.inlined(target).substitute(self.mapping(ctor, target))
            result = Inlined(inherited.inits, inherited.bodies + own)
        else:
            result = Inlined([(strip_args(init.name), syntax.node_text(init)) for init in ctor.inits], own)

        self._inlined[ctor] = result
        return result

    def order(self, class_name: str, inits: list[tuple[str, str]]) -> list[str]:
        owner = self.classes.get(class_name)
        names = []
        if owner is not None:
            names += [strip_args(base) for base in owner.bases]
            for member in owner.members:
                if isinstance(member, tree.Variable) and not member.type_spec.is_static:
                    names += [declarator.name for declarator in member.declarators if declarator.name is not None]

        rank = {name: index for index, name in enumerate(names)}
        ordered = sorted(inits, key=lambda init: rank.get(init[0], len(names)))
        return [text for _, text in ordered]

    def inline(self, ctor: tree.Function, result: TransformResult) -> None:
        """
        ``inline`` rewrites one delegating constructor.

        Parameters:
            ctor: Delegating constructor.
            result: Result to add edits to.
        """

        syntax = self.syntax
        target = self.targets[ctor]
        inherited = self.inlined(target).substitute(self.mapping(ctor, target))
        entries = self.order(ctor.class_name, inherited.inits)

        start = syntax.stop_of(ctor.colon - 1)
        stop = syntax.stop_of(ctor.inits[-1].last - 1)
        replacement = " : " + ", ".join(entries) if entries else ""
        result.edit(start, stop, replacement, Feature.CTOR_DELEGATION, "init list")

        if inherited.bodies:
            statements = ctor.body.statements
            indent = line_indent(syntax, statements[0].start) if statements else line_indent(syntax, ctor.start) + "  "
            text = "".join(f"\n{indent}{{ {body} }}" for body in inherited.bodies)
            offset = syntax.stop_of(ctor.body.first)
            result.edit(offset, offset, text, Feature.CTOR_DELEGATION, "target body")


def inline_delegation(syntax: tree.SyntaxTree, scope=None) -> TransformResult:
    """
    ``inline_delegation`` inlines delegating constructors.

    Constructors of templates are skipped with warnings. Cyclic delegation
    makes the unit untransformable.

    Parameters:
        syntax: Syntax tree.
        scope: Scope tree, used to resolve overloaded targets.

    Returns:
        Transformation result.
    """

    result = TransformResult()
    delegations = Delegations(syntax, scope)
    callers = []

    for ctors in delegations.constructors.values():
        for ctor in ctors:
            if not is_delegating(ctor):
                continue
            if delegations.is_template(ctor):
                result.skip(syntax, ctor.start, errors.TransformError(errors.TransformCodes.TEMPLATE_CLASS, detail=ctor.class_name))
                continue
            try:
                delegations.targets[ctor] = delegations.resolve(ctor)
                callers.append(ctor)
            except errors.TransformError as err:
                result.skip(syntax, ctor.start, err)

    cycle = delegations.find_cycle()
    if cycle is not None:
        result.fail(syntax, cycle.start, errors.TransformError(errors.TransformCodes.DELEGATION_CYCLE, detail=cycle.class_name))
        return result

    for ctor in sorted(callers, key=lambda ctor: ctor.start):
        target = delegations.targets[ctor]
        while target in delegations.targets:
            target = delegations.targets[target]
        if is_delegating(target):
            err = errors.TransformError(errors.TransformCodes.UNRESOLVED_DELEGATION, detail=delegations.syntax.node_text(target.inits[0]))
            result.skip(syntax, ctor.start, err)
            continue
        delegations.inline(ctor, result)

    return result
