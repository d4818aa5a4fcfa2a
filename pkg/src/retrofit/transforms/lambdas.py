"""
``lambdas`` contains the lambda to functor conversion.

Each innermost lambda becomes a local class declared right before the
statement holding the lambda. Captures turn into members initialized by the
class constructor, and the lambda expression into a temporary of that class.
Lambdas holding lambdas wait for a later round.
"""


import re
import logging
import dataclasses

from .result import TransformResult
from .result import anchor
from .result import enclosing_statement
from ..semantics import typerepr as types
from ..semantics.deduce import type_of_expr
from ..semantics.scope import Binding
from ..files.cpp import tree
from ..files.utils import errors
from ..files.utils.types import Feature


logger = logging.getLogger(__name__)

PREFIX = "LambdaFunctor__"
GENERATED = re.compile(PREFIX + r"(\d+)_(\d+)")


@dataclasses.dataclass(frozen=True)
class Captured:
    """
    ``Captured`` represents variables functors capture.

    Attributes:
        name: Variable name.
        type: Member type, a reference for by-reference captures.
    """

    name: str
    type: types.TypeRepr


def _capture_error(name: str) -> errors.TransformError:
    return errors.TransformError(errors.TransformCodes.UNSUPPORTED_CAPTURE, detail=name)


def _inside(node: tree.Lambda, binding: Binding) -> bool:
    scope = binding.scope
    return scope is not None and node.start <= scope.start and scope.stop <= node.stop


def _names(node: tree.Node) -> list[tree.Name]:
    """
    ``_names`` collects unqualified names used in lambda bodies.

    Local classes are not searched.

    Parameters:
        node: Subtree root.

    Returns:
        Name nodes, in source order.
    """

    found = []
    for child in node.children:
        if isinstance(child, tree.Class):
            continue
        if isinstance(child, tree.Name) and len(child.parts) == 1:
            found.append(child)
        found += _names(child)
    return found


def _returns(node: tree.Node) -> list[tree.Return]:
    found = []
    for child in node.children:
        if isinstance(child, tree.Class):
            continue
        if isinstance(child, tree.Return):
            found.append(child)
        found += _returns(child)
    return found


def _contains_lambda(node: tree.Node) -> bool:
    return any(isinstance(child, tree.Lambda) or _contains_lambda(child) for child in node.children)


def _context_error(node: tree.Lambda, ancestors: tuple) -> str | None:
    """
    ``_context_error`` finds contexts functor classes cannot precede.

    Parameters:
        node: Lambda node.
        ancestors: Ancestors of the lambda, outermost first.

    Returns:
        Context description, or None for supported contexts.
    """

    for index, ancestor in enumerate(ancestors):
        match ancestor:
            case tree.MemInit():
                return "constructor init list"
            case tree.Variable() if index > 0 and isinstance(ancestors[index - 1], tree.Class):
                return "member initializer"
            case tree.Function() | tree.Lambda():
                params = ancestor.params or []
                if any(param.default is not None and param.default.start <= node.start < param.default.stop for param in params):
                    return "default argument"

    return None


class FunctorBuilder:
    """
    ``FunctorBuilder`` converts lambdas of one syntax tree.

    Attributes:
        syntax: Syntax tree.
        scope: Scope tree.
        emitted: Sequence numbers used so far, per line.
    """

    def __init__(self, syntax: tree.SyntaxTree, scope):
        """
        ``__init__`` initializes ``FunctorBuilder``.
        """

        self.syntax: tree.SyntaxTree = syntax
        self.scope = scope
        self.emitted: dict[int, int] = {}

        for match in GENERATED.finditer(syntax.text):
            line, seq = int(match.group(1)), int(match.group(2))
            self.emitted[line] = max(self.emitted.get(line, 0), seq)

    def name(self, node: tree.Lambda) -> str:
        line = self.syntax.line_of(node.start)
        self.emitted[line] = self.emitted.get(line, 0) + 1
        return f"{PREFIX}{line}_{self.emitted[line]}"

    def explicit(self, node: tree.Lambda) -> list[Captured]:
        scope = self.scope.scope_at(node.start)
        out = []

        for capture in node.captures:
            if capture.name == "this" or capture.init:
                raise _capture_error(capture.name)
            try:
                binding = scope.lookup(capture.name, node.start)
            except errors.SemanticError:
                raise _capture_error(capture.name)
            if not binding.is_local:
                raise _capture_error(capture.name)
            out.append(self.captured(capture.name, binding.type, capture.by_ref))

        return out

    def implicit(self, node: tree.Lambda, explicit: list[Captured]) -> list[Captured]:
        """
        ``implicit`` expands capture defaults to the free variables of bodies.

        Parameters:
            node: Lambda with a capture default.
            explicit: Explicitly captured variables.

        Returns:
            Further captured variables, in order of first use.

        Raises:
            TransformError: UNSUPPORTED_CAPTURE.
        """

        seen = {captured.name for captured in explicit}
        out = []

        for name in _names(node.body):
            if name.name in seen:
                continue
            found = self.scope.scope_at(name.start).lookup_all(name.name, name.start)
            if not found:
                continue
            binding = found[-1]
            if _inside(node, binding):
                continue
            if binding.kind in ("member", "method"):
                raise _capture_error("this")
            if binding.is_local:
                seen.add(name.name)
                out.append(self.captured(name.name, binding.type, node.default == "&"))

        return out

    def captured(self, name: str, t: types.TypeRepr, by_ref: bool) -> Captured:
        value = types.strip_reference(t)
        if by_ref:
            return Captured(name, types.reference(value))
        if isinstance(types.strip_const(value), types.Array):
            raise _capture_error(name)
        return Captured(name, value)

    def signature(self, node: tree.Lambda) -> str:
        """
        ``signature`` prints call operator declarations.

        Parameters:
            node: Lambda node.

        Returns:
            Declaration like ``int operator()(int x)``.

        Raises:
            SemanticError: UNSUPPORTED_EXPRESSION.
        """

        syntax = self.syntax
        params = syntax.span_text(node.params[0].first, node.params[-1].last) if node.params else ""
        declarator = f"operator()({params})"

        if node.trailing is not None:
            return f"{syntax.span_text(*node.trailing)} {declarator}"

        valued = [ret for ret in _returns(node.body) if ret.expression is not None]
        if not valued:
            return f"void {declarator}"
        if len(valued) > 1:
            raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_EXPRESSION, detail="several return statements")

        ret = types.strip_const(types.decay(types.strip_reference(type_of_expr(valued[0].expression, self.scope))))
        return types.render(ret, declarator)

    def build(self, node: tree.Lambda, indent: str, sep: str) -> tuple[str, str]:
        """
        ``build`` prints functor classes and call site replacements.

        Parameters:
            node: Lambda node.
            indent: Indentation of the statement holding the lambda.
            sep: Line separator, a space for single-line output.

        Returns:
            Tuple of class text and call site text.
        """

        captures = self.explicit(node)
        if node.default is not None:
            captures += self.implicit(node, captures)
        signature = self.signature(node)

        name = self.name(node)
        lines = [f"class {name}{{"]
        lines += [f"  {types.render(captured.type, captured.name)};" for captured in captures]
        lines.append("public:")
        if captures:
            params = ", ".join(types.render(captured.type, captured.name) for captured in captures)
            inits = ", ".join(f"{captured.name}({captured.name})" for captured in captures)
            lines.append(f"  {name}({params}) : {inits} {{}}")
        lines.append(f"  {signature}{self.syntax.node_text(node.body)}")
        lines.append("};")

        if sep == "\n":
            text = "".join(f"{indent}{line}\n" for line in lines)
        else:
            text = " ".join(line.strip() for line in lines) + " "

        if not captures:
            # "(Name())" followed by a call reads as a cast to a function type
            return (text, f"{name}()")
        args = ", ".join(captured.name for captured in captures)
        return (text, f"({name}({args}))")


def transform_lambda(syntax: tree.SyntaxTree, scope) -> TransformResult:
    """
    ``transform_lambda`` converts innermost lambdas to functors.

    Parameters:
        syntax: Syntax tree.
        scope: Scope tree.

    Returns:
        Transformation result; run again on the edited text until no lambda
        is left to convert.
    """

    result = TransformResult()
    builder = FunctorBuilder(syntax, scope)

    for node, ancestors in syntax.walk():
        if not isinstance(node, tree.Lambda) or _contains_lambda(node.body):
            continue

        context = _context_error(node, ancestors)
        if context is not None:
            err = errors.TransformError(errors.TransformCodes.UNSUPPORTED_LAMBDA_CONTEXT, detail=context)
            result.skip(syntax, node.start, err)
            continue

        offset, indent, sep = anchor(syntax, enclosing_statement(node, ancestors))

        try:
            text, call = builder.build(node, indent, sep)
        except (errors.TransformError, errors.SemanticError) as err:
            result.skip(syntax, node.start, err)
            continue

        result.edit(offset, offset, text, Feature.LAMBDA, "functor class", origin=(node.start, node.stop))
        result.edit(node.start, node.stop, call, Feature.LAMBDA)

    return result
