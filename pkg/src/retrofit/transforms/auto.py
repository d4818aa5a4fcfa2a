"""
``auto`` contains the ``auto`` removal pass.

The pass spells out deduced types of ``auto`` variables, ``new auto(x)``
expressions, and trailing return types.
"""


from .result import TransformResult
from ..semantics import typerepr as types
from ..semantics.deduce import STORAGE
from ..semantics.deduce import deduce_declarator
from ..semantics.deduce import deduce_trailing_return
from ..semantics.deduce import type_of_expr
from ..files.cpp import tree
from ..files.utils import errors
from ..files.utils.types import Feature


def _in_template(ancestors: tuple) -> bool:
    return any(isinstance(node, (tree.Class, tree.Function)) and node.template is not None for node in ancestors)


def _uses_auto(node: tree.Node) -> bool:
    match node:
        case tree.Function(type_spec=tree.TypeSpec(auto=int())):
            return node.declarator.function.trailing is not None
        case tree.Variable(type_spec=tree.TypeSpec(auto=int())) | tree.New(type_spec=tree.TypeSpec(auto=int())):
            return True
    return False


def _storage(syntax: tree.SyntaxTree, spec: tree.TypeSpec) -> list[str]:
    return [text for text in syntax.sig_text(spec.first, spec.last) if text in STORAGE]


def transform_variable(syntax: tree.SyntaxTree, node: tree.Variable, scope, result: TransformResult) -> None:
    """
    ``transform_variable`` spells out ``auto`` variable declarations.

    Every declarator must deduce to the same specifiers; ``auto a = 1, b =
    2.0;`` is ill-formed and skipped.

    Parameters:
        syntax: Syntax tree.
        node: Declaration using ``auto``.
        scope: Scope tree.
        result: Result to add edits and warnings to.
    """

    spec = node.type_spec
    rendered = []

    try:
        for declarator in node.declarators:
            deduced = deduce_declarator(spec, declarator, scope)
            rendered.append((declarator, *types.render_parts(deduced, declarator.name)))
    except errors.SemanticError as err:
        result.skip(syntax, node.start, err)
        return

    specs = {spec_text for _, spec_text, _ in rendered}
    if len(specs) != 1:
        detail = " vs ".join(sorted(specs))
        result.skip(syntax, node.start, errors.SemanticError(errors.SemanticCodes.DEDUCTION_MISMATCH, detail=detail))
        return

    text = " ".join(_storage(syntax, spec) + [specs.pop()])
    result.edit(syntax.start_of(spec.first), syntax.stop_of(spec.last - 1), text, Feature.AUTO)

    for declarator, _, declarator_text in rendered:
        start, stop = syntax.start_of(declarator.first), syntax.stop_of(declarator.last - 1)
        if syntax.source(start, stop) != declarator_text:
            result.edit(start, stop, declarator_text, Feature.AUTO)


def transform_new(syntax: tree.SyntaxTree, node: tree.New, scope, result: TransformResult) -> None:
    try:
        allocated = types.strip_reference(type_of_expr(node, scope)).pointee
        text = types.render(allocated)
    except errors.SemanticError as err:
        result.skip(syntax, node.start, err)
        return

    result.edit(syntax.start_of(node.type_spec.first), syntax.stop_of(node.type_last - 1), text, Feature.AUTO)


def transform_trailing(syntax: tree.SyntaxTree, node: tree.Function, result: TransformResult) -> None:
    """
    ``transform_trailing`` moves trailing return types to the front.

    Parameters:
        syntax: Syntax tree.
        node: Function declared ``auto f(...) -> T``.
        result: Result to add edits and warnings to.
    """

    suffix = node.declarator.function

    try:
        ret = deduce_trailing_return(node, syntax)
        spec, declarator = types.render_parts(ret)
        if "(" in declarator or "[" in declarator:
            raise errors.SemanticError(errors.SemanticCodes.UNSUPPORTED_TYPE, detail=types.render(ret))
    except errors.SemanticError as err:
        result.skip(syntax, node.start, err)
        return

    auto = node.type_spec.auto
    result.edit(syntax.start_of(auto), syntax.stop_of(auto), spec, Feature.AUTO, "return type")
    if declarator:
        start = syntax.start_of(node.declarator.first)
        result.edit(start, start, declarator, Feature.AUTO)

    result.edit(syntax.stop_of(suffix.trailing[0] - 2), syntax.stop_of(suffix.trailing[1] - 1), "", Feature.AUTO)


def transform_auto(syntax: tree.SyntaxTree, scope) -> TransformResult:
    """
    ``transform_auto`` replaces ``auto`` with deduced types.

    Declarations inside templates are skipped with warnings, since their
    types depend on template arguments. Deduction failures are skipped with
    warnings naming the failure.

    Parameters:
        syntax: Syntax tree.
        scope: Scope tree.

    Returns:
        Transformation result.
    """

    result = TransformResult()

    for node, ancestors in syntax.walk():
        if not _uses_auto(node):
            continue
        if _in_template(ancestors + (node,)):
            result.skip(syntax, node.start, errors.TransformError(errors.TransformCodes.TEMPLATE_CLASS, detail="auto"))
            continue

        match node:
            case tree.Function():
                transform_trailing(syntax, node, result)
            case tree.Variable():
                transform_variable(syntax, node, scope, result)
            case tree.New():
                transform_new(syntax, node, scope, result)

    return result
