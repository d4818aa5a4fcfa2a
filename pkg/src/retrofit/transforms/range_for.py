"""
``range_for`` contains the range-based for loop lowering.

Loops become iterator loops over ``__begin<k>`` and ``__end<k>``, numbered
per enclosing function. Range expressions other than names are bound to a
``__range<k>`` variable first, so they are evaluated once.
"""


import re

from .result import TransformResult
from .result import anchor
from .result import line_indent
from .result import starts_line
from ..semantics import typerepr as types
from ..semantics.deduce import deduce_auto
from ..semantics.deduce import pattern_of
from ..semantics.deduce import range_element_type
from ..semantics.deduce import type_of_expr
from ..files.cpp import tree
from ..files.utils import errors
from ..files.utils.types import Feature


GENERATED = re.compile(r"__begin(\d+)")


class LoopNumbers:
    """
    ``LoopNumbers`` hands out loop numbers per enclosing function.

    Numbering continues after generated names already in the function.
    """

    def __init__(self, syntax: tree.SyntaxTree):
        self.syntax: tree.SyntaxTree = syntax
        self.used: dict[int, int] = {}

    def next(self, ancestors: tuple) -> int:
        owner = next((node for node in reversed(ancestors) if isinstance(node, (tree.Function, tree.Lambda))), self.syntax.root)
        key = id(owner)
        if key not in self.used:
            found = [int(number) for number in GENERATED.findall(self.syntax.node_text(owner))]
            self.used[key] = max(found, default=0)
        self.used[key] += 1
        return self.used[key]


def _loop_variable(syntax: tree.SyntaxTree, node: tree.RangeFor, element: types.TypeRepr) -> str:
    if node.type_spec.auto is None:
        return syntax.span_text(node.type_spec.first, node.declarator.last)

    storage = [text for text in syntax.sig_text(node.type_spec.first, node.type_spec.last) if text in ("static", "register")]
    declared = deduce_auto(pattern_of(node.type_spec, node.declarator), element)
    return " ".join(storage + [types.render(declared, node.declarator.name)])


def _range_binding(syntax: tree.SyntaxTree, node: tree.RangeFor, scope, k: int) -> tuple[str, str | None]:
    """
    ``_range_binding`` names range expressions.

    Parameters:
        syntax: Syntax tree.
        node: Range-for loop.
        scope: Scope tree.
        k: Loop number.

    Returns:
        Tuple of the expression naming the range and the declaration binding
        it, None for name ranges.
    """

    if isinstance(node.range, tree.Name):
        return (syntax.node_text(node.range), None)

    t = type_of_expr(node.range, scope)
    name = f"__range{k}"
    declared = t if isinstance(t, types.Reference) else types.strip_const(t)
    return (name, f"{types.render(declared, name)} = {syntax.node_text(node.range)};")


def lower_loop(syntax: tree.SyntaxTree, node: tree.RangeFor, ancestors: tuple, scope, k: int, result: TransformResult) -> None:
    """
    ``lower_loop`` lowers one range-for loop.

    Parameters:
        syntax: Syntax tree.
        node: Range-for loop.
        ancestors: Ancestors of the loop, outermost first.
        scope: Scope tree.
        k: Loop number.
        result: Result to add edits and warnings to.

    Raises:
        SemanticError: NO_RANGE_PROTOCOL, DEDUCTION_MISMATCH,
            UNSUPPORTED_TYPE, UNRESOLVED_IDENTIFIER.
    """

    plan = range_element_type(node.range, scope)
    variable = _loop_variable(syntax, node, plan.element)
    expr, binding = _range_binding(syntax, node, scope, k)

    begin, end = f"__begin{k}", f"__end{k}"
    declarations = [] if binding is None else [binding]
    declarations += [f"{types.render(plan.iterator, begin)} = {plan.begin(expr)};", f"{types.render(plan.iterator, end)} = {plan.end(expr)};"]

    origin = (node.start, node.stop)
    if isinstance(ancestors[-1], (tree.Compound, tree.TranslationUnit, tree.Namespace)):
        offset, indent, sep = anchor(syntax, node)
        text = "".join(f"{indent}{declaration}{sep}" for declaration in declarations)
        result.edit(offset, offset, text, Feature.RANGE_FOR, "iterators", origin=origin)
    else:
        result.edit(node.start, node.start, "{ " + " ".join(declarations) + " ", Feature.RANGE_FOR, "iterators", origin=origin)
        result.edit(node.stop, node.stop, " }", Feature.RANGE_FOR)

    header = f"(;{begin} != {end}; ++{begin})"
    result.edit(syntax.start_of(node.open), syntax.stop_of(node.close), header, Feature.RANGE_FOR)

    statement = f"{variable} = *{begin};"
    body = node.body

    if not isinstance(body, tree.Compound):
        result.edit(body.start, body.start, "{ " + statement + " ", Feature.RANGE_FOR)
        result.edit(body.stop, body.stop, " }", Feature.RANGE_FOR)
    elif body.statements and starts_line(syntax, body.statements[0].start):
        offset = syntax.stop_of(body.first)
        result.edit(offset, offset, f"\n{line_indent(syntax, body.statements[0].start)}{statement}", Feature.RANGE_FOR)
    elif not body.statements and not starts_line(syntax, syntax.start_of(body.last - 1)):
        offset = syntax.stop_of(body.first)
        result.edit(offset, offset, f" {statement} ", Feature.RANGE_FOR)
    else:
        offset = syntax.stop_of(body.first)
        result.edit(offset, offset, f" {statement}", Feature.RANGE_FOR)


def lower_range_for(syntax: tree.SyntaxTree, scope) -> TransformResult:
    """
    ``lower_range_for`` lowers range-based for loops to iterator loops.

    Arrays of known bound iterate over pointers; classes use member
    ``begin``/``end`` when they have them, and free ``begin``/``end``
    functions otherwise. Loops whose range type is unknown are skipped with
    warnings.

    Parameters:
        syntax: Syntax tree.
        scope: Scope tree.

    Returns:
        Transformation result.
    """

    result = TransformResult()
    numbers = LoopNumbers(syntax)

    for node, ancestors in syntax.walk():
        if not isinstance(node, tree.RangeFor):
            continue

        try:
            lower_loop(syntax, node, ancestors, scope, numbers.next(ancestors), result)
        except errors.SemanticError as err:
            result.skip(syntax, node.start, err)

    return result
