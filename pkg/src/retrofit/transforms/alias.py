"""
``alias`` contains the type alias rewrite.

Non-template aliases become typedefs. Template aliases become class
templates holding a ``type`` typedef, and every use ``N<Args>`` becomes
``N<Args>::type``.
"""


from typing import Iterable

from .result import TransformResult
from .result import line_indent
from ..semantics import typerepr as types
from ..files.cpp import tree
from ..files.utils import errors
from ..files.utils.types import Feature
from ..files.utils.types import TokenKind


OPENERS = {"(": ")", "[": "]", "{": "}"}


def _angle_close(syntax: tree.SyntaxTree, open: int) -> int | None:
    """
    ``_angle_close`` finds the ``>`` closing template argument lists.

    Parameters:
        syntax: Syntax tree.
        open: Position of ``<``.

    Returns:
        Position of the matching ``>``, or None.
    """

    depth = 0
    nesting = []

    for pos in range(open, len(syntax.significant)):
        text = syntax.sig(pos).text

        if text in OPENERS:
            nesting.append(OPENERS[text])
        elif nesting and text == nesting[-1]:
            nesting.pop()
        elif text in (")", "]", "}", ";"):
            return None
        elif not nesting and text == "<":
            depth += 1
        elif not nesting and text == ">":
            depth -= 1
            if depth == 0:
                return pos

    return None


def alias_uses(syntax: tree.SyntaxTree, names: set[str]) -> list[tuple[int, int]]:
    """
    ``alias_uses`` finds uses of template aliases not yet rewritten.

    Parameters:
        syntax: Syntax tree.
        names: Template alias names.

    Returns:
        List of tuples of name position and closing ``>`` position.
    """

    if not names:
        return []

    significant = syntax.significant
    uses = []

    for pos, token in enumerate(significant[:-1]):
        if token.kind != TokenKind.IDENTIFIER or token.text not in names or significant[pos + 1].text != "<":
            continue
        if pos > 0 and significant[pos - 1].text in (".", "->", "template", "struct", "class"):
            continue

        close = _angle_close(syntax, pos + 1)
        if close is None:
            continue
        if close + 2 < len(significant) and significant[close + 1].text == "::" and significant[close + 2].text == "type":
            continue

        uses.append((pos, close))

    return uses


def _template_spans(syntax: tree.SyntaxTree) -> list[tuple[int, int, set[str]]]:
    spans = []

    for node, _ in syntax.walk():
        template = getattr(node, "template", None)
        if isinstance(template, tree.Template) and template.params:
            spans.append((node.start, node.stop, set(template.params)))

    return spans


def _is_dependent(syntax: tree.SyntaxTree, use: tuple[int, int], spans: list) -> bool:
    pos, close = use
    offset = syntax.start_of(pos)
    args = {token.text for token in syntax.significant[pos + 2 : close]}

    return any(start <= offset < stop and args & params for start, stop, params in spans)


def _target(syntax: tree.SyntaxTree, node: tree.UsingAlias, stops: set[int]) -> str:
    """
    ``_target`` reads alias targets, rewriting alias uses inside them.
    """

    start, stop = syntax.start_of(node.target[0]), syntax.stop_of(node.target[1] - 1)
    inside = sorted(offset for offset in stops if start < offset <= stop)
    stops.difference_update(inside)

    out, last = [], start
    for offset in inside:
        out += [syntax.text[last:offset], "::type"]
        last = offset
    out.append(syntax.text[last:stop])

    return "".join(out)


def _typedef(syntax: tree.SyntaxTree, node: tree.UsingAlias, stops: set[int]) -> str:
    texts = syntax.sig_text(*node.target)

    if "(" in texts or "[" in texts:
        return f"typedef {types.render(types.parse_type(texts), node.name)};"

    return f"typedef {_target(syntax, node, stops)} {node.name};"


def _struct(syntax: tree.SyntaxTree, node: tree.UsingAlias, stops: set[int]) -> str:
    indent = line_indent(syntax, node.start)
    return f"struct {node.name} {{\n{indent}  typedef {_target(syntax, node, stops)} type;\n{indent}}};"


def rewrite_type_alias(syntax: tree.SyntaxTree, scope=None, imported: Iterable[str] = ()) -> TransformResult:
    """
    ``rewrite_type_alias`` lowers alias declarations.

    Aliases named in symbol import ``using`` declarations, and template
    aliases used with dependent arguments, are skipped with their uses.

    Parameters:
        syntax: Syntax tree.
        scope: Unused; passes share one signature.
        imported: Template alias names declared in included headers.

    Returns:
        Transformation result.
    """

    result = TransformResult()
    declarations = syntax.nodes(tree.UsingAlias)
    imports = {node.name.split("::")[-1] for node in syntax.nodes(tree.Using) if not node.directive}

    templates = {node.name for node in declarations if node.template is not None} | set(imported)
    spans = _template_spans(syntax)
    uses = {}
    for use in alias_uses(syntax, templates):
        uses.setdefault(syntax.sig(use[0]).text, []).append(use)

    skipped = set()
    for name in sorted(templates):
        found = uses.get(name, [])
        dependent = [use for use in found if _is_dependent(syntax, use, spans)]
        declared = [node.start for node in declarations if node.name == name]
        if name in imports or dependent:
            skipped.add(name)
            if dependent:
                offset = syntax.start_of(dependent[0][0])
            elif declared:
                offset = declared[0]
            else:
                offset = syntax.start_of(found[0][0]) if found else 0
            result.skip(syntax, offset, errors.TransformError(errors.TransformCodes.UNSUPPORTED_ALIAS_USE, detail=name))

    stops = {syntax.stop_of(close) for name, found in uses.items() if name not in skipped for _, close in found}

    for node in declarations:
        if node.template is None and node.name in imports:
            result.skip(syntax, node.start, errors.TransformError(errors.TransformCodes.UNSUPPORTED_ALIAS_USE, detail=node.name))
        elif node.template is None:
            try:
                result.edit(node.start, node.stop, _typedef(syntax, node, stops), Feature.TYPE_ALIAS)
            except errors.SemanticError as err:
                result.skip(syntax, node.start, err)
        elif node.name not in skipped:
            start = syntax.start_of(node.template.last)
            result.edit(start, node.stop, _struct(syntax, node, stops), Feature.TYPE_ALIAS)

    for stop in sorted(stops):
        result.edit(stop, stop, "::type", Feature.TYPE_ALIAS)

    return result
