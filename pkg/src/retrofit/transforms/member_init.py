"""
``member_init`` contains the in-class member initializer pass.

Initializers move into the init lists of constructors that do not already
initialize the member. Classes without constructors get a generated public
default constructor after their last member.
"""


import logging

from .result import TransformResult
from .result import line_indent
from .result import starts_line
from ..files.cpp import tree
from ..files.cpp.markers import is_delegating
from ..files.cpp.markers import is_member_initializer
from ..files.cpp.markers import strip_args
from ..files.utils import errors
from ..files.utils.types import Feature


logger = logging.getLogger(__name__)


def _unsupported(name: str) -> errors.TransformError:
    return errors.TransformError(errors.TransformCodes.UNSUPPORTED_MEMBER, detail=name)


def _initializer_text(syntax: tree.SyntaxTree, declarator: tree.Declarator) -> str:
    """
    ``_initializer_text`` prints in-class initializers as init-list entries.

    Parameters:
        syntax: Syntax tree.
        declarator: Member declarator with initializer.

    Returns:
        Init-list entry like ``a(3)``.

    Raises:
        TransformError: UNSUPPORTED_MEMBER.
    """

    init = declarator.initializer
    exprs = init.exprs

    if declarator.arrays or init.form == "()" or len(exprs) > 1 or any(isinstance(expr, tree.InitList) for expr in exprs):
        raise _unsupported(declarator.name)

    args = syntax.node_text(exprs[0]) if exprs else ""
    return f"{declarator.name}({args})"


def _in_template(ancestors: tuple) -> bool:
    return any(getattr(node, "template", None) is not None for node in ancestors if isinstance(node, (tree.Class, tree.Function)))


def _constructors(node: tree.Class) -> list[tree.Function]:
    return [member for member in node.members if isinstance(member, tree.Function) and member.is_ctor]


def _removal(syntax: tree.SyntaxTree, declarator: tree.Declarator) -> tuple[int, int]:
    init = declarator.initializer
    return (syntax.stop_of(init.first - 1), syntax.stop_of(init.last - 1))


def _generated(syntax: tree.SyntaxTree, node: tree.Class, entries: list[str]) -> tuple[int, str]:
    """
    ``_generated`` prints generated default constructors.

    Parameters:
        syntax: Syntax tree.
        node: Class without constructors.
        entries: Init-list entries.

    Returns:
        Tuple of insertion offset and text.
    """

    text = f"public: {node.name}() : {', '.join(entries)} {{}}"
    close = syntax.start_of(node.close)

    if starts_line(syntax, close) and node.members:
        return (syntax.line_start(close), line_indent(syntax, node.members[-1].start) + text + "\n")

    return (close, text + " ")


def transform_class(syntax: tree.SyntaxTree, node: tree.Class, result: TransformResult) -> None:
    """
    ``transform_class`` moves the member initializers of one class.

    Parameters:
        syntax: Syntax tree.
        node: Class with member initializers.
        result: Result to add edits and warnings to.
    """

    moved = []
    for member in node.members:
        if not is_member_initializer(member):
            continue
        declarator = next(declarator for declarator in member.declarators if declarator.initializer is not None)
        try:
            if len(member.declarators) > 1:
                raise _unsupported(declarator.name)
            moved.append((declarator, _initializer_text(syntax, declarator)))
        except errors.TransformError as err:
            result.skip(syntax, member.start, err)

    if not moved:
        return

    constructors = _constructors(node)

    for ctor in constructors:
        if ctor.body is None:
            result.skip(syntax, ctor.start, _unsupported(f"{node.name} constructor"))
            return

    if node.key == "union" and len(moved) > 1:
        result.skip(syntax, node.start, _unsupported(moved[1][0].name))
        return

    if not constructors and node.name is None:
        result.skip(syntax, node.start, _unsupported(moved[0][0].name))
        return

    for declarator, _ in moved:
        start, stop = _removal(syntax, declarator)
        result.edit(start, stop, "", Feature.MEMBER_INIT)

    entries = [entry for _, entry in moved]

    if not constructors:
        offset, text = _generated(syntax, node, entries)
        result.edit(offset, offset, text, Feature.MEMBER_INIT, "generated constructor")
        return

    for ctor in constructors:
        if is_delegating(ctor):
            continue

        present = {strip_args(init.name) for init in ctor.inits}
        missing = [entry for declarator, entry in moved if declarator.name not in present]
        if not missing:
            continue

        if ctor.inits:
            offset = syntax.stop_of(ctor.inits[-1].last - 1)
            result.edit(offset, offset, ", " + ", ".join(missing), Feature.MEMBER_INIT)
        else:
            offset = syntax.stop_of(ctor.declarator.last - 1)
            result.edit(offset, offset, " : " + ", ".join(missing), Feature.MEMBER_INIT)


def transform_member_init(syntax: tree.SyntaxTree, scope=None) -> TransformResult:
    """
    ``transform_member_init`` lowers in-class member initializers.

    Template classes, C-style array members, members declared with several
    declarators, and aggregate initializers are skipped with warnings.

    Parameters:
        syntax: Syntax tree.
        scope: Unused; passes share one signature.

    Returns:
        Transformation result.
    """

    result = TransformResult()

    for node, ancestors in syntax.walk():
        if not isinstance(node, tree.Class) or not any(is_member_initializer(member) for member in node.members):
            continue

        if node.template is not None or _in_template(ancestors):
            result.skip(syntax, node.start, errors.TransformError(errors.TransformCodes.TEMPLATE_CLASS, detail=node.name))
            continue

        transform_class(syntax, node, result)

    return result
