"""
``markers`` contains the syntactic detection of C++11 features.

``markers`` packages the ``find_markers`` function, which both the feature
finder and the syntax check use. Detection is purely syntactic: ``auto`` and
attributes are found at token level, everything else on the tree. Inactive
``#if 0`` regions never count.
"""


from collections import defaultdict

from . import tree
from ..utils.types import Feature
from ..utils.types import TokenKind


def strip_args(name: str) -> str:
    """
    ``strip_args`` removes qualifiers and template arguments from names.

    Parameters:
        name: Possibly qualified name.

    Returns:
        Last name component without template arguments.
    """

    depth = 0
    base = []

    for char in name:
        if char == "<":
            depth += 1
        elif char == ">":
            depth -= 1
        elif depth == 0:
            base.append(char)

    return "".join(base).split("::")[-1].strip()


def is_delegating(function: tree.Function) -> bool:
    """
    ``is_delegating`` checks whether constructors delegate.

    Parameters:
        function: Function node.

    Returns:
        True if the init list is one entry naming the own class.
    """

    return (
        function.is_ctor
        and function.class_name is not None
        and len(function.inits) == 1
        and strip_args(function.inits[0].name) == function.class_name
    )


def is_member_initializer(declaration: tree.Node) -> bool:
    """
    ``is_member_initializer`` checks for in-class member initializers.

    Parameters:
        declaration: Class member node.

    Returns:
        True if a non-static data member has an initializer.
    """

    if not isinstance(declaration, tree.Variable) or declaration.type_spec.is_static:
        return False
    if "typedef" in declaration.type_spec.flags:
        return False

    return any(declarator.initializer is not None and declarator.function is None for declarator in declaration.declarators)


def inactive_spans(syntax: tree.SyntaxTree) -> list[tuple[int, int]]:
    return [(syntax.significant[pos].offset, syntax.significant[pos].stop) for pos in sorted(syntax.inactive)]


def _inside(offset: int, spans: list[tuple[int, int]]) -> bool:
    return any(start <= offset < stop for start, stop in spans)


def find_markers(syntax: tree.SyntaxTree) -> dict[Feature, list[int]]:
    """
    ``find_markers`` finds C++11 feature occurrences.

    Parameters:
        syntax: Syntax tree.

    Returns:
        Dictionary from features to byte offsets of their occurrences, in
        source order, containing only features that occur.
    """

    found = defaultdict(list)
    dead = inactive_spans(syntax)

    for pos, token in enumerate(syntax.significant):
        if pos not in syntax.inactive and token.kind == TokenKind.KEYWORD and token.text == "auto":
            found[Feature.AUTO].append(token.offset)

    for start, _ in syntax.attributes:
        if not _inside(start, dead):
            found[Feature.ATTRIBUTE].append(start)

    for node, _ in syntax.walk():
        match node:
            case tree.Lambda():
                found[Feature.LAMBDA].append(node.start)
            case tree.RangeFor():
                found[Feature.RANGE_FOR].append(node.start)
            case tree.UsingAlias():
                found[Feature.TYPE_ALIAS].append(node.start)
            case tree.Class():
                if node.final is not None:
                    found[Feature.FINAL_OVERRIDE].append(syntax.start_of(node.final))
                if any(is_member_initializer(member) for member in node.members):
                    found[Feature.MEMBER_INIT].append(node.start)
            case tree.Function():
                if node.declarator.function is not None and node.declarator.function.virt:
                    found[Feature.FINAL_OVERRIDE].append(syntax.start_of(node.declarator.function.virt[0]))
                if is_delegating(node):
                    found[Feature.CTOR_DELEGATION].append(node.start)
            case tree.Variable():
                for declarator in node.declarators:
                    if declarator.function is not None and declarator.function.virt:
                        found[Feature.FINAL_OVERRIDE].append(syntax.start_of(declarator.function.virt[0]))

    return {feature: sorted(offsets) for feature, offsets in found.items()}
