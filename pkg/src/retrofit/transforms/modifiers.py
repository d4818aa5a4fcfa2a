"""
``modifiers`` contains the passes deleting attributes and virt-specifiers.

Neither has a C++03 counterpart, so both passes only delete text.
"""


import re

from .result import TransformResult
from ..files.cpp import tree
from ..files.cpp.markers import inactive_spans
from ..files.utils.types import Feature


BLANKS = re.compile(r"[ \t]*")


def _preceding_space(text: str, offset: int) -> int:
    while offset > 0 and text[offset - 1] in " \t":
        offset -= 1
    return offset


def strip_attributes(syntax: tree.SyntaxTree, scope=None) -> TransformResult:
    """
    ``strip_attributes`` deletes attribute sequences.

    Each ``[[...]]`` sequence goes together with the blanks following it, or
    preceding it when nothing follows. Sequences alone on their line take the
    line with them.

    Parameters:
        syntax: Syntax tree.
        scope: Unused; passes share one signature.

    Returns:
        Transformation result.
    """

    result = TransformResult()
    dead = inactive_spans(syntax)
    text = syntax.text
    previous = 0

    for start, stop in sorted(syntax.attributes):
        if any(low <= start < high for low, high in dead):
            continue

        following = BLANKS.match(text, stop).end()
        line_start = syntax.line_start(start)

        if not text[line_start:start].strip() and text[following : following + 1] in ("\n", ""):
            start, stop = max(line_start, previous), min(following + 1, len(text))
        elif following > stop:
            stop = following
        else:
            start = max(_preceding_space(text, start), previous)

        result.edit(start, stop, "", Feature.ATTRIBUTE)
        previous = stop

    return result


def strip_final_override(syntax: tree.SyntaxTree, scope=None) -> TransformResult:
    """
    ``strip_final_override`` deletes contextual ``final`` and ``override``.

    Only the positions the parser recognized as virt-specifiers are deleted;
    identifiers spelled ``final`` or ``override`` stay.

    Parameters:
        syntax: Syntax tree.
        scope: Unused; passes share one signature.

    Returns:
        Transformation result.
    """

    result = TransformResult()
    positions = []

    for node, _ in syntax.walk():
        match node:
            case tree.Class(final=final) if final is not None:
                positions.append(final)
            case tree.Function():
                positions += node.declarator.function.virt
            case tree.Variable():
                for declarator in node.declarators:
                    if declarator.function is not None:
                        positions += declarator.function.virt

    for pos in sorted(positions):
        stop = syntax.stop_of(pos)
        result.edit(_preceding_space(syntax.text, syntax.start_of(pos)), stop, "", Feature.FINAL_OVERRIDE)

    return result
