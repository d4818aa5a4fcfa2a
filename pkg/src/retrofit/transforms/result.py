"""
``result`` contains the records transformation passes return.
"""


import logging
import dataclasses

from ..files.cpp import tree
from ..files.cpp.edit import Edit
from ..files.cpp.token import SourceLocation
from ..files.utils.errors import RetrofitError
from ..files.utils._parser import Postprocessor


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Skip:
    """
    ``Skip`` represents constructs a pass left untouched.

    Attributes:
        location: Where the construct starts.
        reason: Why the pass skipped it.
    """

    location: SourceLocation
    reason: str

    def __str__(self) -> str:
        return f"{self.location}: {self.reason}"


@dataclasses.dataclass
class TransformResult:
    """
    ``TransformResult`` represents the outcome of transformation passes.

    Attributes:
        edits: Edits to apply.
        warnings: Skipped constructs.
        untransformable: Whether the unit cannot be transformed at all.
        errors: Reasons the unit is untransformable.
    """

    edits: list[Edit] = dataclasses.field(default_factory=list)
    warnings: list[Skip] = dataclasses.field(default_factory=list)
    untransformable: bool = False
    errors: list[str] = dataclasses.field(default_factory=list)

    def edit(self, start: int, stop: int, replacement: str, feature, note: str = "", origin: tuple[int, int] = None) -> None:
        self.edits.append(Edit(start, stop, replacement, feature, note, origin))

    def skip(self, syntax: tree.SyntaxTree, offset: int, err: RetrofitError) -> None:
        """
        ``skip`` records skipped constructs.

        Parameters:
            syntax: Syntax tree holding the construct.
            offset: Byte offset of the construct.
            err: Error explaining the skip.
        """

        location = syntax.location(offset)
        err.path, err.line = location.file_id, location.line
        skipped = Skip(location, str(err))
        self.warnings.append(skipped)
        logger.warning("%s", skipped)

    def fail(self, syntax: tree.SyntaxTree, offset: int, err: RetrofitError) -> None:
        location = syntax.location(offset)
        err.path, err.line = location.file_id, location.line
        self.untransformable = True
        self.errors.append(str(err))
        logger.error("%s", err)

    def merge(self, other: "TransformResult") -> None:
        """
        ``merge`` folds results of further rounds into this one.

        Warnings already reported by earlier rounds are not repeated.

        Parameters:
            other: Result to fold in.
        """

        self.edits += other.edits
        seen = {warning.reason for warning in self.warnings}
        self.warnings += [warning for warning in other.warnings if warning.reason not in seen]
        self.untransformable = self.untransformable or other.untransformable
        self.errors += other.errors


def line_indent(syntax: tree.SyntaxTree, offset: int) -> str:
    """
    ``line_indent`` reads the indentation of the line holding an offset.

    Parameters:
        syntax: Syntax tree.
        offset: Byte offset.

    Returns:
        Leading whitespace of the line.
    """

    start = syntax.line_start(offset)
    end = syntax.text.find("\n", start)
    return Postprocessor.indentation(syntax.text[start:] if end < 0 else syntax.text[start:end])


def starts_line(syntax: tree.SyntaxTree, offset: int) -> bool:
    return not syntax.text[syntax.line_start(offset) : offset].strip()


def anchor(syntax: tree.SyntaxTree, node: tree.Node) -> tuple[int, str, str]:
    """
    ``anchor`` finds where to insert declarations preceding statements.

    Parameters:
        syntax: Syntax tree.
        node: Statement to precede.

    Returns:
        Tuple of insertion offset, indentation, and line separator; insertions
        at line starts end in newlines, others in spaces.
    """

    if starts_line(syntax, node.start):
        return (syntax.line_start(node.start), line_indent(syntax, node.start), "\n")
    return (node.start, "", " ")


def enclosing_statement(node: tree.Node, ancestors: tuple) -> tree.Node:
    """
    ``enclosing_statement`` finds the statement or declaration holding nodes.

    Parameters:
        node: Nested node.
        ancestors: Ancestors of the node, outermost first.

    Returns:
        Outermost-but-one node whose parent is a block, namespace, or file.
    """

    chain = ancestors + (node,)

    for index in range(len(chain) - 1, 0, -1):
        if isinstance(chain[index - 1], (tree.Compound, tree.TranslationUnit, tree.Namespace)):
            return chain[index]

    return node
