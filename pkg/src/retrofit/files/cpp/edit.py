"""
``edit`` contains span-based text edits and the segment maps they produce.

``edit`` packages the ``Edit``, ``Segment``, and ``SegmentMap`` classes and
the ``apply_edits`` function. Applying edits records which original lines
each output line comes from; per-phase maps compose into line maps for
traceability.
"""


import bisect
import dataclasses

from .lexer import decode
from .lexer import encode
from ..utils import errors
from ..utils.types import Feature


@dataclasses.dataclass(frozen=True)
class Edit:
    """
    ``Edit`` represents replacements of byte spans.

    Attributes:
        start: First replaced byte offset.
        stop: Byte offset after the replaced span.
        replacement: Replacement text.
        feature: Feature the edit lowers.
        note: Free text.
        origin: Byte span of the construct generated text stands for.
    """

    start: int
    stop: int
    replacement: str
    feature: Feature
    note: str = ""
    origin: tuple[int, int] | None = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.stop)

    @property
    def is_insertion(self) -> bool:
        return self.start == self.stop

    def overlaps(self, other: "Edit") -> bool:
        """
        ``overlaps`` checks whether two edits touch the same bytes.

        Insertions at the boundary of another span do not overlap it.

        Parameters:
            other: Edit to compare against.

        Returns:
            True if the spans overlap.
        """

        first, second = sorted((self, other), key=lambda edit: (edit.start, edit.stop))
        if first.start == second.start and (first.is_insertion or second.is_insertion):
            return False
        return second.start < first.stop


@dataclasses.dataclass(frozen=True)
class Segment:
    """
    ``Segment`` represents corresponding line ranges.

    Line ranges are 1-based and inclusive; empty ranges have ``end`` one less
    than ``start``.

    Attributes:
        kind: ``identity`` or ``transformed``.
        original: Original line range.
        transformed: New line range.
        feature: Feature that produced a transformed range.
        outermost: Whether the range is not nested in another region.
    """

    kind: str
    original: tuple[int, int]
    transformed: tuple[int, int]
    feature: Feature | None = None
    outermost: bool = True

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"


@dataclasses.dataclass(frozen=True)
class EditRecord:
    """
    ``EditRecord`` represents where one edit landed.

    Attributes:
        span: Original byte span.
        lines: New line range of the replacement.
        feature: Feature of the edit.
    """

    span: tuple[int, int]
    lines: tuple[int, int]
    feature: Feature


@dataclasses.dataclass
class SegmentMap:
    """
    ``SegmentMap`` represents the line correspondence of one rewrite.

    Attributes:
        segments: Segments covering both files in order.
        records: Per-edit landing records.
        original_lines: Line count of the original text.
        new_lines: Line count of the new text.
    """

    segments: list[Segment]
    records: list[EditRecord]
    original_lines: int
    new_lines: int

    @staticmethod
    def identity(lines: int) -> "SegmentMap":
        segments = [Segment("identity", (1, lines), (1, lines))] if lines else []
        return SegmentMap(segments, [], lines, lines)


def count_lines(text: str) -> int:
    """
    ``count_lines`` counts lines, including a final unterminated one.

    Parameters:
        text: Text to count.

    Returns:
        Number of lines.
    """

    return text.count("\n") + (1 if text and not text.endswith("\n") else 0)


class _Lines:
    def __init__(self, text: str):
        self.text = text
        self.starts = [0] + [index + 1 for index, char in enumerate(text) if char == "\n"]

    def line_of(self, offset: int) -> int:
        return bisect.bisect_right(self.starts, offset)

    def start(self, line: int) -> int:
        if line - 1 < len(self.starts):
            return self.starts[line - 1]
        return len(self.text)


@dataclasses.dataclass
class _Group:
    lo: int
    hi: int
    members: list[int]


def _check_overlaps(edits: list[Edit], order: list[int]) -> None:
    for previous, current in zip(order, order[1:]):
        if edits[previous].overlaps(edits[current]):
            raise errors.CppSyntaxError(errors.CppSyntaxCodes.OVERLAPPING_EDITS, detail=f"{previous}, {current}")


def _edit_lines(edit: Edit, lines: _Lines) -> tuple[int, int]:
    start_line = lines.line_of(edit.start)

    if edit.is_insertion and lines.start(start_line) == edit.start and edit.replacement.endswith("\n"):
        lo, hi = start_line, start_line - 1
    else:
        lo, hi = start_line, lines.line_of(max(edit.stop - 1, edit.start))

    if edit.origin is not None:
        lo = min(lo, lines.line_of(edit.origin[0]))
        hi = max(hi, lines.line_of(max(edit.origin[1] - 1, edit.origin[0])))

    return (lo, hi)


def apply_edits(content: bytes | str, edits: list[Edit]) -> tuple[bytes | str, SegmentMap]:
    """
    ``apply_edits`` applies edits in ascending span order.

    Parameters:
        content: File content.
        edits: Pairwise non-overlapping edits.

    Returns:
        Tuple of new content, of the same type as ``content``, and the
        segment map of the rewrite.

    Raises:
        CppSyntaxError: OVERLAPPING_EDITS.
    """

    text = decode(content)
    order = sorted(range(len(edits)), key=lambda index: (edits[index].start, edits[index].stop))
    _check_overlaps(edits, order)

    # Building Output
    pieces = []
    new_start = {}
    new_end = {}
    cursor = 0
    length = 0

    for index in order:
        edit = edits[index]
        pieces.append(text[cursor : edit.start])
        length += edit.start - cursor
        new_start[index] = length
        pieces.append(edit.replacement)
        length += len(edit.replacement)
        new_end[index] = length
        cursor = edit.stop

    pieces.append(text[cursor:])
    new_text = "".join(pieces)
    output = new_text if isinstance(content, str) else encode(new_text)

    original = _Lines(text)
    rewritten = _Lines(new_text)
    original_lines = count_lines(text)
    new_lines = count_lines(new_text)

    if not edits:
        return (output, SegmentMap.identity(original_lines))

    # Grouping Edits
    groups = []
    for index in order:
        lo, hi = _edit_lines(edits[index], original)
        if groups and (lo <= groups[-1].hi or lo == groups[-1].lo and hi == groups[-1].hi == lo - 1):
            groups[-1].lo = min(groups[-1].lo, lo)
            groups[-1].hi = max(groups[-1].hi, hi)
            groups[-1].members.append(index)
        else:
            groups.append(_Group(lo, hi, [index]))

    def bounds(group: _Group) -> tuple[int, int]:
        first = group.members[0]
        last = max(group.members, key=lambda index: (edits[index].stop, order.index(index)))
        if group.hi < group.lo:
            return (new_start[first], new_end[last])
        begin = original.start(group.lo)
        end = original.start(group.hi + 1)
        return (new_start[first] - (edits[first].start - begin), new_end[last] + (end - edits[last].stop))

    index = 0
    while index < len(groups):
        group = groups[index]
        begin, end = bounds(group)
        chunk = new_text[begin:end]
        if chunk and not chunk.endswith("\n") and original.start(group.hi + 1) < len(text):
            group.hi += 1
            while index + 1 < len(groups) and groups[index + 1].lo <= group.hi:
                group.hi = max(group.hi, groups[index + 1].hi)
                group.members += groups.pop(index + 1).members
            continue
        index += 1

    # Building Segments
    segments = []
    line = 1
    new_line = 1

    for group in groups:
        lo = max(group.lo, 1)
        if lo > line:
            span = lo - line
            segments.append(Segment("identity", (line, lo - 1), (new_line, new_line + span - 1)))
            line += span
            new_line += span

        begin, end = bounds(group)
        size = count_lines(new_text[begin:end])
        feature = edits[group.members[0]].feature
        hi = min(group.hi, original_lines) if group.hi >= group.lo else group.lo - 1
        segments.append(Segment("transformed", (group.lo, hi), (new_line, new_line + size - 1), feature))
        line = max(line, hi + 1)
        new_line += size

    if line <= original_lines:
        span = original_lines - line + 1
        segments.append(Segment("identity", (line, original_lines), (new_line, new_line + span - 1)))

    records = []
    for index in order:
        first_line = rewritten.line_of(new_start[index])
        last_line = rewritten.line_of(max(new_end[index] - 1, new_start[index]))
        records.append(EditRecord(edits[index].span, (first_line, last_line), edits[index].feature))

    return (output, SegmentMap(segments, records, original_lines, new_lines))
