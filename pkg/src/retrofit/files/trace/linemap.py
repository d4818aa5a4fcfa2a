"""
``linemap`` contains the class representing original/transformed line maps.

``linemap`` packages the ``LineMap`` class and the ``build_linemap`` and
``lookup`` functions. Line maps compose the segment maps of every rewrite of
one file; lines inside transformed regions trace back to the first original
line of the outermost region.
"""


import os
import bisect
import logging
import dataclasses

from ..cpp.edit import Segment
from ..cpp.edit import SegmentMap
from ..utils import errors
from ..utils.types import Feature


logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".trace"


@dataclasses.dataclass(frozen=True)
class _Trace:
    lo: int
    hi: int
    exact: bool
    feature: Feature | None = None
    inner: "_Trace | None" = None


def _segment_at(segments: list[Segment], line: int) -> Segment | None:
    starts = [segment.transformed[0] for segment in segments]
    index = bisect.bisect_right(starts, line) - 1

    # Empty transformed ranges never contain lines.
    while index >= 0:
        segment = segments[index]
        if segment.transformed[0] <= line <= segment.transformed[1]:
            return segment
        if segment.transformed[1] >= segment.transformed[0]:
            return None
        index -= 1

    return None


def _back_point(segment_map: SegmentMap, line: int) -> _Trace:
    if line > segment_map.new_lines:
        shifted = segment_map.original_lines + line - segment_map.new_lines
        return _Trace(shifted, shifted, True)

    segment = _segment_at(segment_map.segments, line)
    if segment is None:
        return _Trace(line, line, True)
    if segment.is_identity:
        mapped = segment.original[0] + line - segment.transformed[0]
        return _Trace(mapped, mapped, True)

    return _Trace(segment.original[0], segment.original[1], False, segment.feature)


def _back_range(segment_map: SegmentMap, trace: _Trace) -> _Trace:
    if trace.exact:
        return _back_point(segment_map, trace.lo)

    first = _back_point(segment_map, trace.lo)

    if trace.hi < trace.lo:
        if first.exact:
            return _Trace(first.lo, first.lo - 1, False, trace.feature)
        return _Trace(first.lo, first.hi, False, first.feature)

    last = _back_point(segment_map, trace.hi)
    lo = first.lo
    hi = max(last.hi, lo - 1)
    feature = trace.feature

    # The widest region met on the way back names the feature.
    for point in (first, last):
        if not point.exact and point.hi - point.lo > trace.hi - trace.lo:
            feature = point.feature

    return _Trace(lo, hi, False, feature)


def _trace_line(maps: list[SegmentMap], line: int) -> _Trace:
    trace = _Trace(line, line, True)

    for segment_map in reversed(maps):
        previous = trace
        trace = _back_range(segment_map, trace)
        if previous.exact and not trace.exact:
            trace = dataclasses.replace(trace, inner=trace)
        elif previous.inner is not None:
            inner = _back_range(segment_map, previous.inner)
            trace = dataclasses.replace(trace, inner=dataclasses.replace(inner, feature=previous.inner.feature))

    return trace


@dataclasses.dataclass
class LineMap:
    """
    ``LineMap`` represents the line correspondence of one transformed file.

    Attributes:
        original: Original file path.
        transformed: Transformed file path.
        segments: Segments covering the transformed file in order.
        nested: Regions nested inside outermost regions.
    """

    original: str
    transformed: str
    segments: list[Segment]
    nested: list[Segment] = dataclasses.field(default_factory=list)

    @property
    def lines(self) -> int:
        return self.segments[-1].transformed[1] if self.segments else 0

    @property
    def original_lines(self) -> int:
        return max((segment.original[1] for segment in self.segments), default=0)

    @staticmethod
    def from_text(source: str, transformed: str = ""):
        """
        ``from_text`` generates ``LineMap`` objects from sidecar text.

        Parameters:
            source: Sidecar file content.
            transformed: Transformed file path.

        Returns:
            ``LineMap`` object.

        Raises:
            TraceError: MALFORMED_SIDECAR.
        """

        lines = [line for line in source.splitlines() if line.strip()]

        if not lines or not lines[0].startswith("F "):
            raise errors.TraceError(errors.TraceCodes.MALFORMED_SIDECAR, path=transformed, detail=lines[0] if lines else "")

        original = lines[0][2:].strip()
        segments = []
        nested = []

        for number, line in enumerate(lines[1:], start=2):
            tokens = line.split()
            try:
                if len(tokens) < 6 or tokens[0] != "O" or tokens[3] != "T":
                    raise ValueError(line)

                feature = None
                outermost = True
                rest = tokens[6:]

                if rest[:1] == ["X"]:
                    feature = Feature(rest[1])
                    rest = rest[2:]
                if rest == ["I"]:
                    outermost = False
                elif rest:
                    raise ValueError(line)

                kind = "identity" if feature is None else "transformed"
                segment = Segment(kind, (int(tokens[1]), int(tokens[2])), (int(tokens[4]), int(tokens[5])), feature, outermost)
            except (ValueError, IndexError) as err:
                raise errors.TraceError(errors.TraceCodes.MALFORMED_SIDECAR, path=transformed, line=number, detail=line) from err

            (segments if outermost else nested).append(segment)

        return LineMap(original, transformed, segments, nested)

    @classmethod
    def from_sidecar(cls, transformed: str):
        """
        ``from_sidecar`` loads the sidecar of transformed files.

        Parameters:
            transformed: Transformed file path.

        Returns:
            ``LineMap`` object.

        Raises:
            TraceError: MISSING_SIDECAR, MALFORMED_SIDECAR.
        """

        path = transformed + SIDECAR_SUFFIX

        try:
            with open(path, "r", encoding="utf-8") as file:
                source = file.read()
        except OSError as err:
            raise errors.TraceError(errors.TraceCodes.MISSING_SIDECAR, path=path) from err

        return cls.from_text(source, transformed)

    def to_text(self) -> str:
        """
        ``to_text`` generates sidecar text from ``LineMap`` objects.

        Returns:
            Sidecar file content.
        """

        def entry(segment: Segment) -> str:
            text = f"O {segment.original[0]} {segment.original[1]} T {segment.transformed[0]} {segment.transformed[1]}"
            if not segment.is_identity:
                text += f" X {segment.feature}"
            if not segment.outermost:
                text += " I"
            return text

        return "\n".join([f"F {self.original}"] + [entry(segment) for segment in self.segments + self.nested]) + "\n"

    def to_sidecar(self, transformed: str = None) -> str:
        """
        ``to_sidecar`` writes the sidecar next to transformed files.

        Parameters:
            transformed: Transformed file path, defaults to ``transformed``.

        Returns:
            Sidecar path.
        """

        path = (transformed or self.transformed) + SIDECAR_SUFFIX
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)

        with open(path, "w", encoding="utf-8") as file:
            file.write(self.to_text())

        return path

    def segment_at(self, line: int) -> Segment | None:
        return _segment_at(self.segments, line)


def build_linemap(maps: list[SegmentMap], original: str = "", transformed: str = "", lines: int = None) -> LineMap:
    """
    ``build_linemap`` composes per-rewrite segment maps.

    Parameters:
        maps: Segment maps in rewrite order.
        original: Original file path.
        transformed: Transformed file path.
        lines: Line count of unedited files, used when ``maps`` is empty.

    Returns:
        ``LineMap`` object.
    """

    if not maps:
        identity = SegmentMap.identity(lines or 0)
        return LineMap(original, transformed or original, identity.segments)

    segments = []
    nested = []

    def close(kind, trace, first, last, feature):
        if kind == "identity":
            segments.append(Segment(kind, (trace.lo - (last - first), trace.lo), (first, last)))
        else:
            segments.append(Segment(kind, (trace.lo, trace.hi), (first, last), feature))

    current = None
    first = 1

    for line in range(1, maps[-1].new_lines + 1):
        trace = _trace_line(maps, line)

        if current is not None:
            kind, previous, start, feature = current
            same = (
                trace.exact and kind == "identity" and trace.lo == previous.lo + 1
                or not trace.exact and kind == "transformed" and (trace.lo, trace.hi) == (previous.lo, previous.hi)
            )
            if same:
                current = (kind, trace, start, feature)
                continue
            close(kind, previous, start, line - 1, feature)

        current = ("identity" if trace.exact else "transformed", trace, line, trace.feature)

        inner = trace.inner
        if not trace.exact and inner is not None and (inner.lo, inner.hi) != (trace.lo, trace.hi):
            nested.append(Segment("transformed", (inner.lo, inner.hi), (line, line), inner.feature, False))

    if current is not None:
        kind, previous, start, feature = current
        close(kind, previous, start, maps[-1].new_lines, feature)

    logger.debug("%s: %d segments, %d nested regions", transformed or original, len(segments), len(nested))
    return LineMap(original, transformed or original, segments, _merge_nested(nested))


def _merge_nested(nested: list[Segment]) -> list[Segment]:
    merged = []

    for segment in nested:
        if merged and merged[-1].original == segment.original and merged[-1].transformed[1] + 1 == segment.transformed[0]:
            merged[-1] = dataclasses.replace(merged[-1], transformed=(merged[-1].transformed[0], segment.transformed[1]))
        else:
            merged.append(segment)

    return merged


def lookup(linemap: LineMap, line: int) -> tuple[str, int, bool]:
    """
    ``lookup`` traces transformed lines back to original lines.

    Parameters:
        linemap: Line map of the transformed file.
        line: 1-based transformed line.

    Returns:
        Tuple of original path, original line, and whether the match is exact.

    Raises:
        TraceError: LINE_OUT_OF_RANGE.
    """

    segment = linemap.segment_at(line) if 1 <= line <= linemap.lines else None

    if segment is None:
        raise errors.TraceError(errors.TraceCodes.LINE_OUT_OF_RANGE, path=linemap.transformed, line=line)

    if segment.is_identity:
        return (linemap.original, segment.original[0] + line - segment.transformed[0], True)

    anchor = max(1, min(segment.original[0], linemap.original_lines or 1))
    return (linemap.original, anchor, False)
