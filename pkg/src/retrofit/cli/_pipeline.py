"""
``_pipeline`` contains the per-unit work of ``retrofit run``.

``_pipeline`` packages the ``UnitJob`` and ``UnitOutcome`` classes and the
``transform_unit`` function workers execute. Workers only read original
files; the parent process writes every output.
"""


import time
import logging
import dataclasses

from .. import transforms
from ..files.cpp import tree
from ..files.cpp import parse_source
from ..files.cpp.lexer import decode
from ..files.cpp.edit import count_lines
from ..files.trace import LineMap
from ..files.trace import build_linemap
from ..files.utils import errors
from ..semantics import import_scope


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class UnitJob:
    """
    ``UnitJob`` represents one unit scheduled for transformation.

    Attributes:
        unit: Unit path.
        headers: Project headers the unit depends on.
        owned: Headers this unit transforms, a subset of ``headers``.
        outputs: Dictionary from transformed paths to mirrored paths.
    """

    unit: str
    headers: tuple[str, ...]
    owned: tuple[str, ...]
    outputs: dict[str, str]


@dataclasses.dataclass
class FileOutcome:
    """
    ``FileOutcome`` represents one transformed file.

    Attributes:
        path: Original path.
        output: Mirrored path.
        text: Transformed text.
        linemap: Line map of the transformation.
        phases: Phase records.
        features: Features found in the file.
        failed: Whether the file failed.
        errors: Failure reasons.
        warnings: Skip warnings.
    """

    path: str
    output: str
    text: str
    linemap: LineMap
    phases: list[transforms.PhaseRecord]
    features: list[str]
    failed: bool
    errors: list[str]
    warnings: list[str]

    def edits_by_feature(self) -> dict[str, int]:
        counts = {}
        for phase in self.phases:
            for edit in phase.result.edits:
                counts[str(edit.feature)] = counts.get(str(edit.feature), 0) + 1
        return counts


@dataclasses.dataclass
class UnitOutcome:
    """
    ``UnitOutcome`` represents one transformed unit and its owned headers.

    Attributes:
        unit: Unit path.
        files: File outcomes, unit first.
        millis: Wall time in milliseconds.
    """

    unit: str
    files: list[FileOutcome]
    millis: float = 0.0

    @property
    def failed(self) -> bool:
        return any(outcome.failed for outcome in self.files)


def read_source(path: str) -> str:
    with open(path, "rb") as file:
        return decode(file.read())


def header_trees(headers: list[str]) -> list[tree.SyntaxTree]:
    """
    ``header_trees`` parses the original text of project headers.

    Headers that fail to parse are left out of the context.

    Parameters:
        headers: Header paths.

    Returns:
        Syntax trees, in the given order.
    """

    trees = []
    types = set()
    templates = set()

    for path in headers:
        try:
            syntax = parse_source(read_source(path), path, types, templates)
        except (OSError, errors.CppSyntaxError) as err:
            logger.warning("%s: header left out of context: %s", path, err)
            continue
        types |= syntax.known_types
        templates |= syntax.known_templates
        trees.append(syntax)

    return trees


def header_context(trees: list[tree.SyntaxTree]) -> transforms.PhaseContext:
    """
    ``header_context`` collects what headers tell units about names.

    Parameters:
        trees: Header syntax trees.

    Returns:
        Phase context.
    """

    aliases = frozenset(
        node.name for syntax in trees for node, _ in syntax.walk() if isinstance(node, tree.UsingAlias) and node.template is not None
    )

    return transforms.PhaseContext(
        imported=import_scope(trees),
        known_types=frozenset(name for syntax in trees for name in syntax.known_types),
        known_templates=frozenset(name for syntax in trees for name in syntax.known_templates),
        template_aliases=aliases,
    )


def failed_file(path: str, output: str, text: str, message: str) -> FileOutcome:
    logger.error("%s", message)
    linemap = build_linemap([], path, output, count_lines(text))
    return FileOutcome(path, output, text, linemap, [], [], True, [message], [])


def transform_file(path: str, output: str, context: transforms.PhaseContext) -> FileOutcome:
    """
    ``transform_file`` runs every phase over one file.

    Files that cannot be read, parsed or transformed give failed outcomes
    instead of raising, so one bad file never stops other units.

    Parameters:
        path: Original path.
        output: Mirrored path.
        context: Header knowledge.

    Returns:
        File outcome.
    """

    try:
        text = read_source(path)
    except OSError as err:
        return failed_file(path, output, "", f"{path}: cannot read: {err}")

    try:
        syntax = parse_source(text, path, context.known_types, context.known_templates)
    except errors.CppSyntaxError as err:
        err.path = err.path or path
        return failed_file(path, output, text, str(err))

    try:
        run = transforms.run_phases(syntax, context=context)
        linemap = build_linemap(run.maps, path, output, count_lines(text))
    except Exception as err:
        logger.debug("%s: transformation crashed", path, exc_info=True)
        return failed_file(path, output, text, f"{path}: transformation crashed: {type(err).__name__}: {err}")

    for message in run.errors:
        logger.error("%s", message)

    return FileOutcome(
        path,
        output,
        run.text,
        linemap,
        run.phases,
        sorted(str(feature) for feature in run.features),
        run.failed,
        run.errors,
        [str(warning) for warning in run.warnings],
    )


def transform_unit(job: UnitJob) -> UnitOutcome:
    """
    ``transform_unit`` transforms one unit and the headers it owns.

    Parameters:
        job: Scheduled unit.

    Returns:
        Unit outcome.
    """

    start = time.perf_counter()
    trees = header_trees(list(job.headers))
    outcomes = [transform_file(job.unit, job.outputs[job.unit], header_context(trees))]

    for header in job.owned:
        others = [syntax for syntax in trees if syntax.path != header]
        outcomes.append(transform_file(header, job.outputs[header], header_context(others)))

    outcome = UnitOutcome(job.unit, outcomes, (time.perf_counter() - start) * 1000.0)
    logger.info("%s: %s in %.1f ms", job.unit, "failed" if outcome.failed else "transformed", outcome.millis)
    return outcome


def crashed_unit(job: UnitJob, err: BaseException) -> UnitOutcome:
    """
    ``crashed_unit`` builds the outcome of units whose worker raised.

    Parameters:
        job: Scheduled unit.
        err: Exception the worker raised.

    Returns:
        Unit outcome with every file failed.
    """

    message = f"{job.unit}: worker failed: {type(err).__name__}: {err}"
    logger.error("%s", message)
    files = [
        FileOutcome(path, output, "", build_linemap([], path, output, 0), [], [], True, [message], [])
        for path, output in job.outputs.items()
    ]
    return UnitOutcome(job.unit, files)
