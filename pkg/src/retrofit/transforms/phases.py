"""
``phases`` contains the phase driver running passes over translation units.

Units go through five phases: FeatureFinder, ReplaceLambda, MultipleTransforms,
RemoveAutoDelegation, and SyntaxCheck. Passes only run when the feature
finder saw their feature, and the text is re-parsed after every phase that
edited it.
"""


import time
import functools
import logging
import dataclasses
from typing import Callable

from .result import TransformResult
from .feature import FeatureSet
from .feature import find_features
from .lambdas import transform_lambda
from .modifiers import strip_attributes
from .modifiers import strip_final_override
from .range_for import lower_range_for
from .alias import rewrite_type_alias
from .member_init import transform_member_init
from .auto import transform_auto
from .delegation import inline_delegation
from ..semantics.scope import Scope
from ..semantics.scope import build_scope
from ..files.cpp import tree
from ..files.cpp.edit import Edit
from ..files.cpp.edit import SegmentMap
from ..files.cpp.edit import apply_edits
from ..files.cpp.check import Diagnostic
from ..files.cpp.check import check_syntax
from ..files.cpp.parser import parse_source
from ..files.utils import errors
from ..files.utils.types import Feature


logger = logging.getLogger(__name__)

MAX_LAMBDA_ROUNDS = 16
MAX_BUNDLE_ROUNDS = 4

FEATURE_FINDER = "FeatureFinder"
REPLACE_LAMBDA = "ReplaceLambda"
MULTIPLE_TRANSFORMS = "MultipleTransforms"
REMOVE_AUTO_DELEGATION = "RemoveAutoDelegation"
SYNTAX_CHECK = "SyntaxCheck"
PHASES = (FEATURE_FINDER, REPLACE_LAMBDA, MULTIPLE_TRANSFORMS, REMOVE_AUTO_DELEGATION, SYNTAX_CHECK)


@dataclasses.dataclass(frozen=True)
class PhaseContext:
    """
    ``PhaseContext`` represents what units know about their headers.

    Attributes:
        imported: Scope of included project headers.
        known_types: Type names declared in headers.
        known_templates: Template names declared in headers.
        template_aliases: Template alias names declared in headers.
    """

    imported: Scope | None = None
    known_types: frozenset[str] = frozenset()
    known_templates: frozenset[str] = frozenset()
    template_aliases: frozenset[str] = frozenset()


@dataclasses.dataclass(frozen=True)
class Pass:
    """
    ``Pass`` represents transformation passes.

    Attributes:
        name: Pass name.
        feature: Feature gating the pass.
        run: Callable taking a syntax tree and a scope tree.
    """

    name: str
    feature: Feature
    run: Callable[[tree.SyntaxTree, Scope], TransformResult]


@dataclasses.dataclass
class PassRecord:
    """
    ``PassRecord`` represents one pass execution inside a phase.

    Attributes:
        name: Pass name.
        feature: Feature of the pass.
        executed: Whether the feature gate let the pass run.
        edits: Number of applied edits.
        warnings: Number of skip warnings.
        millis: Wall time in milliseconds.
    """

    name: str
    feature: Feature
    executed: bool = False
    edits: int = 0
    warnings: int = 0
    millis: float = 0.0


@dataclasses.dataclass
class PhaseRecord:
    """
    ``PhaseRecord`` represents one phase execution.

    Attributes:
        name: Phase name.
        result: Combined result of the phase's passes.
        millis: Wall time in milliseconds.
        executed: Whether the phase ran.
        passes: Pass records, for bundled phases.
    """

    name: str
    result: TransformResult
    millis: float = 0.0
    executed: bool = False
    passes: list[PassRecord] = dataclasses.field(default_factory=list)


@dataclasses.dataclass
class PhaseRun:
    """
    ``PhaseRun`` represents the outcome of transforming one unit.

    Iterating yields tuples of phase name and result.

    Attributes:
        phases: Phase records, in execution order.
        text: Final text.
        maps: Segment maps of every rewrite, in order.
        features: Features found by the first phase.
        diagnostics: Syntax check diagnostics.
        failed: Whether the unit failed.
    """

    phases: list[PhaseRecord]
    text: str
    maps: list[SegmentMap]
    features: FeatureSet
    diagnostics: list[Diagnostic]
    failed: bool

    def __iter__(self):
        return iter([(phase.name, phase.result) for phase in self.phases])

    @property
    def warnings(self) -> list:
        return [warning for phase in self.phases for warning in phase.result.warnings]

    @property
    def errors(self) -> list[str]:
        return [error for phase in self.phases for error in phase.result.errors]

    @property
    def edits(self) -> int:
        return sum(len(phase.result.edits) for phase in self.phases)

    def phase(self, name: str) -> PhaseRecord:
        return next(phase for phase in self.phases if phase.name == name)


def _elapsed(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def bundled_passes(context: PhaseContext) -> tuple[list[Pass], list[Pass]]:
    """
    ``bundled_passes`` lists the passes of the two bundled phases.

    Parameters:
        context: Header knowledge, for alias uses.

    Returns:
        Tuple of MultipleTransforms and RemoveAutoDelegation passes.
    """

    aliases = context.template_aliases
    multiple = [
        Pass("strip_attributes", Feature.ATTRIBUTE, strip_attributes),
        Pass("strip_final_override", Feature.FINAL_OVERRIDE, strip_final_override),
        Pass("lower_range_for", Feature.RANGE_FOR, lower_range_for),
        Pass("rewrite_type_alias", Feature.TYPE_ALIAS, lambda syntax, scope: rewrite_type_alias(syntax, scope, aliases)),
        Pass("transform_member_init", Feature.MEMBER_INIT, transform_member_init),
    ]
    auto_delegation = [
        Pass("transform_auto", Feature.AUTO, transform_auto),
        Pass("inline_delegation", Feature.CTOR_DELEGATION, inline_delegation),
    ]
    return (multiple, auto_delegation)


class PhaseRunner:
    """
    ``PhaseRunner`` carries units through the phases.

    Attributes:
        syntax: Current syntax tree.
        scope: Current scope tree.
        context: Header knowledge.
        maps: Segment maps of every rewrite so far.
    """

    def __init__(self, syntax: tree.SyntaxTree, scope: Scope | None, context: PhaseContext):
        """
        ``__init__`` initializes ``PhaseRunner``.
        """

        self.syntax: tree.SyntaxTree = syntax
        self.context: PhaseContext = context
        self.scope: Scope = scope if scope is not None else build_scope(syntax, context.imported)
        self.maps: list[SegmentMap] = []

    def rewrite(self, edits: list[Edit]) -> None:
        """
        ``rewrite`` applies edits and re-parses the result.

        Parameters:
            edits: Edits against the current text.

        Raises:
            CppSyntaxError: OVERLAPPING_EDITS, UNBALANCED_BRACES.
        """

        text, segments = apply_edits(self.syntax.text, edits)
        self.maps.append(segments)

        context = self.context
        known_types = context.known_types | self.syntax.known_types
        known_templates = context.known_templates | self.syntax.known_templates
        self.syntax = parse_source(text, self.syntax.path, known_types, known_templates)
        self.scope = build_scope(self.syntax, context.imported)

    def run_pass(self, step: Pass, record: PassRecord) -> TransformResult:
        start = time.perf_counter()
        result = step.run(self.syntax, self.scope)
        record.executed = True
        record.millis += _elapsed(start)
        return result

    def replace_lambdas(self, phase: PhaseRecord) -> None:
        record = phase.passes[0]
        step = Pass(record.name, Feature.LAMBDA, transform_lambda)

        for _ in range(MAX_LAMBDA_ROUNDS):
            result = self.run_pass(step, record)
            phase.result.merge(result)
            if not result.edits:
                break
            self.rewrite(result.edits)

        record.edits = len(phase.result.edits)
        record.warnings = len(phase.result.warnings)

    def bundle(self, phase: PhaseRecord, passes: list[Pass], features: FeatureSet) -> None:
        """
        ``bundle`` runs independent passes in one round.

        Passes whose edits overlap edits of earlier passes in the round are
        deferred to a further round on the re-parsed text.

        Parameters:
            phase: Phase record to fill.
            passes: Passes of the phase.
            features: Features found by the first phase.
        """

        records = {record.name: record for record in phase.passes}
        pending = [step for step in passes if step.feature in features]

        for _ in range(MAX_BUNDLE_ROUNDS):
            if not pending:
                break

            accepted: list[Edit] = []
            deferred = []

            for step in pending:
                record = records[step.name]
                result = self.run_pass(step, record)
                if any(edit.overlaps(other) for edit in result.edits for other in accepted):
                    logger.debug("%s: deferring %s", self.syntax.path, step.name)
                    deferred.append(step)
                    continue
                accepted += result.edits
                record.edits += len(result.edits)
                record.warnings += len(result.warnings)
                phase.result.merge(result)

            if accepted:
                self.rewrite(accepted)
            pending = deferred

        for step in pending:
            logger.warning("%s: %s still overlaps after %d rounds", self.syntax.path, step.name, MAX_BUNDLE_ROUNDS)

    def run(self) -> PhaseRun:
        """
        ``run`` runs every phase.

        Returns:
            Phase run.
        """

        phases = [PhaseRecord(name, TransformResult()) for name in PHASES]
        finder, lambdas, multiple, auto_delegation, checker = phases
        diagnostics = []

        start = time.perf_counter()
        features = find_features(self.syntax, self.context.template_aliases)
        finder.executed, finder.millis = True, _elapsed(start)
        logger.debug("%s: features %s", self.syntax.path, features)

        first, second = bundled_passes(self.context)
        lambdas.passes = [PassRecord("transform_lambda", Feature.LAMBDA)]
        multiple.passes = [PassRecord(step.name, step.feature) for step in first]
        auto_delegation.passes = [PassRecord(step.name, step.feature) for step in second]

        steps = [
            (lambdas, Feature.LAMBDA in features, self.replace_lambdas),
            (multiple, any(step.feature in features for step in first), functools.partial(self.bundle, passes=first, features=features)),
            (auto_delegation, any(step.feature in features for step in second), functools.partial(self.bundle, passes=second, features=features)),
        ]

        try:
            for phase, gate, action in steps:
                if not gate:
                    continue
                start = time.perf_counter()
                phase.executed = True
                action(phase)
                phase.millis = _elapsed(start)
                logger.debug("%s: %s: %d edits, %.1f ms", self.syntax.path, phase.name, len(phase.result.edits), phase.millis)
                if phase.result.untransformable:
                    break
        except errors.CppSyntaxError as err:
            err.path = self.syntax.path
            phase.result.untransformable = True
            phase.result.errors.append(str(err))
            logger.error("%s", err)

        untransformable = any(phase.result.untransformable for phase in phases)
        if not untransformable:
            start = time.perf_counter()
            diagnostics = check_syntax(self.syntax)
            checker.executed, checker.millis = True, _elapsed(start)

        warned = any(phase.result.warnings for phase in phases)
        fatal = [diagnostic for diagnostic in diagnostics if not (warned and diagnostic.code.endswith("-remains"))]
        for diagnostic in fatal:
            checker.result.errors.append(str(diagnostic))

        return PhaseRun(phases, self.syntax.text, self.maps, features, diagnostics, untransformable or bool(fatal))


def run_phases(syntax: tree.SyntaxTree, scope: Scope = None, context: PhaseContext = None) -> PhaseRun:
    """
    ``run_phases`` transforms one translation unit.

    Remaining C++11 features fail the unit unless a pass reported skipping
    constructs, in which case they are left in place as reported.

    Parameters:
        syntax: Syntax tree of the unit.
        scope: Scope tree of the unit, built when omitted.
        context: Header knowledge.

    Returns:
        Phase run; iterating yields tuples of phase name and result.
    """

    return PhaseRunner(syntax, scope, context or PhaseContext()).run()
