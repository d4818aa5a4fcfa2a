"""
``_report`` contains the run summary and the JSON-lines report writer.

Report files hold one ``phase`` record per (file, phase), one ``pass`` record
per (file, bundled pass), and a final ``summary`` record.
"""


import json
import dataclasses

from ._pipeline import UnitOutcome
from ..transforms.phases import PHASES


SETUP = "Setup"
PARSE = "Parse"
WRITE = "Write"
STAGES = (SETUP, PARSE) + PHASES + (WRITE,)


@dataclasses.dataclass
class RunSummary:
    """
    ``RunSummary`` represents the totals of one run.

    Attributes:
        units: Units in the compilation database.
        transformed: Units transformed successfully.
        skipped: Units up to date.
        failed: Units that failed.
        warnings: Skip warnings.
        phase_millis: Wall time per stage, in milliseconds. Besides the
            phases, ``Setup`` covers loading, scanning and mirroring,
            ``Parse`` covers parsing and line maps, and ``Write`` covers
            outputs and the state commit; with one job the stages add up
            to ``total_millis``.
        feature_edits: Applied edits per feature.
        total_millis: Wall time of the run, in milliseconds.
    """

    units: int = 0
    transformed: int = 0
    skipped: int = 0
    failed: int = 0
    warnings: int = 0
    phase_millis: dict[str, float] = dataclasses.field(default_factory=lambda: {name: 0.0 for name in STAGES})
    feature_edits: dict[str, int] = dataclasses.field(default_factory=dict)
    total_millis: float = 0.0

    def add(self, outcome: UnitOutcome) -> None:
        """
        ``add`` folds unit outcomes into the totals.

        Parameters:
            outcome: Unit outcome.
        """

        if outcome.failed:
            self.failed += 1
        else:
            self.transformed += 1

        for file in outcome.files:
            self.warnings += len(file.warnings)
            for phase in file.phases:
                self.phase_millis[phase.name] += phase.millis
            for feature, count in file.edits_by_feature().items():
                self.feature_edits[feature] = self.feature_edits.get(feature, 0) + count

        phased = sum(phase.millis for file in outcome.files for phase in file.phases)
        self.phase_millis[PARSE] += max(outcome.millis - phased, 0.0)

    def to_json(self) -> dict:
        return {
            "record": "summary",
            "units": self.units,
            "transformed": self.transformed,
            "skipped": self.skipped,
            "failed": self.failed,
            "warnings": self.warnings,
            "phase_ms": {name: round(millis, 3) for name, millis in self.phase_millis.items()},
            "edits": dict(sorted(self.feature_edits.items())),
            "total_ms": round(self.total_millis, 3),
        }

    def __str__(self) -> str:
        edits = ", ".join(f"{feature} {count}" for feature, count in sorted(self.feature_edits.items())) or "none"
        return (
            f"{self.units} units: {self.transformed} transformed, {self.skipped} up to date, {self.failed} failed; "
            f"{self.warnings} warnings; edits: {edits}; {self.total_millis:.1f} ms"
        )


def records(outcome: UnitOutcome) -> list[dict]:
    """
    ``records`` generates report records of unit outcomes.

    Parameters:
        outcome: Unit outcome.

    Returns:
        JSON-compatible records, in phase order.
    """

    lines = []

    for file in outcome.files:
        for phase in file.phases:
            lines.append(
                {
                    "record": "phase",
                    "unit": outcome.unit,
                    "file": file.path,
                    "phase": phase.name,
                    "executed": phase.executed,
                    "edits": len(phase.result.edits),
                    "warnings": len(phase.result.warnings),
                    "ms": round(phase.millis, 3),
                    "failed": file.failed,
                }
            )
            for step in phase.passes:
                lines.append(
                    {
                        "record": "pass",
                        "unit": outcome.unit,
                        "file": file.path,
                        "phase": phase.name,
                        "pass": step.name,
                        "feature": str(step.feature),
                        "executed": step.executed,
                        "edits": step.edits,
                        "warnings": step.warnings,
                        "ms": round(step.millis, 3),
                    }
                )

    return lines


def write_report(path: str, outcomes: list[UnitOutcome], summary: RunSummary) -> None:
    """
    ``write_report`` writes JSON-lines report files.

    Parameters:
        path: Report path.
        outcomes: Unit outcomes, in database order.
        summary: Run totals.
    """

    with open(path, "w", encoding="utf-8") as file:
        for outcome in outcomes:
            for record in records(outcome):
                file.write(json.dumps(record) + "\n")
        file.write(json.dumps(summary.to_json()) + "\n")
