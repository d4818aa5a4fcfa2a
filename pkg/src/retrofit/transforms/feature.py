"""
``feature`` contains the feature finder.

The feature finder runs first on every unit, so later phases only invoke
passes whose feature occurs.
"""


import dataclasses
from typing import Iterable

from .alias import alias_uses
from ..files.cpp import tree
from ..files.cpp.markers import find_markers
from ..files.utils.types import Feature


@dataclasses.dataclass(frozen=True)
class FeatureSet:
    """
    ``FeatureSet`` represents the C++11 features a unit uses.

    Attributes:
        flags: Features that occur at least once.
        offsets: Byte offsets of the occurrences, per feature.
    """

    flags: frozenset[Feature] = frozenset()
    offsets: dict = dataclasses.field(default_factory=dict, compare=False)

    def __contains__(self, feature: Feature) -> bool:
        return feature in self.flags

    def __iter__(self):
        return iter(sorted(self.flags, key=list(Feature).index))

    def __len__(self) -> int:
        return len(self.flags)

    def __bool__(self) -> bool:
        return bool(self.flags)

    def __str__(self) -> str:
        return "{" + ", ".join(str(feature) for feature in self) + "}"


def find_features(syntax: tree.SyntaxTree, template_aliases: Iterable[str] = ()) -> FeatureSet:
    """
    ``find_features`` detects the C++11 features of syntax trees.

    Detection is syntactic only.

    Parameters:
        syntax: Syntax tree.
        template_aliases: Template alias names declared in included headers;
            their uses need rewriting too.

    Returns:
        Feature set.
    """

    offsets = find_markers(syntax)

    uses = alias_uses(syntax, set(template_aliases))
    if uses:
        found = offsets.setdefault(Feature.TYPE_ALIAS, [])
        found += [syntax.start_of(pos) for pos, _ in uses]
        found.sort()

    return FeatureSet(frozenset(offsets), offsets)
