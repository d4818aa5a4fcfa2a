from .typerepr import TypeRepr
from .typerepr import render
from .typerepr import parse_type
from .scope import Scope
from .scope import ScopeKind
from .scope import Binding
from .scope import ClassInfo
from .scope import build_scope
from .scope import import_scope
from .deduce import RangePlan
from .deduce import type_of_expr
from .deduce import deduce_auto
from .deduce import deduce_trailing_return
from .deduce import range_element_type


__all__ = [
    "TypeRepr",
    "render",
    "parse_type",
    "Scope",
    "ScopeKind",
    "Binding",
    "ClassInfo",
    "build_scope",
    "import_scope",
    "RangePlan",
    "type_of_expr",
    "deduce_auto",
    "deduce_trailing_return",
    "range_element_type",
]
