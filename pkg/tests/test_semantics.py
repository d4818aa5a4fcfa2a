"""
``test_semantics`` tests the ``retrofit.semantics`` module.
"""


import pytest
import hypothesis as hy
import hypothesis.strategies as st

import _config
from retrofit.files.cpp import tree
from retrofit.files.cpp import parse_source
from retrofit.files.utils import errors
from retrofit.semantics import build_scope
from retrofit.semantics import deduce_auto
from retrofit.semantics import deduce_trailing_return
from retrofit.semantics import parse_type
from retrofit.semantics import range_element_type
from retrofit.semantics import render
from retrofit.semantics import type_of_expr
from retrofit.semantics import typerepr as types


VECTOR = types.Named("std::vector", (types.INT,))

PROGRAM = """
#include <vector>
#include <string>

struct Point { int x; int y; int norm() const { return x + y; } };

int square(int v) { return v * v; }
int twice(int v) { return 2 * v; }
double twice(double v) { return 2 * v; }

void use(std::vector<int> &v, const std::vector<int> &cv, const char *s, std::string name)
{
  int i = 1;
  const int c = 2;
  double d = 0.5;
  int arr[4] = {1, 2, 3, 4};
  Point pt = {1, 2};
  Point *pp = &pt;

  int e_literal = 42;
  int e_name = i;
  int e_const = c;
  int *e_address = &i;
  double e_sum = i + d;
  long e_long = i * 2L;
  bool e_compare = i < d;
  int e_call = square(i);
  int e_overload = twice(i);
  int e_field = pt.x;
  int e_arrow = pp->y;
  int e_method = pt.norm();
  int e_element = arr[2];
  char e_char = s[0];
  int e_front = v.front();
  int e_cfront = cv.front();
  int e_size = v.size();
  int e_length = name.length();
  int e_begin = *v.begin();
  int e_cond = i ? i : c;
  int e_prefix = ++i;
  int e_postfix = i++;
  long e_cast = static_cast<long>(i);
  int e_new = *new int(3);
  int e_missing = nowhere;
  int e_ambiguous = twice;
}
"""


def initializer(syntax: tree.SyntaxTree, name: str) -> tree.Node:
    for node in syntax.nodes(tree.Variable):
        for declarator in node.declarators:
            if declarator.name == name:
                return declarator.initializer.exprs[0]
    raise KeyError(name)


@pytest.fixture(scope="module")
def program():
    syntax = parse_source(PROGRAM, "program.cpp")
    return (syntax, build_scope(syntax))


@st.composite
def fundamental_type(draw):
    return types.Fundamental(draw(st.sampled_from(["bool", "char", "int", "unsigned", "long", "unsigned long", "float", "double"])))


class Test_TypeOfExpr:
    @pytest.mark.parametrize(
        "name, expected",
        [
            ("e_literal", types.INT),
            ("e_name", types.Reference(types.INT)),
            ("e_const", types.Reference(types.Const(types.INT))),
            ("e_address", types.Pointer(types.INT)),
            ("e_sum", types.DOUBLE),
            ("e_long", types.Fundamental("long")),
            ("e_compare", types.BOOL),
            ("e_call", types.INT),
            ("e_overload", types.INT),
            ("e_field", types.Reference(types.INT)),
            ("e_arrow", types.Reference(types.INT)),
            ("e_method", types.INT),
            ("e_element", types.Reference(types.INT)),
            ("e_char", types.Reference(types.Const(types.CHAR))),
            ("e_front", types.Reference(types.INT)),
            ("e_cfront", types.Reference(types.Const(types.INT))),
            ("e_size", types.Named("size_type", None, VECTOR)),
            ("e_length", types.Named("size_type", None, types.Named("std::string"))),
            ("e_begin", types.Reference(types.INT)),
            ("e_cond", types.INT),
            ("e_prefix", types.Reference(types.INT)),
            ("e_postfix", types.INT),
            ("e_cast", types.Fundamental("long")),
            ("e_new", types.Reference(types.INT)),
        ],
    )
    def test_valid(self, program, name, expected):
        syntax, scope = program

        assert type_of_expr(initializer(syntax, name), scope) == expected

    @pytest.mark.parametrize(
        "name, code",
        [
            ("e_missing", errors.SemanticCodes.UNRESOLVED_IDENTIFIER),
            ("e_ambiguous", errors.SemanticCodes.UNSUPPORTED_EXPRESSION),
        ],
    )
    def test_invalid(self, program, name, code):
        syntax, scope = program

        with pytest.raises(errors.SemanticError) as err:
            type_of_expr(initializer(syntax, name), scope)

        assert err.value.code == code


class Test_DeduceAuto:
    @pytest.mark.parametrize(
        "declared, init_type, expected",
        [
            (types.Auto(), types.Reference(types.Const(types.INT)), types.INT),
            (types.Auto(), types.Array(types.Const(types.CHAR), "5"), types.Pointer(types.Const(types.CHAR))),
            (types.Pointer(types.Auto()), types.Pointer(types.CHAR), types.Pointer(types.CHAR)),
            (types.Reference(types.Auto()), types.Reference(types.Const(types.INT)), types.Reference(types.Const(types.INT))),
            (types.Reference(types.Const(types.Auto())), types.INT, types.Reference(types.Const(types.INT))),
            (types.Const(types.Auto()), types.DOUBLE, types.Const(types.DOUBLE)),
            (types.Auto(), types.Function((types.INT,), types.INT), types.Pointer(types.Function((types.INT,), types.INT))),
            (types.INT, types.DOUBLE, types.INT),
        ],
    )
    def test_valid(self, declared, init_type, expected):
        assert deduce_auto(declared, init_type) == expected

    @hy.settings(max_examples=_config.HY_TRIALS)
    @hy.given(fundamental_type(), st.booleans(), st.booleans())
    def test_drops_cv_and_references(self, t, constant, referenced):
        init_type = types.Const(t) if constant else t
        init_type = types.Reference(init_type) if referenced else init_type

        assert deduce_auto(types.Auto(), init_type) == t

    def test_invalid(self):
        with pytest.raises(errors.SemanticError) as err:
            deduce_auto(types.Pointer(types.Auto()), types.INT)

        assert err.value.code == errors.SemanticCodes.DEDUCTION_MISMATCH


class Test_DeduceTrailingReturn:
    @pytest.mark.parametrize(
        "source, expected",
        [
            ("auto f(int a) -> int { return a; }\n", types.INT),
            ("auto f(double a) -> decltype(a) { return a; }\n", types.DOUBLE),
            ("auto f(int a[]) -> decltype(a) { return a; }\n", types.Pointer(types.INT)),
            ("auto f() -> const char * { return 0; }\n", types.Pointer(types.Const(types.CHAR))),
            ("auto f() -> std::vector<int> { return std::vector<int>(); }\n", VECTOR),
        ],
    )
    def test_valid(self, source, expected):
        syntax = parse_source(source, "trailing.cpp")
        function = syntax.nodes(tree.Function)[0]

        assert deduce_trailing_return(function, syntax) == expected

    @pytest.mark.parametrize(
        "source, code",
        [
            ("auto f(int a) -> decltype(a + 1) { return a + 1; }\n", errors.SemanticCodes.UNSUPPORTED_DECLTYPE_OPERAND),
            ("int g;\nauto f() -> decltype(g) { return g; }\n", errors.SemanticCodes.UNSUPPORTED_DECLTYPE_OPERAND),
            ("int f(int a) { return a; }\n", errors.SemanticCodes.UNSUPPORTED_TYPE),
        ],
    )
    def test_invalid(self, source, code):
        syntax = parse_source(source, "trailing.cpp")
        function = syntax.nodes(tree.Function)[0]

        with pytest.raises(errors.SemanticError) as err:
            deduce_trailing_return(function, syntax)

        assert err.value.code == code


class Test_RangeElementType:
    @staticmethod
    def plan(source: str):
        syntax = parse_source(source, "range.cpp")
        loop = syntax.nodes(tree.RangeFor)[0]
        return range_element_type(loop.range, build_scope(syntax))

    def test_array(self):
        plan = self.plan("void f() { int a[4]; for (int x : a) {} }\n")

        assert plan.style == "array"
        assert plan.element == types.Reference(types.INT)
        assert plan.iterator == types.Pointer(types.INT)
        assert plan.begin("a") == "(a)"
        assert plan.end("a") == "(a)+4"

    def test_container(self):
        plan = self.plan("#include <vector>\nvoid f(std::vector<int> &v) { for (int x : v) {} }\n")

        assert plan.style == "member"
        assert plan.iterator == types.Named("iterator", None, VECTOR)
        assert plan.element == types.Reference(types.INT)
        assert plan.begin("v") == "v.begin()"

    def test_const_container(self):
        plan = self.plan("#include <vector>\nvoid f(const std::vector<int> &v) { for (int x : v) {} }\n")

        assert plan.iterator == types.Named("const_iterator", None, VECTOR)
        assert plan.element == types.Reference(types.Const(types.INT))

    def test_map(self):
        plan = self.plan("#include <map>\nvoid f(std::map<int, double> &m) { for (auto &kv : m) {} }\n")

        assert plan.element == types.Reference(types.Named("std::pair", (types.Const(types.INT), types.DOUBLE)))

    def test_member_functions(self):
        plan = self.plan("struct R { int *begin(); int *end(); };\nvoid f(R &r) { for (int x : r) {} }\n")

        assert plan.style == "member"
        assert plan.iterator == types.Pointer(types.INT)

    def test_free_functions(self):
        plan = self.plan("struct B { int v[2]; };\nint *begin(B &b);\nint *end(B &b);\nvoid f(B &b) { for (int x : b) {} }\n")

        assert plan.style == "free"
        assert plan.begin("b") == "begin(b)"

    @pytest.mark.parametrize(
        "source",
        [
            "void f() { int n = 3; for (int x : n) {} }\n",
            "void f(int a[]) { for (int x : a) {} }\n",
            "void f() { for (int x : missing) {} }\n",
        ],
    )
    def test_invalid(self, source):
        with pytest.raises(errors.SemanticError) as err:
            self.plan(source)

        assert err.value.code == errors.SemanticCodes.NO_RANGE_PROTOCOL

    def test_invalid_names_expression(self):
        with pytest.raises(errors.SemanticError) as err:
            self.plan("void f(int n) { for (int x : n + 1) {} }\n")

        assert err.value.detail == "n+1"


class Test_Render:
    @pytest.mark.parametrize(
        "t, name, expected",
        [
            (types.Pointer(types.Function((types.INT,), types.INT)), "fp", "int (*fp)(int)"),
            (types.Reference(types.Array(types.INT, "3")), "r", "int (&r)[3]"),
            (types.Pointer(types.Const(types.CHAR)), "s", "const char *s"),
            (types.Const(types.Pointer(types.CHAR)), "s", "char *const s"),
            (types.Named("std::map", (types.INT, VECTOR)), "", "std::map<int, std::vector<int> >"),
            (types.Named("iterator", None, VECTOR), "it", "std::vector<int>::iterator it"),
        ],
    )
    def test_valid(self, t, name, expected):
        assert render(t, name) == expected

    @pytest.mark.parametrize(
        "text",
        ["int", "const char *", "std::vector<int>", "unsigned long", "std::map<int, std::vector<int> >", "int (*)(int)"],
    )
    def test_parse_render(self, text):
        assert render(parse_type(text)) == text
