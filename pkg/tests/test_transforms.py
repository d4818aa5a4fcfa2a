"""
``test_transforms`` tests the ``retrofit.transforms`` module.
"""


import pytest

from retrofit.files.cpp import apply_edits
from retrofit.files.cpp import parse_source
from retrofit.files.cpp import tokenize
from retrofit.files.utils.types import Feature
from retrofit.semantics import build_scope
from retrofit.transforms import PhaseContext
from retrofit.transforms import find_features
from retrofit.transforms import inline_delegation
from retrofit.transforms import lower_range_for
from retrofit.transforms import rewrite_type_alias
from retrofit.transforms import run_phases
from retrofit.transforms import strip_attributes
from retrofit.transforms import strip_final_override
from retrofit.transforms import transform_auto
from retrofit.transforms import transform_lambda
from retrofit.transforms import transform_member_init


EVERY_FEATURE = """
#include <vector>
using Int = int;
[[noreturn]] void stop();
struct Base { virtual void f(); };
struct Leaf final : Base {
  int n = 0;
  Leaf() : Leaf(1) {}
  Leaf(int v) : n(v) {}
  void f() override {}
};
void g(std::vector<int> &v) {
  auto k = 1;
  for (int x : v) {}
  auto h = [](int y) { return y; };
}
"""


def significant(text: str) -> list[str]:
    return [token.text for token in tokenize(text) if not token.is_trivia]


def apply(transform, source: str):
    syntax = parse_source(source, "pass.cpp")
    result = transform(syntax, build_scope(syntax))
    text, _ = apply_edits(syntax.text, result.edits)
    return (text, result)


def same(text: str, expected: str) -> bool:
    return significant(text) == significant(expected)


class Test_FindFeatures:
    def test_valid(self):
        features = find_features(parse_source(EVERY_FEATURE, "every.cpp"))

        assert set(features) == set(Feature)
        assert list(features) == list(Feature)

    def test_none(self):
        features = find_features(parse_source("typedef int Int;\nint f(int x) { return x; }\n"))

        assert not features
        assert str(features) == "{}"

    def test_template_aliases(self):
        syntax = parse_source("Vec<int> v;\n", "uses.cpp", known_templates={"Vec"})

        assert Feature.TYPE_ALIAS not in find_features(syntax)
        assert Feature.TYPE_ALIAS in find_features(syntax, {"Vec"})

    def test_offsets(self):
        features = find_features(parse_source("int a;\nauto b = a;\nauto c = b;\n"))

        assert features.offsets[Feature.AUTO] == [7, 19]

    def test_inactive(self):
        features = find_features(parse_source("#if 0\nauto x = 1;\n#endif\nint y;\n"))

        assert Feature.AUTO not in features


class Test_MemberInit:
    def test_valid(self):
        text, result = apply(transform_member_init, "class A {\n  int a = 3;\npublic:\n  A() {}\n  A(int v) : a(v) {}\n};\n")

        assert same(text, "class A {\n  int a;\npublic:\n  A() : a(3) {}\n  A(int v) : a(v) {}\n};\n")
        assert not result.warnings

    def test_generated(self):
        text, _ = apply(transform_member_init, "struct B {\n  double b = 3.5;\n  bool c = true;\n};\n")

        assert same(text, "struct B {\n  double b;\n  bool c;\n  public: B() : b(3.5), c(true) {}\n};\n")

    def test_template(self):
        text, result = apply(transform_member_init, "template<class T> struct C { T t = T(); };\n")

        assert text == "template<class T> struct C { T t = T(); };\n"
        assert len(result.warnings) == 1
        assert "Template `C` not transformed" in result.warnings[0].reason


class Test_Auto:
    @pytest.mark.parametrize(
        "source, expected",
        [
            ("int f() { auto x = 1; return x; }\n", "int f() { int x = 1; return x; }\n"),
            ("void f(int a) { const auto &r = a; }\n", "void f(int a) { const int &r = a; }\n"),
            ("void f() { static auto s = 2.5; }\n", "void f() { static double s = 2.5; }\n"),
            ("auto f(int a) -> int { return a; }\n", "int f(int a) { return a; }\n"),
            ("void f() { auto p = new auto(1); }\n", "void f() { int *p = new int(1); }\n"),
            ("int g(int); void f() { auto h = g; }\n", "int g(int); void f() { int (*h)(int) = g; }\n"),
        ],
    )
    def test_valid(self, source, expected):
        text, result = apply(transform_auto, source)

        assert same(text, expected)
        assert not result.warnings

    @pytest.mark.parametrize(
        "source",
        [
            "template<class T> void f(T t) { auto u = t; }\n",
            "template<class T> auto g(T& r) -> decltype(r) { return r; }\n",
            "void f() { auto x{1}; }\n",
            "void f() { auto a = 1, b = 2.0; }\n",
            "void f() { auto m = missing(); }\n",
        ],
    )
    def test_skipped(self, source):
        text, result = apply(transform_auto, source)

        assert text == source
        assert len(result.warnings) == 1


class Test_Lambda:
    def test_valid(self):
        text, result = apply(transform_lambda, "int f(int base) {\n  auto g = [base](int x) { return base + x; };\n  return g(1);\n}\n")

        assert same(
            text,
            "int f(int base) {\n"
            "  class LambdaFunctor__2_1{\n"
            "    int base;\n"
            "  public:\n"
            "    LambdaFunctor__2_1(int base) : base(base) {}\n"
            "    int operator()(int x){ return base + x; }\n"
            "  };\n"
            "  auto g = (LambdaFunctor__2_1(base));\n"
            "  return g(1);\n"
            "}\n",
        )
        assert not result.warnings

    def test_innermost_first(self):
        text, _ = apply(transform_lambda, "void f() {\n  auto a = [](int x) { auto b = [](int y) { return y; }; };\n}\n")

        assert text.count("class LambdaFunctor__") == 1
        assert "[](int x)" in text

    def test_called_without_captures(self):
        source = "int f(int n) {\n  if ([](int v) { return v > 0; }(n))\n    return 1;\n  return 0;\n}\n"
        text, _ = apply(transform_lambda, source)

        assert "if (LambdaFunctor__2_1()(n))" in text
        assert "(LambdaFunctor__2_1())" not in text

    @pytest.mark.parametrize(
        "source, reason",
        [
            ("struct S { int v; void f() { auto g = [this]() { return v; }; } };\n", "Unsupported lambda capture `this`"),
            ("int glob;\nvoid f() { auto g = [glob]() { return glob; }; }\n", "Unsupported lambda capture `glob`"),
            ("void f(int (*p)() = []() { return 1; }) {}\n", "Unsupported lambda context"),
            ("struct S { S() : v([]() { return 1; }()) {} int v; };\n", "Unsupported lambda context"),
        ],
    )
    def test_skipped(self, source, reason):
        text, result = apply(transform_lambda, source)

        assert text == source
        assert reason in result.warnings[0].reason


class Test_Modifiers:
    def test_attributes(self):
        text, result = apply(strip_attributes, "[[noreturn]]\nvoid f();\nint g [[gnu::unused]];\n")

        assert text == "void f();\nint g;\n"
        assert all(edit.feature == Feature.ATTRIBUTE for edit in result.edits)

    def test_final_override(self):
        text, _ = apply(strip_final_override, "struct A final : B { void f() const override; void g() final {} };\n")

        assert text == "struct A : B { void f() const; void g() {} };\n"

    def test_identifiers_kept(self):
        source = "int final = 1;\nint override(int final) { return final; }\n"
        text, result = apply(strip_final_override, source)

        assert text == source
        assert not result.edits

    def test_classes_named_final(self):
        source = "struct final {};\nstruct override {};\nfinal f;\noverride o;\n"
        text, result = apply(strip_final_override, source)

        assert text == source
        assert not result.edits


class Test_RangeFor:
    def test_array(self):
        text, _ = apply(lower_range_for, "void f() {\n  int a[3];\n  for (int x : a) {\n    g(x);\n  }\n}\n")

        assert same(
            text,
            "void f() {\n  int a[3];\n  int *__begin1 = (a);\n  int *__end1 = (a)+3;\n"
            "  for (;__begin1 != __end1; ++__begin1) {\n    int x = *__begin1;\n    g(x);\n  }\n}\n",
        )

    def test_range_expression(self):
        text, _ = apply(lower_range_for, "#include <vector>\nstd::vector<int> make();\nvoid f() {\n  for (auto x : make()) {}\n}\n")

        assert "std::vector<int> __range1 = make();" in text
        assert "std::vector<int>::iterator __begin1 = __range1.begin();" in text
        assert "int x = *__begin1;" in text

    def test_numbering(self):
        text, _ = apply(lower_range_for, "void f() {\n  int a[2];\n  for (int x : a) {}\n  for (int y : a) {}\n}\n")

        assert "__begin1" in text and "__begin2" in text

    def test_skipped(self):
        source = "void f() {\n  int n = 2;\n  for (int x : n) {}\n}\n"
        text, result = apply(lower_range_for, source)

        assert text == source
        assert "No begin/end for range `n`" in result.warnings[0].reason


class Test_Delegation:
    def test_valid(self):
        text, _ = apply(inline_delegation, "struct A {\n  int a;\n  A(int x) : a(x) { a++; }\n  A() : A(4) {}\n};\n")

        assert "A() : a(4) {" in text
        assert "{ a++; }" in text
        assert "A(4)" not in text

    def test_cycle(self):
        _, result = apply(inline_delegation, "struct A {\n  A() : A(1) {}\n  A(int) : A() {}\n};\n")

        assert result.untransformable
        assert "delegation cycle" in result.errors[0]


class Test_TypeAlias:
    def test_valid(self):
        text, _ = apply(rewrite_type_alias, "using ul = unsigned long;\nusing fp = int (*)(int);\n")

        assert same(text, "typedef unsigned long ul;\ntypedef int (*fp)(int);\n")

    def test_template(self):
        text, _ = apply(rewrite_type_alias, "template<class T> using Vec = std::vector<T>;\nVec<int> v;\n")

        assert same(text, "template<class T> struct Vec { typedef std::vector<T> type; };\nVec<int>::type v;\n")

    def test_imported(self):
        syntax = parse_source("Vec<int> v;\n", "uses.cpp", known_templates={"Vec"})
        result = rewrite_type_alias(syntax, None, {"Vec"})

        assert apply_edits(syntax.text, result.edits)[0] == "Vec<int>::type v;\n"

    def test_dependent(self):
        source = "template<class T> using Vec = std::vector<T>;\ntemplate<class T> void f(Vec<T> v) {}\n"
        text, result = apply(rewrite_type_alias, source)

        assert text == source
        assert "Unsupported use of alias `Vec`" in result.warnings[0].reason


class Test_RunPhases:
    def test_gating(self):
        run = run_phases(parse_source("int f() { auto x = 1; return x; }\n", "gated.cpp"))

        assert [phase.name for phase in run.phases] == ["FeatureFinder", "ReplaceLambda", "MultipleTransforms", "RemoveAutoDelegation", "SyntaxCheck"]
        assert [phase.executed for phase in run.phases] == [True, False, False, True, True]
        passes = {record.name: record for record in run.phase("RemoveAutoDelegation").passes}
        assert passes["transform_auto"].executed and passes["transform_auto"].edits == 1
        assert not passes["inline_delegation"].executed
        assert not any(record.executed for record in run.phase("MultipleTransforms").passes)
        assert run.features.flags == {Feature.AUTO}
        assert not run.failed

    def test_plain(self):
        source = "int f(int x) { return x; }\n"
        run = run_phases(parse_source(source, "plain.cpp"))

        assert run.text == source
        assert run.edits == 0
        assert run.maps == []
        assert not run.failed

    def test_every_feature(self):
        run = run_phases(parse_source(EVERY_FEATURE, "every.cpp"))

        assert not run.failed, run.errors
        assert not run.warnings
        assert not find_features(parse_source(run.text))
        assert len(run.maps) >= 3

    def test_skips(self):
        source = "template<class T> void f(T t) { auto u = t; }\n"
        run = run_phases(parse_source(source, "skips.cpp"))

        assert not run.failed
        assert run.text == source
        assert [diagnostic.code for diagnostic in run.diagnostics] == ["auto-remains"]
        assert len(run.warnings) == 1

    def test_untransformable(self):
        run = run_phases(parse_source("struct A {\n  A() : A(1) {}\n  A(int) : A() {}\n};\n", "cycle.cpp"))

        assert run.failed
        assert not run.phase("SyntaxCheck").executed
        assert "delegation cycle" in run.errors[0]

    def test_context(self):
        context = PhaseContext(known_templates=frozenset({"Vec"}), template_aliases=frozenset({"Vec"}))
        syntax = parse_source("Vec<int> v;\n", "context.cpp", known_templates={"Vec"})
        run = run_phases(syntax, context=context)

        assert run.text == "Vec<int>::type v;\n"
        assert not run.failed
