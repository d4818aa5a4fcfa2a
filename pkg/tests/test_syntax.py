"""
``test_syntax`` tests the ``retrofit.files.cpp`` module.
"""


import pytest
import hypothesis as hy
import hypothesis.strategies as st

import _config
from retrofit.files.cpp import Edit
from retrofit.files.cpp import Lexer
from retrofit.files.cpp import Segment
from retrofit.files.cpp import tree
from retrofit.files.cpp import tokenize
from retrofit.files.cpp import parse_source
from retrofit.files.cpp import apply_edits
from retrofit.files.cpp import check_syntax
from retrofit.files.utils import errors
from retrofit.files.utils.types import Feature
from retrofit.files.utils.types import TokenKind


@st.composite
def cpp_fragment(draw):
    pieces = draw(
        st.lists(
            st.sampled_from(
                [
                    "int",
                    " ",
                    "\n",
                    "\t",
                    "x",
                    "_name2",
                    "42",
                    "3.5e+2f",
                    "'c'",
                    '"str\\"ing"',
                    'R"(raw)"',
                    "// note\n",
                    "/* block */",
                    "#include <vector>\n",
                    "::",
                    "->",
                    ">>",
                    "{",
                    "}",
                    "(",
                    ")",
                    ";",
                    "[[",
                    "]]",
                    "[",
                    "]",
                    "@",
                    "auto",
                ]
            )
        )
    )
    return "".join(pieces)


class Test_Tokenize:
    @hy.settings(max_examples=_config.HY_TRIALS)
    @hy.given(cpp_fragment())
    def test_fragments_concatenate(self, source):
        tokens = tokenize(source, "fragment.cpp")

        assert "".join(token.text for token in tokens) == source

    @hy.settings(max_examples=_config.HY_TRIALS)
    @hy.given(st.text(alphabet=st.characters(max_codepoint=255)))
    def test_text_concatenates(self, source):
        tokens = tokenize(source)

        assert "".join(token.text for token in tokens) == source

    def test_bytes(self):
        tokens = tokenize(b"int caf\xe9;\n")

        assert "".join(token.text for token in tokens).encode("latin-1") == b"int caf\xe9;\n"

    def test_kinds(self):
        tokens = tokenize("#include <map>\nint x = 1; // one\n", "kinds.cpp")
        kinds = [token.kind for token in tokens if not token.is_trivia]

        assert kinds == [
            TokenKind.PREPROCESSOR,
            TokenKind.KEYWORD,
            TokenKind.IDENTIFIER,
            TokenKind.PUNCTUATOR,
            TokenKind.LITERAL,
            TokenKind.PUNCTUATOR,
        ]
        assert tokens[-2].kind == TokenKind.COMMENT

    def test_locations(self):
        tokens = [token for token in tokenize("int a;\n  int b;\n", "lines.cpp") if not token.is_trivia]

        assert [(token.start.line, token.start.column) for token in tokens] == [(1, 1), (1, 5), (1, 6), (2, 3), (2, 7), (2, 8)]
        assert tokens[3].start.offset == 9
        assert tokens[3].start.file_id == "lines.cpp"

    def test_split_closing_angles(self):
        texts = [token.text for token in tokenize("std::vector<std::vector<int>> v;") if not token.is_trivia]

        assert texts.count(">") == 2

    def test_attribute_brackets(self):
        texts = [token.text for token in tokenize("[[noreturn]] void f(); int g(int *a) { return a[a[0]]; }") if not token.is_trivia]

        assert texts[0] == "[["
        assert texts[2] == "]]"
        assert "[[" not in texts[3:]

    @pytest.mark.parametrize(
        "source, code",
        [
            ('const char *s = "open;\n', errors.CppSyntaxCodes.UNTERMINATED_STRING),
            ("int x; /* never closed\n", errors.CppSyntaxCodes.UNTERMINATED_COMMENT),
            ('auto s = R"x(raw\n', errors.CppSyntaxCodes.UNTERMINATED_STRING),
        ],
    )
    def test_unterminated(self, source, code):
        lexer = Lexer(source, "broken.cpp")
        tokens = lexer.tokenize()

        assert "".join(token.text for token in tokens) == source
        assert [err.code for err in lexer.errors] == [code]


class Test_Parse:
    def test_valid(self):
        syntax = parse_source(
            "namespace n {\n"
            "class A {\n"
            "  int a = 1;\n"
            "public:\n"
            "  A() : A(2) {}\n"
            "  A(int v) : a(v) {}\n"
            "};\n"
            "}\n"
            "using Int = int;\n"
            "void f(int *xs) {\n"
            "  for (int x : xs_array) {}\n"
            "  auto g = [&](int y) { return y; };\n"
            "}\n",
            "valid.cpp",
        )

        assert syntax.path == "valid.cpp"
        assert len(syntax.nodes(tree.Namespace)) == 1
        assert [node.name for node in syntax.nodes(tree.Class)] == ["A"]
        assert len(syntax.nodes(tree.UsingAlias)) == 1
        assert len(syntax.nodes(tree.RangeFor)) == 1
        assert len(syntax.nodes(tree.Lambda)) == 1
        assert "A" in syntax.known_types

    def test_full_fidelity(self):
        source = "int  main ( )\n{\n  return 0 ; // done\n}\n"
        syntax = parse_source(source, "fidelity.cpp")

        assert syntax.text == source
        assert syntax.to_source() == source

    def test_walk_ancestors(self):
        syntax = parse_source("void f() { int x = 1; }\n")

        for node, ancestors in syntax.walk():
            if isinstance(node, tree.Variable):
                assert isinstance(ancestors[0], tree.TranslationUnit)
                assert any(isinstance(ancestor, tree.Function) for ancestor in ancestors)
                break
        else:
            pytest.fail("variable not found")

    def test_known_types(self):
        syntax = parse_source("Widget w(1);\n", "known.cpp", known_types={"Widget"})

        assert "Widget" in syntax.known_types

    @pytest.mark.parametrize("source", ["void f() {\n  int x;\n", "void f() { }\n}\n", "}\n"])
    def test_invalid(self, source):
        with pytest.raises(errors.CppSyntaxError) as err:
            parse_source(source, "unbalanced.cpp")

        assert err.value.code == errors.CppSyntaxCodes.UNBALANCED_BRACES


class Test_ApplyEdits:
    def test_replacement(self):
        text, segment_map = apply_edits("a\nb\nc\n", [Edit(2, 3, "x\ny", Feature.AUTO)])

        assert text == "a\nx\ny\nc\n"
        assert segment_map.original_lines == 3
        assert segment_map.new_lines == 4
        assert segment_map.segments == [
            Segment("identity", (1, 1), (1, 1)),
            Segment("transformed", (2, 2), (2, 3), Feature.AUTO),
            Segment("identity", (3, 3), (4, 4)),
        ]

    def test_order_independent(self):
        edits = [Edit(6, 7, "B", Feature.AUTO), Edit(0, 1, "A", Feature.AUTO)]

        text, _ = apply_edits("a b c d", edits)

        assert text == "A b c B"

    def test_insertions(self):
        edits = [Edit(0, 0, "x", Feature.LAMBDA), Edit(0, 0, "y", Feature.LAMBDA), Edit(0, 1, "Z", Feature.LAMBDA)]

        text, _ = apply_edits("abc", edits)

        assert text.endswith("Zbc")
        assert sorted(text[:2]) == ["x", "y"]

    def test_empty(self):
        text, segment_map = apply_edits("int x;\nint y;\n", [])

        assert text == "int x;\nint y;\n"
        assert segment_map.segments == [Segment("identity", (1, 2), (1, 2))]

    def test_bytes(self):
        text, _ = apply_edits(b"auto x = 1;\n", [Edit(0, 4, "int", Feature.AUTO)])

        assert text == b"int x = 1;\n"

    def test_deleted_line(self):
        text, segment_map = apply_edits("[[noreturn]]\nvoid f();\n", [Edit(0, 13, "", Feature.ATTRIBUTE)])

        assert text == "void f();\n"
        assert segment_map.new_lines == 1
        assert segment_map.segments[-1] == Segment("identity", (2, 2), (1, 1))

    def test_invalid(self):
        edits = [Edit(0, 5, "a", Feature.AUTO), Edit(3, 8, "b", Feature.AUTO)]

        with pytest.raises(errors.CppSyntaxError) as err:
            apply_edits("0123456789", edits)

        assert err.value.code == errors.CppSyntaxCodes.OVERLAPPING_EDITS


class Test_CheckSyntax:
    def test_valid(self):
        assert check_syntax("typedef int Int;\nclass A { public: A() : x(1) {} int x; };\n", "ok.cpp") == []

    @pytest.mark.parametrize(
        "source, code",
        [
            ("auto x = 1;\n", "auto-remains"),
            ("void f() { int a[2]; for (int x : a) {} }\n", "range-for-remains"),
            ("using Int = int;\n", "type-alias-remains"),
            ("struct A { virtual void f(); };\nstruct B : A { void f() override; };\n", "final-override-remains"),
            ("class C { int c = 0; };\n", "member-init-remains"),
            ("[[noreturn]] void stop();\n", "attribute-remains"),
            ("void f() { int y = [](){ return 1; }(); }\n", "lambda-remains"),
            ("struct D { D() : D(1) {} D(int) {} };\n", "ctor-delegation-remains"),
            ("int x; /* open\n", "lex-error"),
            ("void f() {\n", "unbalanced-braces"),
        ],
    )
    def test_invalid(self, source, code):
        diagnostics = check_syntax(source, "bad.cpp")

        assert code in [diagnostic.code for diagnostic in diagnostics]

    def test_tree_input(self):
        syntax = parse_source("auto a = 1;\nauto b = 2;\n", "tree.cpp")
        diagnostics = check_syntax(syntax)

        assert len(diagnostics) == 1
        assert diagnostics[0].location.line == 1
        assert "2 occurrence(s)" in diagnostics[0].message
        assert str(diagnostics[0]).startswith("tree.cpp:1:")
