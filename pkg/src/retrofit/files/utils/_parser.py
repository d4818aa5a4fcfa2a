"""
``_parser`` contains preprocessor, parser, and postprocessor classes.

Retrofit relies on these classes to prepare token streams for parsing and to
print generated code. ``Preprocessor`` finds directives, inactive ``#if 0``
regions, and attribute sequences; ``Parser`` is the backtracking cursor the
recursive descent parser walks; ``Postprocessor`` reassembles token texts into
generated code.
"""


import re
from typing import Callable

from .types import TokenKind


INCLUDE_PATTERN = re.compile(r'^[ \t]*#[ \t]*include[ \t]*([<"])([^>"\n]+)[>"]', re.MULTILINE)
DIRECTIVE_PATTERN = re.compile(r"#[ \t]*([A-Za-z_]*)[ \t]*(.*)", re.DOTALL)


class Parser:
    """
    ``Parser`` implements an index cursor with retrofit error handling.

    ``Parser`` walks a list without consuming it, so callers can ``mark`` a
    position, attempt a tentative parse, and ``reset`` on failure. Reading
    past the end returns the sentinel rather than raising; ``popl`` and
    ``expect`` raise a fresh error from ``err``.
    """

    def __init__(self, items: list, err: Callable[[], Exception], sentinel=None):
        """
        ``__init__`` initializes ``Parser``.

        Parameters:
            items: Items to walk.
            err: Factory for the exhausted-cursor error.
            sentinel: Item returned when peeking past the end.
        """

        self.items = items
        self.err = err
        self.sentinel = sentinel
        self.index = 0

    def peekl(self, offset: int = 0) -> any:
        """
        ``peekl`` peeks at items ahead of the cursor.

        Parameters:
            offset: Distance from the cursor.

        Returns:
            Item at the cursor plus ``offset``, or the sentinel.
        """

        index = self.index + offset
        if 0 <= index < len(self.items):
            return self.items[index]

        return self.sentinel

    def popl(self) -> any:
        """
        ``popl`` pops the item at the cursor.

        Returns:
            Item at the cursor.

        Raises:
            err: When the cursor is exhausted.
        """

        if not bool(self):
            raise self.err()

        item = self.items[self.index]
        self.index += 1
        return item

    def mark(self) -> int:
        return self.index

    def reset(self, mark: int) -> None:
        self.index = mark

    def __len__(self):
        """
        ``__len__`` calculates the number of items left.

        Returns:
            Items between the cursor and the end.
        """

        return max(len(self.items) - self.index, 0)

    def __bool__(self):
        return self.index < len(self.items)

    def __str__(self):
        return str(self.items[self.index :])


class Preprocessor:
    """
    ``Preprocessor`` encapsulates methods for classifying C++ token streams.

    ``Preprocessor`` provides static methods that find preprocessor
    directives, conditional regions the parser must not interpret, and
    attribute sequences the parser reads as trivia.
    """

    @staticmethod
    def directive(text: str) -> tuple[str, str]:
        """
        ``directive`` splits preprocessor lines into name and argument.

        Parameters:
            text: Preprocessor line text.

        Returns:
            Tuple of directive name and argument text.
        """

        match = DIRECTIVE_PATTERN.match(text)
        if match is None:
            return ("", "")

        argument = re.sub(r"\\\r?\n", " ", match[2])
        argument = re.sub(r"//.*|/\*.*?\*/", " ", argument)
        return (match[1], argument.strip())

    @staticmethod
    def include(text: str) -> tuple[str, str] | None:
        """
        ``include`` reads the target of ``#include`` lines.

        Parameters:
            text: Preprocessor line text.

        Returns:
            Tuple of delimiter (``"`` or ``<``) and header name, or None.
        """

        match = INCLUDE_PATTERN.match(text)
        if match is None:
            return None

        return (match[1], match[2].strip())

    @staticmethod
    def includes(text: str) -> list[tuple[str, str]]:
        """
        ``includes`` finds every ``#include`` line in source text.

        Parameters:
            text: Source text.

        Returns:
            List of tuples of delimiter and header name, in order.
        """

        return [(match[1], match[2].strip()) for match in INCLUDE_PATTERN.finditer(text)]

    @staticmethod
    def _is_disabled(name: str, argument: str) -> bool:
        return name == "if" and argument in ("0", "(0)", "false")

    @staticmethod
    def inactive_regions(tokens: list) -> list[tuple[int, int]]:
        """
        ``inactive_regions`` finds token ranges disabled by ``#if 0``.

        Regions run from the token after ``#if 0`` to the matching ``#else``,
        ``#elif``, or ``#endif`` at the same nesting depth, exclusive.

        Parameters:
            tokens: Full-fidelity token list.

        Returns:
            List of ``(start, stop)`` token index ranges.
        """

        regions = []
        index = 0

        while index < len(tokens):
            token = tokens[index]
            if token.kind != TokenKind.PREPROCESSOR or not Preprocessor._is_disabled(*Preprocessor.directive(token.text)):
                index += 1
                continue

            depth = 0
            start = index + 1
            stop = len(tokens)
            cursor = start

            while cursor < len(tokens):
                inner = tokens[cursor]
                if inner.kind == TokenKind.PREPROCESSOR:
                    name, _ = Preprocessor.directive(inner.text)
                    if name in ("if", "ifdef", "ifndef"):
                        depth += 1
                    elif name == "endif" and depth > 0:
                        depth -= 1
                    elif name in ("else", "elif", "endif") and depth == 0:
                        stop = cursor
                        break
                cursor += 1

            regions.append((start, stop))
            index = stop

        return regions

    @staticmethod
    def attribute_regions(tokens: list) -> list[tuple[int, int]]:
        """
        ``attribute_regions`` finds attribute sequences.

        Parameters:
            tokens: Full-fidelity token list.

        Returns:
            List of ``(start, stop)`` token index ranges from ``[[`` through
            the matching ``]]``.
        """

        regions = []
        start = None

        for index, token in enumerate(tokens):
            if token.kind != TokenKind.PUNCTUATOR:
                continue
            if token.text == "[[" and start is None:
                start = index
            elif token.text == "]]" and start is not None:
                regions.append((start, index + 1))
                start = None

        if start is not None:
            regions.append((start, len(tokens)))

        return regions


class Postprocessor:
    """
    ``Postprocessor`` encapsulates methods for printing generated code.

    ``Postprocessor`` provides static methods that turn token runs back into
    text. Comments inside re-printed spans are dropped.
    """

    @staticmethod
    def join(tokens: list, drop_comments: bool = True) -> str:
        """
        ``join`` concatenates token texts.

        Parameters:
            tokens: Tokens to join.
            drop_comments: Comment dropping setting.

        Returns:
            Joined text, with comments removed and emptied lines collapsed.
        """

        if not drop_comments:
            return "".join(token.text for token in tokens)

        out = []
        for token in tokens:
            if token.kind != TokenKind.COMMENT:
                out.append(token.text)
            elif token.text.startswith("/*"):
                out.append(" ")

        text = "".join(out)
        text = re.sub(r"[ \t]+\n", "\n", text)
        text = re.sub(r"\n{2,}", "\n", text)

        return text

    @staticmethod
    def squeeze(texts: list[str]) -> str:
        """
        ``squeeze`` joins token texts with the minimal spacing C++ needs.

        Parameters:
            texts: Token texts.

        Returns:
            Single-line text.
        """

        out = ""
        for text in texts:
            if out and (out[-1].isalnum() or out[-1] == "_") and (text[0].isalnum() or text[0] == "_"):
                out += " "
            elif out.endswith(">") and text.startswith(">"):
                out += " "
            out += text

        return out

    @staticmethod
    def indentation(line: str) -> str:
        """
        ``indentation`` reads leading whitespace.

        Parameters:
            line: Line of text.

        Returns:
            Leading spaces and tabs.
        """

        return line[: len(line) - len(line.lstrip(" \t"))]

