"""Heuristic extraction of function-definition names from C/C++ sources.

This is a lexical scan, not a parser: comments and string/char literals are
blanked out, then any identifier that directly precedes a parenthesis group
at nesting depth 0 whose closing `)` is followed by `{` is taken as a
function definition. Call sites fail the `{` check, declarations end in `;`.
K&R-style definitions and macro-generated functions are known misses.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path

# Reserved words are not identifiers; they also legitimately precede '('.
_KEYWORDS = frozenset(
    """if else for while do switch return sizeof goto case default
    break continue typedef new delete throw catch try using namespace
    alignof typeof decltype noexcept static_assert defined _Alignof
    _Generic _Static_assert""".split()
)


@dataclass(frozen=True)
class HarvestedName:
    name: str
    file: str
    line: int


def strip_comments_and_literals(text: str) -> str:
    """Blank comments and string/char literal bodies, preserving newlines."""
    out = list(text)
    i, n = 0, len(text)
    CODE, LINE, BLOCK, STR, CHAR = range(5)
    state = CODE
    while i < n:
        c = text[i]
        nxt = text[i + 1] if i + 1 < n else ""
        if state == CODE:
            if c == "/" and nxt == "/":
                state = LINE
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if c == "/" and nxt == "*":
                state = BLOCK
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if c == '"':
                state = STR
            elif c == "'":
                state = CHAR
            i += 1
            continue
        if state == LINE:
            if c == "\\" and nxt == "\n":
                out[i] = " "
                i += 2
                continue
            if c == "\n":
                state = CODE
            else:
                out[i] = " "
            i += 1
            continue
        if state == BLOCK:
            if c == "*" and nxt == "/":
                state = CODE
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if c != "\n":
                out[i] = " "
            i += 1
            continue
        # STR or CHAR: blank the contents, keep the delimiters visible.
        quote = '"' if state == STR else "'"
        if c == "\\" and nxt:
            out[i] = " "
            if nxt != "\n":
                out[i + 1] = " "
            i += 2
            continue
        if c == quote:
            state = CODE
        elif c != "\n":
            out[i] = " "
        i += 1
    return "".join(out)


def _is_ident_char(c: str) -> bool:
    return c == "_" or "a" <= c <= "z" or "A" <= c <= "Z" or "0" <= c <= "9"


def _identifier_before(text: str, index: int) -> tuple[str, int]:
    """Identifier immediately preceding text[index], and its start offset."""
    j = index - 1
    while j >= 0 and text[j] in " \t\n\r":
        j -= 1
    end = j + 1
    while j >= 0 and _is_ident_char(text[j]):
        j -= 1
    name = text[j + 1 : end]
    if not name or name[0].isdigit():
        return "", -1
    return name, j + 1


def _matching_paren(text: str, open_index: int) -> int:
    depth = 1
    i = open_index + 1
    while i < len(text):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
        i += 1
    return -1


def harvest_text(text: str, file_label: str) -> list[HarvestedName]:
    code = strip_comments_and_literals(text)
    newline_offsets = [i for i, c in enumerate(code) if c == "\n"]
    found: list[HarvestedName] = []
    depth = 0
    i = 0
    n = len(code)
    while i < n:
        c = code[i]
        if c == "(":
            if depth == 0:
                name, start = _identifier_before(code, i)
                close = _matching_paren(code, i)
                if name and name not in _KEYWORDS and close != -1:
                    k = close + 1
                    while k < n and code[k] in " \t\n\r":
                        k += 1
                    if k < n and code[k] == "{":
                        line = bisect_right(newline_offsets, start) + 1
                        found.append(HarvestedName(name=name, file=file_label, line=line))
            depth += 1
        elif c == ")":
            depth = max(0, depth - 1)
        i += 1
    return found


def harvest(paths: list[str | Path]) -> tuple[list[HarvestedName], list[str]]:
    """Scan files and return (names ordered by (file, line), warnings).

    Unreadable files are skipped; one warning string per skipped file.
    """
    names: list[HarvestedName] = []
    warnings: list[str] = []
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            warnings.append(f"skipped {path}: {exc}")
            continue
        names.extend(harvest_text(text, str(path)))
    names.sort(key=lambda h: (h.file, h.line, h.name))
    return names, warnings
