"""
Tokenizer for problem files

Problem files are line oriented: every declaration sits on one line and
'#' starts a comment. Tokens carry 1-based line and column numbers so every
diagnostic can point at its source.
"""

import re
from typing import Iterator, List, NamedTuple, Union

from utils.exceptions import LexicalError

TOKEN_PATTERNS = {
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "int": r"\d+",
    "lbracket": r"\[",
    "rbracket": r"\]",
    "lpar": r"\(",
    "rpar": r"\)",
    "comma": r",",
    "semi": r";",
    "equal": r"=",
    "star": r"\*",
    "caret": r"\^",
    "plus": r"\+",
    "minus": r"-",
    "skip": r"[ \t\r]+",
    "comment": r"#.*",
    "error": r".",
}

_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKEN_PATTERNS.items()))


class Token(NamedTuple):
    kind: str
    value: Union[str, int]
    line: int
    column: int


def tokenize_line(text: str, line: int) -> Iterator[Token]:
    for mo in _REGEX.finditer(text):
        kind = str(mo.lastgroup)
        value = mo.group()
        column = mo.start() + 1
        if kind in ("skip", "comment"):
            continue
        if kind == "error":
            raise LexicalError(f"unexpected character {value!r}", line, column)
        if kind == "int":
            yield Token(kind, int(value), line, column)
        else:
            yield Token(kind, value, line, column)


def tokenize(text: str) -> List[List[Token]]:
    """
    Split text into nonempty token lines.

    Raises:
        LexicalError: On a character that starts no token
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = list(tokenize_line(raw, number))
        if tokens:
            lines.append(tokens)
    return lines
