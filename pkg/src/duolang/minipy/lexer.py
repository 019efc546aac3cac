"""Indentation-aware tokenizer for MiniPy."""
from __future__ import annotations

from dataclasses import dataclass

from duolang.exc import ScriptSyntaxError

_PUNCT = sorted("""
    ** // == != <= >= += -= *= /= //= %= **= -> ( ) [ ] { } , : . ; @ = + - * / % < > ~
""".split(), key=len, reverse=True)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "0": "\0",
            "a": "\a", "b": "\b", "f": "\f", "v": "\v", "\n": ""}

KEYWORDS = frozenset("""
    False None True and as assert break class continue def del elif else except finally
    for from global if import in is lambda nonlocal not or pass raise return try while
""".split())


@dataclass(slots=True)
class Token:
    kind: str  # NAME NUMBER STRING OP KW NEWLINE INDENT DEDENT EOF
    value: object
    line: int

    def __repr__(self) -> str:
        return f"{self.kind}({self.value!r})@{self.line}"


class PyLexer:
    def __init__(self, src: str, file: str = "<py>", line_offset: int = 0):
        self.src = src
        self.file = file
        self.pos = 0
        self.line = 1 + line_offset
        self.tokens: list[Token] = []
        self.indents = [0]
        self.depth = 0  # bracket nesting

    def error(self, msg: str, line: int | None = None):
        raise ScriptSyntaxError(self.file, self.line if line is None else line, msg)

    def tokenize(self) -> list[Token]:
        src = self.src
        n = len(src)
        at_line_start = True
        while self.pos < n:
            if at_line_start and self.depth == 0:
                if self._indentation():
                    continue
                at_line_start = False
            c = src[self.pos]
            line = self.line
            if c == "\n":
                self.pos += 1
                self.line += 1
                if self.depth == 0:
                    self._newline(line)
                    at_line_start = True
                continue
            if c in " \t\r\f":
                self.pos += 1
                continue
            if c == "#":
                while self.pos < n and src[self.pos] != "\n":
                    self.pos += 1
                continue
            if c == "\\" and self.pos + 1 < n and src[self.pos + 1] == "\n":
                self.pos += 2
                self.line += 1
                continue
            if c.isalpha() or c == "_":
                start = self.pos
                while self.pos < n and (src[self.pos].isalnum() or src[self.pos] == "_"):
                    self.pos += 1
                word = src[start:self.pos]
                if self.pos < n and src[self.pos] in "'\"" and word.lower() in ("r", "b", "rb", "br"):
                    self._string(raw="r" in word.lower())
                    continue
                if word.lower() == "f" and self.pos < n and src[self.pos] in "'\"":
                    self.error("f-strings are not supported")
                self.tokens.append(Token("KW" if word in KEYWORDS else "NAME", word, line))
                continue
            if c.isdigit() or (c == "." and self.pos + 1 < n and src[self.pos + 1].isdigit()):
                self._number()
                continue
            if c in "'\"":
                self._string(raw=False)
                continue
            for p in _PUNCT:
                if src.startswith(p, self.pos):
                    self.pos += len(p)
                    if p in "([{":
                        self.depth += 1
                    elif p in ")]}":
                        self.depth = max(0, self.depth - 1)
                    self.tokens.append(Token("OP", p, line))
                    break
            else:
                if c == "!":
                    self.error("invalid syntax '!'")
                self.error(f"unexpected character {c!r}")
        self._newline(self.line)
        while len(self.indents) > 1:
            self.indents.pop()
            self.tokens.append(Token("DEDENT", None, self.line))
        self.tokens.append(Token("EOF", None, self.line))
        return self.tokens

    def _newline(self, line: int) -> None:
        if self.tokens and self.tokens[-1].kind not in ("NEWLINE", "INDENT", "DEDENT"):
            self.tokens.append(Token("NEWLINE", None, line))

    def line_start(self, p: int) -> int:
        return self.src.rfind("\n", 0, p) + 1

    def _indentation(self) -> bool:
        """Measure indentation at a line start; True if the line was blank/comment."""
        src = self.src
        col = 0
        p = self.pos
        while p < len(src) and src[p] in " \t\f":
            col = (col // 8 + 1) * 8 if src[p] == "\t" else col + 1
            p += 1
        if p >= len(src):
            self.pos = p
            return True
        if src[p] in "\n#\r":
            while p < len(src) and src[p] != "\n":
                p += 1
            if p < len(src):
                p += 1
                self.line += 1
            self.pos = p
            return True
        self.pos = p
        if "\t" in src[self.line_start(p):p]:
            self.error("indentation must use spaces, not tabs")
        if col > self.indents[-1]:
            self.indents.append(col)
            self.tokens.append(Token("INDENT", None, self.line))
        else:
            while col < self.indents[-1]:
                self.indents.pop()
                self.tokens.append(Token("DEDENT", None, self.line))
            if col != self.indents[-1]:
                self.error("unindent does not match any outer indentation level")
        return False

    def _number(self) -> None:
        src = self.src
        start = self.pos
        line = self.line
        if src.startswith(("0x", "0X"), self.pos):
            self.pos += 2
            while self.pos < len(src) and (src[self.pos] in "0123456789abcdefABCDEF_"):
                self.pos += 1
            self.tokens.append(Token("NUMBER", int(src[start:self.pos].replace("_", ""), 16), line))
            return
        is_float = False
        while self.pos < len(src) and (src[self.pos].isdigit() or src[self.pos] == "_"):
            self.pos += 1
        if self.pos < len(src) and src[self.pos] == ".":
            is_float = True
            self.pos += 1
            while self.pos < len(src) and src[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(src) and src[self.pos] in "eE":
            j = self.pos + 1
            if j < len(src) and src[j] in "+-":
                j += 1
            if j < len(src) and src[j].isdigit():
                is_float = True
                self.pos = j
                while self.pos < len(src) and src[self.pos].isdigit():
                    self.pos += 1
        text = src[start:self.pos].replace("_", "")
        if is_float:
            value = float(text)
        else:
            value = int(text)
            if value > 2 ** 63 - 1:
                value = float(value)
        self.tokens.append(Token("NUMBER", value, line))

    def _string(self, raw: bool) -> None:
        src = self.src
        line = self.line
        q = src[self.pos]
        triple = src.startswith(q * 3, self.pos)
        self.pos += 3 if triple else 1
        out = []
        while True:
            if self.pos >= len(src):
                self.error("unterminated string literal", line)
            c = src[self.pos]
            if triple and src.startswith(q * 3, self.pos):
                self.pos += 3
                break
            if not triple and c == q:
                self.pos += 1
                break
            if c == "\n":
                if not triple:
                    self.error("unterminated string literal", line)
                self.line += 1
            if c == "\\" and self.pos + 1 < len(src):
                nxt = src[self.pos + 1]
                if raw:
                    out.append(c + nxt)
                    if nxt == "\n":
                        self.line += 1
                    self.pos += 2
                    continue
                if nxt in _ESCAPES:
                    out.append(_ESCAPES[nxt])
                    if nxt == "\n":
                        self.line += 1
                    self.pos += 2
                    continue
                if nxt == "x" and self.pos + 3 < len(src):
                    out.append(chr(int(src[self.pos + 2:self.pos + 4], 16)))
                    self.pos += 4
                    continue
                out.append(c)
                self.pos += 1
                continue
            out.append(c)
            self.pos += 1
        text = "".join(out)
        # adjacent literals concatenate
        if self.tokens and self.tokens[-1].kind == "STRING":
            self.tokens[-1].value += text
        else:
            self.tokens.append(Token("STRING", text, line))


def tokenize(src: str, file: str = "<py>", line_offset: int = 0) -> list[Token]:
    return PyLexer(src, file, line_offset).tokenize()
