"""Tokenizer for the PHP subset."""
from __future__ import annotations

from dataclasses import dataclass

from duolang.exc import ScriptSyntaxError

# longest first
_PUNCT = sorted("""
    <<= >>= **= === !== <=> ... ?? ??=
    -> => :: ++ -- == != <> <= >= && || += -= *= /= .= %= ** << >> &= |= ^=
    + - * / % = < > ! . , ; ( ) [ ] { } ? : & | ^ ~ @
""".split(), key=len, reverse=True)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "v": "\v", "f": "\f", "e": "\x1b",
            "0": "\0", "\\": "\\", "$": "$", '"': '"'}


@dataclass(slots=True)
class Token:
    kind: str   # VAR ID INT FLOAT STR ISTR OP EOF
    value: object
    line: int

    def __repr__(self) -> str:
        return f"{self.kind}({self.value!r})@{self.line}"


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_" or ord(c) > 127


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_" or ord(c) > 127


class PhpLexer:
    def __init__(self, src: str, file: str = "<php>", line_offset: int = 0):
        self.src = src
        self.file = file
        self.pos = 0
        self.line = 1 + line_offset
        self.tokens: list[Token] = []

    def error(self, msg: str, line: int | None = None):
        raise ScriptSyntaxError(self.file, self.line if line is None else line, msg)

    def tokenize(self) -> list[Token]:
        src = self.src
        n = len(src)
        if src.lstrip().startswith("<?php"):
            start = src.index("<?php")
            self.line += src.count("\n", 0, start)
            self.pos = start + 5
        while True:
            self._skip_space_and_comments()
            if self.pos >= n:
                break
            c = src[self.pos]
            line = self.line
            if src.startswith("?>", self.pos):
                self.pos += 2
                self.tokens.append(Token("OP", ";", line))
                continue
            if c == "$" and self.pos + 1 < n and _is_ident_start(src[self.pos + 1]):
                self.pos += 1
                self.tokens.append(Token("VAR", self._ident(), line))
            elif _is_ident_start(c) or c == "\\":
                if c == "\\":
                    self.pos += 1
                self.tokens.append(Token("ID", self._ident(), line))
            elif c.isdigit() or (c == "." and self.pos + 1 < n and src[self.pos + 1].isdigit()):
                self._number()
            elif c == "'":
                self._single_quoted()
            elif c == '"':
                self._double_quoted()
            elif src.startswith("<<<", self.pos):
                self._heredoc()
            else:
                for p in _PUNCT:
                    if src.startswith(p, self.pos):
                        self.pos += len(p)
                        self.tokens.append(Token("OP", p, line))
                        break
                else:
                    self.error(f"unexpected character {c!r}")
        self.tokens.append(Token("EOF", None, self.line))
        return self.tokens

    def _skip_space_and_comments(self) -> None:
        src = self.src
        n = len(src)
        while self.pos < n:
            c = src[self.pos]
            if c == "\n":
                self.line += 1
                self.pos += 1
            elif c in " \t\r\f\v":
                self.pos += 1
            elif c == "#" or src.startswith("//", self.pos):
                while self.pos < n and src[self.pos] != "\n":
                    if src.startswith("?>", self.pos):
                        return
                    self.pos += 1
            elif src.startswith("/*", self.pos):
                end = src.find("*/", self.pos + 2)
                if end < 0:
                    self.error("unterminated comment")
                self.line += src.count("\n", self.pos, end)
                self.pos = end + 2
            else:
                return

    def _ident(self) -> str:
        src = self.src
        start = self.pos
        while self.pos < len(src) and (_is_ident_char(src[self.pos]) or src[self.pos] == "\\"):
            self.pos += 1
        return src[start:self.pos].lstrip("\\")

    def _plain_ident(self) -> str:
        src = self.src
        start = self.pos
        while self.pos < len(src) and _is_ident_char(src[self.pos]):
            self.pos += 1
        return src[start:self.pos]

    def _number(self) -> None:
        src = self.src
        start = self.pos
        line = self.line
        if src.startswith(("0x", "0X"), self.pos):
            self.pos += 2
            while self.pos < len(src) and src[self.pos] in "0123456789abcdefABCDEF_":
                self.pos += 1
            self.tokens.append(Token("INT", int(src[start + 2:self.pos].replace("_", ""), 16), line))
            return
        is_float = False
        while self.pos < len(src) and (src[self.pos].isdigit() or src[self.pos] == "_"):
            self.pos += 1
        if self.pos < len(src) and src[self.pos] == "." and \
                (self.pos + 1 >= len(src) or src[self.pos + 1].isdigit()
                 or not (_is_ident_start(src[self.pos + 1]) or src[self.pos + 1] in "=.")):
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
            self.tokens.append(Token("FLOAT", float(text), line))
        else:
            value = int(text)
            if value > 2 ** 63 - 1:
                self.tokens.append(Token("FLOAT", float(value), line))
            else:
                self.tokens.append(Token("INT", value, line))

    def _single_quoted(self) -> None:
        src = self.src
        line = self.line
        self.pos += 1
        out = []
        while True:
            if self.pos >= len(src):
                self.error("unterminated string", line)
            c = src[self.pos]
            if c == "'":
                self.pos += 1
                break
            if c == "\\" and self.pos + 1 < len(src) and src[self.pos + 1] in "'\\":
                out.append(src[self.pos + 1])
                self.pos += 2
                continue
            if c == "\n":
                self.line += 1
            out.append(c)
            self.pos += 1
        self.tokens.append(Token("STR", "".join(out), line))

    def _double_quoted(self) -> None:
        line = self.line
        self.pos += 1
        parts = self._interpolated(lambda: self.src[self.pos] == '"', quote='"')
        self.pos += 1
        self._emit_interp(parts, line)

    def _emit_interp(self, parts, line) -> None:
        if all(isinstance(p, str) for p in parts):
            self.tokens.append(Token("STR", "".join(parts), line))
        else:
            self.tokens.append(Token("ISTR", parts, line))

    def _interpolated(self, at_end, quote: str | None):
        """Scan an interpolating string body; parts are str or ('var', name)."""
        src = self.src
        parts: list = []
        buf: list[str] = []
        start_line = self.line
        while True:
            if self.pos >= len(src):
                self.error("unterminated string", start_line)
            if at_end():
                break
            c = src[self.pos]
            if c == "\\" and self.pos + 1 < len(src):
                nxt = src[self.pos + 1]
                if nxt in _ESCAPES and (nxt != '"' or quote == '"'):
                    buf.append(_ESCAPES[nxt])
                    self.pos += 2
                    continue
                buf.append(c)
                self.pos += 1
                continue
            if c == "$" and self.pos + 1 < len(src) and _is_ident_start(src[self.pos + 1]):
                self.pos += 1
                name = self._plain_ident()
                if buf:
                    parts.append("".join(buf))
                    buf = []
                parts.append(("var", name))
                continue
            if c == "{" and src.startswith("{$", self.pos):
                end = src.find("}", self.pos)
                inner = src[self.pos + 2:end] if end > 0 else ""
                if end > 0 and inner and all(_is_ident_char(ch) for ch in inner):
                    if buf:
                        parts.append("".join(buf))
                        buf = []
                    parts.append(("var", inner))
                    self.pos = end + 1
                    continue
            if c == "\n":
                self.line += 1
            buf.append(c)
            self.pos += 1
        if buf:
            parts.append("".join(buf))
        return parts

    def _heredoc(self) -> None:
        src = self.src
        line = self.line
        self.pos += 3
        while src[self.pos] in " \t":
            self.pos += 1
        quote = None
        if src[self.pos] in "'\"":
            quote = src[self.pos]
            self.pos += 1
        label = self._ident()
        if not label:
            self.error("invalid heredoc label")
        if quote:
            self.pos += 1
        # tolerate trailing whitespace or a comment on the opener line
        eol = src.find("\n", self.pos)
        if eol < 0:
            self.error("unterminated heredoc", line)
        rest = src[self.pos:eol].strip()
        if rest and not rest.startswith(("//", "#")):
            self.error("unexpected text after heredoc label", line)
        self.pos = eol + 1
        self.line += 1
        body_start = self.pos
        # find closing label: a line whose content starts with the label
        scan = self.pos
        while True:
            if scan > len(src):
                self.error("unterminated heredoc", line)
            nl = src.find("\n", scan)
            line_end = len(src) if nl < 0 else nl
            stripped = src[scan:line_end].lstrip(" \t")
            if stripped.startswith(label) and (len(stripped) == len(label)
                                               or not _is_ident_char(stripped[len(label)])):
                close_at = scan + (line_end - scan - len(stripped))
                break
            if nl < 0:
                self.error("unterminated heredoc", line)
            scan = nl + 1
        body_end = max(body_start, scan - 1)  # drop the final newline
        if quote == "'":
            body = src[body_start:body_end]
            self.line += body.count("\n") + (1 if scan > body_start else 0)
            self.tokens.append(Token("STR", body, line))
        else:
            self.pos = body_start
            parts = self._interpolated(lambda: self.pos >= body_end, quote=None)
            if scan > body_start:
                self.line += 1
            self._emit_interp(parts, line)
        self.pos = close_at + len(label)


def tokenize(src: str, file: str = "<php>", line_offset: int = 0) -> list[Token]:
    return PhpLexer(src, file, line_offset).tokenize()
