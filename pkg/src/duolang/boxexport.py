"""Language boxes in plain text, and their export to raw composed source.

A Python box inside PHP opens with a line ending in ``<%py`` and closes at
a line starting with ``%>``; ``<%py= expr %>`` embeds one Python expression.
``<%php`` / ``<%php= ... %>`` are the PHP-in-Python forms.  Boxes nest.

Exporting replaces every box by a call to one of the ``compile_*`` built-ins
while keeping every physical line where it was, so line numbers reported
at run time are the same before and after export.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from duolang.exc import ScriptSyntaxError
from duolang.values import Lang

_OPEN = re.compile(r"<%(py|php)(=?)")
_CLOSE = "%>"
_MARKER = re.compile(r"<%(?:py|php)|%>")

FILE, FUNCTION, METHOD, EXPRESSION, STATEMENT = (
    "file", "function-box", "method-box", "expression-box", "statement-box")


@dataclass
class Box:
    """A region of one language; ``parts`` mixes raw text and nested boxes."""

    lang: Lang
    kind: str
    line: int
    parts: list = field(default_factory=list)
    inline: bool = False
    owner: str | None = None

    def children(self) -> list["Box"]:
        return [p for p in self.parts if isinstance(p, Box)]

    def walk(self):
        yield self
        for c in self.children():
            yield from c.walk()


def has_boxes(src: str) -> bool:
    return _OPEN.search(src) is not None


# ---------------------------------------------------------------------------
# parsing


class _Reader:
    def __init__(self, src: str, file: str):
        self.src = src
        self.file = file
        self.pos = 0
        self.line = 1

    def error(self, msg: str, line: int | None = None):
        raise ScriptSyntaxError(self.file, self.line if line is None else line, msg)

    def take(self, end: int) -> str:
        s = self.src[self.pos:end]
        self.line += s.count("\n")
        self.pos = end
        return s


def parse_boxes(src: str, file: str = "<boxes>", host: Lang = Lang.PHP) -> Box:
    r = _Reader(src, file)
    root = Box(host, FILE, 1)
    _parse_parts(r, root, top=True)
    _classify(root, file)
    return root


def _parse_parts(r: _Reader, box: Box, top: bool) -> None:
    src = r.src
    while True:
        m = _MARKER.search(src, r.pos)
        if m is None:
            if not top:
                r.error(f"unterminated {box.lang} box opened here", box.line)
            if r.pos < len(src):
                box.parts.append(r.take(len(src)))
            return
        text = src[r.pos:m.start()]
        if box.inline and "\n" in text:
            r.error("expression box spans lines", box.line)
        if text:
            box.parts.append(r.take(m.start()))
        if m.group() == _CLOSE:
            if top:
                r.error("'%>' without an open box")
            if not box.inline:
                start = src.rfind("\n", 0, m.start()) + 1
                if src[start:m.start()].strip():
                    r.error("a block box must be closed by '%>' at the start of a line")
            r.take(m.end())
            return
        om = _OPEN.match(src, m.start())
        lang = Lang.PY if om.group(1) == "py" else Lang.PHP
        if lang is box.lang:
            r.error(f"{lang} box nested directly inside {lang}")
        inline = om.group(2) == "="
        if box.inline and not inline:
            r.error("only expression boxes can nest inside an expression box")
        child = Box(lang, EXPRESSION if inline else STATEMENT, r.line, inline=inline)
        r.take(om.end())
        if not inline:
            eol = src.find("\n", r.pos)
            rest = src[r.pos:eol if eol >= 0 else len(src)]
            if rest.strip():
                r.error(f"text after '<%{om.group(1)}' on the same line")
            r.take(eol + 1 if eol >= 0 else len(src))
        _parse_parts(r, child, top=False)
        box.parts.append(child)


def _classify(box: Box, file: str) -> None:
    """Decide the kind of every block box from its surroundings and content."""
    host_text = []
    for part in box.parts:
        if isinstance(part, str):
            host_text.append(part)
            continue
        if not part.inline:
            if box.lang is Lang.PHP:
                owner = _enclosing_class("".join(host_text))
                if owner is not None:
                    part.kind = METHOD
                    part.owner = owner
                elif _is_single_py_def(_flat(part)):
                    part.kind = FUNCTION
            elif _php_function_name(_flat(part)) is not None:
                part.kind = FUNCTION
        if part.kind == METHOD and not _is_single_py_def(_flat(part)):
            raise ScriptSyntaxError(file, part.line, f"a Python box in the body of class "
                                                     f"{part.owner} must hold exactly one def")
        host_text.append("0" if part.inline else "\n" * _newlines(part))
        _classify(part, file)


def _flat(box: Box) -> str:
    return "".join(p if isinstance(p, str) else ("0" if p.inline else "\n" * _newlines(p))
                   for p in box.parts)


def _newlines(box: Box) -> int:
    """Newlines a block box spans, from its opening line to its closing line."""
    return 1 + sum(p.count("\n") if isinstance(p, str) else _newlines(p) for p in box.parts
                   if isinstance(p, str) or not p.inline)


_PY_TOP = re.compile(r"^(\S.*)$", re.M)


def _is_single_py_def(text: str) -> bool:
    lines = [ln for ln in _PY_TOP.findall(_dedent(text)) if not ln.startswith("#")]
    defs = [ln for ln in lines if ln.startswith("def ")]
    return len(defs) == 1 and all(ln.startswith(("def ", "@")) for ln in lines)


_PHP_FUNC = re.compile(r"\A\s*function\s+&?\s*([A-Za-z_]\w*)\s*\(")


def _php_function_name(text: str) -> str | None:
    """Name of the single top-level PHP function declared by ``text``, if any."""
    m = _PHP_FUNC.match(text)
    if m is None:
        return None
    end = _php_scan(text).first_close_to_zero
    if end is None or text[end + 1:].strip():
        return None
    return m.group(1)


def _dedent(text: str) -> str:
    import textwrap
    return textwrap.dedent(text)


# ---------------------------------------------------------------------------
# a small PHP scanner: braces and class declarations outside strings/comments


@dataclass
class ClassSpan:
    name: str
    parent: str | None
    keyword: int
    close: int | None = None


@dataclass
class _Scan:
    classes: list
    stack: list
    first_close_to_zero: int | None


_CLASS_DECL = re.compile(r"class\s+([A-Za-z_]\w*)(?:\s+extends\s+([A-Za-z_]\w*))?")


def _php_scan(text: str) -> _Scan:
    classes: list[ClassSpan] = []
    stack: list = []
    pending = None
    first_zero = None
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in "'\"":
            i = _skip_string(text, i)
            continue
        if c == "#" or text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            i = n if j < 0 else j + 2
            continue
        if text.startswith("<<<", i):
            i = _skip_heredoc(text, i)
            continue
        if c == "c" and (i == 0 or not (text[i - 1].isalnum() or text[i - 1] in "_$>:")):
            m = _CLASS_DECL.match(text, i)
            if m is not None:
                pending = ClassSpan(m.group(1), m.group(2), i)
                classes.append(pending)
                i = m.end()
                continue
        if c == "{":
            stack.append(pending)
            pending = None
        elif c == "}":
            if stack:
                owner = stack.pop()
                if owner is not None:
                    owner.close = i
                if not stack and first_zero is None:
                    first_zero = i
        i += 1
    return _Scan(classes, stack, first_zero)


def _skip_string(text: str, i: int) -> int:
    q = text[i]
    j = i + 1
    n = len(text)
    while j < n:
        if text[j] == "\\":
            j += 2
            continue
        if text[j] == q:
            return j + 1
        j += 1
    return n


def _skip_heredoc(text: str, i: int) -> int:
    m = re.match(r"<<<\s*(['\"]?)([A-Za-z_]\w*)\1", text[i:])
    if m is None:
        return i + 3
    end = re.compile(r"^\s*" + m.group(2) + r"\b", re.M).search(text, i + m.end())
    return len(text) if end is None else end.end()


def _enclosing_class(text: str) -> str | None:
    stack = _php_scan(text).stack
    if stack and stack[-1] is not None:
        return stack[-1].name
    return None


# ---------------------------------------------------------------------------
# exporting


def quote(s: str, host: Lang) -> str:
    """A double-quoted string literal of ``host`` whose value is ``s``."""
    s = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    if host is Lang.PHP:
        s = s.replace("$", "\\$")
    return '"' + s + '"'


def export(tree: Box, file: str = "<boxes>") -> str:
    return _export_region(tree, file)


def export_source(src: str, file: str = "<boxes>", host: Lang = Lang.PHP) -> str:
    return export(parse_boxes(src, file, host), file)


def _export_region(box: Box, file: str) -> str:
    out: list[str] = []
    methods: list[tuple[str, str]] = []
    for part in box.parts:
        if isinstance(part, str):
            out.append(part)
            continue
        inner = _export_region(part, file)
        if box.lang is Lang.PHP:
            code = _py_in_php(part, inner, file)
        else:
            code = _php_in_py(part, inner, file)
        if part.kind == METHOD:
            methods.append((part.owner, code))
            code = ""
        out.append(code if part.inline else code + "\n" * _newlines(part))
    text = "".join(out)
    if box.lang is Lang.PHP:
        text = _wrap_delayed_classes(text, methods)
    return text


def _py_in_php(box: Box, src: str, file: str) -> str:
    f = quote(file, Lang.PHP)
    if box.kind == EXPRESSION:
        return (f"call_py_func(compile_py_func({quote('f = lambda: ' + src.strip(), Lang.PHP)}, "
                f"{f}, {box.line - 1}), array(), array())")
    if box.kind == FUNCTION:
        return f"compile_py_func_global({quote(src, Lang.PHP)}, {f}, {box.line});"
    if box.kind == METHOD:
        return (f"compile_py_meth({quote(box.owner, Lang.PHP)}, {quote(src, Lang.PHP)}, "
                f"{f}, {box.line});")
    body = "def __box__():\n" + _indent(src)
    return (f"call_py_func(compile_py_func({quote(body, Lang.PHP)}, {f}, {box.line - 1}), "
            f"array(), array());")


def _php_in_py(box: Box, src: str, file: str) -> str:
    f = quote(file, Lang.PY)
    if box.kind == EXPRESSION:
        body = "function f() { return " + src.strip() + "; }"
        return f"compile_php_func({quote(body, Lang.PY)}, {f}, {box.line - 1})()"
    if box.kind == FUNCTION:
        name = _php_function_name(src)
        return f"{name} = compile_php_func({quote(src, Lang.PY)}, {f}, {box.line})"
    body = "function __box__() {\n" + src + "}"
    return f"compile_php_func({quote(body, Lang.PY)}, {f}, {box.line - 1})()"


def _indent(src: str) -> str:
    lines = _dedent(src).split("\n")
    return "\n".join(("    " + ln) if ln.strip() else ln for ln in lines)


def _wrap_delayed_classes(text: str, methods: list[tuple[str, str]]) -> str:
    """Wrap classes receiving Python methods (and their subclasses) in ``{ }``.

    The ``compile_py_meth`` calls go right after the class's closing brace,
    on the same line, so no line moves.
    """
    if not methods:
        return text
    scan = _php_scan(text)
    delayed = {name.lower() for name, _ in methods}
    for span in scan.classes:
        if span.parent is not None and span.parent.lower() in delayed:
            delayed.add(span.name.lower())
    edits: list[tuple[int, str]] = []
    for span in scan.classes:
        if span.name.lower() not in delayed or span.close is None:
            continue
        calls = "".join(" " + code for owner, code in methods
                        if owner.lower() == span.name.lower())
        edits.append((span.keyword, "{ "))
        edits.append((span.close + 1, calls + " }"))
    for pos, s in sorted(edits, key=lambda e: e[0], reverse=True):
        text = text[:pos] + s + text[pos:]
    return text
