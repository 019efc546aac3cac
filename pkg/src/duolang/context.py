"""One composed runtime: both interpreters, shared namespaces, output sinks."""
from __future__ import annotations

import contextlib
import contextvars
import io
import sys
from pathlib import Path

from duolang import embed, xcall
from duolang.exc import (PHP_EXCEPTIONS, ScriptError, ScriptSyntaxError, TraceEntry, describe,
                         render_trace)
from duolang.miniphp.builtins import CONSTANTS, builtin_functions
from duolang.miniphp.interp import ExitProgram, PhpInterp
from duolang.miniphp.parser import parse_php
from duolang.minipy.builtins import builtin_namespace
from duolang.minipy.interp import PyInterp
from duolang.minipy.parser import parse_py
from duolang.scope import PhpGlobals
from duolang.values import Lang, PhpBuiltin

_CURRENT: contextvars.ContextVar["Context | None"] = contextvars.ContextVar(
    "duolang_context", default=None)

RECURSION_LIMIT = 20000
if sys.getrecursionlimit() < RECURSION_LIMIT:
    sys.setrecursionlimit(RECURSION_LIMIT)


def current_context() -> "Context":
    ctx = _CURRENT.get()
    if ctx is None:
        raise RuntimeError("no duolang context is active")
    return ctx


class Context:
    """Everything one program run shares between the two interpreters.

    ``out`` receives program output and ``err`` receives rendered uncaught
    errors; both default to in-memory buffers.
    """

    def __init__(self, out=None, err=None, seed: int = 0):
        self.out = io.StringIO() if out is None else out
        self.err = io.StringIO() if err is None else err
        self.write = self.out.write
        self.stack: list = []
        self.delayed: list = []
        self.cache = embed.CompileCache()
        self.rng = xcall.Lcg(seed)
        self.modules: dict = {}

        g = self.php_globals = PhpGlobals()
        g.functions.update(builtin_functions())
        for table in (xcall.PHP_BUILTINS, embed.PHP_BUILTINS):
            for name, fn in table.items():
                g.functions[name.lower()] = PhpBuiltin(name, fn)
        g.constants.update(CONSTANTS)
        for cls in PHP_EXCEPTIONS.values():
            g.classes[cls.name.lower()] = cls

        self.py_globals: dict = {}
        self.py_builtins = builtin_namespace()
        self.php = PhpInterp(self)
        self.py = PyInterp(self)

    # -- activation ------------------------------------------------------------

    def _enter(self):
        return _CURRENT.set(self)

    def _leave(self, token) -> None:
        _CURRENT.reset(token)

    @contextlib.contextmanager
    def activate(self):
        """Make this the current context while calling into the interpreters directly."""
        token = self._enter()
        try:
            yield self
        finally:
            self._leave(token)

    def output(self) -> str:
        return self.out.getvalue() if isinstance(self.out, io.StringIO) else ""

    # -- execution; errors propagate ---------------------------------------------

    def exec_php(self, src: str, file: str = "<php>", line: int = 0):
        prog = parse_php(src, file, line)
        token = self._enter()
        try:
            self.php.run_program(prog)
        finally:
            self._leave(token)

    def exec_py(self, src: str, file: str = "<py>", line: int = 0) -> dict:
        mod = parse_py(src, file, line)
        token = self._enter()
        try:
            return self.py.run_module(mod)
        finally:
            self._leave(token)

    def exec_source(self, src: str, file: str, lang: Lang | None = None):
        """Run composed source; box markers are exported to raw source first."""
        from duolang import boxexport
        lang = lang or detect_language(src, file)
        if boxexport.has_boxes(src):
            src = boxexport.export_source(src, file, lang)
        if lang is Lang.PY:
            return self.exec_py(src, file)
        return self.exec_php(src, file)

    # -- execution; errors reported ----------------------------------------------

    def run(self, src: str, file: str, lang: Lang | None = None) -> int:
        """Run a program as the command line does and return its exit status."""
        try:
            self.exec_source(src, file, lang)
        except ExitProgram as e:
            return e.status
        except ScriptSyntaxError as e:
            self.err.write(f"SyntaxError: {e.message}\n#0 {e.file}:{e.line}\n")
            return 255
        except ScriptError as e:
            self.report(e)
            return 1
        except RecursionError:
            self.err.write("Fatal error: maximum call depth exceeded\n")
            self.stack.clear()
            return 1
        return 0

    def report(self, e: ScriptError) -> None:
        self.err.write(f"Uncaught {describe(e.value)}\n")
        self.err.write(render_trace(e.trace or []))

    def run_file(self, path, lang: Lang | None = None) -> int:
        path = Path(path)
        return self.run(path.read_text(), str(path), lang)


def detect_language(src: str, file: str) -> Lang:
    """``.py`` files are Python; everything else is PHP."""
    if file.endswith(".py"):
        return Lang.PY
    return Lang.PHP


def run_php(src: str, file: str = "<php>") -> str:
    """Run PHP source in a fresh context and return its output."""
    ctx = Context()
    ctx.exec_php(src, file)
    return ctx.output()


def run_py(src: str, file: str = "<py>") -> str:
    ctx = Context()
    ctx.exec_py(src, file)
    return ctx.output()


def trace_of(e: ScriptError) -> list[TraceEntry]:
    return list(e.trace or [])
