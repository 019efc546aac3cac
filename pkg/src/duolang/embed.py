"""Run-time compilation of one language's source from inside the other."""
from __future__ import annotations

import textwrap

from duolang import scope
from duolang.bridge import PhpCallableInPy, PyCallableInPhp, to_php
from duolang.exc import ScriptSyntaxError, php_error, py_error
from duolang.miniphp import ast as PA
from duolang.miniphp.parser import parse_php
from duolang.minipy import ast as YA
from duolang.minipy.parser import parse_py
from duolang.values import Lang, Method, PhpFunction, PyFunction


class CompileCache:
    """Parsed code keyed by (source, language, kind, file, line).

    File and line take part in the key so that identical snippets embedded
    at different places still report their own locations in tracebacks.
    """

    def __init__(self):
        self.entries: dict = {}
        self.hits = 0
        self.misses = 0

    def get(self, key, build):
        code = self.entries.get(key)
        if code is None:
            self.misses += 1
            code = self.entries[key] = build()
        else:
            self.hits += 1
        return code

    def __len__(self) -> int:
        return len(self.entries)


def _single_py_def(mod: YA.Module, file: str):
    body = mod.body
    defs = [s for s in body if isinstance(s, YA.FunctionDef)
            or (isinstance(s, YA.Assign) and isinstance(s.value, YA.Lambda)
                and len(s.targets) == 1 and isinstance(s.targets[0], YA.Name))]
    if len(body) != 1 or len(defs) != 1:
        raise ScriptSyntaxError(file, body[0].line if body else 0,
                                f"embedded Python source must define exactly one function, "
                                f"found {len(defs)} definition(s) in {len(body)} statement(s)")
    return body[0]


def _parse_py_func(ctx, src: str, file: str, line: int, kind: str):
    def build():
        mod = parse_py(textwrap.dedent(src), file, line)
        return mod, _single_py_def(mod, file)
    return ctx.cache.get((src, Lang.PY, kind, file, line), build)


def _def_name(stmt) -> str:
    if isinstance(stmt, YA.FunctionDef):
        return stmt.code.name
    return stmt.targets[0].id


def _calling_frame(ctx):
    return ctx.stack[-1] if ctx.stack else None


def _make_py_function(ctx, src, file, line, kind) -> tuple[str, PyFunction]:
    from duolang.minipy.interp import PyFrame
    try:
        mod, stmt = _parse_py_func(ctx, src, file, line, kind)
    except ScriptSyntaxError as e:
        raise php_error(f"Python syntax error in {e.file} on line {e.line}: {e.message}",
                        "Error") from None
    caller = _calling_frame(ctx)
    link = scope.link_for_frame(caller) if caller is not None else None
    tmp = PyFrame({}, mod.code, ctx.py_globals, None, link, file, line, "<embed>")
    py = ctx.py
    ctx.stack.append(tmp)
    try:
        py.exec_block(mod.body, tmp)
    finally:
        ctx.stack.pop()
    name = _def_name(stmt)
    fn = tmp.locals[name]
    if type(fn) is not PyFunction:
        raise php_error("embedded Python definition did not produce a function", "TypeError")
    return name, fn


def _str_arg(fname, args, i, default=None):
    if i >= len(args):
        if default is None:
            raise php_error(f"{fname}() expects at least {i + 1} arguments, {len(args)} given",
                            "ArgumentCountError")
        return default
    v = args[i]
    if i == 2 or (i == 3 and fname == "compile_py_meth"):
        if type(v) is not int:
            raise php_error(f"{fname}(): line offset must be int", "TypeError")
        return v
    if type(v) is not str:
        raise php_error(f"{fname}(): Argument #{i + 1} must be of type string", "TypeError")
    return v


def compile_py_func(ctx, src: str, file: str = "<embed>", line: int = 0) -> PyFunction:
    return _make_py_function(ctx, src, file, line, "func")[1]


def compile_py_func_global(ctx, src: str, file: str = "<embed>", line: int = 0) -> None:
    name, fn = _make_py_function(ctx, src, file, line, "func")
    if ctx.php_globals.lookup_function(name) is not None:
        raise php_error(f"Cannot redeclare function {name}()")
    ctx.php_globals.add_function(name, PyCallableInPhp(fn))


def compile_py_meth(ctx, classname: str, src: str, file: str = "<embed>",
                    line: int = 0) -> None:
    """Install a Python function as a method of a class in the current ``{}`` block."""
    cls = ctx.php_globals.lookup_class(classname)
    if cls is None:
        raise php_error(f'compile_py_meth(): class "{classname}" not found')
    if not cls.delayed:
        raise php_error(f"compile_py_meth(): class {cls.name} must be declared inside a "
                        f"{{ ... }} block to receive Python methods")
    if cls.sealed:
        raise php_error(f"compile_py_meth(): class {cls.name} is already sealed")
    name, fn = _make_py_function(ctx, src, file, line, "meth")
    from duolang.xcall import decor_meta
    meta = decor_meta(fn)
    key = name.lower()
    if key in cls.methods:
        raise php_error(f"Cannot redeclare {cls.name}::{name}()")
    fn.php_class = cls
    cls.methods[key] = Method(name, fn, meta.access, meta.static, cls)


def compile_php_func(ctx, src: str, file: str = "<embed>", line: int = 0) -> PhpCallableInPy:
    """Compile one PHP function declaration; it sees the calling Python frame."""
    def build():
        prog = parse_php(textwrap.dedent(src), file, line)
        decls = [s for s in prog.body if isinstance(s, PA.FunctionDecl)]
        if len(prog.body) != 1 or len(decls) != 1:
            raise ScriptSyntaxError(file, line, "embedded PHP source must declare exactly "
                                                "one function")
        return decls[0]

    try:
        decl = ctx.cache.get((src, Lang.PHP, "func", file, line), build)
    except ScriptSyntaxError as e:
        raise py_error("RuntimeError", f"PHP syntax error in {e.file} on line {e.line}: "
                                       f"{e.message}") from None
    caller = _calling_frame(ctx)
    link = scope.link_for_frame(caller) if caller is not None else None
    return PhpCallableInPy(PhpFunction(decl, link))


# -- built-in wrappers ---------------------------------------------------------

def _php_compile_py_func(interp, args):
    src = _str_arg("compile_py_func", args, 0)
    file = _str_arg("compile_py_func", args, 1, "<embed>")
    line = _str_arg("compile_py_func", args, 2, 0) if len(args) > 2 else 0
    return to_php(compile_py_func(interp.ctx, src, file, line))


def _php_compile_py_func_global(interp, args):
    src = _str_arg("compile_py_func_global", args, 0)
    file = _str_arg("compile_py_func_global", args, 1, "<embed>")
    line = _str_arg("compile_py_func_global", args, 2, 0) if len(args) > 2 else 0
    compile_py_func_global(interp.ctx, src, file, line)


def _php_compile_py_meth(interp, args):
    classname = _str_arg("compile_py_meth", args, 0)
    src = _str_arg("compile_py_meth", args, 1)
    file = args[2] if len(args) > 2 else "<embed>"
    if type(file) is not str:
        raise php_error("compile_py_meth(): Argument #3 must be of type string", "TypeError")
    line = _str_arg("compile_py_meth", args, 3, 0) if len(args) > 3 else 0
    compile_py_meth(interp.ctx, classname, src, file, line)


PHP_BUILTINS = {
    "compile_py_func": _php_compile_py_func,
    "compile_py_func_global": _php_compile_py_func_global,
    "compile_py_meth": _php_compile_py_meth,
}
