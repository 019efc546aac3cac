"""Exceptions crossing between the two interpreters, and merged stacktraces."""
from __future__ import annotations

from dataclasses import dataclass

from duolang.values import (Lang, Method, PhpBuiltin, PhpClass, PhpObject, PyClass,
                            PyInstance)


@dataclass(frozen=True)
class TraceEntry:
    index: int
    file: str
    line: int
    function: str
    language: Lang

    def render(self) -> str:
        return f"#{self.index} {self.file}:{self.line} in {self.function} [{self.language}]"


class ScriptError(Exception):
    """Host-level carrier for a language-level exception value.

    ``trace`` is filled in by the innermost frame the error unwinds through,
    so raise sites need no access to the frame stack.
    """

    def __init__(self, value, trace: list[TraceEntry] | None = None):
        super().__init__(value)
        self.value = value
        self.trace = trace

    def __str__(self) -> str:
        return describe(self.value)


class ScriptSyntaxError(Exception):
    def __init__(self, file: str, line: int, message: str):
        super().__init__(f"{file}:{line}: {message}")
        self.file = file
        self.line = line
        self.message = message


def render_trace(entries) -> str:
    return "".join(e.render() + "\n" for e in entries)


def snapshot(stack) -> list[TraceEntry]:
    """Innermost-first trace over the live frames of both languages."""
    n = len(stack)
    return [TraceEntry(i, f.file, f.line, f.name, f.lang)
            for i, f in enumerate(stack[n - 1::-1])]


# ---------------------------------------------------------------------------
# MiniPy exception classes

def _pyexc(name, *bases):
    return PyClass(name, bases, {"__builtin_exception__": True})


PY_BASE_EXCEPTION = _pyexc("Exception")
_PY_TYPE_ERROR = _pyexc("TypeError", PY_BASE_EXCEPTION)
_PY_NAME_ERROR = _pyexc("NameError", PY_BASE_EXCEPTION)
PY_EXCEPTIONS = {
    "Exception": PY_BASE_EXCEPTION,
    "ZeroDivisionError": _pyexc("ZeroDivisionError", PY_BASE_EXCEPTION),
    "TypeError": _PY_TYPE_ERROR,
    "KeyError": _pyexc("KeyError", PY_BASE_EXCEPTION),
    "ValueError": _pyexc("ValueError", PY_BASE_EXCEPTION),
    "IndexError": _pyexc("IndexError", PY_BASE_EXCEPTION),
    "AttributeError": _pyexc("AttributeError", PY_BASE_EXCEPTION),
    "NameError": _PY_NAME_ERROR,
    "UnboundLocalError": _pyexc("UnboundLocalError", _PY_NAME_ERROR),
    "RuntimeError": _pyexc("RuntimeError", PY_BASE_EXCEPTION),
    "AssertionError": _pyexc("AssertionError", PY_BASE_EXCEPTION),
    "ImportError": _pyexc("ImportError", PY_BASE_EXCEPTION),
    "OverflowError": _pyexc("OverflowError", PY_BASE_EXCEPTION),
    "NotListLike": _pyexc("NotListLike", _PY_TYPE_ERROR),
    "PHPException": _pyexc("PHPException", PY_BASE_EXCEPTION),
}


class AdaptedPhpException(PyInstance):
    """What Python code sees when a PHP exception crosses into it."""

    __slots__ = ("original",)

    def __init__(self, original: PhpObject, message: str):
        super().__init__(PY_EXCEPTIONS["PHPException"])
        self.original = original
        self.attrs["args"] = (message,)


def py_exc(name: str, message: str = "") -> PyInstance:
    inst = PyInstance(PY_EXCEPTIONS[name])
    inst.attrs["args"] = (message,)
    return inst


def py_error(name: str, message: str = "") -> ScriptError:
    return ScriptError(py_exc(name, message))


# ---------------------------------------------------------------------------
# MiniPHP exception classes

def _exc_construct(interp, this, args):
    this.attrs["message"] = args[0] if args else ""
    return None


def _exc_get_message(interp, this, args):
    from duolang.values import deref
    return deref(this.attrs.get("message", ""))


def _php_exception_class(name, parent=None):
    cls = PhpClass(name, parent)
    if parent is None:
        cls.props.append(("message", None, "protected", False))
        for mname, fn in (("__construct", _exc_construct), ("getMessage", _exc_get_message)):
            cls.methods[mname.lower()] = Method(mname, PhpBuiltin(mname, fn), owner=cls)
    return cls


PHP_THROWABLE = _php_exception_class("Throwable")
PHP_EXCEPTIONS = {
    "Throwable": PHP_THROWABLE,
    "Exception": _php_exception_class("Exception", PHP_THROWABLE),
    "Error": _php_exception_class("Error", PHP_THROWABLE),
}
PHP_EXCEPTIONS["PyException"] = _php_exception_class("PyException", PHP_EXCEPTIONS["Exception"])
PHP_EXCEPTIONS["TypeError"] = _php_exception_class("TypeError", PHP_EXCEPTIONS["Error"])
PHP_EXCEPTIONS["ArithmeticError"] = _php_exception_class(
    "ArithmeticError", PHP_EXCEPTIONS["Error"])
PHP_EXCEPTIONS["DivisionByZeroError"] = _php_exception_class(
    "DivisionByZeroError", PHP_EXCEPTIONS["ArithmeticError"])
PHP_EXCEPTIONS["ArgumentCountError"] = _php_exception_class(
    "ArgumentCountError", PHP_EXCEPTIONS["TypeError"])


class AdaptedPyException(PhpObject):
    """What PHP code sees when a Python exception crosses into it."""

    __slots__ = ("original",)

    def __init__(self, original: PyInstance, message: str):
        super().__init__(PHP_EXCEPTIONS["PyException"])
        self.original = original
        self.attrs["message"] = message


def php_exc(name: str, message: str = "") -> PhpObject:
    obj = PhpObject(PHP_EXCEPTIONS[name])
    obj.attrs["message"] = message
    return obj


def php_error(message: str, name: str = "Error") -> ScriptError:
    return ScriptError(php_exc(name, message))


# ---------------------------------------------------------------------------

def exc_class_name(value) -> str:
    if isinstance(value, PhpObject):
        return value.cls.name
    if isinstance(value, PyInstance):
        return value.cls.name
    return type(value).__name__


def exc_message(value) -> str:
    from duolang.values import deref
    if isinstance(value, PhpObject):
        msg = deref(value.attrs.get("message", ""))
        return "" if msg is None else str(msg)
    if isinstance(value, PyInstance):
        args = value.attrs.get("args", ())
        if isinstance(args, tuple) and args:
            return str(args[0])
        return ""
    return str(value)


def describe(value) -> str:
    msg = exc_message(value)
    return f"{exc_class_name(value)}: {msg}" if msg else exc_class_name(value)


def adapt_exception(value, target: Lang):
    """Adapt an exception value for ``target``; native values pass through.

    Adapted exceptions going back to their own language are unwrapped, so
    adaptation never nests.
    """
    if target is Lang.PHP:
        if isinstance(value, AdaptedPhpException):
            return value.original
        if isinstance(value, PyInstance):
            return AdaptedPyException(value, describe(value))
        return value
    if isinstance(value, AdaptedPyException):
        return value.original
    if isinstance(value, PhpObject):
        return AdaptedPhpException(value, describe(value))
    return value


def value_language(value) -> Lang:
    return Lang.PHP if isinstance(value, PhpObject) else Lang.PY
