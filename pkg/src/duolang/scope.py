"""Cross-language name resolution.

Both languages resolve names in two phases.  The recursive phase walks the
chain of enclosing language boxes from inner to outer and looks only at
their local bindings.  The global phase then searches the current
language's global namespaces before the other language's.
"""
from __future__ import annotations

import enum

from duolang.bridge import to_php, to_py
from duolang.exc import php_error, py_error
from duolang.values import Lang, PhpArray, PhpRef


class ScopeLink:
    """One enclosing language box: the frame it runs in plus its own parent link."""

    __slots__ = ("frame", "lang", "parent")

    def __init__(self, frame, lang: Lang, parent: "ScopeLink | None" = None):
        self.frame = frame
        self.lang = lang
        self.parent = parent

    def __iter__(self):
        link = self
        while link is not None:
            yield link
            link = link.parent

    def __repr__(self) -> str:
        return f"<ScopeLink {self.lang} {getattr(self.frame, 'name', '?')}>"


def link_for_frame(frame) -> ScopeLink:
    """The link a function compiled inside ``frame`` records as its scope."""
    if frame.lang is Lang.PHP:
        return ScopeLink(frame, Lang.PHP, frame.py_scope)
    return ScopeLink(frame, Lang.PY, frame.php_scope)


class Kind(enum.Enum):
    UNKNOWN = "unknown"
    CLASS = "class"
    FUNCTION = "function"
    CONSTANT = "constant"
    NOTFOUND = "notfound"


class StickyCache:
    """Per-scope record of which PHP namespace a name resolved to.

    Once a name is recorded its kind never changes for this scope.
    """

    __slots__ = ("entries",)

    def __init__(self):
        self.entries: dict[str, Kind] = {}

    def kind(self, name: str) -> Kind:
        return self.entries.get(name, Kind.UNKNOWN)

    def record(self, name: str, kind: Kind) -> None:
        if name not in self.entries:
            self.entries[name] = kind


class PhpGlobals:
    """PHP's four global namespaces.

    Functions, classes and constants can only be added; variables come and go.
    Function and class names are case-insensitive.
    """

    def __init__(self):
        self.functions: dict[str, object] = {}
        self.classes: dict = {}
        self.constants: dict[str, object] = {}
        self.variables: dict[str, object] = {}

    def add_function(self, name: str, fn) -> None:
        key = name.lower()
        if key in self.functions:
            raise php_error(f"Cannot redeclare {name}()")
        self.functions[key] = fn

    def add_class(self, cls) -> None:
        key = cls.name.lower()
        if key in self.classes:
            raise php_error(f"Cannot declare class {cls.name}, because the name is already in use")
        self.classes[key] = cls

    def add_constant(self, name: str, value) -> bool:
        if name in self.constants:
            return False
        self.constants[name] = value
        return True

    def lookup_function(self, name: str):
        return self.functions.get(name.lower())

    def lookup_class(self, name: str):
        return self.classes.get(name.lower())


_MISSING = object()


def sticky_resolve(cache: StickyCache, name: str, globals_: PhpGlobals):
    """Search PHP's function, class and constant namespaces from Python.

    Returns ``(kind, value)``; value is meaningful only when kind is a hit.
    """
    kind = cache.kind(name)
    if kind is Kind.UNKNOWN:
        for kind, table, key in ((Kind.FUNCTION, globals_.functions, name.lower()),
                                 (Kind.CLASS, globals_.classes, name.lower()),
                                 (Kind.CONSTANT, globals_.constants, name)):
            if key in table:
                cache.record(name, kind)
                return kind, table[key]
        cache.record(name, Kind.NOTFOUND)
        return Kind.NOTFOUND, None
    if kind is Kind.FUNCTION:
        value = globals_.functions.get(name.lower(), _MISSING)
    elif kind is Kind.CLASS:
        value = globals_.classes.get(name.lower(), _MISSING)
    elif kind is Kind.CONSTANT:
        value = globals_.constants.get(name, _MISSING)
    else:
        return Kind.NOTFOUND, None
    if value is _MISSING:
        return Kind.NOTFOUND, None
    return kind, value


# ---------------------------------------------------------------------------
# recursive phase


def _py_frame_binding(frame, name: str):
    """A name bound in a Python frame or its (read-only) closure frames."""
    f = frame
    while f is not None:
        locs = f.locals
        if name in locs:
            return locs[name]
        f = f.closure
    return _MISSING


def _php_slot_for_py(frame, name: str):
    """Read PHP ``$name`` for Python; arrays are promoted to references first."""
    locs = frame.locals
    slot = locs[name]
    if type(slot) is PhpArray:
        slot = locs[name] = PhpRef(slot)
    elif type(slot) is PhpRef and type(slot.value) is not PhpArray:
        # a reference-bound scalar (e.g. via ``global``) reads as its value
        return to_py(slot.value)
    return to_py(slot)


def recurse_for_py(link: ScopeLink | None, name: str):
    """Recursive phase for a Python reference; returns a Python value or _MISSING."""
    while link is not None:
        frame = link.frame
        if link.lang is Lang.PHP:
            if name in frame.locals:
                return _php_slot_for_py(frame, name)
        else:
            v = _py_frame_binding(frame, name)
            if v is not _MISSING:
                return v
        link = link.parent
    return _MISSING


def recurse_for_php(link: ScopeLink | None, name: str):
    """Recursive phase for a PHP ``$name``; returns a PHP slot or _MISSING."""
    while link is not None:
        frame = link.frame
        if link.lang is Lang.PHP:
            slot = frame.locals.get(name, _MISSING)
            if slot is not _MISSING:
                return slot
        else:
            v = _py_frame_binding(frame, name)
            if v is not _MISSING:
                return to_php(v)
        link = link.parent
    return _MISSING


# ---------------------------------------------------------------------------
# entry points used by the interpreters


def lookup_php_variable(name: str, frame):
    """The slot PHP ``$name`` reads from: locals, then enclosing boxes."""
    slot = frame.locals.get(name, _MISSING)
    if slot is not _MISSING:
        return slot
    if frame.py_scope is not None:
        slot = recurse_for_php(frame.py_scope, name)
        if slot is not _MISSING:
            return slot
    raise php_error(f"Undefined variable ${name}")


def locate_function(name: str, frame, ctx):
    """Resolve a PHP function call ``name(...)``.

    With an enclosing Python box the order is: Python box locals (inner to
    outer), the PHP function namespace, then Python's global namespace.
    """
    fn = None
    scope = frame.py_scope
    if scope is not None:
        link = scope
        while link is not None:
            if link.lang is Lang.PY:
                v = _py_frame_binding(link.frame, name)
                if v is not _MISSING:
                    return to_php(v)
            link = link.parent
    fn = ctx.php_globals.functions.get(name.lower())
    if fn is not None:
        return fn
    if scope is not None:
        v = ctx.py_globals.get(name, _MISSING)
        if v is _MISSING:
            v = ctx.py_builtins.get(name, _MISSING)
        if v is not _MISSING:
            return to_php(v)
    raise php_error(f"Call to undefined function {name}()")


def lookup_global_py(name: str, frame, ctx):
    """LOAD_GLOBAL for MiniPy: enclosing boxes, module globals, builtins, PHP."""
    if frame.closure is not None:
        v = _py_frame_binding(frame.closure, name)
        if v is not _MISSING:
            return v
    if frame.php_scope is not None:
        v = recurse_for_py(frame.php_scope, name)
        if v is not _MISSING:
            return v
    g = frame.globals
    if name in g:
        return g[name]
    b = ctx.py_builtins
    if name in b:
        return b[name]
    kind, value = sticky_resolve(frame.code.sticky, name, ctx.php_globals)
    if kind is not Kind.NOTFOUND:
        return to_py(value)
    raise py_error("NameError", f"name '{name}' is not defined")


def store_global_py(name: str, value, frame, ctx) -> None:
    """STORE_GLOBAL: an enclosing PHP binding wins, else module globals."""
    link = frame.php_scope
    while link is not None:
        if link.lang is Lang.PHP and name in link.frame.locals:
            locs = link.frame.locals
            slot = locs[name]
            if type(slot) is PhpRef:
                slot.value = to_php(value)
            else:
                locs[name] = to_php(value)
            return
        link = link.parent
    frame.globals[name] = value


MISSING = _MISSING
