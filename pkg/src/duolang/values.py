"""Runtime values shared by the PHP and Python interpreters.

Primitives are plain host values: ``None``, ``bool``, ``int``, ``float`` and
``str``.  Python lists, tuples and dicts are host ``list``/``tuple``/``dict``
objects.  Everything else gets a small class here.
"""
from __future__ import annotations

import enum
import math

INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1


class Lang(enum.Enum):
    PHP = "php"
    PY = "py"

    def __str__(self) -> str:
        return self.value


def norm_int(x: int):
    """Clamp host ints to signed 64-bit, promoting to float on overflow."""
    if INT_MIN <= x <= INT_MAX:
        return x
    return float(x)


def is_int(v) -> bool:
    return type(v) is int


def is_number(v) -> bool:
    t = type(v)
    return t is int or t is float


# ---------------------------------------------------------------------------
# PHP arrays

def normalize_key(key):
    """PHP array key coercion: numeric strings to int, bool to int, etc."""
    t = type(key)
    if t is int:
        return key
    if t is str:
        if key and (key.isdigit() and (key == "0" or key[0] != "0")):
            return int(key)
        if key.startswith("-") and key[1:].isdigit() and key[1:2] != "0":
            return int(key)
        return key
    if t is bool:
        return int(key)
    if t is float:
        return int(key)
    if key is None:
        return ""
    raise TypeError("Illegal offset type")


class PhpArray:
    """Insertion-ordered int|str keyed map with copy-on-write semantics.

    ``unique`` marks a storage with a single owner; only such storages are
    written in place.  ``_listlike`` is maintained incrementally so that
    list-view adapters can re-check it in O(1).
    """

    __slots__ = ("entries", "next_index", "unique", "_listlike")

    def __init__(self, entries: dict | None = None, next_index: int | None = None):
        self.entries = {} if entries is None else entries
        self.unique = True
        if next_index is None:
            next_index = 0
            listlike = True
            for i, k in enumerate(self.entries):
                if type(k) is int:
                    if k >= next_index:
                        next_index = k + 1
                if k != i or type(k) is not int:
                    listlike = False
            self._listlike = listlike
        else:
            self._listlike = _check_listlike(self.entries)
        self.next_index = next_index

    @classmethod
    def from_list(cls, items) -> "PhpArray":
        items = list(items)
        arr = cls.__new__(cls)
        arr.entries = dict(enumerate(items))
        arr.next_index = len(items)
        arr.unique = True
        arr._listlike = True
        return arr

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"PhpArray({self.entries!r})"

    def is_listlike(self) -> bool:
        return self._listlike

    def get(self, key, default=None):
        return self.entries.get(key, default)

    def copy(self) -> "PhpArray":
        new = PhpArray.__new__(PhpArray)
        new.entries = dict(self.entries)
        new.next_index = self.next_index
        new.unique = True
        new._listlike = self._listlike
        # nested arrays are now reachable from two storages
        for v in new.entries.values():
            if type(v) is PhpArray:
                v.unique = False
        return new

    def set_inplace(self, key, value) -> None:
        entries = self.entries
        if key not in entries:
            if self._listlike and not (type(key) is int and key == len(entries)):
                self._listlike = False
            if type(key) is int and key >= self.next_index:
                self.next_index = key + 1
        entries[key] = value

    def append_inplace(self, value) -> None:
        key = self.next_index
        if self._listlike and key != len(self.entries):
            self._listlike = False
        self.entries[key] = value
        self.next_index = key + 1

    def delete_inplace(self, key) -> None:
        if key in self.entries:
            del self.entries[key]
            self._listlike = _check_listlike(self.entries)


def _check_listlike(entries: dict) -> bool:
    for i, k in enumerate(entries):
        if k != i or type(k) is not int:
            return False
    return True


def cow_write(a: PhpArray, key, v, in_place_ok: bool) -> PhpArray:
    """Write ``a[key] = v``; ``key=None`` appends.

    Mutates ``a`` only when ``in_place_ok`` and the storage is unique,
    otherwise returns a modified copy and leaves ``a`` untouched.
    """
    target = a if (in_place_ok and a.unique) else a.copy()
    if key is None:
        target.append_inplace(v)
    else:
        target.set_inplace(normalize_key(key), v)
    return target


def cow_delete(a: PhpArray, key, in_place_ok: bool) -> PhpArray:
    target = a if (in_place_ok and a.unique) else a.copy()
    target.delete_inplace(normalize_key(key))
    return target


def share(v):
    """Mark an array value as reachable from a second location."""
    if type(v) is PhpArray:
        v.unique = False
    return v


class PhpRef:
    """A PHP reference: a mutable cell holding one non-reference value."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        assert type(value) is not PhpRef
        self.value = value

    def __repr__(self) -> str:
        return f"PhpRef({self.value!r})"


def deref(slot):
    return slot.value if type(slot) is PhpRef else slot


# ---------------------------------------------------------------------------
# PHP objects, classes and functions

class PhpObject:
    __slots__ = ("cls", "attrs", "__weakref__")

    def __init__(self, cls: "PhpClass"):
        self.cls = cls
        self.attrs: dict = {}

    def __repr__(self) -> str:
        return f"<PhpObject {self.cls.name}>"


class Method:
    """A class member function; ``func`` is a PhpFunction or a Python function."""

    __slots__ = ("name", "func", "access", "static", "owner")

    def __init__(self, name, func, access="public", static=False, owner=None):
        self.name = name
        self.func = func
        self.access = access
        self.static = static
        self.owner = owner


class PhpClass:
    def __init__(self, name: str, parent: "PhpClass | None" = None):
        self.name = name
        self.parent = parent
        self.props: list[tuple[str, object, str, bool]] = []  # (name, default expr, access, static)
        self.methods: dict[str, Method] = {}
        self.static_vars: dict = {}
        self.delayed = False
        self.sealed = True
        self.extra: dict = {}

    def __repr__(self) -> str:
        return f"<PhpClass {self.name}>"

    def find_method(self, name: str) -> Method | None:
        lname = name.lower()
        cls = self
        while cls is not None:
            m = cls.methods.get(lname)
            if m is not None:
                return m
            cls = cls.parent
        return None

    def is_subclass_of(self, other: "PhpClass") -> bool:
        cls = self
        while cls is not None:
            if cls is other:
                return True
            cls = cls.parent
        return False

    def is_subclass_name(self, name: str) -> bool:
        lname = name.lower()
        cls = self
        while cls is not None:
            if cls.name.lower() == lname:
                return True
            cls = cls.parent
        return False


class PhpFunction:
    """A MiniPHP function value; ``code`` is the (shareable) declaration node."""

    __slots__ = ("code", "py_scope", "name", "static_vars")

    def __init__(self, code, py_scope=None):
        self.code = code
        self.py_scope = py_scope
        self.name = code.name
        self.static_vars: dict = {}

    def __repr__(self) -> str:
        return f"<php function {self.name}>"


class PhpBuiltin:
    """A host-implemented PHP function.

    ``byref`` holds parameter indices that receive PhpRef cells, and
    ``raw`` builtins get the caller frame and unevaluated argument nodes.
    """

    __slots__ = ("name", "fn", "byref", "raw")

    def __init__(self, name, fn, byref=(), raw=False):
        self.name = name
        self.fn = fn
        self.byref = frozenset(byref)
        self.raw = raw

    def __repr__(self) -> str:
        return f"<php builtin {self.name}>"


class BoundPhpMethod:
    __slots__ = ("obj", "method", "cls")

    def __init__(self, obj, method: Method, cls: PhpClass):
        self.obj = obj
        self.method = method
        self.cls = cls


# ---------------------------------------------------------------------------
# Python-side values

class PyFunction:
    """A MiniPy function value.  ``code`` may be shared between values."""

    __slots__ = ("code", "defaults", "globals", "closure", "php_scope", "attrs",
                 "php_class", "name")

    def __init__(self, code, defaults, globals_, closure=None, php_scope=None):
        self.code = code
        self.defaults = defaults
        self.globals = globals_
        self.closure = closure
        self.php_scope = php_scope
        self.attrs: dict = {}
        self.php_class = None
        self.name = code.name

    def __repr__(self) -> str:
        return f"<function {self.name}>"


class PyBuiltin:
    __slots__ = ("name", "fn", "attrs")

    def __init__(self, name, fn):
        self.name = name
        self.fn = fn
        self.attrs: dict = {}

    def __repr__(self) -> str:
        return f"<built-in function {self.name}>"


class PyClass:
    def __init__(self, name: str, bases: tuple = (), attrs: dict | None = None):
        self.name = name
        self.bases = tuple(bases)
        self.attrs = {} if attrs is None else attrs

    def __repr__(self) -> str:
        return f"<class '{self.name}'>"

    def mro(self):
        cached = self.__dict__.get("_mro")
        if cached is not None:
            return cached
        seen = []
        stack = [self]
        while stack:
            c = stack.pop(0)
            if c not in seen:
                seen.append(c)
                stack.extend(c.bases)
        self._mro = seen
        return seen

    def lookup(self, name: str):
        if name in self.attrs:
            return self.attrs[name]
        for c in self.mro():
            if name in c.attrs:
                return c.attrs[name]
        raise KeyError(name)

    def is_subclass_of(self, other: "PyClass") -> bool:
        return other in self.mro()


class PyInstance:
    __slots__ = ("cls", "attrs")

    def __init__(self, cls: PyClass):
        self.cls = cls
        self.attrs: dict = {}

    def __repr__(self) -> str:
        return f"<{self.cls.name} object>"


class BoundMethod:
    __slots__ = ("self_", "func")

    def __init__(self, self_, func):
        self.self_ = self_
        self.func = func


class PyModule:
    def __init__(self, name: str, attrs: dict):
        self.name = name
        self.attrs = attrs

    def __repr__(self) -> str:
        return f"<module '{self.name}'>"


# ---------------------------------------------------------------------------
# identity and truthiness

def identical(a, b) -> bool:
    """Type-tagged identity: PHP ``===`` and Python ``is`` both land here."""
    from duolang.bridge import Adapter

    ta = type(a)
    if ta is not type(b):
        return False
    if a is None or ta is bool or ta is int or ta is str:
        return a == b
    if ta is float:
        return a == b or (math.isnan(a) and math.isnan(b))
    if isinstance(a, Adapter):
        return a.target is b.target
    if ta is PhpArray:
        # arrays are values in PHP: same handle, or same contents
        return a is b or _arrays_identical(a, b)
    return a is b


def _arrays_identical(a: PhpArray, b: PhpArray) -> bool:
    if len(a.entries) != len(b.entries):
        return False
    for (ka, va), (kb, vb) in zip(a.entries.items(), b.entries.items()):
        if ka != kb or type(ka) is not type(kb) or not identical(va, vb):
            return False
    return True


def truthy(v, lang: Lang) -> bool:
    from duolang.bridge import Adapter

    if v is None:
        return False
    t = type(v)
    if t is bool:
        return v
    if t is int or t is float:
        return v != 0
    if t is str:
        if lang is Lang.PHP:
            return v != "" and v != "0"
        return v != ""
    if t is PhpArray:
        return len(v.entries) > 0
    if t is list or t is tuple or t is dict:
        return len(v) > 0
    if isinstance(v, Adapter):
        return v.native_truthy()
    return True
