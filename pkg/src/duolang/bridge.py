"""Adapters and the data-type conversion rules between PHP and Python values.

``to_py`` / ``to_php`` are total: primitives map tag-for-tag, foreign values
get wrapped, and adapters returning to their home language are unwrapped.
"""
from __future__ import annotations

import enum

from duolang.exc import (AdaptedPhpException, AdaptedPyException, ScriptError,
                         php_error, py_error)
from duolang.values import (BoundMethod, BoundPhpMethod, Lang, PhpArray, PhpBuiltin,
                            PhpClass, PhpFunction, PhpObject, PhpRef, PyBuiltin,
                            PyClass, PyFunction, cow_delete, cow_write, normalize_key,
                            share)


class AdapterKind(enum.Enum):
    PY_GENERIC_IN_PHP = "PyGenericInPhp"
    PY_LIST_AS_PHP_ARRAY = "PyListAsPhpArray"
    PY_DICT_AS_PHP_ARRAY = "PyDictAsPhpArray"
    PY_CALLABLE_IN_PHP = "PyCallableInPhp"
    PHP_GENERIC_IN_PY = "PhpGenericInPy"
    PHP_ARRAY_AS_PY_DICT = "PhpArrayAsPyDict"
    PHP_ARRAY_AS_PY_LIST = "PhpArrayAsPyList"
    PHP_CALLABLE_IN_PY = "PhpCallableInPy"
    PHP_REF_IN_PY = "PhpRefInPy"
    PY_LIST_AS_SPECIAL_PY_DICT = "PyListAsSpecialPyDict"


class Adapter:
    """Immutable wrapper pairing one foreign value with an adapter kind.

    ``lang`` is the language the adapter lives in (the one that sees it).
    """

    __slots__ = ("target",)
    kind: AdapterKind
    lang: Lang

    def __init__(self, target):
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("adapters are immutable")

    def __repr__(self) -> str:
        return f"<{self.kind.value} {self.target!r}>"

    def native_truthy(self) -> bool:
        return True


# ---------------------------------------------------------------------------
# adapters living in PHP


class PyGenericInPhp(Adapter):
    __slots__ = ()
    kind = AdapterKind.PY_GENERIC_IN_PHP
    lang = Lang.PHP


class PyCallableInPhp(Adapter):
    __slots__ = ()
    kind = AdapterKind.PY_CALLABLE_IN_PHP
    lang = Lang.PHP


class PyListAsPhpArray(Adapter):
    """A Python list (or tuple) seen from PHP as a list-like array."""

    __slots__ = ()
    kind = AdapterKind.PY_LIST_AS_PHP_ARRAY
    lang = Lang.PHP

    def native_truthy(self) -> bool:
        return len(self.target) > 0

    def php_count(self) -> int:
        return len(self.target)

    def php_get(self, key):
        key = normalize_key(key)
        if type(key) is int and 0 <= key < len(self.target):
            return to_php(self.target[key])
        return None

    def php_has(self, key) -> bool:
        key = normalize_key(key)
        return type(key) is int and 0 <= key < len(self.target)

    def php_set(self, key, value) -> None:
        lst = self.target
        if type(lst) is tuple:
            raise php_error("Cannot modify an adapted Python tuple")
        if key is None:
            lst.append(to_py(value))
            return
        key = normalize_key(key)
        if type(key) is not int or not 0 <= key <= len(lst):
            raise php_error(f"Cannot write key {key!r} into an adapted Python list")
        if key == len(lst):
            lst.append(to_py(value))
        else:
            lst[key] = to_py(value)

    def php_unset(self, key) -> None:
        raise php_error("Cannot unset elements of an adapted Python list")

    def php_items(self):
        return [(i, to_php(v)) for i, v in enumerate(self.target)]


class PyDictAsPhpArray(Adapter):
    __slots__ = ()
    kind = AdapterKind.PY_DICT_AS_PHP_ARRAY
    lang = Lang.PHP

    def native_truthy(self) -> bool:
        return len(self.target) > 0

    def php_count(self) -> int:
        return len(self.target)

    def php_get(self, key):
        key = normalize_key(key)
        if key in self.target:
            return to_php(self.target[key])
        return None

    def php_has(self, key) -> bool:
        return normalize_key(key) in self.target

    def php_set(self, key, value) -> None:
        d = self.target
        if key is None:
            ints = [k for k in d if type(k) is int]
            key = max(ints) + 1 if ints else 0
        else:
            key = normalize_key(key)
        d[key] = to_py(value)

    def php_unset(self, key) -> None:
        self.target.pop(normalize_key(key), None)

    def php_items(self):
        return [(k, to_php(v)) for k, v in self.target.items()]


# ---------------------------------------------------------------------------
# adapters living in Python


class PhpGenericInPy(Adapter):
    """A PHP object seen from Python."""

    __slots__ = ()
    kind = AdapterKind.PHP_GENERIC_IN_PY
    lang = Lang.PY


class PhpCallableInPy(Adapter):
    __slots__ = ()
    kind = AdapterKind.PHP_CALLABLE_IN_PY
    lang = Lang.PY


class PhpRefInPy(Adapter):
    """The ``PHPRef`` object: an explicit handle on a PHP reference cell."""

    __slots__ = ()
    kind = AdapterKind.PHP_REF_IN_PY
    lang = Lang.PY

    def deref(self):
        return phpref_deref(self)

    def store(self, v) -> None:
        phpref_store(self, v)


def _py_key_to_php(key):
    t = type(key)
    if t is int or t is str:
        return normalize_key(key)
    raise py_error("TypeError", f"unsupported PHP array key type: {_type_name(key)}")


def _type_name(v) -> str:
    if v is None:
        return "NoneType"
    return type(v).__name__


class PhpArrayAsPyDict(Adapter):
    """A PHP array (always held through a PhpRef) seen from Python as a dict."""

    __slots__ = ()
    kind = AdapterKind.PHP_ARRAY_AS_PY_DICT
    lang = Lang.PY

    def _array(self) -> PhpArray:
        arr = self.target.value
        if type(arr) is not PhpArray:
            raise py_error("TypeError", "adapted PHP reference no longer holds an array")
        return arr

    def native_truthy(self) -> bool:
        return len(self._array()) > 0

    def py_len(self) -> int:
        return len(self._array())

    def py_getitem(self, key):
        arr = self._array()
        k = _py_key_to_php(key)
        if k not in arr.entries:
            raise py_error("KeyError", repr(key))
        return to_py(arr.entries[k])

    def py_get(self, key, default=None):
        arr = self._array()
        k = _py_key_to_php(key)
        if k not in arr.entries:
            return default
        return to_py(arr.entries[k])

    def py_setitem(self, key, value) -> None:
        ref = self.target
        ref.value = cow_write(self._array(), _py_key_to_php(key), to_php(value), True)

    def py_delitem(self, key) -> None:
        arr = self._array()
        k = _py_key_to_php(key)
        if k not in arr.entries:
            raise py_error("KeyError", repr(key))
        self.target.value = cow_delete(arr, k, True)

    def py_contains(self, key) -> bool:
        t = type(key)
        if t is not int and t is not str:
            return False
        return normalize_key(key) in self._array().entries

    def py_keys(self) -> list:
        return list(self._array().entries)

    def py_values(self) -> list:
        return [to_py(v) for v in self._array().entries.values()]

    def py_items(self) -> list:
        return [(k, to_py(v)) for k, v in self._array().entries.items()]

    def py_iter(self):
        return iter(self.py_keys())

    def as_list(self) -> "PhpArrayAsPyList":
        return PhpArrayAsPyList(self.target)


class PhpArrayAsPyList(Adapter):
    """A list view over a PHP array; every operation re-checks list-likeness."""

    __slots__ = ()
    kind = AdapterKind.PHP_ARRAY_AS_PY_LIST
    lang = Lang.PY

    def _array(self) -> PhpArray:
        arr = self.target.value
        if type(arr) is not PhpArray or not arr.is_listlike():
            raise py_error("NotListLike", "PHP array is no longer list-like")
        return arr

    def native_truthy(self) -> bool:
        return len(self._array()) > 0

    def _index(self, arr: PhpArray, i) -> int:
        if type(i) is not int:
            raise py_error("TypeError", "list indices must be integers")
        n = len(arr.entries)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise py_error("IndexError", "list index out of range")
        return i

    def py_len(self) -> int:
        return len(self._array())

    def py_getitem(self, i):
        arr = self._array()
        return to_py(arr.entries[self._index(arr, i)])

    def py_setitem(self, i, value) -> None:
        arr = self._array()
        i = self._index(arr, i)
        self.target.value = cow_write(arr, i, to_php(value), True)

    def py_append(self, value) -> None:
        arr = self._array()
        self.target.value = cow_write(arr, len(arr.entries), to_php(value), True)

    def py_pop(self):
        arr = self._array()
        if not arr.entries:
            raise py_error("IndexError", "pop from empty list")
        last = len(arr.entries) - 1
        value = arr.entries[last]
        new = cow_delete(arr, last, True)
        new.next_index = last
        self.target.value = new
        return to_py(value)

    def py_contains(self, value) -> bool:
        from duolang.minipy.ops import py_eq
        return any(py_eq(to_py(v), value) for v in self._array().entries.values())

    def py_iter(self):
        # re-check on every step: PHP code may mutate the array mid-iteration
        i = 0
        while True:
            arr = self._array()
            if i >= len(arr.entries):
                return
            yield to_py(arr.entries[i])
            i += 1


class PyListAsSpecialPyDict(Adapter):
    """A Python list that went PHP-ward and came back: a dict view again."""

    __slots__ = ()
    kind = AdapterKind.PY_LIST_AS_SPECIAL_PY_DICT
    lang = Lang.PY

    def native_truthy(self) -> bool:
        return len(self.target) > 0

    def _index(self, key) -> int:
        if type(key) is not int or not 0 <= key < len(self.target):
            raise py_error("KeyError", repr(key))
        return key

    def py_len(self) -> int:
        return len(self.target)

    def py_getitem(self, key):
        return self.target[self._index(key)]

    def py_get(self, key, default=None):
        if type(key) is int and 0 <= key < len(self.target):
            return self.target[key]
        return default

    def py_setitem(self, key, value) -> None:
        lst = self.target
        if type(lst) is tuple:
            raise py_error("TypeError", "adapted tuple does not support item assignment")
        if type(key) is int and key == len(lst):
            lst.append(value)
        else:
            lst[self._index(key)] = value

    def py_delitem(self, key) -> None:
        raise py_error("TypeError", "cannot delete from an adapted Python list")

    def py_contains(self, key) -> bool:
        return type(key) is int and 0 <= key < len(self.target)

    def py_keys(self) -> list:
        return list(range(len(self.target)))

    def py_values(self) -> list:
        return list(self.target)

    def py_items(self) -> list:
        return list(enumerate(self.target))

    def py_iter(self):
        return iter(self.py_keys())

    def as_list(self):
        return self.target


PHP_ARRAYISH = (PyListAsPhpArray, PyDictAsPhpArray)
PY_DICTISH = (PhpArrayAsPyDict, PyListAsSpecialPyDict)

_PHP_NATIVE = (PhpArray, PhpObject, PhpFunction, PhpBuiltin, PhpClass, BoundPhpMethod)
_PHP_CALLABLE = (PhpFunction, PhpBuiltin, PhpClass, BoundPhpMethod)
_PY_CALLABLE = (PyFunction, PyBuiltin, BoundMethod, PyClass)
_PRIMITIVES = (type(None), bool, int, float, str)


def to_py(v):
    """Convert a PHP-side value for use by Python code."""
    t = type(v)
    if t in _PRIMITIVES:
        return v
    if t is PhpArray:
        return PhpArrayAsPyDict(PhpRef(share(v)))
    if t is PhpRef:
        if type(v.value) is PhpArray:
            return PhpArrayAsPyDict(v)
        return PhpRefInPy(v)
    if t is AdaptedPyException:
        return v.original
    if t is PhpObject or isinstance(v, PhpObject):
        return PhpGenericInPy(v)
    if t in _PHP_CALLABLE:
        return PhpCallableInPy(v)
    if isinstance(v, Adapter):
        if v.lang is Lang.PHP:
            if t is PyListAsPhpArray:
                return PyListAsSpecialPyDict(v.target)
            return v.target
        return v
    return v


def to_php(v):
    """Convert a Python-side value for use by PHP code."""
    t = type(v)
    if t in _PRIMITIVES:
        return v
    if t is list or t is tuple:
        return PyListAsPhpArray(v)
    if t is dict:
        for k in v:
            if type(k) is not int and type(k) is not str:
                raise py_error("TypeError",
                               f"dict key {k!r} cannot be represented in a PHP array")
        return PyDictAsPhpArray(v)
    if t is AdaptedPhpException:
        return v.original
    if isinstance(v, Adapter):
        if v.lang is Lang.PY:
            if t is PhpArrayAsPyDict or t is PhpArrayAsPyList or t is PhpRefInPy:
                return share(v.target.value)
            if t is PyListAsSpecialPyDict:
                return PyListAsPhpArray(v.target)
            return v.target
        return v
    if t in _PY_CALLABLE:
        return PyCallableInPhp(v)
    if t in _PHP_NATIVE or isinstance(v, PhpObject):
        return v
    return PyGenericInPhp(v)


def as_list(d):
    if isinstance(d, PY_DICTISH):
        return d.as_list()
    raise py_error("AttributeError", f"'{_type_name(d)}' object has no attribute 'as_list'")


def promote_attr_to_ref(o: PhpObject, attr: str):
    """Turn an array-valued attribute into a reference so Python writes stick.

    Returns the PhpRef, or None when the attribute is not an array (only
    arrays are promoted).
    """
    if attr not in o.attrs:
        raise php_error(f"Undefined property: {o.cls.name}::${attr}")
    slot = o.attrs[attr]
    if type(slot) is PhpRef:
        return slot
    if type(slot) is PhpArray:
        ref = PhpRef(slot)
        o.attrs[attr] = ref
        return ref
    return None


def phpref_deref(r: PhpRefInPy):
    return to_py(r.target.value)


def phpref_store(r: PhpRefInPy, v) -> None:
    r.target.value = to_php(v)


def new_phpref(v) -> PhpRefInPy:
    """Python's ``PHPRef(x)`` constructor."""
    if isinstance(v, PhpRefInPy):
        return v
    return PhpRefInPy(PhpRef(to_php(v)))


__all__ = [
    "Adapter", "AdapterKind", "PhpArrayAsPyDict", "PhpArrayAsPyList", "PhpCallableInPy",
    "PhpGenericInPy", "PhpRefInPy", "PyCallableInPhp", "PyDictAsPhpArray",
    "PyGenericInPhp", "PyListAsPhpArray", "PyListAsSpecialPyDict", "ScriptError",
    "as_list", "new_phpref", "phpref_deref", "phpref_store", "promote_attr_to_ref",
    "to_php", "to_py",
]
