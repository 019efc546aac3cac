"""Methods of MiniPy's built-in types and of the Python-side adapters.

Every entry has the signature ``fn(interp, obj, args, kwargs)``.
"""
from __future__ import annotations

import functools

from duolang.bridge import (PhpArrayAsPyDict, PhpArrayAsPyList, PhpRefInPy,
                            PyListAsSpecialPyDict)
from duolang.exc import py_error
from duolang.minipy import ops


def _args(name, args, kwargs, lo, hi=None):
    if kwargs:
        raise py_error("TypeError", f"{name}() takes no keyword arguments")
    hi = lo if hi is None else hi
    if not lo <= len(args) <= hi:
        if lo == hi:
            raise py_error("TypeError", f"{name}() takes exactly {lo} argument"
                                        f"{'' if lo == 1 else 's'} ({len(args)} given)")
        raise py_error("TypeError", f"{name}() expected at most {hi} arguments, got {len(args)}")
    return args


# -- list ---------------------------------------------------------------------

def list_append(interp, lst, args, kwargs):
    if len(args) != 1 or kwargs:
        _args("append", args, kwargs, 1)
    lst.append(args[0])


def list_pop(interp, lst, args, kwargs):
    _args("pop", args, kwargs, 0, 1)
    if not lst:
        raise py_error("IndexError", "pop from empty list")
    i = args[0] if args else -1
    if type(i) is not int:
        raise py_error("TypeError", "list indices must be integers")
    try:
        return lst.pop(i)
    except IndexError:
        raise py_error("IndexError", "pop index out of range") from None


def list_insert(interp, lst, args, kwargs):
    i, v = _args("insert", args, kwargs, 2)
    lst.insert(i, v)


def list_extend(interp, lst, args, kwargs):
    (it,) = _args("extend", args, kwargs, 1)
    lst.extend(list(interp.iterate(it)))


def list_index(interp, lst, args, kwargs):
    (v,) = _args("index", args, kwargs, 1)
    for i, x in enumerate(lst):
        if ops.py_eq(x, v):
            return i
    raise py_error("ValueError", f"{ops.py_repr(v)} is not in list")


def list_count(interp, lst, args, kwargs):
    (v,) = _args("count", args, kwargs, 1)
    return sum(1 for x in lst if ops.py_eq(x, v))


def list_remove(interp, lst, args, kwargs):
    (v,) = _args("remove", args, kwargs, 1)
    for i, x in enumerate(lst):
        if ops.py_eq(x, v):
            del lst[i]
            return None
    raise py_error("ValueError", "list.remove(x): x not in list")


def list_reverse(interp, lst, args, kwargs):
    _args("reverse", args, kwargs, 0)
    lst.reverse()


def list_sort(interp, lst, args, kwargs):
    if args:
        raise py_error("TypeError", "sort() takes no positional arguments")
    kwargs = kwargs or {}
    lst[:] = sort_values(interp, lst, kwargs.get("key"), kwargs.get("reverse", False))


def list_copy(interp, lst, args, kwargs):
    _args("copy", args, kwargs, 0)
    return list(lst)


def sort_values(interp, values, key=None, reverse=False) -> list:
    values = list(values)
    if key is not None:
        keyed = [(interp.call(key, [v], None), v) for v in values]
    else:
        keyed = [(v, v) for v in values]

    def cmp(a, b):
        if ops.py_lt(a[0], b[0]):
            return -1
        if ops.py_lt(b[0], a[0]):
            return 1
        return 0

    keyed.sort(key=functools.cmp_to_key(cmp), reverse=bool(reverse))
    return [v for _, v in keyed]


# -- dict ---------------------------------------------------------------------

def dict_get(interp, d, args, kwargs):
    key, *rest = _args("get", args, kwargs, 1, 2)
    ops.check_hashable(key)
    return d.get(key, rest[0] if rest else None)


def dict_keys(interp, d, args, kwargs):
    _args("keys", args, kwargs, 0)
    return list(d.keys())


def dict_values(interp, d, args, kwargs):
    _args("values", args, kwargs, 0)
    return list(d.values())


def dict_items(interp, d, args, kwargs):
    _args("items", args, kwargs, 0)
    return list(d.items())


def dict_pop(interp, d, args, kwargs):
    key, *rest = _args("pop", args, kwargs, 1, 2)
    ops.check_hashable(key)
    if key in d:
        return d.pop(key)
    if rest:
        return rest[0]
    raise py_error("KeyError", ops.py_repr(key))


def dict_setdefault(interp, d, args, kwargs):
    key, *rest = _args("setdefault", args, kwargs, 1, 2)
    ops.check_hashable(key)
    if key not in d:
        d[key] = rest[0] if rest else None
    return d[key]


def dict_update(interp, d, args, kwargs):
    _args("update", args, None, 0, 1)
    if args:
        other = args[0]
        if type(other) is dict:
            d.update(other)
        elif isinstance(other, ops.DICTISH):
            for k, v in other.py_items():
                d[k] = v
        else:
            for pair in interp.iterate(other):
                k, v = list(interp.iterate(pair))
                d[ops.check_hashable(k)] = v
    if kwargs:
        d.update(kwargs)


def dict_copy(interp, d, args, kwargs):
    _args("copy", args, kwargs, 0)
    return dict(d)


# -- str ----------------------------------------------------------------------

def _str_arg(name, v):
    if type(v) is not str:
        raise py_error("TypeError", f"{name}() argument must be str, not {ops.type_name(v)}")
    return v


def str_join(interp, s, args, kwargs):
    (it,) = _args("join", args, kwargs, 1)
    parts = []
    for i, x in enumerate(interp.iterate(it)):
        if type(x) is not str:
            raise py_error("TypeError", f"sequence item {i}: expected str instance, "
                                        f"{ops.type_name(x)} found")
        parts.append(x)
    return s.join(parts)


def str_split(interp, s, args, kwargs):
    _args("split", args, kwargs, 0, 1)
    if args and args[0] is not None:
        sep = _str_arg("split", args[0])
        if sep == "":
            raise py_error("ValueError", "empty separator")
        return s.split(sep)
    return s.split()


def _simple(name, fn, nargs=0):
    def method(interp, s, args, kwargs):
        _args(name, args, kwargs, nargs)
        return fn(s, *[_str_arg(name, a) for a in args])
    return method


def str_replace(interp, s, args, kwargs):
    old, new = _args("replace", args, kwargs, 2)
    return s.replace(_str_arg("replace", old), _str_arg("replace", new))


def str_format(interp, s, args, kwargs):
    out = []
    i = 0
    auto = 0
    while i < len(s):
        c = s[i]
        if c == "{":
            if s.startswith("{{", i):
                out.append("{")
                i += 2
                continue
            j = s.find("}", i)
            if j < 0:
                raise py_error("ValueError", "Single '{' encountered in format string")
            field = s[i + 1:j]
            if field == "":
                if auto >= len(args):
                    raise py_error("IndexError", "Replacement index out of range")
                v = args[auto]
                auto += 1
            elif field.isdigit():
                if int(field) >= len(args):
                    raise py_error("IndexError", "Replacement index out of range")
                v = args[int(field)]
            else:
                if not kwargs or field not in kwargs:
                    raise py_error("KeyError", repr(field))
                v = kwargs[field]
            out.append(ops.py_str(v))
            i = j + 1
        elif c == "}" and s.startswith("}}", i):
            out.append("}")
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


STR_METHODS = {
    "join": str_join,
    "split": str_split,
    "replace": str_replace,
    "format": str_format,
    "strip": _simple("strip", str.strip),
    "lower": _simple("lower", str.lower),
    "upper": _simple("upper", str.upper),
    "isdigit": _simple("isdigit", str.isdigit),
    "startswith": _simple("startswith", str.startswith, 1),
    "endswith": _simple("endswith", str.endswith, 1),
    "find": _simple("find", str.find, 1),
    "count": _simple("count", str.count, 1),
}


# -- adapters -----------------------------------------------------------------

def _adapter_get(interp, d, args, kwargs):
    key, *rest = _args("get", args, kwargs, 1, 2)
    return d.py_get(key, rest[0] if rest else None)


def _adapter_keys(interp, d, args, kwargs):
    _args("keys", args, kwargs, 0)
    return d.py_keys()


def _adapter_values(interp, d, args, kwargs):
    _args("values", args, kwargs, 0)
    return d.py_values()


def _adapter_items(interp, d, args, kwargs):
    _args("items", args, kwargs, 0)
    return d.py_items()


def _adapter_as_list(interp, d, args, kwargs):
    _args("as_list", args, kwargs, 0)
    return d.as_list()


def _listview_append(interp, lv, args, kwargs):
    (v,) = _args("append", args, kwargs, 1)
    lv.py_append(v)


def _listview_pop(interp, lv, args, kwargs):
    _args("pop", args, kwargs, 0)
    return lv.py_pop()


def _ref_deref(interp, r, args, kwargs):
    _args("deref", args, kwargs, 0)
    return r.deref()


def _ref_store(interp, r, args, kwargs):
    (v,) = _args("store", args, kwargs, 1)
    r.store(v)


_DICT_VIEW = {
    "get": _adapter_get,
    "keys": _adapter_keys,
    "values": _adapter_values,
    "items": _adapter_items,
    "as_list": _adapter_as_list,
}

METHODS = {
    list: {
        "append": list_append, "pop": list_pop, "insert": list_insert, "extend": list_extend,
        "index": list_index, "count": list_count, "remove": list_remove,
        "reverse": list_reverse, "sort": list_sort, "copy": list_copy,
    },
    tuple: {"index": list_index, "count": list_count},
    dict: {
        "get": dict_get, "keys": dict_keys, "values": dict_values, "items": dict_items,
        "pop": dict_pop, "setdefault": dict_setdefault, "update": dict_update,
        "copy": dict_copy,
    },
    str: STR_METHODS,
    PhpArrayAsPyDict: _DICT_VIEW,
    PyListAsSpecialPyDict: _DICT_VIEW,
    PhpArrayAsPyList: {"append": _listview_append, "pop": _listview_pop},
    PhpRefInPy: {"deref": _ref_deref, "store": _ref_store},
}
