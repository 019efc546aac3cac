"""MiniPy built-in functions and classes."""
from __future__ import annotations

import math

from duolang.bridge import (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict,
                            new_phpref)
from duolang.exc import PY_EXCEPTIONS, py_error
from duolang.minipy import ops
from duolang.minipy.methods import sort_values
from duolang.values import (BoundMethod, Lang, PyBuiltin, PyClass, PyFunction, PyInstance,
                            truthy)

OBJECT = PyClass("object")


def _no_kwargs(name, kwargs):
    if kwargs:
        raise py_error("TypeError", f"{name}() takes no keyword arguments")


def _nargs(name, args, lo, hi=None):
    hi = lo if hi is None else hi
    if not lo <= len(args) <= hi:
        if lo == hi:
            raise py_error("TypeError", f"{name}() takes exactly {lo} argument"
                                        f"{'' if lo == 1 else 's'} ({len(args)} given)")
        raise py_error("TypeError", f"{name} expected at most {hi} arguments, got {len(args)}")


def _int_arg(name, v):
    if type(v) is bool:
        return int(v)
    if type(v) is not int:
        raise py_error("TypeError", f"'{ops.type_name(v)}' object cannot be interpreted "
                                    f"as an integer")
    return v


def py_print(interp, args, kwargs):
    sep, end = " ", "\n"
    if kwargs:
        for k, v in kwargs.items():
            if k == "sep":
                sep = " " if v is None else v
            elif k == "end":
                end = "\n" if v is None else v
            else:
                raise py_error("TypeError", f"'{k}' is an invalid keyword argument for print()")
    interp.ctx.write(sep.join(ops.py_str(a) for a in args) + end)


def py_len(interp, args, kwargs):
    _no_kwargs("len", kwargs)
    _nargs("len", args, 1)
    return interp.length(args[0])


def py_range(interp, args, kwargs):
    _no_kwargs("range", kwargs)
    if not 1 <= len(args) <= 3:
        raise py_error("TypeError", f"range expected at most 3 arguments, got {len(args)}")
    vals = [_int_arg("range", a) for a in args]
    if len(vals) == 1:
        return list(range(vals[0]))
    if len(vals) == 3 and vals[2] == 0:
        raise py_error("ValueError", "range() arg 3 must not be zero")
    return list(range(*vals))


def py_str(interp, args, kwargs):
    _no_kwargs("str", kwargs)
    _nargs("str", args, 0, 1)
    return ops.py_str(args[0]) if args else ""


def py_repr(interp, args, kwargs):
    _no_kwargs("repr", kwargs)
    _nargs("repr", args, 1)
    return ops.py_repr(args[0])


def py_int(interp, args, kwargs):
    _no_kwargs("int", kwargs)
    _nargs("int", args, 0, 1)
    if not args:
        return 0
    v = args[0]
    t = type(v)
    if t is int:
        return v
    if t is bool:
        return int(v)
    if t is float:
        if math.isnan(v):
            raise py_error("ValueError", "cannot convert float NaN to integer")
        if math.isinf(v):
            raise py_error("OverflowError", "cannot convert float infinity to integer")
        return ops.norm(int(v))
    if t is str:
        text = v.strip().replace("_", "")
        try:
            return ops.norm(int(text, 10))
        except ValueError:
            raise py_error("ValueError",
                           f"invalid literal for int() with base 10: {v!r}") from None
    raise py_error("TypeError", f"int() argument must be a string or a number, "
                                f"not '{ops.type_name(v)}'")


def py_float(interp, args, kwargs):
    _no_kwargs("float", kwargs)
    _nargs("float", args, 0, 1)
    if not args:
        return 0.0
    v = args[0]
    t = type(v)
    if t is float:
        return v
    if t is int or t is bool:
        return float(v)
    if t is str:
        try:
            return float(v.strip())
        except ValueError:
            raise py_error("ValueError", f"could not convert string to float: {v!r}") from None
    raise py_error("TypeError", f"float() argument must be a string or a number, "
                                f"not '{ops.type_name(v)}'")


def py_bool(interp, args, kwargs):
    _no_kwargs("bool", kwargs)
    _nargs("bool", args, 0, 1)
    return truthy(args[0], Lang.PY) if args else False


def py_abs(interp, args, kwargs):
    _no_kwargs("abs", kwargs)
    _nargs("abs", args, 1)
    v = args[0]
    if type(v) is bool:
        return int(v)
    if type(v) not in (int, float):
        raise py_error("TypeError", f"bad operand type for abs(): '{ops.type_name(v)}'")
    return ops.norm(abs(v))


def _minmax(name, interp, args, kwargs, pick_first):
    key = None
    default = _NO_DEFAULT = object()
    if kwargs:
        for k, v in kwargs.items():
            if k == "key":
                key = v
            elif k == "default":
                default = v
            else:
                raise py_error("TypeError", f"'{k}' is an invalid keyword argument for {name}()")
    if not args:
        raise py_error("TypeError", f"{name} expected at least 1 argument, got 0")
    items = list(interp.iterate(args[0])) if len(args) == 1 else list(args)
    if not items:
        if default is not _NO_DEFAULT:
            return default
        raise py_error("ValueError", f"{name}() arg is an empty sequence")
    best = items[0]
    best_key = best if key is None else interp.call(key, [best], None)
    for v in items[1:]:
        k = v if key is None else interp.call(key, [v], None)
        if pick_first(k, best_key):
            best, best_key = v, k
    return best


def py_min(interp, args, kwargs):
    return _minmax("min", interp, args, kwargs, ops.py_lt)


def py_max(interp, args, kwargs):
    return _minmax("max", interp, args, kwargs, lambda a, b: ops.py_lt(b, a))


def py_sum(interp, args, kwargs):
    _no_kwargs("sum", kwargs)
    _nargs("sum", args, 1, 2)
    total = args[1] if len(args) > 1 else 0
    for v in interp.iterate(args[0]):
        total = ops.add(total, v)
    return total


def py_list(interp, args, kwargs):
    _no_kwargs("list", kwargs)
    _nargs("list", args, 0, 1)
    if not args:
        return []
    v = args[0]
    if type(v) is PyListAsSpecialPyDict or type(v) is PhpArrayAsPyDict:
        return v.py_keys()
    return list(interp.iterate(v))


def py_tuple(interp, args, kwargs):
    _no_kwargs("tuple", kwargs)
    _nargs("tuple", args, 0, 1)
    return tuple(interp.iterate(args[0])) if args else ()


def py_dict(interp, args, kwargs):
    _nargs("dict", args, 0, 1)
    d = {}
    if args:
        src = args[0]
        if type(src) is dict:
            d.update(src)
        elif isinstance(src, ops.DICTISH):
            d.update(src.py_items())
        else:
            for pair in interp.iterate(src):
                items = list(interp.iterate(pair))
                if len(items) != 2:
                    raise py_error("ValueError", "dictionary update sequence element has "
                                                 f"length {len(items)}; 2 is required")
                d[ops.check_hashable(items[0])] = items[1]
    if kwargs:
        d.update(kwargs)
    return d


def py_sorted(interp, args, kwargs):
    _nargs("sorted", args, 1)
    kwargs = kwargs or {}
    for k in kwargs:
        if k not in ("key", "reverse"):
            raise py_error("TypeError", f"'{k}' is an invalid keyword argument for sort()")
    return sort_values(interp, interp.iterate(args[0]), kwargs.get("key"),
                       kwargs.get("reverse", False))


def py_reversed(interp, args, kwargs):
    _no_kwargs("reversed", kwargs)
    _nargs("reversed", args, 1)
    return list(interp.iterate(args[0]))[::-1]


def py_enumerate(interp, args, kwargs):
    _nargs("enumerate", args, 1, 2)
    start = args[1] if len(args) > 1 else (kwargs or {}).get("start", 0)
    return [(start + i, v) for i, v in enumerate(interp.iterate(args[0]))]


def py_zip(interp, args, kwargs):
    _no_kwargs("zip", kwargs)
    return [tuple(t) for t in zip(*[list(interp.iterate(a)) for a in args])]


def py_any(interp, args, kwargs):
    _nargs("any", args, 1)
    return any(truthy(v, Lang.PY) for v in interp.iterate(args[0]))


def py_all(interp, args, kwargs):
    _nargs("all", args, 1)
    return all(truthy(v, Lang.PY) for v in interp.iterate(args[0]))


def py_round(interp, args, kwargs):
    _nargs("round", args, 1, 2)
    v = args[0]
    if type(v) not in (int, float, bool):
        raise py_error("TypeError", f"type {ops.type_name(v)} doesn't define __round__ method")
    if len(args) == 1 or args[1] is None:
        if type(v) is float and (math.isnan(v) or math.isinf(v)):
            raise py_error("ValueError", "cannot convert float NaN or infinity to integer")
        return round(v)
    return round(v, _int_arg("round", args[1]))


def py_divmod(interp, args, kwargs):
    _nargs("divmod", args, 2)
    return (ops.floordiv(*args), ops.mod(*args))


def py_pow(interp, args, kwargs):
    _nargs("pow", args, 2)
    return ops.power(*args)


def py_chr(interp, args, kwargs):
    _nargs("chr", args, 1)
    return chr(_int_arg("chr", args[0]))


def py_ord(interp, args, kwargs):
    _nargs("ord", args, 1)
    v = args[0]
    if type(v) is not str or len(v) != 1:
        raise py_error("TypeError", "ord() expected a character")
    return ord(v)


def py_isinstance(interp, args, kwargs):
    _nargs("isinstance", args, 2)
    obj, spec = args
    specs = spec if type(spec) is tuple else (spec,)
    for s in specs:
        if type(s) is PyClass:
            if isinstance(obj, PyInstance) and obj.cls.is_subclass_of(s):
                return True
            if s is OBJECT:
                return True
        elif type(s) is PyBuiltin and "__type__" in s.attrs:
            host = s.attrs["__type__"]
            if host is int and type(obj) is bool:
                return True
            if type(obj) is host:
                return True
            if host is dict and isinstance(obj, ops.DICTISH):
                return True
            if host is list and type(obj) is PhpArrayAsPyList:
                return True
        else:
            raise py_error("TypeError", "isinstance() arg 2 must be a type or tuple of types")
    return False


def py_type(interp, args, kwargs):
    _nargs("type", args, 1)
    v = args[0]
    if isinstance(v, PyInstance):
        return v.cls
    t = type(v)
    for name, b in BUILTINS.items():
        if type(b) is PyBuiltin and b.attrs.get("__type__") is t:
            return b
    return PyBuiltin(ops.type_name(v), _not_constructible)


def _not_constructible(interp, args, kwargs):
    raise py_error("TypeError", "cannot create instances of this type")


def py_hasattr(interp, args, kwargs):
    _nargs("hasattr", args, 2)
    from duolang.exc import ScriptError
    try:
        interp.getattr(args[0], args[1])
    except ScriptError:
        return False
    return True


def py_getattr(interp, args, kwargs):
    _nargs("getattr", args, 2, 3)
    if len(args) == 3:
        from duolang.exc import ScriptError
        try:
            return interp.getattr(args[0], args[1])
        except ScriptError:
            return args[2]
    return interp.getattr(args[0], args[1])


def py_setattr(interp, args, kwargs):
    _nargs("setattr", args, 3)
    interp.setattr(*args)


def py_callable(interp, args, kwargs):
    _nargs("callable", args, 1)
    from duolang.bridge import PhpCallableInPy
    return type(args[0]) in (PyFunction, PyBuiltin, BoundMethod, PyClass, PhpCallableInPy)


def py_phpref(interp, args, kwargs):
    _no_kwargs("PHPRef", kwargs)
    _nargs("PHPRef", args, 1)
    return new_phpref(args[0])


def py_php_decor(interp, args, kwargs):
    from duolang import xcall
    if args:
        raise py_error("TypeError", "php_decor() takes keyword arguments only")
    kwargs = dict(kwargs or {})
    refs = kwargs.pop("refs", ())
    access = kwargs.pop("access", "public")
    static = kwargs.pop("static", False)
    if kwargs:
        raise py_error("TypeError",
                       f"php_decor() got an unexpected keyword argument '{next(iter(kwargs))}'")
    refs = tuple(interp.iterate(refs)) if not isinstance(refs, int) else (refs,)

    def decorate(interp2, dargs, dkwargs):
        _nargs("php_decor", dargs, 1)
        return xcall.apply_php_decor(dargs[0], refs, access, static)
    return PyBuiltin("php_decor.<decorator>", decorate)


def py_compile_php_func(interp, args, kwargs):
    from duolang import embed
    _no_kwargs("compile_php_func", kwargs)
    _nargs("compile_php_func", args, 1, 3)
    return embed.compile_php_func(interp.ctx, *args)


def _typed(name, fn, host):
    b = PyBuiltin(name, fn)
    b.attrs["__type__"] = host
    return b


_FUNCTIONS = {
    "print": py_print, "len": py_len, "range": py_range, "repr": py_repr, "abs": py_abs,
    "min": py_min, "max": py_max, "sum": py_sum, "sorted": py_sorted,
    "reversed": py_reversed, "enumerate": py_enumerate, "zip": py_zip, "any": py_any,
    "all": py_all, "round": py_round, "divmod": py_divmod, "pow": py_pow, "chr": py_chr,
    "ord": py_ord, "isinstance": py_isinstance, "type": py_type, "hasattr": py_hasattr,
    "getattr": py_getattr, "setattr": py_setattr, "callable": py_callable,
    "PHPRef": py_phpref, "php_decor": py_php_decor, "compile_php_func": py_compile_php_func,
}


def _build() -> dict:
    table: dict = {name: PyBuiltin(name, fn) for name, fn in _FUNCTIONS.items()}
    for name, fn, host in (("str", py_str, str), ("int", py_int, int),
                           ("float", py_float, float), ("bool", py_bool, bool),
                           ("list", py_list, list), ("tuple", py_tuple, tuple),
                           ("dict", py_dict, dict)):
        table[name] = _typed(name, fn, host)
    table["object"] = OBJECT
    table.update(PY_EXCEPTIONS)
    return table


BUILTINS = _build()


def builtin_namespace() -> dict:
    """A fresh builtins dict for one context."""
    return dict(BUILTINS)


