"""MiniPy value operations: str/repr, arithmetic, comparison, membership."""
from __future__ import annotations

import math

from duolang.bridge import (Adapter, PhpArrayAsPyDict, PhpArrayAsPyList, PhpCallableInPy,
                            PhpGenericInPy, PhpRefInPy, PyListAsSpecialPyDict)
from duolang.exc import py_error
from duolang.values import (INT_MAX, INT_MIN, BoundMethod, PyBuiltin, PyClass, PyFunction,
                            PyInstance, PyModule, identical)

_ADAPTER_NAMES = {
    PhpGenericInPy: "PHPObject",
    PhpCallableInPy: "PHPFunction",
    PhpRefInPy: "PHPRef",
    PhpArrayAsPyDict: "PHPArrayDict",
    PhpArrayAsPyList: "PHPArrayList",
    PyListAsSpecialPyDict: "PyListDict",
}

DICTISH = (PhpArrayAsPyDict, PyListAsSpecialPyDict)


def type_name(v) -> str:
    if v is None:
        return "NoneType"
    t = type(v)
    if t in _ADAPTER_NAMES:
        return _ADAPTER_NAMES[t]
    if t is PyInstance or isinstance(v, PyInstance):
        return v.cls.name
    if t is PyFunction:
        return "function"
    if t is PyBuiltin:
        return "builtin_function_or_method"
    if t is BoundMethod:
        return "method"
    if t is PyClass:
        return "type"
    if t is PyModule:
        return "module"
    return t.__name__


def norm(x):
    if type(x) is int and not INT_MIN <= x <= INT_MAX:
        return float(x)
    return x


# ---------------------------------------------------------------------------
# str / repr


def _float_repr(f: float) -> str:
    return repr(f)


def py_repr(v) -> str:
    if v is None:
        return "None"
    t = type(v)
    if t is bool:
        return "True" if v else "False"
    if t is int:
        return str(v)
    if t is float:
        return _float_repr(v)
    if t is str:
        return repr(v)
    if t is list:
        return "[" + ", ".join(py_repr(x) for x in v) + "]"
    if t is tuple:
        if len(v) == 1:
            return "(" + py_repr(v[0]) + ",)"
        return "(" + ", ".join(py_repr(x) for x in v) + ")"
    if t is dict:
        return "{" + ", ".join(f"{py_repr(k)}: {py_repr(x)}" for k, x in v.items()) + "}"
    if t is PhpArrayAsPyDict or t is PyListAsSpecialPyDict:
        return "{" + ", ".join(f"{py_repr(k)}: {py_repr(x)}" for k, x in v.py_items()) + "}"
    if t is PhpArrayAsPyList:
        return "[" + ", ".join(py_repr(x) for x in v.py_iter()) + "]"
    if t is PhpRefInPy:
        return f"PHPRef({py_repr(v.deref())})"
    if t is PhpGenericInPy:
        return f"<PHP object {v.target.cls.name}>"
    if t is PhpCallableInPy:
        return f"<PHP function {getattr(v.target, 'name', '?')}>"
    if isinstance(v, PyInstance):
        if v.cls.is_subclass_of(_base_exception()):
            args = v.attrs.get("args", ())
            inner = ", ".join(py_repr(a) for a in args) if isinstance(args, tuple) else ""
            return f"{v.cls.name}({inner})"
        hook = _user_hook(v, "__repr__")
        if hook is not None:
            return hook
        return f"<{v.cls.name} object>"
    if t is PyFunction:
        return f"<function {v.name}>"
    if t is PyBuiltin:
        return f"<built-in function {v.name}>"
    if t is BoundMethod:
        return f"<bound method {getattr(v.func, 'name', '?')} of {py_repr(v.self_)}>"
    if t is PyClass:
        return f"<class '{v.name}'>"
    if t is PyModule:
        return f"<module '{v.name}'>"
    if isinstance(v, Adapter):
        return f"<{v.kind.value}>"
    return repr(v)


def py_str(v) -> str:
    t = type(v)
    if t is str:
        return v
    if isinstance(v, PyInstance):
        if v.cls.is_subclass_of(_base_exception()):
            args = v.attrs.get("args", ())
            if isinstance(args, tuple):
                if len(args) == 1:
                    return py_str(args[0])
                if not args:
                    return ""
            return py_repr(args)
        hook = _user_hook(v, "__str__")
        if hook is not None:
            return hook
    return py_repr(v)


def _base_exception():
    from duolang.exc import PY_BASE_EXCEPTION
    return PY_BASE_EXCEPTION


def _user_hook(inst, name):
    try:
        fn = inst.cls.lookup(name)
    except KeyError:
        return None
    if type(fn) is not PyFunction:
        return None
    from duolang.context import current_context
    out = current_context().py.call_function(fn, [inst], None)
    if type(out) is not str:
        raise py_error("TypeError", f"{name} returned non-string (type {type_name(out)})")
    return out


# ---------------------------------------------------------------------------
# arithmetic


def _unsupported(op, a, b):
    return py_error("TypeError", f"unsupported operand type(s) for {op}: "
                                 f"'{type_name(a)}' and '{type_name(b)}'")


def _num(v):
    t = type(v)
    if t is int or t is float:
        return v
    if t is bool:
        return int(v)
    return None


def add(a, b):
    ta, tb = type(a), type(b)
    if ta is int and tb is int:
        return norm(a + b)
    if ta is str and tb is str:
        return a + b
    if ta is list and tb is list:
        return a + b
    if ta is tuple and tb is tuple:
        return a + b
    x, y = _num(a), _num(b)
    if x is None or y is None:
        if ta is list and tb is PhpArrayAsPyList:
            return a + list(b.py_iter())
        raise _unsupported("+", a, b)
    return norm(x + y)


def sub(a, b):
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("-", a, b)
    return norm(x - y)


def mul(a, b):
    ta, tb = type(a), type(b)
    if ta is int and tb is int:
        return norm(a * b)
    if (ta is str or ta is list or ta is tuple) and (tb is int or tb is bool):
        return a * b
    if (tb is str or tb is list or tb is tuple) and (ta is int or ta is bool):
        return b * a
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("*", a, b)
    return norm(x * y)


def truediv(a, b):
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("/", a, b)
    if y == 0:
        raise py_error("ZeroDivisionError", "division by zero")
    try:
        return x / y
    except OverflowError:
        return math.copysign(math.inf, x) * math.copysign(1.0, y)


def floordiv(a, b):
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("//", a, b)
    if y == 0:
        if type(x) is int and type(y) is int:
            raise py_error("ZeroDivisionError", "integer division or modulo by zero")
        raise py_error("ZeroDivisionError", "float floor division by zero")
    return norm(x // y)


def mod(a, b):
    if type(a) is str:
        raise py_error("TypeError", "string formatting with % is not supported")
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("%", a, b)
    if y == 0:
        if type(x) is int and type(y) is int:
            raise py_error("ZeroDivisionError", "integer division or modulo by zero")
        raise py_error("ZeroDivisionError", "float modulo")
    return x % y


def power(a, b):
    x, y = _num(a), _num(b)
    if x is None or y is None:
        raise _unsupported("** or pow()", a, b)
    if type(x) is int and type(y) is int:
        if y < 0:
            if x == 0:
                raise py_error("ZeroDivisionError",
                               "0.0 cannot be raised to a negative power")
            return float(x) ** y
        if abs(x) > 1 and y > 64:
            return float(x) ** y if abs(x) < 2 ** 64 else math.inf
        return norm(x ** y)
    if x == 0 and y < 0:
        raise py_error("ZeroDivisionError", "0.0 cannot be raised to a negative power")
    try:
        r = x ** y
    except OverflowError:
        return math.inf
    if isinstance(r, complex):
        raise py_error("ValueError", "math domain error")
    return r


def neg(a):
    x = _num(a)
    if x is None:
        raise py_error("TypeError", f"bad operand type for unary -: '{type_name(a)}'")
    return norm(-x)


def pos(a):
    x = _num(a)
    if x is None:
        raise py_error("TypeError", f"bad operand type for unary +: '{type_name(a)}'")
    return x


def invert(a):
    if type(a) is int or type(a) is bool:
        return ~int(a)
    raise py_error("TypeError", f"bad operand type for unary ~: '{type_name(a)}'")


BINOPS = {"+": add, "-": sub, "*": mul, "/": truediv, "//": floordiv, "%": mod, "**": power}


# ---------------------------------------------------------------------------
# comparison


def _as_sequence(v):
    t = type(v)
    if t is list or t is tuple:
        return v
    if t is PhpArrayAsPyList:
        return list(v.py_iter())
    return None


def _as_mapping(v):
    t = type(v)
    if t is dict:
        return v
    if t is PhpArrayAsPyDict or t is PyListAsSpecialPyDict:
        return dict(v.py_items())
    return None


def py_eq(a, b) -> bool:
    ta, tb = type(a), type(b)
    if ta is tb and (ta is int or ta is str or ta is float):
        return a == b
    x, y = _num(a), _num(b)
    if x is not None and y is not None:
        return x == y
    if a is None or b is None:
        return a is b
    if ta is str or tb is str:
        return False
    if ta is tuple or tb is tuple:
        if ta is not tb:
            return False
    sa, sb = _as_sequence(a), _as_sequence(b)
    if sa is not None and sb is not None:
        if ta is tuple and tb is not tuple:
            return False
        return len(sa) == len(sb) and all(py_eq(p, q) for p, q in zip(sa, sb))
    ma, mb = _as_mapping(a), _as_mapping(b)
    if ma is not None and mb is not None:
        if len(ma) != len(mb):
            return False
        for k, v in ma.items():
            if k not in mb or not py_eq(v, mb[k]):
                return False
        return True
    if isinstance(a, Adapter) or isinstance(b, Adapter):
        return identical(a, b)
    return a is b


def _order(op, a, b) -> bool:
    x, y = _num(a), _num(b)
    if x is not None and y is not None:
        return _CMP[op](x, y)
    ta, tb = type(a), type(b)
    if ta is str and tb is str:
        return _CMP[op](a, b)
    sa, sb = _as_sequence(a), _as_sequence(b)
    if sa is not None and sb is not None and (ta is tuple) == (tb is tuple):
        for p, q in zip(sa, sb):
            if not py_eq(p, q):
                return _order(op, p, q)
        return _CMP[op](len(sa), len(sb))
    raise py_error("TypeError", f"'{op}' not supported between instances of "
                                f"'{type_name(a)}' and '{type_name(b)}'")


_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def py_lt(a, b) -> bool:
    return _order("<", a, b)


def contains(container, item) -> bool:
    t = type(container)
    if t is list or t is tuple:
        for x in container:
            if x is item or py_eq(x, item):
                return True
        return False
    if t is dict:
        check_hashable(item)
        return item in container
    if t is str:
        if type(item) is not str:
            raise py_error("TypeError", f"'in <string>' requires string as left operand, "
                                        f"not {type_name(item)}")
        return item in container
    if t in (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict):
        return container.py_contains(item)
    raise py_error("TypeError", f"argument of type '{type_name(container)}' is not iterable")


def compare(op: str, a, b) -> bool:
    if op == "==":
        return py_eq(a, b)
    if op == "!=":
        return not py_eq(a, b)
    if op == "in":
        return contains(b, a)
    if op == "not in":
        return not contains(b, a)
    if op == "is":
        return _is(a, b)
    if op == "is not":
        return not _is(a, b)
    return _order(op, a, b)


def _is(a, b) -> bool:
    if a is b:
        return True
    return identical(a, b) if isinstance(a, Adapter) or type(a) in (int, float, str) else False


def check_hashable(key):
    t = type(key)
    if key is None or t is int or t is str or t is bool:
        return key
    raise py_error("TypeError", f"unhashable type: '{type_name(key)}'")


