"""PHP value semantics: string conversion, arithmetic, comparison, print_r."""
from __future__ import annotations

import math

from duolang.bridge import Adapter, PyDictAsPhpArray, PyListAsPhpArray
from duolang.exc import php_error
from duolang.values import (INT_MAX, INT_MIN, PhpArray, PhpClass, PhpObject, deref,
                            identical, norm_int)

PHP_ARRAYS = (PhpArray, PyListAsPhpArray, PyDictAsPhpArray)


def type_name(v) -> str:
    if v is None:
        return "null"
    t = type(v)
    if t is bool:
        return "bool"
    if t is int:
        return "int"
    if t is float:
        return "float"
    if t is str:
        return "string"
    if t in PHP_ARRAYS:
        return "array"
    if isinstance(v, PhpObject):
        return v.cls.name
    return "object"


def float_to_str(f: float) -> str:
    if math.isnan(f):
        return "NAN"
    if math.isinf(f):
        return "INF" if f > 0 else "-INF"
    s = "%.14G" % f
    if "E" in s:
        mant, exp = s.split("E")
        if "." not in mant:
            mant += ".0"
        sign = exp[0]
        digits = exp[1:].lstrip("0") or "0"
        return f"{mant}E{sign}{digits}"
    if s == "-0":
        return "-0"
    return s


def to_str(v) -> str:
    """PHP string conversion, as used by echo and ``.``."""
    t = type(v)
    if t is str:
        return v
    if t is int:
        return str(v)
    if v is None:
        return ""
    if t is bool:
        return "1" if v else ""
    if t is float:
        return float_to_str(v)
    if t in PHP_ARRAYS:
        return "Array"
    if isinstance(v, Adapter):
        from duolang.minipy.ops import py_str
        return py_str(v.target)
    if isinstance(v, PhpObject):
        if v.cls.find_method("__tostring") is not None:
            return _call_to_string(v)
        raise php_error(f"Object of class {v.cls.name} could not be converted to string")
    if isinstance(v, PhpClass):
        return v.name
    return str(v)


def _call_to_string(obj):
    from duolang.context import current_context
    ctx = current_context()
    return to_str(ctx.php.call_method(obj, "__toString", []))


def _number(v, op: str):
    t = type(v)
    if t is int or t is float:
        return v
    if t is bool:
        return int(v)
    if v is None:
        return 0
    raise php_error(f"Unsupported operand types: {type_name(v)} {op} number", "TypeError")


def _check_operands(a, b, op):
    ta, tb = type(a), type(b)
    if (ta is int or ta is float) and (tb is int or tb is float):
        return a, b
    if ta in PHP_ARRAYS or tb in PHP_ARRAYS or ta is str or tb is str \
            or isinstance(a, (PhpObject, Adapter)) or isinstance(b, (PhpObject, Adapter)):
        raise php_error(f"Unsupported operand types: {type_name(a)} {op} {type_name(b)}",
                        "TypeError")
    return _number(a, op), _number(b, op)


def add(a, b):
    ta, tb = type(a), type(b)
    if ta is int and tb is int:
        r = a + b
        return r if INT_MIN <= r <= INT_MAX else float(r)
    if ta is PhpArray and tb is PhpArray:
        out = a.copy()
        for k, v in b.entries.items():
            if k not in out.entries:
                out.set_inplace(k, v)
        return out
    a, b = _check_operands(a, b, "+")
    if type(a) is int and type(b) is int:
        return norm_int(a + b)
    return float(a) + float(b)


def sub(a, b):
    if type(a) is int and type(b) is int:
        r = a - b
        return r if INT_MIN <= r <= INT_MAX else float(r)
    a, b = _check_operands(a, b, "-")
    if type(a) is int and type(b) is int:
        return norm_int(a - b)
    return float(a) - float(b)


def mul(a, b):
    if type(a) is int and type(b) is int:
        r = a * b
        return r if INT_MIN <= r <= INT_MAX else float(r)
    a, b = _check_operands(a, b, "*")
    if type(a) is int and type(b) is int:
        return norm_int(a * b)
    return float(a) * float(b)


def div(a, b):
    a, b = _check_operands(a, b, "/")
    if b == 0:
        raise php_error("Division by zero", "DivisionByZeroError")
    if type(a) is int and type(b) is int and a % b == 0:
        return norm_int(a // b)
    return float(a) / float(b)


def _int_operands(a, b, op):
    a, b = _check_operands(a, b, op)
    return to_int(a), to_int(b)


def bit_and(a, b):
    a, b = _int_operands(a, b, "&")
    return a & b


def bit_or(a, b):
    a, b = _int_operands(a, b, "|")
    return a | b


def bit_xor(a, b):
    a, b = _int_operands(a, b, "^")
    return a ^ b


def _wrap64(x: int) -> int:
    x &= (1 << 64) - 1
    return x - (1 << 64) if x >= 1 << 63 else x


def shift_left(a, b):
    a, b = _int_operands(a, b, "<<")
    if b < 0:
        raise php_error("Bit shift by negative number", "ArithmeticError")
    return 0 if b >= 64 else _wrap64(a << b)


def shift_right(a, b):
    a, b = _int_operands(a, b, ">>")
    if b < 0:
        raise php_error("Bit shift by negative number", "ArithmeticError")
    return (-1 if a < 0 else 0) if b >= 64 else a >> b


def bit_not(a):
    if type(a) is float:
        a = to_int(a)
    if type(a) is not int:
        raise php_error(f"Cannot perform bitwise not on {type_name(a)}", "TypeError")
    return ~a


def mod(a, b):
    a, b = _check_operands(a, b, "%")
    a, b = int(a), int(b)
    if b == 0:
        raise php_error("Modulo by zero", "DivisionByZeroError")
    r = abs(a) % abs(b)
    return -r if a < 0 else r


def power(a, b):
    a, b = _check_operands(a, b, "**")
    if type(a) is int and type(b) is int and b >= 0:
        return norm_int(a ** b)
    try:
        return float(a) ** float(b)
    except ZeroDivisionError:
        raise php_error("Division by zero", "DivisionByZeroError") from None


def concat(a, b) -> str:
    return to_str(a) + to_str(b)


def negate(a):
    if type(a) is int:
        return norm_int(-a)
    a = _check_operands(a, 0, "*")[0]
    return -a


def loose_equal(a, b) -> bool:
    """``==``: numbers compare numerically, arrays element-wise, else same type."""
    ta, tb = type(a), type(b)
    if (ta is int or ta is float) and (tb is int or tb is float):
        return a == b
    if ta in PHP_ARRAYS and tb in PHP_ARRAYS:
        ia = dict(array_items(a))
        ib = dict(array_items(b))
        if ia.keys() != ib.keys():
            return False
        return all(loose_equal(v, ib[k]) for k, v in ia.items())
    if ta is not tb:
        if isinstance(a, Adapter) and isinstance(b, Adapter):
            return identical(a, b)
        return False
    if isinstance(a, PhpObject):
        if a is b:
            return True
        if a.cls is not b.cls or a.attrs.keys() != b.attrs.keys():
            return False
        return all(loose_equal(deref(v), deref(b.attrs[k])) for k, v in a.attrs.items())
    return identical(a, b)


def compare(a, b) -> int:
    """Ordering for ``<`` and friends; mixed incomparable types are an error."""
    ta, tb = type(a), type(b)
    if (ta is int or ta is float or ta is bool or a is None) and \
            (tb is int or tb is float or tb is bool or b is None):
        a = 0 if a is None else a
        b = 0 if b is None else b
        return (a > b) - (a < b)
    if ta is str and tb is str:
        return (a > b) - (a < b)
    if ta in PHP_ARRAYS and tb in PHP_ARRAYS:
        ca, cb = array_count(a), array_count(b)
        if ca != cb:
            return (ca > cb) - (ca < cb)
        ib = dict(array_items(b))
        for k, v in array_items(a):
            if k not in ib:
                raise php_error("Uncomparable arrays", "TypeError")
            c = compare(v, ib[k])
            if c:
                return c
        return 0
    raise php_error(f"Cannot compare {type_name(a)} with {type_name(b)}", "TypeError")


# ---------------------------------------------------------------------------
# generic array access (native arrays and adapted Python collections)


def array_items(a):
    if type(a) is PhpArray:
        return a.entries.items()
    return a.php_items()


def array_count(a) -> int:
    if type(a) is PhpArray:
        return len(a.entries)
    return a.php_count()


def to_int(v) -> int:
    t = type(v)
    if t is int:
        return v
    if t is bool:
        return int(v)
    if t is float:
        if math.isnan(v) or math.isinf(v):
            return 0
        return norm_int(int(v)) if INT_MIN <= v <= INT_MAX else 0
    if v is None:
        return 0
    if t is str:
        s = v.strip()
        i = 0
        if s[:1] in "+-":
            i = 1
        while i < len(s) and s[i].isdigit():
            i += 1
        try:
            return int(s[:i])
        except ValueError:
            return 0
    if t in PHP_ARRAYS:
        return 1 if array_count(v) else 0
    return 1


def to_float(v) -> float:
    t = type(v)
    if t is float:
        return v
    if t is str:
        try:
            return float(v.strip())
        except ValueError:
            return float(to_int(v))
    return float(to_int(v))


# ---------------------------------------------------------------------------
# print_r


def print_r(v, indent: int = 0) -> str:
    v = deref(v)
    if type(v) in PHP_ARRAYS:
        return _print_r_entries("Array", array_items(v), indent)
    if isinstance(v, PhpObject):
        items = []
        for k, val in v.attrs.items():
            access = _prop_access(v.cls, k)
            label = k if access == "public" else f"{k}:{access}"
            items.append((label, val))
        return _print_r_entries(f"{v.cls.name} Object", items, indent)
    return to_str(v)


def _prop_access(cls, name):
    while cls is not None:
        for pname, _default, access, static in cls.props:
            if pname == name and not static:
                if access == "private":
                    return f"{cls.name}:private"
                return access
        cls = cls.parent
    return "public"


def _print_r_entries(head: str, items, indent: int) -> str:
    pad = " " * indent
    out = [head, "\n", pad, "(\n"]
    for k, val in items:
        out.append(f"{pad}    [{k}] => ")
        out.append(print_r(val, indent + 8))
        out.append("\n")
    out.append(pad)
    out.append(")\n")
    return "".join(out)


def var_export_scalar(v) -> str:
    if v is None:
        return "NULL"
    if type(v) is bool:
        return "true" if v else "false"
    if type(v) is str:
        return "'" + v.replace("\\", "\\\\").replace("'", "\\'") + "'"
    return to_str(v)


def var_dump(v, indent: int = 0) -> str:
    v = deref(v)
    pad = " " * indent
    t = type(v)
    if v is None:
        return pad + "NULL\n"
    if t is bool:
        return f"{pad}bool({'true' if v else 'false'})\n"
    if t is int:
        return f"{pad}int({v})\n"
    if t is float:
        s = float_to_str(v) if not v.is_integer() or abs(v) >= 1e15 else str(int(v))
        return f"{pad}float({s})\n"
    if t is str:
        return f'{pad}string({len(v.encode())}) "{v}"\n'
    if t in PHP_ARRAYS:
        out = [f"{pad}array({array_count(v)}) {{\n"]
        for k, val in array_items(v):
            key = k if type(k) is int else f'"{k}"'
            out.append(f"{pad}  [{key}]=>\n")
            out.append(var_dump(val, indent + 2))
        out.append(pad + "}\n")
        return "".join(out)
    if isinstance(v, PhpObject):
        out = [f"{pad}object({v.cls.name})#{id(v) % 1000} ({len(v.attrs)}) {{\n"]
        for k, val in v.attrs.items():
            out.append(f'{pad}  ["{k}"]=>\n')
            out.append(var_dump(val, indent + 2))
        out.append(pad + "}\n")
        return "".join(out)
    return f"{pad}object({type(v).__name__})\n"


__all__ = [
    "PHP_ARRAYS", "add", "array_count", "array_items", "compare", "concat", "div",
    "float_to_str", "loose_equal", "mod", "mul", "negate", "power", "print_r", "sub",
    "to_float", "to_int", "to_str", "type_name", "var_dump",
]
