"""MiniPHP's built-in function library."""
from __future__ import annotations

import math
import time

from duolang.exc import php_error
from duolang.miniphp import ops
from duolang.values import PhpArray, PhpBuiltin, PhpObject, cow_delete, cow_write

_ARRAYS = ops.PHP_ARRAYS


def _arity(name, args, lo, hi=None):
    hi = lo if hi is None else hi
    if not lo <= len(args) <= hi:
        expected = str(lo) if lo == hi else f"{lo} to {hi}"
        raise php_error(f"{name}() expects {expected} arguments, {len(args)} given",
                        "ArgumentCountError")


def _array_arg(name, v, pos=1):
    if type(v) not in _ARRAYS:
        raise php_error(f"{name}(): Argument #{pos} must be of type array, "
                        f"{ops.type_name(v)} given", "TypeError")
    return v


def _number_arg(name, v, pos=1):
    if type(v) is int or type(v) is float:
        return v
    if type(v) is bool or v is None:
        return int(bool(v))
    raise php_error(f"{name}(): Argument #{pos} must be of type int|float, "
                    f"{ops.type_name(v)} given", "TypeError")


def php_count(interp, args):
    _arity("count", args, 1, 2)
    return ops.array_count(_array_arg("count", args[0]))


def php_print_r(interp, args):
    _arity("print_r", args, 1, 2)
    text = ops.print_r(args[0])
    if len(args) > 1 and args[1]:
        return text
    interp.ctx.write(text)
    return True


def php_var_dump(interp, args):
    for a in args:
        interp.ctx.write(ops.var_dump(a))
    return None


def php_range(interp, args):
    _arity("range", args, 2, 3)
    start, end = args[0], args[1]
    step = args[2] if len(args) > 2 else 1
    for i, v in enumerate((start, end, step)):
        _number_arg("range", v, i + 1)
    if step == 0:
        raise php_error("range(): Argument #3 ($step) cannot be 0", "ValueError")
    step = abs(step)
    use_float = any(type(v) is float for v in (start, end, step))
    out = []
    if use_float:
        n = int(math.floor(abs(end - start) / step + 1e-9))
        sign = 1 if end >= start else -1
        out = [float(start + sign * i * step) for i in range(n + 1)]
    elif start <= end:
        out = list(range(start, end + 1, step))
    else:
        out = list(range(start, end - 1, -step))
    return PhpArray.from_list(out)


def php_strlen(interp, args):
    _arity("strlen", args, 1)
    return len(ops.to_str(args[0]).encode())


def php_str_repeat(interp, args):
    _arity("str_repeat", args, 2)
    return ops.to_str(args[0]) * max(0, ops.to_int(args[1]))


def php_substr_count(interp, args):
    _arity("substr_count", args, 2)
    needle = ops.to_str(args[1])
    if not needle:
        raise php_error("substr_count(): Argument #2 ($needle) cannot be empty", "ValueError")
    return ops.to_str(args[0]).count(needle)


def php_implode(interp, args):
    _arity("implode", args, 1, 2)
    if len(args) == 1:
        sep, arr = "", args[0]
    elif type(args[0]) in _ARRAYS:
        arr, sep = args[0], args[1]
    else:
        sep, arr = args[0], args[1]
    _array_arg("implode", arr, 2)
    return ops.to_str(sep).join(ops.to_str(v) for _, v in ops.array_items(arr))


def php_explode(interp, args):
    _arity("explode", args, 2)
    sep = ops.to_str(args[0])
    if sep == "":
        raise php_error("explode(): Argument #1 ($separator) cannot be empty", "ValueError")
    return PhpArray.from_list(ops.to_str(args[1]).split(sep))


def php_abs(interp, args):
    _arity("abs", args, 1)
    v = _number_arg("abs", args[0])
    return ops.negate(v) if v < 0 else v


def php_floor(interp, args):
    _arity("floor", args, 1)
    return float(math.floor(_number_arg("floor", args[0])))


def php_ceil(interp, args):
    _arity("ceil", args, 1)
    return float(math.ceil(_number_arg("ceil", args[0])))


def php_round(interp, args):
    _arity("round", args, 1, 2)
    v = _number_arg("round", args[0])
    places = ops.to_int(args[1]) if len(args) > 1 else 0
    m = 10.0 ** places
    x = abs(v) * m
    r = math.floor(x + 0.5) / m
    return float(-r if v < 0 else r)


def php_sqrt(interp, args):
    _arity("sqrt", args, 1)
    v = _number_arg("sqrt", args[0])
    return math.sqrt(v) if v >= 0 else math.nan


def php_intval(interp, args):
    _arity("intval", args, 1)
    return ops.to_int(args[0])


def php_floatval(interp, args):
    _arity("floatval", args, 1)
    return ops.to_float(args[0])


def php_strval(interp, args):
    _arity("strval", args, 1)
    return ops.to_str(args[0])


def _minmax(name, args, pick):
    if len(args) == 1:
        items = [v for _, v in ops.array_items(_array_arg(name, args[0]))]
        if not items:
            raise php_error(f"{name}(): Argument #1 ($value) must contain at least one element",
                            "ValueError")
    else:
        items = list(args)
        if not items:
            raise php_error(f"{name}() expects at least 1 argument, 0 given",
                            "ArgumentCountError")
    best = items[0]
    for v in items[1:]:
        if pick(ops.compare(v, best)):
            best = v
    return best


def php_min(interp, args):
    return _minmax("min", args, lambda c: c < 0)


def php_max(interp, args):
    return _minmax("max", args, lambda c: c > 0)


def php_define(interp, args):
    _arity("define", args, 2)
    name = ops.to_str(args[0])
    if not interp.globals.add_constant(name, args[1]):
        interp.ctx.write(f"\nWarning: Constant {name} already defined\n")
        return False
    return True


def php_defined(interp, args):
    _arity("defined", args, 1)
    return ops.to_str(args[0]) in interp.globals.constants


def _type_check(pred):
    def fn(interp, args):
        _arity("is_*", args, 1)
        return pred(args[0])
    return fn


def php_gettype(interp, args):
    _arity("gettype", args, 1)
    v = args[0]
    names = {type(None): "NULL", bool: "boolean", int: "integer", float: "double",
             str: "string"}
    if type(v) in names:
        return names[type(v)]
    if type(v) in _ARRAYS:
        return "array"
    return "object"


def php_microtime(interp, args):
    t = time.time()
    if args and args[0]:
        return t
    frac, whole = math.modf(t)
    return f"{frac:.8f} {int(whole)}"


def php_array_keys(interp, args):
    _arity("array_keys", args, 1)
    return PhpArray.from_list([k for k, _ in ops.array_items(_array_arg("array_keys", args[0]))])


def php_array_values(interp, args):
    _arity("array_values", args, 1)
    return PhpArray.from_list([v for _, v in ops.array_items(_array_arg("array_values", args[0]))])


def php_array_key_exists(interp, args):
    _arity("array_key_exists", args, 2)
    arr = _array_arg("array_key_exists", args[1], 2)
    if type(arr) is PhpArray:
        from duolang.values import normalize_key
        return normalize_key(args[0]) in arr.entries
    return arr.php_has(args[0])


def php_in_array(interp, args):
    _arity("in_array", args, 2, 3)
    strict = len(args) > 2 and bool(args[2])
    from duolang.values import identical
    eq = identical if strict else ops.loose_equal
    return any(eq(v, args[0]) for _, v in ops.array_items(_array_arg("in_array", args[1], 2)))


def php_array_sum(interp, args):
    _arity("array_sum", args, 1)
    total = 0
    for _, v in ops.array_items(_array_arg("array_sum", args[0])):
        total = ops.add(total, v)
    return total


def php_array_reverse(interp, args):
    _arity("array_reverse", args, 1)
    items = list(ops.array_items(_array_arg("array_reverse", args[0])))
    out = PhpArray()
    for k, v in reversed(items):
        if type(k) is int:
            out.append_inplace(v)
        else:
            out.set_inplace(k, v)
    return out


def php_array_slice(interp, args):
    _arity("array_slice", args, 2, 3)
    items = list(ops.array_items(_array_arg("array_slice", args[0])))
    offset = ops.to_int(args[1])
    length = None if len(args) < 3 or args[2] is None else ops.to_int(args[2])
    if offset < 0:
        offset = max(0, len(items) + offset)
    end = len(items) if length is None else (offset + length if length >= 0
                                             else len(items) + length)
    out = PhpArray()
    for k, v in items[offset:end]:
        if type(k) is int:
            out.append_inplace(v)
        else:
            out.set_inplace(k, v)
    return out


def _ref_array(name, ref):
    arr = ref.value
    if arr is None:
        arr = ref.value = PhpArray()
    return _array_arg(name, arr)


def php_array_push(interp, args):
    if not args:
        raise php_error("array_push() expects at least 1 argument, 0 given", "ArgumentCountError")
    ref = args[0]
    arr = _ref_array("array_push", ref)
    if type(arr) is PhpArray:
        for v in args[1:]:
            arr = cow_write(arr, None, v, True)
        ref.value = arr
    else:
        for v in args[1:]:
            arr.php_set(None, v)
    return ops.array_count(arr)


def php_array_pop(interp, args):
    _arity("array_pop", args, 1)
    ref = args[0]
    arr = _ref_array("array_pop", ref)
    if type(arr) is not PhpArray:
        raise php_error("array_pop() is not supported on adapted Python collections")
    if not arr.entries:
        return None
    last_key = next(reversed(arr.entries))
    value = arr.entries[last_key]
    new = cow_delete(arr, last_key, True)
    ints = [k for k in new.entries if type(k) is int]
    new.next_index = max(ints) + 1 if ints else 0
    ref.value = new
    return value


def php_array_shift(interp, args):
    _arity("array_shift", args, 1)
    ref = args[0]
    arr = _ref_array("array_shift", ref)
    if type(arr) is not PhpArray:
        raise php_error("array_shift() is not supported on adapted Python collections")
    if not arr.entries:
        return None
    items = list(arr.entries.items())
    out = PhpArray()
    for k, v in items[1:]:
        if type(k) is int:
            out.append_inplace(v)
        else:
            out.set_inplace(k, v)
    ref.value = out
    return items[0][1]


def php_sort(interp, args):
    _arity("sort", args, 1)
    ref = args[0]
    arr = _ref_array("sort", ref)
    import functools
    values = sorted((v for _, v in ops.array_items(arr)), key=functools.cmp_to_key(ops.compare))
    ref.value = PhpArray.from_list(values)
    return True


def php_is_callable(interp, args):
    _arity("is_callable", args, 1)
    from duolang.bridge import PyCallableInPhp
    from duolang.values import BoundPhpMethod, PhpFunction
    v = args[0]
    if type(v) is str:
        return interp.globals.lookup_function(v) is not None
    return isinstance(v, (PhpFunction, PhpBuiltin, PyCallableInPhp, BoundPhpMethod))


def php_get_class(interp, args):
    _arity("get_class", args, 1)
    if not isinstance(args[0], PhpObject):
        raise php_error("get_class(): Argument #1 ($object) must be of type object", "TypeError")
    return args[0].cls.name


def php_function_exists(interp, args):
    _arity("function_exists", args, 1)
    return interp.globals.lookup_function(ops.to_str(args[0])) is not None


def php_class_exists(interp, args):
    _arity("class_exists", args, 1)
    return interp.globals.lookup_class(ops.to_str(args[0])) is not None


def php_exit(interp, args):
    from duolang.miniphp.interp import ExitProgram
    status = 0
    if args:
        if type(args[0]) is int:
            status = args[0]
        else:
            interp.ctx.write(ops.to_str(args[0]))
    raise ExitProgram(status)


def php_sprintf(interp, args):
    if not args:
        raise php_error("sprintf() expects at least 1 argument, 0 given", "ArgumentCountError")
    return _format(ops.to_str(args[0]), args[1:])


def php_printf(interp, args):
    text = php_sprintf(interp, args)
    interp.ctx.write(text)
    return len(text)


def _format(fmt: str, args) -> str:
    out = []
    i = 0
    argi = 0
    n = len(fmt)
    while i < n:
        c = fmt[i]
        if c != "%":
            out.append(c)
            i += 1
            continue
        j = i + 1
        if j < n and fmt[j] == "%":
            out.append("%")
            i = j + 1
            continue
        while j < n and fmt[j] in "-+ 0'.0123456789":
            j += 1
        if j >= n:
            raise php_error("sprintf(): Missing format specifier", "ValueError")
        spec, conv = fmt[i + 1:j], fmt[j]
        if argi >= len(args):
            raise php_error(f"{argi + 2} arguments are required, {len(args) + 1} given",
                            "ArgumentCountError")
        v = args[argi]
        argi += 1
        if conv == "d":
            out.append(("%" + spec + "d") % ops.to_int(v))
        elif conv in "fF":
            out.append(("%" + spec + "f") % ops.to_float(v))
        elif conv == "s":
            out.append(("%" + spec + "s") % ops.to_str(v))
        elif conv in "xXob":
            py = "b" if conv == "b" else conv
            out.append(format(ops.to_int(v), spec.replace("-", "<") + py))
        elif conv in "eE":
            out.append(("%" + spec + conv) % ops.to_float(v))
        else:
            raise php_error(f"sprintf(): Unknown format specifier \"{conv}\"", "ValueError")
        i = j + 1
    return "".join(out)


def php_str_pad(interp, args):
    _arity("str_pad", args, 2, 3)
    s = ops.to_str(args[0])
    pad = ops.to_str(args[2]) if len(args) > 2 else " "
    width = ops.to_int(args[1])
    while len(s) < width:
        s += pad
    return s[:max(width, len(ops.to_str(args[0])))]


def php_strtoupper(interp, args):
    _arity("strtoupper", args, 1)
    return ops.to_str(args[0]).upper()


def php_strtolower(interp, args):
    _arity("strtolower", args, 1)
    return ops.to_str(args[0]).lower()


def php_substr(interp, args):
    _arity("substr", args, 2, 3)
    s = ops.to_str(args[0])
    start = ops.to_int(args[1])
    if start < 0:
        start = max(0, len(s) + start)
    if len(args) > 2 and args[2] is not None:
        length = ops.to_int(args[2])
        end = start + length if length >= 0 else len(s) + length
        return s[start:end]
    return s[start:]


def php_array_map(interp, args):
    _arity("array_map", args, 2)
    fn = args[0]
    if type(fn) is str:
        fn = interp.globals.lookup_function(fn)
    out = PhpArray()
    for k, v in ops.array_items(_array_arg("array_map", args[1], 2)):
        out.set_inplace(k, interp.invoke(fn, [v]))
    return out


_TABLE = {
    "count": php_count, "sizeof": php_count, "print_r": php_print_r, "var_dump": php_var_dump,
    "range": php_range, "strlen": php_strlen, "str_repeat": php_str_repeat,
    "substr_count": php_substr_count,
    "implode": php_implode, "join": php_implode, "explode": php_explode, "abs": php_abs,
    "floor": php_floor, "ceil": php_ceil, "round": php_round, "sqrt": php_sqrt,
    "intval": php_intval, "floatval": php_floatval, "strval": php_strval,
    "min": php_min, "max": php_max, "define": php_define, "defined": php_defined,
    "is_array": _type_check(lambda v: type(v) in _ARRAYS),
    "is_int": _type_check(lambda v: type(v) is int),
    "is_float": _type_check(lambda v: type(v) is float),
    "is_string": _type_check(lambda v: type(v) is str),
    "is_bool": _type_check(lambda v: type(v) is bool),
    "is_null": _type_check(lambda v: v is None),
    "is_numeric": _type_check(lambda v: type(v) in (int, float)),
    "is_object": _type_check(lambda v: isinstance(v, PhpObject)),
    "gettype": php_gettype, "microtime": php_microtime,
    "array_keys": php_array_keys, "array_values": php_array_values,
    "array_key_exists": php_array_key_exists, "in_array": php_in_array,
    "array_sum": php_array_sum, "array_reverse": php_array_reverse,
    "array_slice": php_array_slice, "array_map": php_array_map,
    "is_callable": php_is_callable, "get_class": php_get_class,
    "function_exists": php_function_exists, "class_exists": php_class_exists,
    "exit": php_exit, "sprintf": php_sprintf, "printf": php_printf, "str_pad": php_str_pad,
    "strtoupper": php_strtoupper, "strtolower": php_strtolower, "substr": php_substr,
}

_BYREF = {
    "array_push": (php_array_push, (0,)),
    "array_pop": (php_array_pop, (0,)),
    "array_shift": (php_array_shift, (0,)),
    "sort": (php_sort, (0,)),
}

CONSTANTS = {
    "PHP_EOL": "\n", "PHP_INT_MAX": 2 ** 63 - 1, "PHP_INT_MIN": -(2 ** 63),
    "PHP_INT_SIZE": 8, "PHP_FLOAT_EPSILON": 2.220446049250313e-16, "M_PI": math.pi,
    "M_E": math.e, "NAN": math.nan, "INF": math.inf,
}


def builtin_functions() -> dict[str, PhpBuiltin]:
    table = {name: PhpBuiltin(name, fn) for name, fn in _TABLE.items()}
    for name, (fn, byref) in _BYREF.items():
        table[name] = PhpBuiltin(name, fn, byref=byref)
    return table


__all__ = ["CONSTANTS", "builtin_functions"]
