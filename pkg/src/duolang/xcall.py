"""Cross-language calls: argument organisation, PHPRef, php_decor, modules."""
from __future__ import annotations

import math
from dataclasses import dataclass

from duolang.bridge import (PhpArrayAsPyDict, PhpCallableInPy, PhpRefInPy, PyCallableInPhp,
                            PyListAsPhpArray, to_php, to_py)
from duolang.exc import ScriptError, adapt_exception, php_error, py_error
from duolang.miniphp import ast as PA
from duolang.values import (BoundMethod, BoundPhpMethod, Lang, PhpArray, PhpBuiltin, PhpClass,
                            PhpFunction, PhpObject, PhpRef, PyBuiltin, PyFunction, PyModule)

ACCESS_LEVELS = ("public", "private", "protected")


@dataclass(frozen=True)
class DecorMeta:
    refs: frozenset = frozenset()
    access: str = "public"
    static: bool = False

    def __repr__(self) -> str:
        return (f"DecorMeta(refs={tuple(sorted(self.refs))!r}, access={self.access!r}, "
                f"static={self.static!r})")


DEFAULT_META = DecorMeta()


def decor_meta(fn) -> DecorMeta:
    if type(fn) is PyFunction:
        return fn.attrs.get("__php_decor__", DEFAULT_META)
    if type(fn) is BoundMethod:
        return decor_meta(fn.func)
    return DEFAULT_META


def apply_php_decor(fn, refs=(), access="public", static=False):
    """Attach PHP-facing metadata to a Python function as a plain attribute."""
    if type(fn) is not PyFunction:
        raise py_error("TypeError", "php_decor can only decorate Python functions")
    if access not in ACCESS_LEVELS:
        raise py_error("ValueError", f"php_decor access must be one of "
                                     f"{', '.join(ACCESS_LEVELS)}, not {access!r}")
    arity = fn.code.arity
    indices = set()
    for i in refs:
        if type(i) is not int or not 0 <= i < arity:
            raise py_error("ValueError", f"php_decor refs index {i!r} out of range for "
                                         f"{fn.name}() with {arity} parameters")
        indices.add(i)
    fn.attrs["__php_decor__"] = DecorMeta(frozenset(indices), access, bool(static))
    return fn


# ---------------------------------------------------------------------------
# PHP calling Python


def _boundary_to_php(e: ScriptError):
    return ScriptError(adapt_exception(e.value, Lang.PHP), e.trace)


def _boundary_to_py(e: ScriptError):
    return ScriptError(adapt_exception(e.value, Lang.PY), e.trace)


def organise_args_for_py(interp, refs, caller, arg_nodes) -> list:
    """Evaluate PHP argument expressions for a Python callee.

    An array held in a plain variable is passed as if by reference: the
    variable is promoted to a PhpRef and Python gets a dict adapter over it.
    Arguments at ``refs`` indices are passed as PHPRef objects.
    """
    args = []
    for i, node in enumerate(arg_nodes):
        if i in refs:
            if not isinstance(node, (PA.Var, PA.Prop, PA.StaticProp)):
                raise php_error(f"Argument {i + 1} is passed by reference to a Python "
                                f"function and must be a variable")
            args.append(PhpRefInPy(interp.get_ref(node, caller)))
            continue
        cls = node.__class__
        if cls is PA.Var:
            locs = caller.locals
            slot = locs.get(node.name)
            if type(slot) is PhpArray:
                slot = locs[node.name] = PhpRef(slot)
                args.append(PhpArrayAsPyDict(slot))
                continue
            if type(slot) is PhpRef and type(slot.value) is PhpArray:
                args.append(PhpArrayAsPyDict(slot))
                continue
        elif cls is PA.Prop:
            obj = interp.ev(node.obj, caller)
            if isinstance(obj, PhpObject):
                slot = obj.attrs.get(node.name)
                if type(slot) is PhpArray:
                    slot = obj.attrs[node.name] = PhpRef(slot)
                if type(slot) is PhpRef and type(slot.value) is PhpArray:
                    args.append(PhpArrayAsPyDict(slot))
                    continue
                args.append(to_py(slot))
                continue
            args.append(to_py(interp.get_prop(obj, node.name)))
            continue
        args.append(to_py(interp.ev(node, caller)))
    return args


def _refs_of(fn) -> frozenset:
    return decor_meta(fn).refs


def call_py_from_php(ctx, pyfunc, arg_nodes, frame):
    """``$f(...)`` in PHP where ``$f`` adapts a Python callable."""
    args = organise_args_for_py(ctx.php, _refs_of(pyfunc), frame, arg_nodes)
    try:
        return to_php(ctx.py.call(pyfunc, args, None))
    except ScriptError as e:
        raise _boundary_to_php(e) from None


def call_py_method_from_php(ctx, m, obj, arg_nodes, frame):
    """A Python function installed as a PHP method, called with argument nodes."""
    args = organise_args_for_py(ctx.php, _refs_of(m.func), frame, arg_nodes)
    return _invoke_py_method(ctx, m, obj, args)


def call_py_method_values(ctx, m, obj, args):
    return _invoke_py_method(ctx, m, obj, _values_to_py(_refs_of(m.func), args))


def _invoke_py_method(ctx, m, obj, args):
    if not m.static:
        if obj is None:
            raise php_error(f"Non-static method {m.owner.name}::{m.name}() cannot be "
                            f"called statically")
        args = [to_py(obj)] + args
    try:
        return to_php(ctx.py.call_function(m.func, args, None))
    except ScriptError as e:
        raise _boundary_to_php(e) from None


def _values_to_py(refs, args) -> list:
    out = []
    for i, a in enumerate(args):
        if i in refs:
            out.append(PhpRefInPy(a if type(a) is PhpRef else PhpRef(a)))
        else:
            out.append(to_py(a))
    return out


def call_py_values(ctx, pyfunc, args):
    """Call a Python callable with already-evaluated PHP values."""
    try:
        return to_php(ctx.py.call(pyfunc, _values_to_py(_refs_of(pyfunc), args), None))
    except ScriptError as e:
        raise _boundary_to_php(e) from None


def call_py_func(interp, args):
    """PHP built-in ``call_py_func(f, a, k)``; ``k`` may be omitted."""
    if not 2 <= len(args) <= 3:
        raise php_error(f"call_py_func() expects 2 or 3 arguments, {len(args)} given",
                        "ArgumentCountError")
    f, a = args[0], args[1]
    k = args[2] if len(args) > 2 else None
    if type(f) is not PyCallableInPhp:
        raise php_error("call_py_func(): Argument #1 ($f) must be a Python callable",
                        "TypeError")
    positional = _positional(a)
    kwargs = None if k is None else _keywords(k)
    ctx = interp.ctx
    try:
        return to_php(ctx.py.call(f.target, positional, kwargs))
    except ScriptError as e:
        raise _boundary_to_php(e) from None


def _positional(a) -> list:
    if type(a) is PhpArray:
        if not a.is_listlike():
            raise php_error("call_py_func(): Argument #2 ($a) must be a list-like array",
                            "TypeError")
        return [to_py(v) for v in a.entries.values()]
    if type(a) is PyListAsPhpArray:
        return list(a.target)
    raise php_error("call_py_func(): Argument #2 ($a) must be of type array", "TypeError")


def _keywords(k) -> dict:
    if type(k) is PhpArray:
        items = k.entries.items()
    elif hasattr(k, "php_items"):
        items = k.php_items()
    else:
        raise php_error("call_py_func(): Argument #3 ($k) must be of type array", "TypeError")
    out = {}
    for key, v in items:
        if type(key) is not str:
            raise php_error(f"call_py_func(): keyword argument names must be strings, "
                            f"got {key!r}", "TypeError")
        out[key] = to_py(v)
    return out


# ---------------------------------------------------------------------------
# Python calling PHP


def _byref_positions(target) -> tuple[frozenset, str]:
    t = type(target)
    if t is PhpFunction:
        return frozenset(i for i, p in enumerate(target.code.params) if p.byref), target.name
    if t is PhpBuiltin:
        return target.byref, target.name
    if t is BoundPhpMethod:
        func = target.method.func
        if type(func) is PhpFunction:
            return (frozenset(i for i, p in enumerate(func.code.params) if p.byref),
                    f"{target.cls.name}::{target.method.name}")
        return frozenset(), target.method.name
    if t is PhpClass:
        ctor = target.find_method("__construct")
        if ctor is not None and type(ctor.func) is PhpFunction:
            return frozenset(i for i, p in enumerate(ctor.func.code.params) if p.byref), \
                target.name
        return frozenset(), target.name
    return frozenset(), "?"


def _caller_class(ctx):
    if ctx.stack:
        f = ctx.stack[-1]
        func = getattr(f, "func", None)
        if type(func) is PyFunction:
            return func.php_class
        return getattr(f, "cls", None)
    return None


def call_php_from_py(ctx, adapter: PhpCallableInPy, args: list, kwargs):
    """Python calling a PHP callable; by-ref parameters demand PHPRef arguments."""
    target = adapter.target
    byref, name = _byref_positions(target)
    if kwargs:
        raise py_error("TypeError", f"PHP function {name}() does not accept keyword arguments")
    php_args = []
    for i, a in enumerate(args):
        if i in byref:
            if type(a) is not PhpRefInPy:
                from duolang.minipy.ops import type_name
                raise py_error("TypeError", f"argument {i + 1} of PHP function {name}() is "
                                            f"passed by reference and must be a PHPRef, "
                                            f"not {type_name(a)}")
            php_args.append(a.target)
        else:
            php_args.append(to_php(a))
    try:
        result = ctx.php.invoke(target, php_args, _caller_class(ctx))
    except ScriptError as e:
        raise _boundary_to_py(e) from None
    return to_py(result)


# ---------------------------------------------------------------------------
# module registry


class Lcg:
    """64-bit linear congruential generator (Knuth's MMIX constants)."""

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int = 0):
        self.seed(seed)

    def seed(self, seed: int) -> None:
        self.state = (int(seed) ^ 0x5DEECE66D) & self.MASK

    def next32(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError(n)
        if n <= 1 << 32:
            return self.next32() % n
        return ((self.next32() << 32) | self.next32()) % n

    def random(self) -> float:
        hi = self.next32() >> 5
        lo = self.next32() >> 6
        return (hi * 67108864.0 + lo) / 9007199254740992.0


def _int(name, v):
    if type(v) is bool:
        return int(v)
    if type(v) is not int:
        raise py_error("TypeError", f"{name}() requires integer arguments")
    return v


def _random_module(ctx) -> PyModule:
    rng = ctx.rng

    def randrange(interp, args, kwargs):
        if not 1 <= len(args) <= 2 or kwargs:
            raise py_error("TypeError", "randrange() takes 1 or 2 positional arguments")
        lo, hi = (0, _int("randrange", args[0])) if len(args) == 1 else \
            (_int("randrange", args[0]), _int("randrange", args[1]))
        if hi <= lo:
            raise py_error("ValueError", f"empty range for randrange() ({lo}, {hi})")
        return lo + rng.below(hi - lo)

    def randint(interp, args, kwargs):
        if len(args) != 2 or kwargs:
            raise py_error("TypeError", "randint() takes exactly 2 arguments")
        lo, hi = _int("randint", args[0]), _int("randint", args[1])
        if hi < lo:
            raise py_error("ValueError", f"empty range for randint() ({lo}, {hi})")
        return lo + rng.below(hi - lo + 1)

    def random(interp, args, kwargs):
        if args or kwargs:
            raise py_error("TypeError", "random() takes no arguments")
        return rng.random()

    def seed(interp, args, kwargs):
        if len(args) != 1 or kwargs:
            raise py_error("TypeError", "seed() takes exactly 1 argument")
        rng.seed(_int("seed", args[0]))

    def choice(interp, args, kwargs):
        if len(args) != 1 or kwargs:
            raise py_error("TypeError", "choice() takes exactly 1 argument")
        items = list(interp.iterate(args[0]))
        if not items:
            raise py_error("IndexError", "Cannot choose from an empty sequence")
        return items[rng.below(len(items))]

    fns = {"randrange": randrange, "randint": randint, "random": random, "seed": seed,
           "choice": choice}
    return PyModule("random", {k: PyBuiltin(k, v) for k, v in fns.items()})


def _math_module(ctx) -> PyModule:
    def unary(name, fn, integral=False):
        def wrapped(interp, args, kwargs):
            if len(args) != 1 or kwargs:
                raise py_error("TypeError", f"{name}() takes exactly one argument")
            x = args[0]
            if type(x) not in (int, float, bool):
                raise py_error("TypeError", f"must be real number, not "
                                            f"{type(x).__name__}")
            try:
                r = fn(x)
            except (ValueError, OverflowError):
                raise py_error("ValueError", "math domain error") from None
            return r
        return PyBuiltin(name, wrapped)

    attrs = {
        "sqrt": unary("sqrt", math.sqrt),
        "floor": unary("floor", math.floor),
        "ceil": unary("ceil", math.ceil),
        "fabs": unary("fabs", math.fabs),
        "sin": unary("sin", math.sin),
        "cos": unary("cos", math.cos),
        "exp": unary("exp", math.exp),
        "log": unary("log", math.log),
        "pi": math.pi,
        "e": math.e,
    }
    return PyModule("math", attrs)


MODULES = {"random": _random_module, "math": _math_module}


def import_module(ctx, name: str) -> PyModule:
    mod = ctx.modules.get(name)
    if mod is None:
        factory = MODULES.get(name)
        if factory is None:
            raise py_error("ImportError", f"No module named '{name}'")
        mod = ctx.modules[name] = factory(ctx)
    return mod


def import_py_mod(interp, args):
    """PHP built-in ``import_py_mod(name)``."""
    if len(args) != 1 or type(args[0]) is not str:
        raise php_error("import_py_mod() expects exactly one string argument", "TypeError")
    try:
        return to_php(import_module(interp.ctx, args[0]))
    except ScriptError as e:
        raise _boundary_to_php(e) from None


PHP_BUILTINS = {"call_py_func": call_py_func, "import_py_mod": import_py_mod}
