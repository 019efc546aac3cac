"""Tree-walking evaluator for MiniPy."""
from __future__ import annotations

from duolang import scope
from duolang.bridge import (PhpArrayAsPyDict, PhpArrayAsPyList, PhpCallableInPy,
                            PhpGenericInPy, PhpRefInPy, PyListAsSpecialPyDict,
                            promote_attr_to_ref, to_php, to_py)
from duolang.exc import (PY_BASE_EXCEPTION, AdaptedPhpException, ScriptError,
                         adapt_exception, py_error, snapshot)
from duolang.minipy import ast as A
from duolang.minipy import ops
from duolang.values import (BoundMethod, BoundPhpMethod, Lang, PhpArray, PhpObject,
                            PhpRef, PyBuiltin, PyClass, PyFunction, PyInstance, PyModule,
                            truthy)

_MISSING = scope.MISSING
_SCOPES_WITH_CLOSURE = ("function", "lambda", "comp")


class _Signal:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


BREAK = _Signal("break")
CONTINUE = _Signal("continue")


class _Return:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class PyFrame:
    __slots__ = ("locals", "code", "globals", "closure", "php_scope", "file", "line",
                 "name", "func")
    lang = Lang.PY

    def __init__(self, locals_, code, globals_, closure=None, php_scope=None, file="<py>",
                 line=0, name="<module>", func=None):
        self.locals = locals_
        self.code = code
        self.globals = globals_
        self.closure = closure
        self.php_scope = php_scope
        self.file = file
        self.line = line
        self.name = name
        self.func = func

    def __repr__(self) -> str:
        return f"<PyFrame {self.name} {self.file}:{self.line}>"


def py_truthy(v) -> bool:
    if v is True:
        return True
    if v is False or v is None:
        return False
    return truthy(v, Lang.PY)


def _closure_for(f: PyFrame):
    """Frame that functions defined in ``f`` read free names from."""
    return f if f.code.kind in _SCOPES_WITH_CLOSURE else f.closure


_INT_FAST = {
    "+": lambda a, b: ops.norm(a + b),
    "-": lambda a, b: ops.norm(a - b),
    "*": lambda a, b: ops.norm(a * b),
}
_INT_CMP = {
    "<": int.__lt__, "<=": int.__le__, ">": int.__gt__, ">=": int.__ge__,
    "==": int.__eq__, "!=": int.__ne__,
}


def _is_exception_class(cls) -> bool:
    return type(cls) is PyClass and cls.is_subclass_of(PY_BASE_EXCEPTION)


class PyInterp:
    def __init__(self, ctx):
        self.ctx = ctx
        self.handling: list = []
        self._ev = {}
        self._ex = {}
        for name in dir(self):
            if name.startswith("ev_"):
                self._ev[getattr(A, name[3:])] = getattr(self, name)
            elif name.startswith("ex_"):
                self._ex[getattr(A, name[3:])] = getattr(self, name)
        from duolang.minipy import methods
        self._methods = methods.METHODS

    # -- modules ---------------------------------------------------------------

    def run_module(self, mod: A.Module, globals_: dict | None = None) -> dict:
        g = self.ctx.py_globals if globals_ is None else globals_
        frame = PyFrame(g, mod.code, g, None, None, mod.file, 1, "<module>")
        stack = self.ctx.stack
        stack.append(frame)
        try:
            r = self.exec_block(mod.body, frame)
        except ScriptError as e:
            if e.trace is None:
                e.trace = snapshot(stack)
            raise
        finally:
            stack.pop()
        if r is not None:
            raise py_error("RuntimeError", f"'{r.name if isinstance(r, _Signal) else 'return'}'"
                                           " outside function")
        return g

    # -- statements ------------------------------------------------------------

    def exec_block(self, stmts, f):
        ex = self._ex
        for s in stmts:
            f.line = s.line
            r = ex[s.__class__](s, f)
            if r is not None:
                return r
        return None

    def ex_ExprStmt(self, s, f):
        self.ev(s.value, f)

    def ex_Pass(self, s, f):
        return None

    def ex_Global(self, s, f):
        return None

    def ex_Assign(self, s, f):
        value = self.ev(s.value, f)
        for t in s.targets:
            if t.__class__ is A.Name:
                self.store_name(t.id, value, f)
            else:
                self.assign(t, value, f)

    def ex_AugAssign(self, s, f):
        t = s.target
        op = s.op
        cls = t.__class__
        if cls is A.Name:
            old = self.ev_Name(t, f)
            self.store_name(t.id, self._inplace(op, old, self.ev(s.value, f)), f)
        elif cls is A.Attribute:
            obj = self.ev(t.obj, f)
            old = self.getattr(obj, t.name)
            self.setattr(obj, t.name, self._inplace(op, old, self.ev(s.value, f)))
        else:
            obj = self.ev(t.obj, f)
            key = self.ev(t.index, f)
            old = self.getitem(obj, key)
            self.setitem(obj, key, self._inplace(op, old, self.ev(s.value, f)))

    def _inplace(self, op, old, rhs):
        if op == "+" and type(old) is list:
            old.extend(self.iterate(rhs))
            return old
        if type(old) is int and type(rhs) is int and op in _INT_FAST:
            return _INT_FAST[op](old, rhs)
        return ops.BINOPS[op](old, rhs)

    def ex_If(self, s, f):
        if py_truthy(self.ev(s.cond, f)):
            return self.exec_block(s.body, f)
        if s.orelse:
            return self.exec_block(s.orelse, f)
        return None

    def ex_While(self, s, f):
        ev, body = self.ev, s.body
        while py_truthy(ev(s.cond, f)):
            r = self.exec_block(body, f)
            if r is not None:
                if r is BREAK:
                    return None
                if r is CONTINUE:
                    continue
                return r
        if s.orelse:
            return self.exec_block(s.orelse, f)
        return None

    def ex_For(self, s, f):
        items = self.iterate(self.ev(s.iter, f))
        target = s.target
        body = s.body
        simple = target.__class__ is A.Name
        for item in items:
            if simple:
                self.store_name(target.id, item, f)
            else:
                self.assign(target, item, f)
            r = self.exec_block(body, f)
            if r is not None:
                if r is BREAK:
                    return None
                if r is CONTINUE:
                    continue
                return r
        if s.orelse:
            return self.exec_block(s.orelse, f)
        return None

    def ex_Return(self, s, f):
        return _Return(None if s.value is None else self.ev(s.value, f))

    def ex_Break(self, s, f):
        return BREAK

    def ex_Continue(self, s, f):
        return CONTINUE

    def ex_Raise(self, s, f):
        if s.exc is None:
            if not self.handling:
                raise py_error("RuntimeError", "No active exception to reraise")
            raise ScriptError(self.handling[-1])
        v = self.ev(s.exc, f)
        if type(v) is PyClass:
            v = self.instantiate(v, [], None)
        if isinstance(v, PyInstance) and _is_exception_class(v.cls):
            raise ScriptError(v)
        if type(v) is PhpGenericInPy and v.target.cls.is_subclass_name("Throwable"):
            raise ScriptError(adapt_exception(v.target, Lang.PY))
        raise py_error("TypeError", "exceptions must derive from BaseException")

    def ex_Try(self, s, f):
        try:
            r = self._try_body(s, f)
        except ScriptError:
            if s.final:
                fr = self.exec_block(s.final, f)
                if fr is not None:
                    return fr
            raise
        if s.final:
            fr = self.exec_block(s.final, f)
            if fr is not None:
                return fr
        return r

    def _try_body(self, s, f):
        try:
            r = self.exec_block(s.body, f)
        except ScriptError as e:
            value = adapt_exception(e.value, Lang.PY)
            for h in s.handlers:
                if self._handler_matches(h, value, f):
                    if h.name is not None:
                        self.store_name(h.name, value, f)
                    self.handling.append(value)
                    try:
                        return self.exec_block(h.body, f)
                    finally:
                        self.handling.pop()
            raise
        if s.orelse:
            return self.exec_block(s.orelse, f)
        return r

    def _handler_matches(self, h, value, f) -> bool:
        if not h.types:
            return True
        if not isinstance(value, PyInstance):
            return False
        for tnode in h.types:
            cls = self.ev(tnode, f)
            classes = cls if type(cls) is tuple else (cls,)
            for c in classes:
                if type(c) is not PyClass:
                    raise py_error("TypeError", "catching classes that do not inherit from "
                                                "BaseException is not allowed")
                if value.cls.is_subclass_of(c):
                    return True
        return False

    def ex_Import(self, s, f):
        from duolang import xcall
        for module, bound in s.names:
            self.store_name(bound, xcall.import_module(self.ctx, module), f)

    def ex_Delete(self, s, f):
        for t in s.targets:
            cls = t.__class__
            if cls is A.Name:
                if t.id in f.code.global_names:
                    target = f.globals
                else:
                    target = f.locals
                if t.id not in target:
                    raise py_error("NameError", f"name '{t.id}' is not defined")
                del target[t.id]
            elif cls is A.Subscript:
                self.delitem(self.ev(t.obj, f), self.ev(t.index, f))
            elif cls is A.Attribute:
                obj = self.ev(t.obj, f)
                attrs = getattr(obj, "attrs", None)
                if type(attrs) is not dict or t.name not in attrs:
                    raise py_error("AttributeError", t.name)
                del attrs[t.name]
            else:
                raise py_error("TypeError", "cannot delete this expression")

    def ex_Assert(self, s, f):
        if not py_truthy(self.ev(s.test, f)):
            msg = "" if s.msg is None else ops.py_str(self.ev(s.msg, f))
            raise py_error("AssertionError", msg)

    def ex_FunctionDef(self, s, f):
        decorators = [self.ev(d, f) for d in s.decorators]
        fn = self.make_function(s.code, f)
        for dec in reversed(decorators):
            fn = self.call(dec, [fn], None)
        self.store_name(s.code.name, fn, f)

    def make_function(self, code, f) -> PyFunction:
        defaults = {}
        for p in code.params:
            if p.default is not None:
                defaults[p.name] = self.ev(p.default, f)
        return PyFunction(code, defaults, f.globals, _closure_for(f), f.php_scope)

    def ex_ClassDef(self, s, f):
        bases = []
        for b in s.bases:
            base = self.ev(b, f)
            if type(base) is not PyClass:
                raise py_error("TypeError", f"cannot inherit from {ops.type_name(base)}")
            if base.name != "object" or base.bases:
                bases.append(base)
        cf = PyFrame({}, s.code, f.globals, _closure_for(f), f.php_scope, f.file, s.line,
                     s.name, f.func)
        r = self.exec_block(s.body, cf)
        if r is not None:
            raise py_error("RuntimeError", "'return' outside function")
        self.store_name(s.name, PyClass(s.name, bases, cf.locals), f)

    # -- names -----------------------------------------------------------------

    def store_name(self, name, value, f):
        if name in f.code.global_names:
            scope.store_global_py(name, value, f, self.ctx)
        else:
            f.locals[name] = value

    def assign(self, target, value, f):
        cls = target.__class__
        if cls is A.Name:
            self.store_name(target.id, value, f)
        elif cls is A.Attribute:
            self.setattr(self.ev(target.obj, f), target.name, value)
        elif cls is A.Subscript:
            self.setitem(self.ev(target.obj, f), self.ev(target.index, f), value)
        else:
            items = target.items
            values = list(self.iterate(value))
            if len(values) != len(items):
                if len(values) > len(items):
                    raise py_error("ValueError",
                                   f"too many values to unpack (expected {len(items)})")
                raise py_error("ValueError", f"not enough values to unpack "
                                             f"(expected {len(items)}, got {len(values)})")
            for t, v in zip(items, values):
                self.assign(t, v, f)

    # -- expressions -----------------------------------------------------------

    def ev(self, node, f):
        return self._ev[node.__class__](node, f)

    def ev_Const(self, n, f):
        return n.value

    def ev_Name(self, n, f):
        name = n.id
        v = f.locals.get(name, _MISSING)
        if v is not _MISSING:
            return v
        code = f.code
        if name in code.local_names and code.kind in _SCOPES_WITH_CLOSURE:
            raise py_error("UnboundLocalError",
                           f"local variable '{name}' referenced before assignment")
        return scope.lookup_global_py(name, f, self.ctx)

    def ev_ListExpr(self, n, f):
        ev = self.ev
        return [ev(x, f) for x in n.items]

    def ev_TupleExpr(self, n, f):
        ev = self.ev
        return tuple(ev(x, f) for x in n.items)

    def ev_DictExpr(self, n, f):
        d = {}
        ev = self.ev
        for k, v in zip(n.keys, n.values):
            key = ops.check_hashable(ev(k, f))
            d[key] = ev(v, f)
        return d

    def ev_ListComp(self, n, f):
        items = self.iterate(self.ev(n.iter, f))
        cf = PyFrame({}, n.code, f.globals, _closure_for(f), f.php_scope, f.file, f.line,
                     f.name, f.func)
        out = []
        ev = self.ev
        target = n.target
        simple = target.__class__ is A.Name
        for item in items:
            if simple:
                cf.locals[target.id] = item
            else:
                self.assign(target, item, cf)
            for c in n.conds:
                if not py_truthy(ev(c, cf)):
                    break
            else:
                out.append(ev(n.elt, cf))
        return out

    def ev_Attribute(self, n, f):
        return self.getattr(self.ev(n.obj, f), n.name)

    def ev_Subscript(self, n, f):
        obj = self.ev(n.obj, f)
        key = self.ev(n.index, f)
        t = type(obj)
        if t is list and type(key) is int:
            try:
                return obj[key]
            except IndexError:
                raise py_error("IndexError", "list index out of range") from None
        if t is dict and type(key) in (int, str):
            try:
                return obj[key]
            except KeyError:
                raise py_error("KeyError", ops.py_repr(key)) from None
        return self.getitem(obj, key)

    def ev_Call(self, n, f):
        func = n.func
        ev = self.ev
        if func.__class__ is A.Attribute:
            obj = ev(func.obj, f)
            args = [ev(a, f) for a in n.args]
            kwargs = {k: ev(v, f) for k, v in n.kwargs} if n.kwargs else None
            f.line = n.line
            return self.call_attr(obj, func.name, args, kwargs)
        fn = ev(func, f)
        args = [ev(a, f) for a in n.args]
        kwargs = {k: ev(v, f) for k, v in n.kwargs} if n.kwargs else None
        f.line = n.line
        if type(fn) is PyFunction:
            return self.call_function(fn, args, kwargs)
        return self.call(fn, args, kwargs)

    def ev_BinOp(self, n, f):
        a = self.ev(n.left, f)
        b = self.ev(n.right, f)
        op = n.op
        if type(a) is int and type(b) is int:
            fast = _INT_FAST.get(op)
            if fast is not None:
                return fast(a, b)
        return ops.BINOPS[op](a, b)

    def ev_UnaryOp(self, n, f):
        v = self.ev(n.operand, f)
        op = n.op
        if op == "not":
            return not py_truthy(v)
        if op == "-":
            return ops.neg(v)
        if op == "+":
            return ops.pos(v)
        return ops.invert(v)

    def ev_BoolOp(self, n, f):
        ev = self.ev
        if n.op == "and":
            for node in n.values:
                v = ev(node, f)
                if not py_truthy(v):
                    return v
            return v
        for node in n.values:
            v = ev(node, f)
            if py_truthy(v):
                return v
        return v

    def ev_Compare(self, n, f):
        left = self.ev(n.left, f)
        ev = self.ev
        for op, node in zip(n.ops, n.comparators):
            right = ev(node, f)
            if type(left) is int and type(right) is int and op in _INT_CMP:
                ok = _INT_CMP[op](left, right)
            else:
                ok = ops.compare(op, left, right)
            if not ok:
                return False
            left = right
        return True

    def ev_IfExp(self, n, f):
        if py_truthy(self.ev(n.cond, f)):
            return self.ev(n.then, f)
        return self.ev(n.otherwise, f)

    def ev_Lambda(self, n, f):
        return self.make_function(n.code, f)

    # -- calls -----------------------------------------------------------------

    def call(self, fn, args: list, kwargs: dict | None):
        t = type(fn)
        if t is PyFunction:
            return self.call_function(fn, args, kwargs)
        if t is PyBuiltin:
            return fn.fn(self, args, kwargs)
        if t is BoundMethod:
            return self.call(fn.func, [fn.self_] + args, kwargs)
        if t is PyClass:
            return self.instantiate(fn, args, kwargs)
        if t is PhpCallableInPy:
            from duolang import xcall
            return xcall.call_php_from_py(self.ctx, fn, args, kwargs)
        if t is PhpGenericInPy and fn.target.cls.find_method("__invoke") is not None:
            from duolang import xcall
            m = fn.target.cls.find_method("__invoke")
            return xcall.call_php_from_py(
                self.ctx, PhpCallableInPy(BoundPhpMethod(fn.target, m, fn.target.cls)),
                args, kwargs)
        raise py_error("TypeError", f"'{ops.type_name(fn)}' object is not callable")

    def bind(self, fn: PyFunction, args: list, kwargs: dict | None) -> dict:
        code = fn.code
        params = code.params
        name = fn.name
        nparams = len(params)
        nargs = len(args)
        if nargs > nparams:
            raise py_error("TypeError", f"{name}() takes {nparams} positional argument"
                                        f"{'' if nparams == 1 else 's'} but {nargs} "
                                        f"{'was' if nargs == 1 else 'were'} given")
        locs = {}
        for i in range(nargs):
            locs[params[i].name] = args[i]
        if kwargs:
            for k, v in kwargs.items():
                if k in locs:
                    raise py_error("TypeError", f"{name}() got multiple values for argument '{k}'")
                if not any(p.name == k for p in params):
                    raise py_error("TypeError",
                                   f"{name}() got an unexpected keyword argument '{k}'")
                locs[k] = v
        if len(locs) < nparams:
            defaults = fn.defaults
            missing = []
            for p in params:
                if p.name not in locs:
                    if p.name in defaults:
                        locs[p.name] = defaults[p.name]
                    else:
                        missing.append(p.name)
            if missing:
                listed = " and ".join(f"'{m}'" for m in missing)
                raise py_error("TypeError", f"{name}() missing {len(missing)} required "
                                            f"positional argument{'s' if len(missing) > 1 else ''}"
                                            f": {listed}")
        meta = fn.attrs.get("__php_decor__")
        if meta is not None and meta.refs:
            shift = 1 if (fn.php_class is not None and not meta.static) else 0
            for i in sorted(meta.refs):
                p = params[i + shift].name
                if type(locs.get(p)) is not PhpRefInPy:
                    raise py_error("TypeError", f"{name}() argument {i + 1} ('{p}') must be a "
                                                f"PHPRef, not {ops.type_name(locs.get(p))}")
        return locs

    def call_function(self, fn: PyFunction, args: list, kwargs: dict | None):
        locs = self.bind(fn, args, kwargs)
        code = fn.code
        frame = PyFrame(locs, code, fn.globals, fn.closure, fn.php_scope, code.file,
                        code.line, fn.name, fn)
        stack = self.ctx.stack
        stack.append(frame)
        try:
            r = self.exec_block(code.body, frame)
        except ScriptError as e:
            if e.trace is None:
                e.trace = snapshot(stack)
            raise
        finally:
            stack.pop()
        if type(r) is _Return:
            return r.value
        if r is None:
            return None
        raise py_error("RuntimeError", f"'{r.name}' outside loop")

    def instantiate(self, cls: PyClass, args: list, kwargs: dict | None):
        inst = PyInstance(cls)
        is_exc = _is_exception_class(cls)
        if is_exc:
            inst.attrs["args"] = tuple(args)
        try:
            init = cls.lookup("__init__")
        except KeyError:
            init = None
        if init is None:
            if (args or kwargs) and not is_exc:
                raise py_error("TypeError", f"{cls.name}() takes no arguments")
            return inst
        r = self.call(init, [inst] + args, kwargs)
        if r is not None:
            raise py_error("TypeError", "__init__() should return None")
        return inst

    def call_attr(self, obj, name, args, kwargs):
        t = type(obj)
        table = self._methods.get(t)
        if table is not None:
            m = table.get(name)
            if m is not None:
                return m(self, obj, args, kwargs)
        elif t is PyInstance:
            attrs = obj.attrs
            if name not in attrs:
                try:
                    v = obj.cls.lookup(name)
                except KeyError:
                    raise py_error("AttributeError", f"'{obj.cls.name}' object has no "
                                                     f"attribute '{name}'") from None
                if type(v) is PyFunction:
                    return self.call_function(v, [obj] + args, kwargs)
                return self.call(v, args, kwargs)
        return self.call(self.getattr(obj, name), args, kwargs)

    # -- attributes ------------------------------------------------------------

    def getattr(self, obj, name):
        t = type(obj)
        if t is PyInstance or t is AdaptedPhpException:
            attrs = obj.attrs
            if name in attrs:
                return attrs[name]
            try:
                v = obj.cls.lookup(name)
            except KeyError:
                if name == "__class__":
                    return obj.cls
                raise py_error("AttributeError", f"'{obj.cls.name}' object has no "
                                                 f"attribute '{name}'") from None
            if type(v) is PyFunction:
                return BoundMethod(obj, v)
            return v
        if t is PhpGenericInPy:
            return self.php_object_attr(obj.target, name)
        if t is PyModule:
            if name in obj.attrs:
                return obj.attrs[name]
            raise py_error("AttributeError", f"module '{obj.name}' has no attribute '{name}'")
        if t is PyClass:
            if name == "__name__":
                return obj.name
            try:
                return obj.lookup(name)
            except KeyError:
                raise py_error("AttributeError", f"type object '{obj.name}' has no "
                                                 f"attribute '{name}'") from None
        if t is PyFunction or t is PyBuiltin:
            if name == "__name__":
                return obj.name
            if name in obj.attrs:
                return obj.attrs[name]
        table = self._methods.get(t)
        if table is not None and name in table:
            m = table[name]
            return PyBuiltin(name, lambda interp, args, kwargs: m(interp, obj, args, kwargs))
        raise py_error("AttributeError",
                       f"'{ops.type_name(obj)}' object has no attribute '{name}'")

    def setattr(self, obj, name, value):
        t = type(obj)
        if t is PyInstance or t is PyClass or t is PyFunction or t is PyModule:
            obj.attrs[name] = value
            if t is PyClass:
                obj.__dict__.pop("_mro", None)
            return
        if t is PhpGenericInPy:
            attrs = obj.target.attrs
            slot = attrs.get(name)
            if type(slot) is PhpRef:
                slot.value = to_php(value)
            else:
                attrs[name] = to_php(value)
            return
        raise py_error("AttributeError",
                       f"'{ops.type_name(obj)}' object has no attribute '{name}'")

    def php_object_attr(self, o: PhpObject, name: str):
        """Python reading ``o.name`` on a PHP object: properties, then methods."""
        attrs = o.attrs
        if name in attrs:
            slot = attrs[name]
            if type(slot) is PhpArray:
                return PhpArrayAsPyDict(promote_attr_to_ref(o, name))
            if type(slot) is PhpRef:
                if type(slot.value) is PhpArray:
                    return PhpArrayAsPyDict(slot)
                return to_py(slot.value)
            return to_py(slot)
        m = o.cls.find_method(name)
        if m is not None:
            return PhpCallableInPy(BoundPhpMethod(o, m, o.cls))
        raise py_error("AttributeError", f"PHP object of class {o.cls.name} has no "
                                         f"attribute '{name}'")

    # -- items -----------------------------------------------------------------

    def getitem(self, obj, key):
        t = type(obj)
        if t is list or t is tuple or t is str:
            if type(key) is bool:
                key = int(key)
            if type(key) is not int:
                raise py_error("TypeError", f"{t.__name__} indices must be integers or slices, "
                                            f"not {ops.type_name(key)}")
            try:
                return obj[key]
            except IndexError:
                what = {list: "list", tuple: "tuple", str: "string"}[t]
                raise py_error("IndexError", f"{what} index out of range") from None
        if t is dict:
            ops.check_hashable(key)
            if key not in obj:
                raise py_error("KeyError", ops.py_repr(key))
            return obj[key]
        if t in (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict):
            return obj.py_getitem(key)
        if t is PyInstance:
            try:
                fn = obj.cls.lookup("__getitem__")
            except KeyError:
                fn = None
            if fn is not None:
                return self.call(fn, [obj, key], None)
        raise py_error("TypeError", f"'{ops.type_name(obj)}' object is not subscriptable")

    def setitem(self, obj, key, value):
        t = type(obj)
        if t is list:
            if type(key) is bool:
                key = int(key)
            if type(key) is not int:
                raise py_error("TypeError", f"list indices must be integers or slices, "
                                            f"not {ops.type_name(key)}")
            try:
                obj[key] = value
            except IndexError:
                raise py_error("IndexError", "list assignment index out of range") from None
            return
        if t is dict:
            obj[ops.check_hashable(key)] = value
            return
        if t in (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict):
            obj.py_setitem(key, value)
            return
        if t is PyInstance:
            try:
                fn = obj.cls.lookup("__setitem__")
            except KeyError:
                fn = None
            if fn is not None:
                self.call(fn, [obj, key, value], None)
                return
        raise py_error("TypeError",
                       f"'{ops.type_name(obj)}' object does not support item assignment")

    def delitem(self, obj, key):
        t = type(obj)
        if t is list:
            if type(key) is not int:
                raise py_error("TypeError", "list indices must be integers or slices")
            try:
                del obj[key]
            except IndexError:
                raise py_error("IndexError", "list assignment index out of range") from None
            return
        if t is dict:
            if ops.check_hashable(key) not in obj:
                raise py_error("KeyError", ops.py_repr(key))
            del obj[key]
            return
        if t is PhpArrayAsPyDict or t is PyListAsSpecialPyDict:
            obj.py_delitem(key)
            return
        raise py_error("TypeError",
                       f"'{ops.type_name(obj)}' object does not support item deletion")

    def iterate(self, obj):
        t = type(obj)
        if t is list or t is tuple or t is str:
            return obj
        if t is dict:
            return list(obj)
        if t in (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict):
            return obj.py_iter()
        raise py_error("TypeError", f"'{ops.type_name(obj)}' object is not iterable")

    def length(self, obj) -> int:
        t = type(obj)
        if t is list or t is tuple or t is str or t is dict:
            return len(obj)
        if t in (PhpArrayAsPyDict, PhpArrayAsPyList, PyListAsSpecialPyDict):
            return obj.py_len()
        if t is PyInstance:
            try:
                fn = obj.cls.lookup("__len__")
            except KeyError:
                fn = None
            if fn is not None:
                return self.call(fn, [obj], None)
        raise py_error("TypeError", f"object of type '{ops.type_name(obj)}' has no len()")

    # -- PHP-side access to Python objects ---------------------------------------

    def php_getattr(self, target, name):
        return to_php(self.getattr(target, name))

    def php_getattr_quiet(self, target, name, default):
        try:
            return to_php(self.getattr(target, name))
        except ScriptError:
            return default

    def php_setattr(self, target, name, value):
        self.setattr(target, name, to_py(value))

    def php_getitem(self, target, key):
        return to_php(self.getitem(target, to_py(key)))

    def php_setitem(self, target, key, value):
        if key is None:
            self.call_attr(target, "append", [to_py(value)], None)
        else:
            self.setitem(target, to_py(key), to_py(value))

    def php_iter_items(self, target):
        if type(target) in (PyInstance, PyModule):
            return [(k, to_php(v)) for k, v in list(target.attrs.items())]
        return [(i, to_php(v)) for i, v in enumerate(list(self.iterate(target)))]
