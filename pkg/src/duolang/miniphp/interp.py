"""Tree-walking evaluator for MiniPHP."""
from __future__ import annotations

from duolang import scope
from duolang.bridge import (PyCallableInPhp, PyDictAsPhpArray, PyGenericInPhp,
                            PyListAsPhpArray)
from duolang.exc import ScriptError, adapt_exception, php_error, snapshot
from duolang.miniphp import ast as A
from duolang.miniphp import ops
from duolang.values import (INT_MAX, INT_MIN, BoundPhpMethod, Lang, Method, PhpArray,
                            PhpBuiltin, PhpClass, PhpFunction, PhpObject, PhpRef,
                            PyFunction, cow_delete, cow_write, identical, normalize_key,
                            truthy)

_MISSING = scope.MISSING

# nodes whose value is freshly built, so storing it needs no copy-on-write share
_FRESH = (A.ArrayLit, A.Lit, A.Call, A.CallExpr, A.MethodCall, A.StaticCall, A.New,
          A.BinOp, A.Cast, A.Interp)
_LOCATIONS = (A.Var, A.Prop, A.StaticProp)


class _Break:
    __slots__ = ("depth",)

    def __init__(self, depth):
        self.depth = depth


class _Continue:
    __slots__ = ("depth",)

    def __init__(self, depth):
        self.depth = depth


class _Return:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class ExitProgram(Exception):
    def __init__(self, status: int = 0):
        super().__init__(status)
        self.status = status


class PhpFrame:
    __slots__ = ("locals", "file", "line", "name", "py_scope", "this", "cls",
                 "static_cls", "func")
    lang = Lang.PHP

    def __init__(self, locals_, file, name, py_scope=None, this=None, cls=None,
                 static_cls=None, func=None, line=0):
        self.locals = locals_
        self.file = file
        self.line = line
        self.name = name
        self.py_scope = py_scope
        self.this = this
        self.cls = cls
        self.static_cls = static_cls
        self.func = func

    def __repr__(self) -> str:
        return f"<PhpFrame {self.name} {self.file}:{self.line}>"


def php_truthy(v) -> bool:
    if v is True:
        return True
    if v is False or v is None:
        return False
    return truthy(v, Lang.PHP)


def _share(node, value):
    if type(value) is PhpArray and not isinstance(node, _FRESH):
        value.unique = False
    return value


def _int_result(r):
    return r if INT_MIN <= r <= INT_MAX else float(r)


_BINOPS = {
    "+": ops.add, "-": ops.sub, "*": ops.mul, "/": ops.div, "%": ops.mod, "**": ops.power,
    ".": ops.concat,
    "==": ops.loose_equal,
    "!=": lambda a, b: not ops.loose_equal(a, b),
    "===": identical,
    "!==": lambda a, b: not identical(a, b),
    "<": lambda a, b: ops.compare(a, b) < 0,
    "<=": lambda a, b: ops.compare(a, b) <= 0,
    ">": lambda a, b: ops.compare(a, b) > 0,
    ">=": lambda a, b: ops.compare(a, b) >= 0,
    "&": ops.bit_and, "|": ops.bit_or, "^": ops.bit_xor,
    "<<": ops.shift_left, ">>": ops.shift_right,
}

_INT_FAST = {
    "+": lambda a, b: _int_result(a + b),
    "-": lambda a, b: _int_result(a - b),
    "*": lambda a, b: _int_result(a * b),
    "<": int.__lt__, "<=": int.__le__, ">": int.__gt__, ">=": int.__ge__,
    "==": int.__eq__, "!=": int.__ne__, "===": int.__eq__, "!==": int.__ne__,
}


class PhpInterp:
    def __init__(self, ctx):
        self.ctx = ctx
        self.globals = ctx.php_globals
        self.top_statics: dict = {}
        self._ev = {}
        self._ex = {}
        for name in dir(self):
            if name.startswith("ev_"):
                self._ev[getattr(A, name[3:])] = getattr(self, name)
            elif name.startswith("ex_"):
                self._ex[getattr(A, name[3:])] = getattr(self, name)

    # -- programs --------------------------------------------------------------

    def main_frame(self, file: str) -> PhpFrame:
        return PhpFrame(self.globals.variables, file, "{main}")

    def run_program(self, prog: A.Program, frame: PhpFrame | None = None):
        frame = frame or self.main_frame(prog.file)
        ctx = self.ctx
        ctx.stack.append(frame)
        try:
            self.hoist(prog, frame)
            self.exec_block(prog.body, frame)
        except ScriptError as e:
            if e.trace is None:
                e.trace = snapshot(ctx.stack)
            raise
        finally:
            ctx.stack.pop()

    def hoist(self, prog: A.Program, frame: PhpFrame) -> None:
        for s in prog.body:
            if isinstance(s, A.FunctionDecl):
                self.declare_function(s, frame)
        pending = [s for s in prog.body if isinstance(s, A.ClassDecl)]
        progress = True
        while pending and progress:
            progress = False
            for decl in list(pending):
                if decl.parent is None or self._hoistable_parent(decl.parent):
                    self.declare_class(decl, frame, delayed=False)
                    pending.remove(decl)
                    progress = True

    def _hoistable_parent(self, name: str) -> bool:
        cls = self.globals.lookup_class(name)
        return cls is not None and not cls.delayed

    # -- statements ------------------------------------------------------------

    def exec_block(self, stmts, frame):
        ex = self._ex
        for s in stmts:
            frame.line = s.line
            r = ex[s.__class__](s, frame)
            if r is not None:
                return r
        return None

    def ex_ExprStmt(self, s, f):
        self._ev[s.expr.__class__](s.expr, f)

    def ex_Echo(self, s, f):
        write = self.ctx.write
        for v in s.values:
            write(ops.to_str(self.ev(v, f)))

    def ex_If(self, s, f):
        if php_truthy(self.ev(s.cond, f)):
            return self.exec_block(s.then, f)
        if s.otherwise is not None:
            return self.exec_block(s.otherwise, f)
        return None

    @staticmethod
    def _loop_exit(r):
        """Translate a body signal: (stop_loop, value_to_propagate)."""
        t = type(r)
        if t is _Break:
            return True, (None if r.depth == 1 else _Break(r.depth - 1))
        if t is _Continue:
            if r.depth == 1:
                return False, None
            return True, _Continue(r.depth - 1)
        return True, r

    def ex_While(self, s, f):
        ev = self.ev
        while php_truthy(ev(s.cond, f)):
            r = self.exec_block(s.body, f)
            if r is not None:
                stop, out = self._loop_exit(r)
                if stop:
                    return out
        return None

    def ex_DoWhile(self, s, f):
        while True:
            r = self.exec_block(s.body, f)
            if r is not None:
                stop, out = self._loop_exit(r)
                if stop:
                    return out
            if not php_truthy(self.ev(s.cond, f)):
                return None

    def ex_For(self, s, f):
        ev = self.ev
        for e in s.init:
            ev(e, f)
        while True:
            ok = True
            for e in s.cond:
                ok = php_truthy(ev(e, f))
            if not ok:
                return None
            r = self.exec_block(s.body, f)
            if r is not None:
                stop, out = self._loop_exit(r)
                if stop:
                    return out
            for e in s.step:
                ev(e, f)

    def ex_Foreach(self, s, f):
        subject = self.ev(s.subject, f)
        t = type(subject)
        if t is PhpArray:
            subject.unique = False
            items = subject.entries.items()
        elif t is PyListAsPhpArray or t is PyDictAsPhpArray:
            items = subject.php_items()
        elif t is PyGenericInPhp:
            items = self.ctx.py.php_iter_items(subject.target)
        elif isinstance(subject, PhpObject):
            items = [(k, ops.deref(v)) for k, v in list(subject.attrs.items())]
        else:
            raise php_error(f"foreach() argument must be of type array|object, "
                            f"{ops.type_name(subject)} given", "TypeError")
        key_node, value_node = s.key, s.value
        for k, v in items:
            if key_node is not None:
                self.assign(key_node, k, f)
            if type(v) is PhpArray:
                v.unique = False
            self.assign(value_node, v, f)
            r = self.exec_block(s.body, f)
            if r is not None:
                stop, out = self._loop_exit(r)
                if stop:
                    return out
        return None

    def ex_Return(self, s, f):
        if s.value is None:
            return _Return(None)
        return _Return(_share(s.value, self.ev(s.value, f)))

    def ex_Break(self, s, f):
        return _Break(s.depth)

    def ex_Continue(self, s, f):
        return _Continue(s.depth)

    def ex_Global(self, s, f):
        g = self.globals.variables
        for name in s.names:
            slot = g.get(name)
            if type(slot) is not PhpRef:
                slot = PhpRef(slot)
                g[name] = slot
            f.locals[name] = slot

    def ex_StaticVars(self, s, f):
        cells = f.func.static_vars if f.func is not None else self.top_statics
        for name, default in s.items:
            cell = cells.get(name)
            if cell is None:
                value = None if default is None else self.ev(default, f)
                cell = cells[name] = PhpRef(value)
            f.locals[name] = cell

    def ex_Block(self, s, f):
        ctx = self.ctx
        declared: list[PhpClass] = []
        ctx.delayed.append((f, declared))
        try:
            return self.exec_block(s.body, f)
        finally:
            ctx.delayed.pop()
            for cls in declared:
                cls.sealed = True

    def ex_FunctionDecl(self, s, f):
        existing = self.globals.lookup_function(s.name)
        if isinstance(existing, PhpFunction) and existing.code is s:
            return None
        self.declare_function(s, f)
        return None

    def ex_ClassDecl(self, s, f):
        existing = self.globals.lookup_class(s.name)
        if existing is not None and existing.extra.get("decl") is s:
            return None
        delayed = bool(self.ctx.delayed) and self.ctx.delayed[-1][0] is f
        cls = self.declare_class(s, f, delayed)
        if delayed:
            self.ctx.delayed[-1][1].append(cls)
        return None

    def ex_Try(self, s, f):
        try:
            r = self.exec_block(s.body, f)
        except ScriptError as e:
            value = e.value
            if not isinstance(value, PhpObject):
                value = adapt_exception(value, Lang.PHP)
            for c in s.catches:
                if any(self._catch_matches(value, name, f) for name in c.classes):
                    if c.var is not None:
                        self.assign_var(c.var, value, f)
                    break
            else:
                if s.final is not None:
                    r2 = self.exec_block(s.final, f)
                    if r2 is not None:
                        return r2
                raise
            try:
                r = self.exec_block(c.body, f)
            finally:
                if s.final is not None:
                    r2 = self.exec_block(s.final, f)
                    if r2 is not None:
                        return r2
            return r
        if s.final is not None:
            r2 = self.exec_block(s.final, f)
            if r2 is not None:
                return r2
        return r

    def _catch_matches(self, value, name, f) -> bool:
        lname = name.lower()
        if lname in ("self", "static") and f.cls is not None:
            return value.cls.is_subclass_of(f.cls)
        return value.cls.is_subclass_name(name)

    def ex_Throw(self, s, f):
        value = self.ev(s.value, f)
        if not isinstance(value, PhpObject) or not value.cls.is_subclass_name("Throwable"):
            raise php_error("Can only throw objects", "Error")
        raise ScriptError(value)

    def ex_Unset(self, s, f):
        for t in s.targets:
            if isinstance(t, A.Var):
                f.locals.pop(t.name, None)
            elif isinstance(t, A.Index) and t.key is not None:
                key = self.ev(t.key, f)
                self._write(t.base, f, lambda c, key=key: self._container_unset(c, key))
            elif isinstance(t, A.Prop):
                obj = self.ev(t.obj, f)
                if isinstance(obj, PhpObject):
                    obj.attrs.pop(t.name, None)
            else:
                raise php_error("Cannot unset this expression")

    def _container_unset(self, c, key):
        if type(c) is PhpArray:
            return cow_delete(c, key, True)
        if type(c) is PyListAsPhpArray or type(c) is PyDictAsPhpArray:
            c.php_unset(key)
        return c

    # -- declarations ----------------------------------------------------------

    def declare_function(self, decl: A.FunctionDecl, f: PhpFrame) -> PhpFunction:
        fn = PhpFunction(decl, f.py_scope)
        self.globals.add_function(decl.name, fn)
        return fn

    def declare_class(self, decl: A.ClassDecl, f: PhpFrame, delayed: bool) -> PhpClass:
        parent = None
        if decl.parent is not None:
            parent = self.find_class(decl.parent, f)
            if parent.delayed and not delayed:
                raise php_error(f"Class {decl.name} extends delayed class {parent.name} "
                                f"and must itself be declared inside a {{ ... }} block")
        cls = PhpClass(decl.name, parent)
        cls.delayed = delayed
        cls.sealed = not delayed
        cls.extra["decl"] = decl
        consts = {}
        cls.extra["consts"] = consts
        self.globals.add_class(cls)
        for name, expr in decl.consts:
            consts[name] = self.ev(expr, f)
        for p in decl.props:
            cls.props.append((p.name, p.default, p.access, p.static))
            if p.static:
                cls.static_vars[p.name] = PhpRef(None if p.default is None else self.ev(p.default, f))
        for m in decl.methods:
            key = m.name.lower()
            if key in cls.methods:
                raise php_error(f"Cannot redeclare {decl.name}::{m.name}()")
            cls.methods[key] = Method(m.name, PhpFunction(m, f.py_scope), m.access, m.static, cls)
        return cls

    def find_class(self, name: str, f: PhpFrame | None = None) -> PhpClass:
        lname = name.lower()
        if f is not None:
            if lname == "self" and f.cls is not None:
                return f.cls
            if lname == "static" and f.static_cls is not None:
                return f.static_cls
            if lname == "parent" and f.cls is not None and f.cls.parent is not None:
                return f.cls.parent
        cls = self.globals.lookup_class(name)
        if cls is None:
            raise php_error(f'Class "{name}" not found')
        return cls

    # -- expressions -----------------------------------------------------------

    def ev(self, node, f):
        return self._ev[node.__class__](node, f)

    def ev_Lit(self, n, f):
        return n.value

    def ev_Interp(self, n, f):
        parts = []
        for p in n.parts:
            parts.append(p if type(p) is str else ops.to_str(self.ev_Var(p, f)))
        return "".join(parts)

    def ev_ArrayLit(self, n, f):
        arr = PhpArray()
        ev = self.ev
        for item in n.items:
            v = _share(item.value, ev(item.value, f))
            if item.key is None:
                arr.append_inplace(v)
            else:
                arr.set_inplace(normalize_key(ev(item.key, f)), v)
        return arr

    def ev_Var(self, n, f):
        slot = f.locals.get(n.name, _MISSING)
        if slot is _MISSING:
            if n.name == "this":
                raise php_error("Using $this when not in object context")
            slot = scope.lookup_php_variable(n.name, f)
        if type(slot) is PhpRef:
            return slot.value
        return slot

    def ev_Index(self, n, f):
        base = self.ev(n.base, f)
        if n.key is None:
            raise php_error("Cannot use [] for reading")
        key = self.ev(n.key, f)
        t = type(base)
        if t is PhpArray:
            return base.entries.get(normalize_key(key))
        if t is PyListAsPhpArray or t is PyDictAsPhpArray:
            return base.php_get(key)
        if t is str:
            i = ops.to_int(key)
            if -len(base) <= i < len(base):
                return base[i]
            return ""
        if base is None:
            return None
        if t is PyGenericInPhp:
            return self.ctx.py.php_getitem(base.target, key)
        raise php_error(f"Cannot use a scalar value as an array ({ops.type_name(base)})")

    def ev_Prop(self, n, f):
        obj = self.ev(n.obj, f)
        return self.get_prop(obj, n.name)

    def get_prop(self, obj, name):
        if isinstance(obj, PhpObject):
            slot = obj.attrs.get(name)
            if type(slot) is PhpRef:
                return slot.value
            return slot
        if type(obj) is PyGenericInPhp:
            return self.ctx.py.php_getattr(obj.target, name)
        raise php_error(f'Attempt to read property "{name}" on {ops.type_name(obj)}')

    def set_prop(self, obj, name, value):
        if isinstance(obj, PhpObject):
            attrs = obj.attrs
            slot = attrs.get(name)
            if type(slot) is PhpRef:
                slot.value = value
            else:
                attrs[name] = value
            return
        if type(obj) is PyGenericInPhp:
            self.ctx.py.php_setattr(obj.target, name, value)
            return
        raise php_error(f'Attempt to assign property "{name}" on {ops.type_name(obj)}')

    def ev_StaticProp(self, n, f):
        return self._static_cell(n, f).value

    def _static_cell(self, n, f) -> PhpRef:
        cls = self.find_class(n.cls, f)
        c = cls
        while c is not None:
            if n.name in c.static_vars:
                return c.static_vars[n.name]
            c = c.parent
        raise php_error(f"Access to undeclared static property {cls.name}::${n.name}")

    def ev_ClassConst(self, n, f):
        if n.name == "class":
            return self.find_class(n.cls, f).name
        cls = self.find_class(n.cls, f)
        c = cls
        while c is not None:
            consts = c.extra.get("consts", {})
            if n.name in consts:
                return consts[n.name]
            c = c.parent
        raise php_error(f'Undefined constant {cls.name}::{n.name}')

    def ev_ConstRef(self, n, f):
        consts = self.globals.constants
        if n.name in consts:
            return consts[n.name]
        raise php_error(f'Undefined constant "{n.name}"')

    def ev_Assign(self, n, f):
        value = _share(n.value, self.ev(n.value, f))
        target = n.target
        if target.__class__ is A.Var:
            locs = f.locals
            slot = locs.get(target.name)
            if type(slot) is PhpRef:
                slot.value = value
            else:
                if target.name == "this":
                    raise php_error("Cannot re-assign $this")
                locs[target.name] = value
            return value
        self.assign(target, value, f)
        return value

    def assign_var(self, name, value, f):
        locs = f.locals
        slot = locs.get(name)
        if type(slot) is PhpRef:
            slot.value = value
        else:
            locs[name] = value

    def assign(self, target, value, f):
        cls = target.__class__
        if cls is A.Var:
            self.assign_var(target.name, value, f)
        elif cls is A.Prop:
            self.set_prop(self.ev(target.obj, f), target.name, value)
        elif cls is A.StaticProp:
            self._static_cell(target, f).value = value
        else:
            self._write(target, f, lambda old: value)

    def _write(self, node, f, fn):
        """Read-modify-write of a storage location; ``fn`` maps old to new value."""
        cls = node.__class__
        if cls is A.Var:
            locs = f.locals
            slot = locs.get(node.name)
            if type(slot) is PhpRef:
                slot.value = fn(slot.value)
            else:
                locs[node.name] = fn(slot)
        elif cls is A.Index:
            key = None if node.key is None else self.ev(node.key, f)
            self._write(node.base, f, lambda c: self._container_set(c, key, fn))
        elif cls is A.Prop:
            obj = self.ev(node.obj, f)
            if type(obj) is PyGenericInPhp:
                old = self.get_prop(obj, node.name)
                new = fn(old)
                if new is not old:
                    self.set_prop(obj, node.name, new)
                return
            self.set_prop(obj, node.name, fn(self.get_prop(obj, node.name)))
        elif cls is A.StaticProp:
            cell = self._static_cell(node, f)
            cell.value = fn(cell.value)
        else:
            raise php_error("Cannot assign to this expression")

    def _container_set(self, c, key, fn):
        t = type(c)
        if t is PhpArray:
            old = None if key is None else c.entries.get(normalize_key(key))
            return cow_write(c, key, fn(old), True)
        if c is None:
            return cow_write(PhpArray(), key, fn(None), True)
        if t is PyListAsPhpArray or t is PyDictAsPhpArray:
            old = None if key is None else c.php_get(key)
            new = fn(old)
            if key is None or new is not old or t is PyDictAsPhpArray:
                c.php_set(key, new)
            return c
        if t is PyGenericInPhp:
            old = None if key is None else self.ctx.py.php_getitem(c.target, key)
            self.ctx.py.php_setitem(c.target, key, fn(old))
            return c
        raise php_error(f"Cannot use a scalar value as an array ({ops.type_name(c)})")

    def ev_AssignRef(self, n, f):
        ref = self.get_ref(n.source, f)
        target = n.target
        if isinstance(target, A.Var):
            f.locals[target.name] = ref
        elif isinstance(target, A.Prop):
            obj = self.ev(target.obj, f)
            if not isinstance(obj, PhpObject):
                raise php_error("Cannot assign by reference to this property")
            obj.attrs[target.name] = ref
        else:
            raise php_error("Cannot assign by reference to an array element")
        return ref.value

    def get_ref(self, node, f) -> PhpRef:
        """The reference cell behind a location, creating it if needed."""
        cls = node.__class__
        if cls is A.Var:
            locs = f.locals
            slot = locs.get(node.name, _MISSING)
            if type(slot) is PhpRef:
                return slot
            if slot is _MISSING:
                slot = None
            ref = locs[node.name] = PhpRef(slot)
            return ref
        if cls is A.Prop:
            obj = self.ev(node.obj, f)
            if not isinstance(obj, PhpObject):
                raise php_error("Cannot take a reference to this property")
            slot = obj.attrs.get(node.name)
            if type(slot) is PhpRef:
                return slot
            ref = obj.attrs[node.name] = PhpRef(slot)
            return ref
        if cls is A.StaticProp:
            return self._static_cell(node, f)
        raise php_error("Argument could not be passed by reference")

    def ev_CompoundAssign(self, n, f):
        rhs = self.ev(n.value, f)
        op = _BINOPS[n.op]
        target = n.target
        if target.__class__ is A.Var:
            locs = f.locals
            slot = locs.get(target.name, _MISSING)
            if type(slot) is PhpRef:
                slot.value = r = op(slot.value, rhs)
            else:
                if slot is _MISSING:
                    slot = self._outer_or_none(target.name, f)
                locs[target.name] = r = op(slot, rhs)
            return r
        box = []

        def fn(old):
            box.append(op(old, rhs))
            return box[0]
        self._write(target, f, fn)
        return box[0]

    def _outer_or_none(self, name, f):
        if f.py_scope is not None:
            slot = scope.recurse_for_php(f.py_scope, name)
            if slot is not _MISSING:
                return slot.value if type(slot) is PhpRef else slot
        return None

    def ev_IncDec(self, n, f):
        delta = 1 if n.op == "++" else -1
        target = n.target
        if target.__class__ is A.Var:
            locs = f.locals
            slot = locs.get(target.name, _MISSING)
            ref = slot if type(slot) is PhpRef else None
            old = slot.value if ref is not None else slot
            if old is _MISSING:
                old = self._outer_or_none(target.name, f)
            new = self._incdec(old, delta)
            if ref is not None:
                ref.value = new
            else:
                locs[target.name] = new
            return new if n.prefix else old
        box = []

        def fn(old):
            box.append(old)
            return self._incdec(old, delta)
        self._write(target, f, fn)
        old = box[0]
        return self._incdec(old, delta) if n.prefix else old

    @staticmethod
    def _incdec(v, delta):
        if type(v) is int:
            return _int_result(v + delta)
        if v is None:
            return 1 if delta > 0 else None
        if type(v) is float:
            return v + delta
        raise php_error(f"Cannot increment/decrement {ops.type_name(v)}", "TypeError")

    def ev_BinOp(self, n, f):
        a = self.ev(n.left, f)
        b = self.ev(n.right, f)
        if type(a) is int and type(b) is int:
            fast = _INT_FAST.get(n.op)
            if fast is not None:
                return fast(a, b)
        return _BINOPS[n.op](a, b)

    def ev_Logical(self, n, f):
        left = php_truthy(self.ev(n.left, f))
        if n.op == "&&":
            return left and php_truthy(self.ev(n.right, f))
        return left or php_truthy(self.ev(n.right, f))

    def ev_Unary(self, n, f):
        v = self.ev(n.operand, f)
        if n.op == "!":
            return not php_truthy(v)
        if n.op == "-":
            return ops.negate(v)
        if n.op == "~":
            return ops.bit_not(v)
        return ops.add(0, v) if type(v) is not int and type(v) is not float else v

    def ev_Cast(self, n, f):
        v = self.ev(n.operand, f)
        t = n.type
        if t == "int":
            return ops.to_int(v)
        if t == "float":
            return ops.to_float(v)
        if t == "string":
            return ops.to_str(v)
        if t == "bool":
            return php_truthy(v)
        if type(v) in ops.PHP_ARRAYS:
            return v
        if v is None:
            return PhpArray()
        if isinstance(v, PhpObject):
            return PhpArray({k: (s.value if type(s) is PhpRef else s) for k, s in v.attrs.items()})
        return PhpArray.from_list([v])

    def ev_Ternary(self, n, f):
        cond = self.ev(n.cond, f)
        if php_truthy(cond):
            return cond if n.then is None else self.ev(n.then, f)
        return self.ev(n.otherwise, f)

    def _quiet(self, node, f):
        """Evaluate for isset/empty: undefined things yield _MISSING, not errors."""
        cls = node.__class__
        if cls is A.Var:
            slot = f.locals.get(node.name, _MISSING)
            if slot is _MISSING and f.py_scope is not None:
                slot = scope.recurse_for_php(f.py_scope, node.name)
            return slot.value if type(slot) is PhpRef else slot
        if cls is A.Index:
            base = self._quiet(node.base, f)
            if base is _MISSING or base is None or node.key is None:
                return _MISSING
            key = self.ev(node.key, f)
            t = type(base)
            if t is PhpArray:
                return base.entries.get(normalize_key(key), _MISSING)
            if t is PyListAsPhpArray or t is PyDictAsPhpArray:
                return base.php_get(key) if base.php_has(key) else _MISSING
            if t is str:
                i = ops.to_int(key)
                return base[i] if -len(base) <= i < len(base) else _MISSING
            return _MISSING
        if cls is A.Prop:
            obj = self._quiet(node.obj, f)
            if isinstance(obj, PhpObject):
                slot = obj.attrs.get(node.name, _MISSING)
                return slot.value if type(slot) is PhpRef else slot
            if type(obj) is PyGenericInPhp:
                return self.ctx.py.php_getattr_quiet(obj.target, node.name, _MISSING)
            return _MISSING
        if cls is A.StaticProp:
            try:
                return self._static_cell(node, f).value
            except ScriptError:
                return _MISSING
        return self.ev(node, f)

    def ev_Isset(self, n, f):
        for t in n.targets:
            v = self._quiet(t, f)
            if v is _MISSING or v is None:
                return False
        return True

    def ev_Empty(self, n, f):
        v = self._quiet(n.target, f)
        return v is _MISSING or not php_truthy(v)

    def ev_InstanceOf(self, n, f):
        v = self.ev(n.operand, f)
        if not isinstance(v, PhpObject):
            return False
        lname = n.cls.lower()
        if lname in ("self", "static", "parent"):
            return v.cls.is_subclass_of(self.find_class(n.cls, f))
        return v.cls.is_subclass_name(n.cls)

    def ev_Print(self, n, f):
        self.ctx.write(ops.to_str(self.ev(n.value, f)))
        return 1

    def ev_New(self, n, f):
        f.line = n.line
        if isinstance(n.cls, str):
            cls = self.find_class(n.cls, f)
        else:
            v = self.ev(n.cls, f)
            if isinstance(v, PhpObject):
                cls = v.cls
            elif isinstance(v, PhpClass):
                cls = v
            else:
                cls = self.find_class(ops.to_str(v), f)
        return self.instantiate(cls, n.args, f)

    def instantiate(self, cls: PhpClass, arg_nodes, f, values=None):
        if cls.delayed and not cls.sealed:
            cls.sealed = True
        if f is None:
            f = PhpFrame({}, "<new>", "{new}", cls=cls, static_cls=cls)
        obj = PhpObject(cls)
        chain = []
        c = cls
        while c is not None:
            chain.append(c)
            c = c.parent
        for c in reversed(chain):
            for name, default, _access, static in c.props:
                if not static:
                    obj.attrs[name] = None if default is None else self.ev(default, f)
        ctor = cls.find_method("__construct")
        if ctor is not None:
            self.check_visibility(ctor, f.cls if f.name != "{new}" else None)
            if values is None:
                self.call_method_nodes(obj, ctor, arg_nodes, f)
            else:
                self.invoke_method(obj, ctor, values)
        return obj

    # -- calls -----------------------------------------------------------------

    def ev_Call(self, n, f):
        f.line = n.line
        fn = scope.locate_function(n.name, f, self.ctx)
        return self.call_value(fn, n.args, f)

    def ev_CallExpr(self, n, f):
        f.line = n.line
        fn = self.ev(n.func, f)
        if type(fn) is str:
            if "::" in fn:
                cname, mname = fn.split("::", 1)
                cls = self.find_class(cname, f)
                m = self._find_method(cls, mname)
                return self.call_method_nodes(None, m, n.args, f)
            fn = scope.locate_function(fn, f, self.ctx)
        return self.call_value(fn, n.args, f)

    def call_value(self, fn, arg_nodes, f):
        t = type(fn)
        if t is PhpFunction:
            return self.call_function(fn, self.bind_args(fn.code.params, arg_nodes, f))
        if t is PhpBuiltin:
            return self.call_builtin(fn, arg_nodes, f)
        if t is PyCallableInPhp:
            from duolang import xcall
            return xcall.call_py_from_php(self.ctx, fn.target, arg_nodes, f)
        if t is BoundPhpMethod:
            self.check_visibility(fn.method, f.cls)
            return self.call_method_nodes(fn.obj, fn.method, arg_nodes, f)
        if t is PhpArray and len(fn.entries) == 2:
            target, mname = fn.entries.get(0), fn.entries.get(1)
            if isinstance(target, PhpObject) and type(mname) is str:
                m = self._find_method(target.cls, mname)
                self.check_visibility(m, f.cls)
                return self.call_method_nodes(target, m, arg_nodes, f)
        raise php_error(f"Value of type {ops.type_name(fn)} is not callable")

    def call_builtin(self, fn: PhpBuiltin, arg_nodes, f):
        if fn.raw:
            return fn.fn(self, f, arg_nodes)
        args = []
        byref = fn.byref
        for i, node in enumerate(arg_nodes):
            if byref and i in byref:
                args.append(self.get_ref(node, f))
            else:
                args.append(self.ev(node, f))
        return fn.fn(self, args)

    def bind_args(self, params, arg_nodes, f) -> list:
        args = []
        ev = self.ev
        for i, node in enumerate(arg_nodes):
            if i < len(params) and params[i].byref:
                args.append(self.get_ref(node, f))
            else:
                args.append(_share(node, ev(node, f)))
        return args

    def call_function(self, fn: PhpFunction, args: list, this=None, cls=None,
                      static_cls=None, name=None):
        code = fn.code
        params = code.params
        locs = {}
        if this is not None:
            locs["this"] = this
        frame = PhpFrame(locs, code.file, name or code.name, fn.py_scope, this, cls,
                         static_cls, fn, code.line)
        nargs = len(args)
        for i, p in enumerate(params):
            if i < nargs:
                locs[p.name] = args[i]
            elif p.default is not None:
                locs[p.name] = self.ev(p.default, frame)
            else:
                required = sum(1 for q in params if q.default is None)
                raise php_error(f"Too few arguments to function {frame.name}(), {nargs} passed "
                                f"and at least {required} expected", "ArgumentCountError")
            if p.byref and type(locs[p.name]) is not PhpRef:
                locs[p.name] = PhpRef(locs[p.name])
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
        if r is None:
            return None
        if type(r) is _Return:
            return r.value
        raise php_error("'break' not in the 'loop' or 'switch' context")

    # -- methods ---------------------------------------------------------------

    def _find_method(self, cls: PhpClass, name: str) -> Method:
        m = cls.find_method(name)
        if m is None:
            raise php_error(f"Call to undefined method {cls.name}::{name}()")
        return m

    @staticmethod
    def check_visibility(m: Method, caller_cls) -> None:
        if m.access == "public":
            return
        owner = m.owner
        if m.access == "private":
            ok = caller_cls is owner
        else:
            ok = caller_cls is not None and (caller_cls.is_subclass_of(owner)
                                             or owner.is_subclass_of(caller_cls))
        if not ok:
            where = "global scope" if caller_cls is None else f"scope {caller_cls.name}"
            raise php_error(f"Call to {m.access} method {owner.name}::{m.name}() from {where}")

    def ev_MethodCall(self, n, f):
        obj = self.ev(n.obj, f)
        f.line = n.line
        if isinstance(obj, PhpObject):
            m = self._find_method(obj.cls, n.name)
            self.check_visibility(m, f.cls)
            return self.call_method_nodes(obj, m, n.args, f)
        if type(obj) is PyGenericInPhp:
            from duolang import xcall
            attr = self.ctx.py.getattr(obj.target, n.name)
            return xcall.call_py_from_php(self.ctx, attr, n.args, f)
        if type(obj) is PyCallableInPhp and n.name == "__invoke":
            return self.call_value(obj, n.args, f)
        raise php_error(f"Call to a member function {n.name}() on {ops.type_name(obj)}")

    def ev_StaticCall(self, n, f):
        f.line = n.line
        cls = self.find_class(n.cls, f)
        m = self._find_method(cls, n.name)
        self.check_visibility(m, f.cls)
        this = None
        if not m.static and f.this is not None and f.this.cls.is_subclass_of(m.owner):
            this = f.this
        elif not m.static:
            raise php_error(f"Non-static method {cls.name}::{m.name}() cannot be called statically")
        return self.call_method_nodes(this, m, n.args, f, static_cls=cls if this is None else None)

    def call_method_nodes(self, obj, m: Method, arg_nodes, f, static_cls=None):
        func = m.func
        t = type(func)
        if t is PhpFunction:
            args = self.bind_args(func.code.params, arg_nodes, f)
            return self.call_function(func, args, None if m.static else obj, m.owner,
                                      static_cls or (obj.cls if obj is not None else m.owner),
                                      f"{m.owner.name}->{m.name}" if not m.static
                                      else f"{m.owner.name}::{m.name}")
        if t is PhpBuiltin:
            return func.fn(self, obj, [self.ev(a, f) for a in arg_nodes])
        if t is PyFunction:
            from duolang import xcall
            return xcall.call_py_method_from_php(self.ctx, m, obj, arg_nodes, f)
        raise php_error(f"Broken method {m.name}")

    def invoke_method(self, obj, m: Method, args: list):
        """Call a method with already-evaluated PHP arguments (refs for by-ref params)."""
        func = m.func
        t = type(func)
        if t is PhpFunction:
            return self.call_function(func, args, None if m.static else obj, m.owner,
                                      obj.cls if obj is not None else m.owner,
                                      f"{m.owner.name}->{m.name}")
        if t is PhpBuiltin:
            return func.fn(self, obj, [a.value if type(a) is PhpRef else a for a in args])
        if t is PyFunction:
            from duolang import xcall
            return xcall.call_py_method_values(self.ctx, m, obj, args)
        raise php_error(f"Broken method {m.name}")

    def call_method(self, obj: PhpObject, name: str, args: list):
        return self.invoke_method(obj, self._find_method(obj.cls, name), args)

    def invoke(self, fn, args: list, caller_cls=None):
        """Call any PHP-side callable with evaluated arguments."""
        t = type(fn)
        if t is PhpFunction:
            return self.call_function(fn, args)
        if t is PhpBuiltin:
            if fn.raw:
                raise php_error(f"{fn.name}() cannot be called indirectly")
            if fn.byref:
                args = [a if (i in fn.byref or type(a) is not PhpRef) else a.value
                        for i, a in enumerate(args)]
            else:
                args = [a.value if type(a) is PhpRef else a for a in args]
            return fn.fn(self, args)
        if t is BoundPhpMethod:
            self.check_visibility(fn.method, caller_cls)
            return self.invoke_method(fn.obj, fn.method, args)
        if t is PhpClass:
            return self.instantiate(fn, None, None, values=args)
        if t is PyCallableInPhp:
            from duolang import xcall
            return xcall.call_py_values(self.ctx, fn.target, args)
        raise php_error(f"Value of type {ops.type_name(fn)} is not callable")
