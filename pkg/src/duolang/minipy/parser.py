"""Recursive-descent parser for MiniPy, plus local-name analysis."""
from __future__ import annotations

from duolang.exc import ScriptSyntaxError
from duolang.minipy import ast as A
from duolang.minipy.lexer import Token, tokenize
from duolang.scope import StickyCache

_COMPARE = {"<", ">", "==", ">=", "<=", "!="}
_AUG = {"+=", "-=", "*=", "/=", "//=", "%=", "**="}


class PyParser:
    def __init__(self, tokens: list[Token], file: str):
        self.toks = tokens
        self.i = 0
        self.file = file

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ScriptSyntaxError(self.file, tok.line, msg)

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at(self, kind: str, value=None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "OP" and self.tok.value in ops

    def at_kw(self, *kws) -> bool:
        return self.tok.kind == "KW" and self.tok.value in kws

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            self.error(f"invalid syntax: expected '{op}'")
        return self.advance()

    def expect_kw(self, kw: str) -> Token:
        if not self.at_kw(kw):
            self.error(f"invalid syntax: expected '{kw}'")
        return self.advance()

    def expect_name(self) -> str:
        if self.tok.kind != "NAME":
            self.error("invalid syntax: expected a name")
        return self.advance().value

    # -- statements ------------------------------------------------------------

    def parse_module(self) -> A.Module:
        body = []
        while not self.at("EOF"):
            if self.at("NEWLINE"):
                self.advance()
                continue
            if self.at("INDENT"):
                self.error("unexpected indent")
            body.extend(self.statement())
        code = make_code("<module>", [], body, self.file, 1, kind="module")
        return A.Module(self.file, body, code.local_names, code)

    def statement(self) -> list:
        t = self.tok
        if t.kind == "KW":
            kw = t.value
            if kw == "if":
                return [self.if_stmt()]
            if kw == "while":
                return [self.while_stmt()]
            if kw == "for":
                return [self.for_stmt()]
            if kw == "def":
                return [self.funcdef([])]
            if kw == "class":
                return [self.classdef()]
            if kw == "try":
                return [self.try_stmt()]
        if t.kind == "OP" and t.value == "@":
            decorators = []
            while self.at_op("@"):
                self.advance()
                decorators.append(self.test())
                self._end_line()
            if not self.at_kw("def"):
                self.error("decorators are only supported on functions")
            return [self.funcdef(decorators)]
        return self.simple_stmts()

    def _end_line(self):
        if self.at("NEWLINE"):
            self.advance()
        elif not self.at("EOF") and not self.at("DEDENT"):
            self.error("invalid syntax")

    def simple_stmts(self) -> list:
        stmts = [self.small_stmt()]
        while self.at_op(";"):
            self.advance()
            if self.at("NEWLINE") or self.at("EOF"):
                break
            stmts.append(self.small_stmt())
        self._end_line()
        return stmts

    def small_stmt(self):
        t = self.tok
        line = t.line
        if t.kind == "KW":
            kw = t.value
            if kw == "pass":
                self.advance()
                return A.Pass(line)
            if kw == "break":
                self.advance()
                return A.Break(line)
            if kw == "continue":
                self.advance()
                return A.Continue(line)
            if kw == "return":
                self.advance()
                if self.at("NEWLINE") or self.at_op(";") or self.at("EOF") or self.at("DEDENT"):
                    return A.Return(line, None)
                return A.Return(line, self.testlist())
            if kw == "raise":
                self.advance()
                if self.at("NEWLINE") or self.at("EOF") or self.at_op(";"):
                    return A.Raise(line, None)
                exc = self.test()
                if self.at_kw("from"):
                    self.advance()
                    self.test()
                return A.Raise(line, exc)
            if kw == "global":
                self.advance()
                names = [self.expect_name()]
                while self.at_op(","):
                    self.advance()
                    names.append(self.expect_name())
                return A.Global(line, names)
            if kw == "nonlocal":
                self.error("nonlocal is not supported: closures are read-only")
            if kw == "import":
                self.advance()
                names = []
                while True:
                    mod = self.expect_name()
                    bound = mod
                    if self.at_kw("as"):
                        self.advance()
                        bound = self.expect_name()
                    names.append((mod, bound))
                    if not self.at_op(","):
                        break
                    self.advance()
                return A.Import(line, names)
            if kw == "from":
                self.error("'from ... import' is not supported")
            if kw == "del":
                self.advance()
                targets = [self.expr()]
                while self.at_op(","):
                    self.advance()
                    targets.append(self.expr())
                return A.Delete(line, targets)
            if kw == "assert":
                self.advance()
                test = self.test()
                msg = None
                if self.at_op(","):
                    self.advance()
                    msg = self.test()
                return A.Assert(line, test, msg)
        expr = self.testlist()
        if self.at_op("="):
            targets = [expr]
            while self.at_op("="):
                self.advance()
                targets.append(self.testlist())
            value = targets.pop()
            for tgt in targets:
                self._check_target(tgt)
            return A.Assign(line, targets, value)
        if self.tok.kind == "OP" and self.tok.value in _AUG:
            op = self.advance().value[:-1]
            if not isinstance(expr, (A.Name, A.Attribute, A.Subscript)):
                self.error("illegal expression for augmented assignment")
            return A.AugAssign(line, op, expr, self.test())
        return A.ExprStmt(line, expr)

    def _check_target(self, t):
        if isinstance(t, (A.TupleExpr, A.ListExpr)):
            for item in t.items:
                self._check_target(item)
        elif not isinstance(t, (A.Name, A.Attribute, A.Subscript)):
            self.error("cannot assign to expression")

    def block(self) -> list:
        self.expect_op(":")
        if not self.at("NEWLINE"):
            return self.simple_stmts()
        self.advance()
        if not self.at("INDENT"):
            self.error("expected an indented block")
        self.advance()
        body = []
        while not self.at("DEDENT") and not self.at("EOF"):
            if self.at("NEWLINE"):
                self.advance()
                continue
            body.extend(self.statement())
        if self.at("DEDENT"):
            self.advance()
        return body

    def if_stmt(self):
        line = self.advance().line
        cond = self.namedexpr()
        body = self.block()
        orelse = []
        if self.at_kw("elif"):
            orelse = [self.if_stmt()]
        elif self.at_kw("else"):
            self.advance()
            orelse = self.block()
        return A.If(line, cond, body, orelse)

    def namedexpr(self):
        return self.test()

    def while_stmt(self):
        line = self.advance().line
        cond = self.test()
        body = self.block()
        orelse = []
        if self.at_kw("else"):
            self.advance()
            orelse = self.block()
        return A.While(line, cond, body, orelse)

    def for_stmt(self):
        line = self.advance().line
        target = self.target_list()
        self.expect_kw("in")
        it = self.testlist()
        body = self.block()
        orelse = []
        if self.at_kw("else"):
            self.advance()
            orelse = self.block()
        return A.For(line, target, it, body, orelse)

    def target_list(self):
        line = self.tok.line
        items = [self.expr()]
        trailing = False
        while self.at_op(","):
            self.advance()
            if self.at_kw("in") or self.at_op("="):
                trailing = True
                break
            items.append(self.expr())
        target = items[0] if len(items) == 1 and not trailing else A.TupleExpr(line, items)
        self._check_target(target)
        return target

    def params(self, closer: str) -> list:
        params = []
        seen_default = False
        while not self.at_op(closer):
            if self.at_op("*", "**"):
                self.error("*args and **kwargs are not supported")
            name = self.expect_name()
            if any(p.name == name for p in params):
                self.error(f"duplicate argument '{name}' in function definition")
            if self.at_op(":") and closer == ")":
                self.advance()
                self.test()  # annotation, ignored
            default = None
            if self.at_op("="):
                self.advance()
                default = self.test()
                seen_default = True
            elif seen_default:
                self.error("non-default argument follows default argument")
            params.append(A.Param(name, default))
            if not self.at_op(closer):
                self.expect_op(",")
        return params

    def funcdef(self, decorators):
        line = self.advance().line
        name = self.expect_name()
        self.expect_op("(")
        params = self.params(")")
        self.expect_op(")")
        if self.at_op("->"):
            self.advance()
            self.test()
        body = self.block()
        code = make_code(name, params, body, self.file, line)
        return A.FunctionDef(line, code, decorators)

    def classdef(self):
        line = self.advance().line
        name = self.expect_name()
        bases = []
        if self.at_op("("):
            self.advance()
            while not self.at_op(")"):
                bases.append(self.test())
                if not self.at_op(")"):
                    self.expect_op(",")
            self.advance()
        body = self.block()
        code = make_code(name, [], body, self.file, line, kind="class")
        return A.ClassDef(line, name, bases, body, code)

    def try_stmt(self):
        line = self.advance().line
        body = self.block()
        handlers = []
        orelse, final = [], []
        while self.at_kw("except"):
            hline = self.advance().line
            types, name = [], None
            if not self.at_op(":"):
                t = self.test()
                types = t.items if isinstance(t, A.TupleExpr) else [t]
                if self.at_kw("as"):
                    self.advance()
                    name = self.expect_name()
            handlers.append(A.Handler(hline, types, name, self.block()))
        if self.at_kw("else"):
            self.advance()
            orelse = self.block()
        if self.at_kw("finally"):
            self.advance()
            final = self.block()
        if not handlers and not final:
            self.error("expected 'except' or 'finally' block")
        return A.Try(line, body, handlers, orelse, final)

    # -- expressions -----------------------------------------------------------

    def testlist(self):
        line = self.tok.line
        first = self.test()
        if not self.at_op(","):
            return first
        items = [first]
        while self.at_op(","):
            self.advance()
            if self._at_expr_end():
                break
            items.append(self.test())
        return A.TupleExpr(line, items)

    def _at_expr_end(self) -> bool:
        t = self.tok
        return t.kind in ("NEWLINE", "EOF", "DEDENT") or (t.kind == "OP" and t.value in
                                                         ("=", ")", "]", "}", ":", ";"))

    def test(self):
        if self.at_kw("lambda"):
            return self.lambdef()
        line = self.tok.line
        expr = self.or_test()
        if self.at_kw("if"):
            self.advance()
            cond = self.or_test()
            self.expect_kw("else")
            return A.IfExp(line, cond, expr, self.test())
        return expr

    def lambdef(self):
        line = self.advance().line
        params = self.params(":")
        self.expect_op(":")
        body_expr = self.test()
        code = make_code("<lambda>", params, [A.Return(line, body_expr)], self.file, line,
                         is_lambda=True)
        return A.Lambda(line, code)

    def or_test(self):
        line = self.tok.line
        values = [self.and_test()]
        while self.at_kw("or"):
            self.advance()
            values.append(self.and_test())
        return values[0] if len(values) == 1 else A.BoolOp(line, "or", values)

    def and_test(self):
        line = self.tok.line
        values = [self.not_test()]
        while self.at_kw("and"):
            self.advance()
            values.append(self.not_test())
        return values[0] if len(values) == 1 else A.BoolOp(line, "and", values)

    def not_test(self):
        if self.at_kw("not"):
            line = self.advance().line
            return A.UnaryOp(line, "not", self.not_test())
        return self.comparison()

    def comparison(self):
        line = self.tok.line
        left = self.expr()
        ops, comps = [], []
        while True:
            t = self.tok
            if t.kind == "OP" and t.value in _COMPARE:
                self.advance()
                ops.append(t.value)
            elif t.kind == "KW" and t.value == "in":
                self.advance()
                ops.append("in")
            elif t.kind == "KW" and t.value == "not" and self.peek().kind == "KW" \
                    and self.peek().value == "in":
                self.advance()
                self.advance()
                ops.append("not in")
            elif t.kind == "KW" and t.value == "is":
                self.advance()
                if self.at_kw("not"):
                    self.advance()
                    ops.append("is not")
                else:
                    ops.append("is")
            else:
                break
            comps.append(self.expr())
        if not ops:
            return left
        return A.Compare(line, left, ops, comps)

    def expr(self):
        line = self.tok.line
        left = self.term()
        while self.at_op("+", "-"):
            op = self.advance().value
            left = A.BinOp(line, op, left, self.term())
        return left

    def term(self):
        line = self.tok.line
        left = self.factor()
        while self.at_op("*", "/", "//", "%"):
            op = self.advance().value
            left = A.BinOp(line, op, left, self.factor())
        return left

    def factor(self):
        if self.at_op("-", "+", "~"):
            t = self.advance()
            operand = self.factor()
            if t.value == "-" and isinstance(operand, A.Const) and type(operand.value) in (int, float):
                return A.Const(t.line, -operand.value)
            return A.UnaryOp(t.line, t.value, operand)
        return self.power()

    def power(self):
        line = self.tok.line
        base = self.atom_expr()
        if self.at_op("**"):
            self.advance()
            return A.BinOp(line, "**", base, self.factor())
        return base

    def atom_expr(self):
        expr = self.atom()
        while True:
            t = self.tok
            if t.kind != "OP":
                return expr
            if t.value == "(":
                expr = self.call(expr)
            elif t.value == "[":
                self.advance()
                if self.at_op(":"):
                    self.error("slices are not supported")
                index = self.testlist()
                if self.at_op(":"):
                    self.error("slices are not supported")
                self.expect_op("]")
                expr = A.Subscript(t.line, expr, index)
            elif t.value == ".":
                self.advance()
                expr = A.Attribute(t.line, expr, self.expect_name())
            else:
                return expr

    def call(self, func):
        line = self.advance().line
        args, kwargs = [], []
        while not self.at_op(")"):
            if self.at_op("*", "**"):
                self.error("argument unpacking is not supported")
            if self.tok.kind == "NAME" and self.peek().kind == "OP" and self.peek().value == "=":
                name = self.advance().value
                self.advance()
                if any(k == name for k, _ in kwargs):
                    self.error(f"keyword argument repeated: {name}")
                kwargs.append((name, self.test()))
            else:
                if kwargs:
                    self.error("positional argument follows keyword argument")
                arg = self.test()
                if self.at_kw("for"):
                    arg = self.comprehension(arg, line)
                args.append(arg)
            if not self.at_op(")"):
                self.expect_op(",")
        self.advance()
        return A.Call(line, func, args, kwargs)

    def comprehension(self, elt, line):
        self.expect_kw("for")
        target = self.target_list()
        self.expect_kw("in")
        it = self.or_test()
        conds = []
        while self.at_kw("if"):
            self.advance()
            conds.append(self.or_test())
        if self.at_kw("for"):
            self.error("nested comprehension loops are not supported")
        comp = A.ListComp(line, elt, target, it, conds)
        names = set()
        _target_names(target, names)
        comp.code = A.PyCode("<listcomp>", [], [], self.file, line, local_names=frozenset(names),
                             sticky=StickyCache(), kind="comp")
        return comp

    def atom(self):
        t = self.tok
        line = t.line
        if t.kind == "NAME":
            self.advance()
            return A.Name(line, t.value)
        if t.kind == "NUMBER" or t.kind == "STRING":
            self.advance()
            return A.Const(line, t.value)
        if t.kind == "KW":
            if t.value == "None":
                self.advance()
                return A.Const(line, None)
            if t.value == "True":
                self.advance()
                return A.Const(line, True)
            if t.value == "False":
                self.advance()
                return A.Const(line, False)
        if t.kind == "OP":
            if t.value == "(":
                self.advance()
                if self.at_op(")"):
                    self.advance()
                    return A.TupleExpr(line, [])
                first = self.test()
                if self.at_kw("for"):
                    comp = self.comprehension(first, line)
                    self.expect_op(")")
                    return comp
                if self.at_op(")"):
                    self.advance()
                    return first
                items = [first]
                while self.at_op(","):
                    self.advance()
                    if self.at_op(")"):
                        break
                    items.append(self.test())
                self.expect_op(")")
                return A.TupleExpr(line, items)
            if t.value == "[":
                self.advance()
                if self.at_op("]"):
                    self.advance()
                    return A.ListExpr(line, [])
                first = self.test()
                if self.at_kw("for"):
                    comp = self.comprehension(first, line)
                    self.expect_op("]")
                    return comp
                items = [first]
                while self.at_op(","):
                    self.advance()
                    if self.at_op("]"):
                        break
                    items.append(self.test())
                self.expect_op("]")
                return A.ListExpr(line, items)
            if t.value == "{":
                self.advance()
                keys, values = [], []
                while not self.at_op("}"):
                    keys.append(self.test())
                    self.expect_op(":")
                    values.append(self.test())
                    if not self.at_op("}"):
                        self.expect_op(",")
                self.advance()
                return A.DictExpr(line, keys, values)
        if t.kind == "EOF":
            self.error("unexpected EOF while parsing")
        if t.kind in ("NEWLINE", "INDENT", "DEDENT"):
            self.error("invalid syntax")
        self.error(f"invalid syntax near {t.value!r}")


# ---------------------------------------------------------------------------
# scope analysis


def _target_names(t, out: set) -> None:
    if isinstance(t, A.Name):
        out.add(t.id)
    elif isinstance(t, (A.TupleExpr, A.ListExpr)):
        for item in t.items:
            _target_names(item, out)


def _assigned_names(body) -> tuple[set, set]:
    """Names bound and names declared global in a body (not descending into defs)."""
    bound: set = set()
    declared: set = set()

    def visit(stmts):
        for s in stmts:
            if isinstance(s, A.Assign):
                for t in s.targets:
                    _target_names(t, bound)
            elif isinstance(s, A.AugAssign):
                _target_names(s.target, bound)
            elif isinstance(s, A.For):
                _target_names(s.target, bound)
                visit(s.body)
                visit(s.orelse)
            elif isinstance(s, (A.If, A.While)):
                visit(s.body)
                visit(s.orelse)
            elif isinstance(s, A.Try):
                visit(s.body)
                for h in s.handlers:
                    if h.name:
                        bound.add(h.name)
                    visit(h.body)
                visit(s.orelse)
                visit(s.final)
            elif isinstance(s, A.FunctionDef):
                bound.add(s.code.name)
            elif isinstance(s, A.ClassDef):
                bound.add(s.name)
            elif isinstance(s, A.Import):
                for _, name in s.names:
                    bound.add(name)
            elif isinstance(s, A.Global):
                declared.update(s.names)
            elif isinstance(s, A.Delete):
                for t in s.targets:
                    _target_names(t, bound)

    visit(body)
    return bound, declared


def make_code(name, params, body, file, line, is_lambda=False, kind="function") -> A.PyCode:
    bound, declared = _assigned_names(body)
    bound.update(p.name for p in params)
    local = frozenset(bound - declared)
    return A.PyCode(name, params, body, file, line, is_lambda, local, frozenset(declared),
                    StickyCache(), kind="lambda" if is_lambda else kind)


def parse_py(src: str, file: str = "<py>", line_offset: int = 0) -> A.Module:
    tokens = tokenize(src, file, line_offset)
    return PyParser(tokens, file).parse_module()
