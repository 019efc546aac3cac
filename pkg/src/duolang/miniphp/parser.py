"""Recursive-descent parser for MiniPHP."""
from __future__ import annotations

from duolang.exc import ScriptSyntaxError
from duolang.miniphp import ast as A
from duolang.miniphp.lexer import Token, tokenize

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", ".=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>="}
_CASTS = {"int": "int", "integer": "int", "float": "float", "double": "float",
          "string": "string", "bool": "bool", "boolean": "bool", "array": "array"}
_MODIFIERS = {"public", "private", "protected", "static", "var", "final", "abstract"}

# binary operator precedence, loosest first
_BINARY_LEVELS = [
    ["||"],
    ["&&"],
    ["|"],
    ["^"],
    ["&"],
    ["==", "!=", "===", "!==", "<>"],
    ["<", "<=", ">", ">="],
    ["."],
    ["<<", ">>"],
    ["+", "-"],
    ["*", "/", "%"],
]


class PhpParser:
    def __init__(self, tokens: list[Token], file: str):
        self.toks = tokens
        self.i = 0
        self.file = file

    # -- helpers ---------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ScriptSyntaxError(self.file, tok.line, msg)

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        t = self.tok
        return t.kind == "OP" and t.value in ops

    def at_kw(self, *kws: str) -> bool:
        t = self.tok
        return t.kind == "ID" and t.value.lower() in kws

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            self.error(f"expected '{op}', found {self._describe(self.tok)}")
        return self.advance()

    def expect_kw(self, kw: str) -> Token:
        if not self.at_kw(kw):
            self.error(f"expected '{kw}', found {self._describe(self.tok)}")
        return self.advance()

    def expect_id(self) -> str:
        if self.tok.kind != "ID":
            self.error(f"expected identifier, found {self._describe(self.tok)}")
        return self.advance().value

    def expect_var(self) -> str:
        if self.tok.kind != "VAR":
            self.error(f"expected variable, found {self._describe(self.tok)}")
        return self.advance().value

    @staticmethod
    def _describe(t: Token) -> str:
        if t.kind == "EOF":
            return "end of file"
        if t.kind == "VAR":
            return f"'${t.value}'"
        return f"'{t.value}'"

    # -- program and statements ------------------------------------------------

    def parse_program(self) -> A.Program:
        body = []
        while self.tok.kind != "EOF":
            body.append(self.statement())
        prog = A.Program(self.file, body)
        prog.functions = [s for s in body if isinstance(s, A.FunctionDecl)]
        prog.classes = [s for s in body if isinstance(s, A.ClassDecl)]
        return prog

    def block_or_statement(self) -> list:
        if self.at_op("{"):
            return self.block()
        if self.at_op(":"):
            self.error("alternative control syntax is not supported")
        return [self.statement()]

    def block(self) -> list:
        self.expect_op("{")
        body = []
        while not self.at_op("}"):
            if self.tok.kind == "EOF":
                self.error("unexpected end of file, expecting '}'")
            body.append(self.statement())
        self.advance()
        return body

    def end_statement(self) -> None:
        if self.at_op(";"):
            self.advance()
        elif self.tok.kind == "EOF":
            return
        else:
            self.error(f"syntax error, unexpected {self._describe(self.tok)}, expecting ';'")

    def statement(self) -> A.Node:
        t = self.tok
        line = t.line
        if t.kind == "OP":
            if t.value == "{":
                return A.Block(line, self.block())
            if t.value == ";":
                self.advance()
                return A.Block(line, [])
        if t.kind == "ID":
            kw = t.value.lower()
            method = getattr(self, f"stmt_{kw}", None)
            if method is not None and not (self.peek().kind == "OP" and self.peek().value in ("::", "(")
                                           and kw not in ("if", "while", "for", "foreach", "switch",
                                                          "echo", "return", "print", "unset",
                                                          "isset", "empty", "exit", "die")):
                return method()
        expr = self.expression()
        self.end_statement()
        return A.ExprStmt(line, expr)

    def stmt_echo(self):
        line = self.advance().line
        values = [self.expression()]
        while self.at_op(","):
            self.advance()
            values.append(self.expression())
        self.end_statement()
        return A.Echo(line, values)

    def stmt_if(self):
        line = self.advance().line
        self.expect_op("(")
        cond = self.expression()
        self.expect_op(")")
        then = self.block_or_statement()
        otherwise = None
        if self.at_kw("elseif"):
            otherwise = [self.stmt_if()]
        elif self.at_kw("else"):
            self.advance()
            if self.at_kw("if"):
                otherwise = [self.stmt_if()]
            else:
                otherwise = self.block_or_statement()
        return A.If(line, cond, then, otherwise)

    def stmt_while(self):
        line = self.advance().line
        self.expect_op("(")
        cond = self.expression()
        self.expect_op(")")
        return A.While(line, cond, self.block_or_statement())

    def stmt_do(self):
        line = self.advance().line
        body = self.block_or_statement()
        self.expect_kw("while")
        self.expect_op("(")
        cond = self.expression()
        self.expect_op(")")
        self.end_statement()
        return A.DoWhile(line, body, cond)

    def _expr_list(self, closer: str) -> list:
        items = []
        if self.at_op(closer):
            return items
        items.append(self.expression())
        while self.at_op(","):
            self.advance()
            items.append(self.expression())
        return items

    def stmt_for(self):
        line = self.advance().line
        self.expect_op("(")
        init = self._expr_list(";")
        self.expect_op(";")
        cond = self._expr_list(";")
        self.expect_op(";")
        step = self._expr_list(")")
        self.expect_op(")")
        return A.For(line, init, cond, step, self.block_or_statement())

    def stmt_foreach(self):
        line = self.advance().line
        self.expect_op("(")
        subject = self.expression()
        self.expect_kw("as")
        if self.at_op("&"):
            self.error("foreach by reference is not supported")
        first = self.postfix_expr()
        key = None
        value = first
        if self.at_op("=>"):
            self.advance()
            key = first
            if self.at_op("&"):
                self.error("foreach by reference is not supported")
            value = self.postfix_expr()
        self.expect_op(")")
        return A.Foreach(line, subject, key, value, self.block_or_statement())

    def _params(self) -> list:
        self.expect_op("(")
        params = []
        while not self.at_op(")"):
            if self.tok.kind == "ID":  # type hint, ignored
                self.advance()
            byref = False
            if self.at_op("&"):
                self.advance()
                byref = True
            name = self.expect_var()
            default = None
            if self.at_op("="):
                self.advance()
                default = self.expression()
            params.append(A.Param(name, default, byref))
            if not self.at_op(")"):
                self.expect_op(",")
        self.advance()
        seen_default = False
        for p in params:
            if p.default is not None:
                seen_default = True
        return params

    def stmt_function(self, access="public", static=False, cls_name=None):
        line = self.advance().line
        if self.at_op("&"):
            self.advance()
        name = self.expect_id()
        params = self._params()
        if self.at_op(":"):  # return type, ignored
            self.advance()
            self.expect_id()
        body = self.block()
        return A.FunctionDecl(line, name, params, body, self.file, access, static, cls_name)

    def stmt_abstract(self):
        self.advance()
        return self.statement()

    stmt_final = stmt_abstract

    def stmt_class(self):
        line = self.advance().line
        name = self.expect_id()
        parent = None
        if self.at_kw("extends"):
            self.advance()
            parent = self.expect_id()
        if self.at_kw("implements"):
            self.error("interfaces are not supported")
        self.expect_op("{")
        props, consts, methods = [], [], []
        while not self.at_op("}"):
            if self.tok.kind == "EOF":
                self.error("unexpected end of file in class body")
            access, static = "public", False
            while self.at_kw(*_MODIFIERS):
                kw = self.advance().value.lower()
                if kw in ("public", "private", "protected"):
                    access = kw
                elif kw == "static":
                    static = True
            if self.at_kw("function"):
                methods.append(self.stmt_function(access, static, name))
            elif self.at_kw("const"):
                self.advance()
                while True:
                    cname = self.expect_id()
                    self.expect_op("=")
                    consts.append((cname, self.expression()))
                    if not self.at_op(","):
                        break
                    self.advance()
                self.end_statement()
            elif self.tok.kind == "VAR":
                while True:
                    pname = self.expect_var()
                    default = None
                    if self.at_op("="):
                        self.advance()
                        default = self.expression()
                    props.append(A.PropDecl(pname, default, access, static))
                    if not self.at_op(","):
                        break
                    self.advance()
                self.end_statement()
            else:
                self.error(f"unexpected {self._describe(self.tok)} in class body")
        self.advance()
        return A.ClassDecl(line, name, parent, props, consts, methods)

    def stmt_return(self):
        line = self.advance().line
        value = None
        if not self.at_op(";") and self.tok.kind != "EOF":
            value = self.expression()
        self.end_statement()
        return A.Return(line, value)

    def stmt_global(self):
        line = self.advance().line
        names = [self.expect_var()]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_var())
        self.end_statement()
        return A.Global(line, names)

    def stmt_static(self):
        if self.peek().kind != "VAR":
            expr = self.expression()
            self.end_statement()
            return A.ExprStmt(expr.line, expr)
        line = self.advance().line
        items = []
        while True:
            name = self.expect_var()
            default = None
            if self.at_op("="):
                self.advance()
                default = self.expression()
            items.append((name, default))
            if not self.at_op(","):
                break
            self.advance()
        self.end_statement()
        return A.StaticVars(line, items)

    def stmt_try(self):
        line = self.advance().line
        body = self.block()
        catches = []
        final = None
        while self.at_kw("catch"):
            self.advance()
            self.expect_op("(")
            classes = [self.expect_id()]
            while self.at_op("|"):
                self.advance()
                classes.append(self.expect_id())
            var = self.expect_var() if self.tok.kind == "VAR" else None
            self.expect_op(")")
            catches.append(A.Catch(classes, var, self.block()))
        if self.at_kw("finally"):
            self.advance()
            final = self.block()
        if not catches and final is None:
            self.error("cannot use try without catch or finally")
        return A.Try(line, body, catches, final)

    def stmt_throw(self):
        line = self.advance().line
        value = self.expression()
        self.end_statement()
        return A.Throw(line, value)

    def _loop_depth(self) -> int:
        if self.tok.kind == "INT":
            return self.advance().value
        return 1

    def stmt_break(self):
        line = self.advance().line
        depth = self._loop_depth()
        self.end_statement()
        return A.Break(line, depth)

    def stmt_continue(self):
        line = self.advance().line
        depth = self._loop_depth()
        self.end_statement()
        return A.Continue(line, depth)

    def stmt_unset(self):
        line = self.advance().line
        self.expect_op("(")
        targets = self._expr_list(")")
        self.expect_op(")")
        self.end_statement()
        return A.Unset(line, targets)

    def stmt_namespace(self):
        self.error("namespaces are not supported")

    stmt_trait = stmt_interface = stmt_namespace

    # -- expressions -------------------------------------------------------------

    def expression(self) -> A.Node:
        return self.assignment()

    def assignment(self) -> A.Node:
        left = self.ternary()
        t = self.tok
        if t.kind == "OP" and t.value in _ASSIGN_OPS:
            if not isinstance(left, (A.Var, A.Index, A.Prop, A.StaticProp)):
                self.error("cannot assign to this expression")
            self.advance()
            if t.value == "=":
                if self.at_op("&"):
                    self.advance()
                    source = self.ternary()
                    if isinstance(source, A.New):
                        return A.Assign(t.line, left, source)
                    if not isinstance(source, (A.Var, A.Prop, A.Index, A.StaticProp)):
                        self.error("cannot take a reference to this expression")
                    return A.AssignRef(t.line, left, source)
                return A.Assign(t.line, left, self.assignment())
            return A.CompoundAssign(t.line, t.value[:-1], left, self.assignment())
        return left

    def ternary(self) -> A.Node:
        cond = self.binary(0)
        while self.at_op("?", "??"):
            t = self.advance()
            if t.value == "??":
                right = self.binary(0)
                cond = A.Ternary(t.line, A.Isset(t.line, [cond]), cond, right)
                continue
            if self.at_op(":"):
                self.advance()
                cond = A.Ternary(t.line, cond, None, self.assignment())
            else:
                then = self.assignment()
                self.expect_op(":")
                cond = A.Ternary(t.line, cond, then, self.assignment())
        return cond

    def binary(self, level: int) -> A.Node:
        if level == len(_BINARY_LEVELS):
            return self.unary()
        ops = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while self.tok.kind == "OP" and self.tok.value in ops:
            t = self.advance()
            right = self.binary(level + 1)
            if t.value in ("&&", "||"):
                left = A.Logical(t.line, t.value, left, right)
            else:
                op = "!=" if t.value == "<>" else t.value
                left = A.BinOp(t.line, op, left, right)
        if level == 0:
            while self.at_kw("and", "or"):
                t = self.advance()
                right = self.binary(0)
                left = A.Logical(t.line, "&&" if t.value.lower() == "and" else "||", left, right)
        return left

    def unary(self) -> A.Node:
        t = self.tok
        if t.kind == "OP":
            if t.value in ("!", "~"):
                self.advance()
                return A.Unary(t.line, t.value, self.unary())
            if t.value in ("-", "+"):
                self.advance()
                operand = self.unary()
                if isinstance(operand, A.Lit) and type(operand.value) in (int, float) and t.value == "-":
                    return A.Lit(t.line, -operand.value)
                return A.Unary(t.line, t.value, operand)
            if t.value == "@":
                self.advance()
                return self.unary()
            if t.value in ("++", "--"):
                self.advance()
                target = self.unary()
                return A.IncDec(t.line, t.value, True, target)
            if t.value == "(" and self.peek().kind == "ID" and self.peek().value.lower() in _CASTS \
                    and self.peek(2).kind == "OP" and self.peek(2).value == ")":
                self.advance()
                kind = _CASTS[self.advance().value.lower()]
                self.advance()
                return A.Cast(t.line, kind, self.unary())
        if t.kind == "ID":
            kw = t.value.lower()
            if kw == "new":
                return self.postfix_ops(self.new_expr())
            if kw == "print":
                self.advance()
                return A.Print(t.line, self.assignment())
        expr = self.postfix_expr()
        if self.at_kw("instanceof"):
            line = self.advance().line
            expr = A.InstanceOf(line, expr, self.expect_id())
        return expr

    def new_expr(self) -> A.Node:
        line = self.advance().line
        if self.tok.kind == "ID":
            cls = self.advance().value
        elif self.tok.kind == "VAR":
            cls = A.Var(self.tok.line, self.advance().value)
        else:
            self.error("expected class name after 'new'")
        args = self.call_args() if self.at_op("(") else []
        return A.New(line, cls, args)

    def call_args(self) -> list:
        self.expect_op("(")
        args = self._expr_list(")")
        self.expect_op(")")
        return args

    def postfix_expr(self) -> A.Node:
        return self.postfix_ops(self.primary())

    def postfix_ops(self, expr: A.Node) -> A.Node:
        while True:
            t = self.tok
            if t.kind != "OP":
                return expr
            if t.value == "[":
                self.advance()
                if self.at_op("]"):
                    self.advance()
                    expr = A.Index(t.line, expr, None)
                else:
                    key = self.expression()
                    self.expect_op("]")
                    expr = A.Index(t.line, expr, key)
            elif t.value == "->":
                self.advance()
                name = self.expect_id()
                if self.at_op("("):
                    expr = A.MethodCall(t.line, expr, name, self.call_args())
                else:
                    expr = A.Prop(t.line, expr, name)
            elif t.value == "(":
                expr = A.CallExpr(t.line, expr, self.call_args())
            elif t.value in ("++", "--"):
                self.advance()
                expr = A.IncDec(t.line, t.value, False, expr)
            else:
                return expr

    def primary(self) -> A.Node:
        t = self.tok
        line = t.line
        if t.kind == "VAR":
            self.advance()
            return A.Var(line, t.value)
        if t.kind in ("INT", "FLOAT", "STR"):
            self.advance()
            return A.Lit(line, t.value)
        if t.kind == "ISTR":
            self.advance()
            parts = [p if isinstance(p, str) else A.Var(line, p[1]) for p in t.value]
            return A.Interp(line, parts)
        if t.kind == "OP":
            if t.value == "(":
                self.advance()
                e = self.expression()
                self.expect_op(")")
                return e
            if t.value == "[":
                self.advance()
                return A.ArrayLit(line, self.array_items("]"))
            if t.value == "&":
                self.error("unexpected '&'")
        if t.kind == "ID":
            kw = t.value.lower()
            if kw == "true":
                self.advance()
                return A.Lit(line, True)
            if kw == "false":
                self.advance()
                return A.Lit(line, False)
            if kw == "null":
                self.advance()
                return A.Lit(line, None)
            if kw == "array" and self.peek().kind == "OP" and self.peek().value == "(":
                self.advance()
                self.advance()
                return A.ArrayLit(line, self.array_items(")"))
            if kw == "isset":
                self.advance()
                return A.Isset(line, self.call_args())
            if kw == "empty":
                self.advance()
                args = self.call_args()
                if len(args) != 1:
                    self.error("empty() takes exactly one argument")
                return A.Empty(line, args[0])
            if kw in ("exit", "die"):
                self.advance()
                args = self.call_args() if self.at_op("(") else []
                return A.Call(line, "exit", args)
            if kw == "function":
                self.error("closures are not supported")
            if kw == "new":
                return self.new_expr()
            name = self.advance().value
            if self.at_op("::"):
                self.advance()
                if self.tok.kind == "VAR":
                    return A.StaticProp(line, name, self.advance().value)
                member = self.expect_id()
                if self.at_op("("):
                    return A.StaticCall(line, name, member, self.call_args())
                return A.ClassConst(line, name, member)
            if self.at_op("("):
                return A.Call(line, name, self.call_args())
            return A.ConstRef(line, name)
        self.error(f"syntax error, unexpected {self._describe(t)}")

    def array_items(self, closer: str) -> list:
        items = []
        while not self.at_op(closer):
            if self.at_op("&"):
                self.error("by-reference array elements are not supported")
            first = self.expression()
            if self.at_op("=>"):
                self.advance()
                items.append(A.ArrayItem(first, self.expression()))
            else:
                items.append(A.ArrayItem(None, first))
            if not self.at_op(closer):
                self.expect_op(",")
        self.advance()
        return items


def parse_php(src: str, file: str = "<php>", line_offset: int = 0) -> A.Program:
    """Parse PHP source; every node's line is already shifted by ``line_offset``."""
    tokens = tokenize(src, file, line_offset)
    return PhpParser(tokens, file).parse_program()
