"""AST node classes for MiniPHP.  Every node carries its (offset-adjusted) line."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(slots=True, eq=False)
class Node:
    line: int


# -- expressions -------------------------------------------------------------

@dataclass(slots=True, eq=False)
class Lit(Node):
    value: object


@dataclass(slots=True, eq=False)
class Interp(Node):
    parts: list  # str | Var


@dataclass(slots=True, eq=False)
class ArrayItem:
    key: Node | None
    value: Node


@dataclass(slots=True, eq=False)
class ArrayLit(Node):
    items: list[ArrayItem]


@dataclass(slots=True, eq=False)
class Var(Node):
    name: str


@dataclass(slots=True, eq=False)
class Index(Node):
    base: Node
    key: Node | None  # None means append (``$a[]``)


@dataclass(slots=True, eq=False)
class Prop(Node):
    obj: Node
    name: str


@dataclass(slots=True, eq=False)
class StaticProp(Node):
    cls: str
    name: str


@dataclass(slots=True, eq=False)
class ClassConst(Node):
    cls: str
    name: str


@dataclass(slots=True, eq=False)
class ConstRef(Node):
    name: str


@dataclass(slots=True, eq=False)
class Call(Node):
    name: str
    args: list[Node]


@dataclass(slots=True, eq=False)
class CallExpr(Node):
    func: Node
    args: list[Node]


@dataclass(slots=True, eq=False)
class MethodCall(Node):
    obj: Node
    name: str
    args: list[Node]


@dataclass(slots=True, eq=False)
class StaticCall(Node):
    cls: str
    name: str
    args: list[Node]


@dataclass(slots=True, eq=False)
class New(Node):
    cls: str | Node
    args: list[Node]


@dataclass(slots=True, eq=False)
class Assign(Node):
    target: Node
    value: Node


@dataclass(slots=True, eq=False)
class AssignRef(Node):
    target: Node
    source: Node


@dataclass(slots=True, eq=False)
class CompoundAssign(Node):
    op: str
    target: Node
    value: Node


@dataclass(slots=True, eq=False)
class IncDec(Node):
    op: str  # "++" | "--"
    prefix: bool
    target: Node


@dataclass(slots=True, eq=False)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(slots=True, eq=False)
class Logical(Node):
    op: str  # "&&" | "||"
    left: Node
    right: Node


@dataclass(slots=True, eq=False)
class Unary(Node):
    op: str  # "!" | "-" | "+"
    operand: Node


@dataclass(slots=True, eq=False)
class Cast(Node):
    type: str
    operand: Node


@dataclass(slots=True, eq=False)
class Ternary(Node):
    cond: Node
    then: Node | None
    otherwise: Node


@dataclass(slots=True, eq=False)
class Isset(Node):
    targets: list[Node]


@dataclass(slots=True, eq=False)
class Empty(Node):
    target: Node


@dataclass(slots=True, eq=False)
class InstanceOf(Node):
    operand: Node
    cls: str


@dataclass(slots=True, eq=False)
class Print(Node):
    value: Node


# -- statements --------------------------------------------------------------

@dataclass(slots=True, eq=False)
class Echo(Node):
    values: list[Node]


@dataclass(slots=True, eq=False)
class ExprStmt(Node):
    expr: Node


@dataclass(slots=True, eq=False)
class If(Node):
    cond: Node
    then: list[Node]
    otherwise: list[Node] | None


@dataclass(slots=True, eq=False)
class While(Node):
    cond: Node
    body: list[Node]


@dataclass(slots=True, eq=False)
class DoWhile(Node):
    body: list[Node]
    cond: Node


@dataclass(slots=True, eq=False)
class For(Node):
    init: list[Node]
    cond: list[Node]
    step: list[Node]
    body: list[Node]


@dataclass(slots=True, eq=False)
class Foreach(Node):
    subject: Node
    key: Node | None
    value: Node
    body: list[Node]


@dataclass(slots=True, eq=False)
class Param:
    name: str
    default: Node | None
    byref: bool


@dataclass(slots=True, eq=False)
class FunctionDecl(Node):
    name: str
    params: list[Param]
    body: list[Node]
    file: str
    access: str = "public"
    static: bool = False
    cls_name: str | None = None


@dataclass(slots=True, eq=False)
class PropDecl:
    name: str
    default: Node | None
    access: str
    static: bool


@dataclass(slots=True, eq=False)
class ClassDecl(Node):
    name: str
    parent: str | None
    props: list[PropDecl]
    consts: list[tuple[str, Node]]
    methods: list[FunctionDecl]


@dataclass(slots=True, eq=False)
class Return(Node):
    value: Node | None


@dataclass(slots=True, eq=False)
class Global(Node):
    names: list[str]


@dataclass(slots=True, eq=False)
class StaticVars(Node):
    items: list[tuple[str, Node | None]]


@dataclass(slots=True, eq=False)
class Block(Node):
    """A bare ``{ ... }`` block; classes declared inside compile at run-time."""
    body: list[Node]


@dataclass(slots=True, eq=False)
class Catch:
    classes: list[str]
    var: str | None
    body: list[Node]


@dataclass(slots=True, eq=False)
class Try(Node):
    body: list[Node]
    catches: list[Catch]
    final: list[Node] | None


@dataclass(slots=True, eq=False)
class Throw(Node):
    value: Node


@dataclass(slots=True, eq=False)
class Break(Node):
    depth: int = 1


@dataclass(slots=True, eq=False)
class Continue(Node):
    depth: int = 1


@dataclass(slots=True, eq=False)
class Unset(Node):
    targets: list[Node]


@dataclass(slots=True, eq=False)
class Program:
    file: str
    body: list[Node]
    functions: list[FunctionDecl] = field(default_factory=list)
    classes: list[ClassDecl] = field(default_factory=list)

    @property
    def delayed_blocks(self) -> list[Block]:
        return [s for s in self.body if isinstance(s, Block)]
