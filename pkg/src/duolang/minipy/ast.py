"""AST node classes for MiniPy."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(slots=True, eq=False)
class Node:
    line: int


# -- expressions -------------------------------------------------------------

@dataclass(slots=True, eq=False)
class Const(Node):
    value: object


@dataclass(slots=True, eq=False)
class Name(Node):
    id: str


@dataclass(slots=True, eq=False)
class ListExpr(Node):
    items: list[Node]


@dataclass(slots=True, eq=False)
class TupleExpr(Node):
    items: list[Node]


@dataclass(slots=True, eq=False)
class DictExpr(Node):
    keys: list[Node]
    values: list[Node]


@dataclass(slots=True, eq=False)
class ListComp(Node):
    elt: Node
    target: Node
    iter: Node
    conds: list[Node]
    code: "PyCode | None" = None


@dataclass(slots=True, eq=False)
class Attribute(Node):
    obj: Node
    name: str


@dataclass(slots=True, eq=False)
class Subscript(Node):
    obj: Node
    index: Node


@dataclass(slots=True, eq=False)
class Call(Node):
    func: Node
    args: list[Node]
    kwargs: list[tuple[str, Node]]


@dataclass(slots=True, eq=False)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(slots=True, eq=False)
class UnaryOp(Node):
    op: str  # "-" | "+" | "not" | "~"
    operand: Node


@dataclass(slots=True, eq=False)
class BoolOp(Node):
    op: str  # "and" | "or"
    values: list[Node]


@dataclass(slots=True, eq=False)
class Compare(Node):
    left: Node
    ops: list[str]
    comparators: list[Node]


@dataclass(slots=True, eq=False)
class IfExp(Node):
    cond: Node
    then: Node
    otherwise: Node


@dataclass(slots=True, eq=False)
class Lambda(Node):
    code: "PyCode"


# -- statements --------------------------------------------------------------

@dataclass(slots=True, eq=False)
class ExprStmt(Node):
    value: Node


@dataclass(slots=True, eq=False)
class Assign(Node):
    targets: list[Node]
    value: Node


@dataclass(slots=True, eq=False)
class AugAssign(Node):
    op: str
    target: Node
    value: Node


@dataclass(slots=True, eq=False)
class If(Node):
    cond: Node
    body: list[Node]
    orelse: list[Node]


@dataclass(slots=True, eq=False)
class While(Node):
    cond: Node
    body: list[Node]
    orelse: list[Node]


@dataclass(slots=True, eq=False)
class For(Node):
    target: Node
    iter: Node
    body: list[Node]
    orelse: list[Node]


@dataclass(slots=True, eq=False)
class Return(Node):
    value: Node | None


@dataclass(slots=True, eq=False)
class Pass(Node):
    pass


@dataclass(slots=True, eq=False)
class Break(Node):
    pass


@dataclass(slots=True, eq=False)
class Continue(Node):
    pass


@dataclass(slots=True, eq=False)
class Raise(Node):
    exc: Node | None


@dataclass(slots=True, eq=False)
class Handler:
    line: int
    types: list[Node]  # empty for a bare ``except:``
    name: str | None
    body: list[Node]


@dataclass(slots=True, eq=False)
class Try(Node):
    body: list[Node]
    handlers: list[Handler]
    orelse: list[Node]
    final: list[Node]


@dataclass(slots=True, eq=False)
class Global(Node):
    names: list[str]


@dataclass(slots=True, eq=False)
class Import(Node):
    names: list[tuple[str, str]]  # (module, bound name)


@dataclass(slots=True, eq=False)
class Delete(Node):
    targets: list[Node]


@dataclass(slots=True, eq=False)
class Assert(Node):
    test: Node
    msg: Node | None


@dataclass(slots=True, eq=False)
class FunctionDef(Node):
    code: "PyCode"
    decorators: list[Node]


@dataclass(slots=True, eq=False)
class ClassDef(Node):
    name: str
    bases: list[Node]
    body: list[Node]
    code: "PyCode | None" = None


# -- code objects ------------------------------------------------------------

@dataclass(slots=True, eq=False)
class Param:
    name: str
    default: Node | None


@dataclass(slots=True, eq=False)
class PyCode:
    """A compiled function body; shared by every function value made from it."""
    name: str
    params: list[Param]
    body: list[Node]
    file: str
    line: int
    is_lambda: bool = False
    local_names: frozenset = frozenset()
    global_names: frozenset = frozenset()
    sticky: object = None
    meta: object = None
    kind: str = "function"  # function | lambda | module | class | comp

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def n_defaults(self) -> int:
        return sum(1 for p in self.params if p.default is not None)


@dataclass(slots=True, eq=False)
class Module:
    file: str
    body: list[Node]
    local_names: frozenset = field(default_factory=frozenset)
    code: "PyCode | None" = None
