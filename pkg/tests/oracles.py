"""Randomised cross-language scenarios checked against independent oracles."""
import random
import string

from duolang.context import Context
from duolang.values import PhpArray, PhpRef

MOD = 1000003


# ---------------------------------------------------------------------------
# kwarg bridge: call_py_func(f, a, k) versus a direct MiniPy call

def make_kwarg_case(rng: random.Random):
    """A random pure function plus a random positional/keyword split of its args.

    Returns (python source, positional values, keyword dict).
    """
    nparams = rng.randint(1, 6)
    names = [f"p{i}" for i in range(nparams)]
    ndefaults = rng.randint(0, nparams)
    params = []
    for i, name in enumerate(names):
        if i >= nparams - ndefaults:
            params.append(f"{name}={rng.randint(-50, 50)}")
        else:
            params.append(name)
    weights = [rng.randint(1, 97) for _ in names]
    body = ["    acc = 7"]
    for name, w in zip(names, weights):
        body.append(f"    acc = (acc * 31 + {name} * {w}) % {MOD}")
    body.append("    return acc")
    src = f"def f({', '.join(params)}):\n" + "\n".join(body) + "\n"

    mandatory = nparams - ndefaults
    npos = rng.randint(0, nparams)
    positional = [rng.randint(-1000, 1000) for _ in range(npos)]
    keyword = {}
    for i in range(npos, nparams):
        if i < mandatory or rng.random() < 0.5:
            keyword[names[i]] = rng.randint(-1000, 1000)
    items = list(keyword.items())
    rng.shuffle(items)
    return src, positional, dict(items)


def _php_literal(v) -> str:
    if isinstance(v, str):
        return '"' + v + '"'
    return str(v)


def run_kwarg_case(src, positional, keyword):
    """Returns (via call_py_func, direct MiniPy call, native Python oracle)."""
    a = "array(" + ", ".join(_php_literal(v) for v in positional) + ")"
    k = "array(" + ", ".join(f'"{n}" => {_php_literal(v)}' for n, v in keyword.items()) + ")"
    pyargs = ", ".join([repr(v) for v in positional] +
                       [f"{n}={v!r}" for n, v in keyword.items()])
    direct_src = f"def g():\n    return f({pyargs})\n"
    program = (f"$f = compile_py_func({_quote(src)});\n"
               f"echo call_py_func($f, {a}, {k}), \"\\n\";\n"
               f"$direct = compile_py_func({_quote(direct_src)});\n"
               "echo $direct(), \"\\n\";\n")
    ctx = Context()
    ctx.exec_py(src, "<kwarg>")
    status = ctx.run(program, "<kwarg>")
    assert status == 0, ctx.err.getvalue()
    via_bridge, direct = ctx.output().split()
    native = {}
    exec(src, native)
    oracle = native["f"](*positional, **keyword)
    return int(via_bridge), int(direct), oracle


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("$", "\\$") \
        .replace("\n", "\\n") + '"'


# ---------------------------------------------------------------------------
# mutation visibility: PHP array passed to Python, which appends one element

def make_mutation_case(rng: random.Random):
    """PHP array literal source, its length, and whether it is list-like."""
    n = rng.randint(0, 8)
    list_like = rng.random() < 0.5
    if list_like:
        items = [str(rng.randint(-99, 99)) for _ in range(n)]
    else:
        keys = rng.sample(string.ascii_lowercase, n) if n else []
        items = [f'"{k}" => {rng.randint(-99, 99)}' for k in keys]
        if not items:
            items = ['"z" => 0']
    return "array(" + ", ".join(items) + ")", len(items), list_like


def run_mutation_case(literal, list_like, value):
    """Returns (count before, count after, the caller's slot after the call)."""
    if list_like:
        append = f"    a.as_list().append({value})\n"
    else:
        append = f"    a['added'] = {value}\n"
    program = ("<%py\ndef grow(a):\n" + append + "%>\n"
               f"$arr = {literal};\n"
               "echo count($arr), \"\\n\";\n"
               "grow($arr);\n"
               "echo count($arr), \"\\n\";\n")
    ctx = Context()
    status = ctx.run(program, "<mutation>")
    assert status == 0, ctx.err.getvalue()
    before, after = (int(x) for x in ctx.output().split())
    slot = ctx.php_globals.variables["arr"]
    return before, after, slot


def slot_is_ref_to_array(slot) -> bool:
    return type(slot) is PhpRef and type(slot.value) is PhpArray
