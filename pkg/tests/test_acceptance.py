"""Acceptance suite: one test per headline criterion, each reporting one line.

Every test prints ``ACCEPT PASS <id> <title>`` or ``ACCEPT FAIL ...`` straight
to the terminal, so the lines show up even with output capture on.  Run
``pytest tests/test_acceptance.py -v`` to see just these.
"""
import contextlib
import io
import random
import sys
import time

import pytest

import laws
import oracles
from conftest import FIXTURES, composed_fixtures, php, run
from duolang import boxexport
from duolang.bench import BASELINE, VARIANTS, register_benchmarks
from duolang.cli import main as cli_main
from duolang.context import Context
from duolang.exc import ScriptError, TraceEntry
from duolang.scope import Kind, PhpGlobals, StickyCache, sticky_resolve
from duolang.values import Lang, PhpClass

from test_exc import TRACEBACK_ORACLE


@pytest.fixture
def report(request, capsys):
    """Yields a list to append failure notes to; prints the verdict line."""
    notes = []
    title = request.node.function.__doc__.strip().splitlines()[0]
    yield notes
    call = getattr(request.node, "rep_call", None)
    failed = call is None or call.failed or notes
    with capsys.disabled():
        verdict = "FAIL" if failed else "PASS"
        extra = f"  ({'; '.join(notes)})" if notes else ""
        sys.stdout.write(f"\nACCEPT {verdict} {request.node.name[5:]}: {title}{extra}\n")
    assert not notes, notes


@contextlib.contextmanager
def within(seconds, notes, what="runtime"):
    t0 = time.perf_counter()
    yield
    took = time.perf_counter() - t0
    if took >= seconds:
        notes.append(f"{what} {took:.2f}s >= {seconds}s")


def test_c01_swap(report):
    """php_swap, py_swap and the PHPRef-driven swap all print 20 10."""
    with within(1.0, report):
        out = php((FIXTURES / "swap.php").read_text(), "swap.php")
    assert out.splitlines() == ["20 10"] * 3


def test_c02_scoping(report):
    """the nested-box scoping program prints 0, 1, 2, 0, 1."""
    with within(1.0, report):
        out = php((FIXTURES / "scoping.php").read_text(), "scoping.php")
    values = [int(line.split("=>")[1]) for line in out.splitlines() if "=>" in line]
    assert values == [0, 1, 2, 0, 1]


def test_c03_conversion_laws(report):
    """conversion laws hold over at least 1000 generated cases."""
    laws.CASES.clear()
    with within(30.0, report):
        for law in laws.LAWS:
            law()
    total = sum(laws.CASES.values())
    assert total >= 1000, laws.CASES
    assert set(laws.CASES) == {"round_trip", "dict_adapter", "not_list_like",
                               "list_round_trip"}


def test_c04_mutation_visibility(report):
    """a Python append is visible to the PHP caller, whose slot becomes a ref."""
    rng = random.Random(2024)
    for _ in range(20):
        literal, n, list_like = oracles.make_mutation_case(rng)
        before, after, slot = oracles.run_mutation_case(literal, list_like, rng.randint(0, 9))
        assert (before, after) == (n, n + 1), literal
        assert oracles.slot_is_ref_to_array(slot), literal


def test_c05_kwarg_oracle(report):
    """call_py_func(f, a, k) agrees with a direct call on 200 random pairs."""
    rng = random.Random(7)
    for _ in range(200):
        case = oracles.make_kwarg_case(rng)
        via_bridge, direct, native = oracles.run_kwarg_case(*case)
        assert via_bridge == direct == native, case


def test_c06_sticky(report):
    """sticky lookup keeps the class in one scope, finds the function in a fresh one."""
    g = PhpGlobals()
    cls = PhpClass.__new__(PhpClass)
    g.classes["thing"] = cls
    cache = StickyCache()
    assert sticky_resolve(cache, "Thing", g) == (Kind.CLASS, cls)
    g.functions["thing"] = "fn"
    assert sticky_resolve(cache, "Thing", g) == (Kind.CLASS, cls)
    assert sticky_resolve(StickyCache(), "Thing", g) == (Kind.FUNCTION, "fn")

    cache = StickyCache()
    assert sticky_resolve(cache, "ghost", g)[0] is Kind.NOTFOUND
    g.functions["ghost"] = "fn"
    assert sticky_resolve(cache, "ghost", g)[0] is Kind.NOTFOUND
    assert sticky_resolve(StickyCache(), "ghost", g)[0] is Kind.FUNCTION

    src = """
class Thing { function kind() { return "class"; } }
<%py
def probe():
    x = Thing()
    if x == "function":
        return x
    return x.kind()
%>
echo probe(), " ";
compile_py_func_global("def Thing():\\n  return 'function'\\n");
echo probe(), " ";
<%py
def fresh():
    x = Thing()
    if x == "function":
        return x
    return x.kind()
%>
echo fresh();
"""
    assert php(src) == "class class function"


def _uncaught(src, file):
    try:
        Context().exec_source(src, file)
    except ScriptError as e:
        return e.trace
    raise AssertionError("program did not raise")


def test_c07_trace_offsets(report):
    """a box at offset o raising on raw line 1 reports 1+o; the 3-deep trace matches."""
    for o in range(1, 9):
        src = "\n".join(["// pad"] * (o - 1) + ["<%py", "def boom(): return 1 / 0", "%>",
                                                 "boom();"]) + "\n"
        assert _uncaught(src, "off.php")[0] == TraceEntry(0, "off.php", 1 + o, "boom", Lang.PY)
    assert _uncaught((FIXTURES / "traceback.php").read_text(), "traceback.php") \
        == TRACEBACK_ORACLE


def _depth(box):
    return 1 + max((_depth(c) for c in box.children()), default=0)


def test_c08_exporter_equivalence(report):
    """every composed fixture gives byte-identical output before and after export."""
    fixtures = composed_fixtures()
    assert len(fixtures) >= 6
    depths = []
    for path in fixtures:
        host = Lang.PY if path.suffix == ".py" else Lang.PHP
        src = path.read_text()
        depths.append(_depth(boxexport.parse_boxes(src, path.name, host)))
        exported = boxexport.export_source(src, path.name, host)
        assert not boxexport.has_boxes(exported)
        assert run(src, path.name, host) == run(exported, path.name, host), path.name
    # the file itself counts as a level, so 3 means a box inside a box
    assert max(depths) >= 3


def test_c09_benchmarks(report):
    """bench --iters 2 --procs 1 runs every variant within 60s in the expected shape."""
    out = io.StringIO()
    with within(60.0, report), contextlib.redirect_stdout(out), \
            contextlib.redirect_stderr(io.StringIO()):
        code = cli_main(["bench", "--iters", "2", "--procs", "1"])
    assert code == 0
    lines = out.getvalue().splitlines()
    assert lines[0].split()[1:1 + len(VARIANTS)] == list(VARIANTS)
    col = 1 + VARIANTS.index(BASELINE)
    rows = {line.split()[0]: line.split() for line in lines[1:-1]}
    specs = register_benchmarks()
    assert set(rows) == {s.name for s in specs} | {"geomean"}
    for spec in specs:
        cells = rows[spec.name]
        assert cells[col] == "1.000"
        for i, v in enumerate(VARIANTS):
            assert (cells[1 + i] != "-") == (v in spec.variants), (spec.name, v)
    assert rows["geomean"][col] == "1.000"


def test_c10_exception_adaptation(report):
    """ZeroDivisionError is caught as PyException in PHP and unwraps in Python."""
    src = """
<%py
def divide():
    return 1 // 0
%>
<%py
def again():
    try:
        <%php
try { divide(); }
catch (PyException $e) { echo "php caught ", get_class($e), "\\n"; throw $e; }
        %>
    except ZeroDivisionError as e:
        return "python caught " + type(e).__name__
%>
echo again(), "\\n";
"""
    assert php(src) == "php caught PyException\npython caught ZeroDivisionError\n"
