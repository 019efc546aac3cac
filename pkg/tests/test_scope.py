import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, php, run
from duolang.context import Context
from duolang.scope import Kind, PhpGlobals, StickyCache, sticky_resolve
from duolang.values import PhpClass


class TestFig4:
    def test_prints_0_1_2_0_1(self):
        out = php((FIXTURES / "scoping.php").read_text(), "scoping.php")
        values = [int(line.split("=>")[1]) for line in out.splitlines() if "=>" in line]
        assert values == [0, 1, 2, 0, 1]


class TestLocateFunction:
    def test_python_local_beats_php_global(self):
        src = """
function f() { return "php global"; }
<%py
def outer():
    def f():
        return "python local"
    return <%php= f() %>
%>
echo outer();
"""
        assert php(src) == "python local"

    def test_php_global_before_python_global(self):
        ctx = Context()
        ctx.exec_py("def strlen(s):\n    return -1\n")
        ctx.exec_source("<%py\ndef f():\n    return <%php= strlen('abc') %>\n%>\necho f();",
                        "t.php")
        assert ctx.output() == "3"

    def test_python_global_is_last_resort(self):
        src = "<%py\ndef only_py():\n    return 'from python'\n%>\n" \
              "echo <%py= compile_php_func('function w() { return only_py(); }')() %>;"
        assert php(src) == "from python"

    def test_undefined(self):
        status, _, err = run("<%py\ndef f():\n    return <%php= g() %>\n%>\nf();")
        assert status == 1
        assert "Call to undefined function g()" in err


class TestLookupGlobalPy:
    def test_python_builtin_before_php(self):
        # range from Python is Python's range even though PHP has one
        assert php("<%py\ndef f():\n    return len(range(3))\n%>\necho f();") == "3"

    def test_php_function_found(self):
        assert php("<%py\ndef f():\n    print_r([7])\n%>\nf();") == \
            "Array\n(\n    [0] => 7\n)\n"

    def test_php_constant(self):
        assert php('define("LIMIT", 12);\n<%py\ndef f():\n    return LIMIT + 1\n%>\necho f();') \
            == "13"

    def test_name_error(self):
        status, _, err = run("<%py\ndef f():\n    return nowhere\n%>\nf();")
        assert status == 1
        assert "NameError" in err

    def test_dynamic_addition_visible(self):
        src = """
<%py
def before():
    try:
        return later_fn()
    except NameError:
        return "missing"
%>
echo before(), " ";
compile_py_func_global("def later_fn():\\n  return 'found'\\n");
<%py
def after():
    return later_fn()
%>
echo after();
"""
        assert php(src) == "missing found"


class TestLookupPhpVariable:
    def test_reads_python_local(self):
        assert php("<%py\ndef f():\n    x = 3\n    return <%php= $x + 1 %>\n%>\necho f();") == "4"

    def test_local_shadowing(self):
        src = "<%py\ndef f():\n    x = 3\n    <%php\n$x = 9;\necho $x;\n    %>\n" \
              "    return x\n%>\necho f();"
        assert php(src) == "93"

    def test_unbound_read(self):
        status, _, err = run("echo $nothing;")
        assert status == 1
        assert "Undefined variable $nothing" in err

    def test_globals_need_global_keyword(self):
        status, _, err = run("$g = 1; function f() { return $g; } f();")
        assert status == 1


class TestSticky:
    def _globals(self):
        g = PhpGlobals()
        cls = PhpClass.__new__(PhpClass)
        g.classes["thing"] = cls
        return g, cls

    def test_class_then_function_same_scope(self):
        g, cls = self._globals()
        cache = StickyCache()
        assert sticky_resolve(cache, "Thing", g) == (Kind.CLASS, cls)
        g.functions["thing"] = "fn"
        assert sticky_resolve(cache, "Thing", g) == (Kind.CLASS, cls)
        assert sticky_resolve(StickyCache(), "Thing", g) == (Kind.FUNCTION, "fn")

    def test_notfound_is_sticky(self):
        g = PhpGlobals()
        cache = StickyCache()
        assert sticky_resolve(cache, "ghost", g)[0] is Kind.NOTFOUND
        assert cache.kind("ghost") is Kind.NOTFOUND
        g.functions["ghost"] = "fn"
        assert sticky_resolve(cache, "ghost", g)[0] is Kind.NOTFOUND
        assert sticky_resolve(StickyCache(), "ghost", g)[0] is Kind.FUNCTION

    def test_program_level_scenario(self):
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

    @given(st.lists(st.sampled_from(["function", "class", "constant", "none"]), min_size=1,
                    max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_kind_never_changes_once_recorded(self, additions):
        g = PhpGlobals()
        cache = StickyCache()
        first = None
        for what in additions:
            if what == "function":
                g.functions.setdefault("n", "f")
            elif what == "class":
                g.classes.setdefault("n", "c")
            elif what == "constant":
                g.constants.setdefault("n", 1)
            kind, _ = sticky_resolve(cache, "n", g)
            first = first or kind
            assert cache.kind("n") is first
