import pytest
from hypothesis import given, settings, strategies as st

from conftest import py, run
from duolang.exc import ScriptSyntaxError
from duolang.minipy.parser import parse_py
from duolang.values import Lang

FMTURI = '''
def fmturi(host, path, scheme="http", frag="", query=""):
    uri = scheme + "://" + host + path
    if query:
        uri += "?" + query
    if frag:
        uri += "#" + frag
    return uri
'''


def fmturi_reference(host, path, scheme="http", frag="", query=""):
    """Hand-written native version of the reconstructed fmturi body."""
    uri = f"{scheme}://{host}{path}"
    if query:
        uri = f"{uri}?{query}"
    if frag:
        uri = f"{uri}#{frag}"
    return uri


def _code(src):
    return parse_py(src, "t", 0).body[0].code


class TestParse:
    def test_arity_and_defaults(self):
        code = _code("def f(a, b=1):\n  return a+b")
        assert [p.name for p in code.params] == ["a", "b"]
        assert [p.default is not None for p in code.params] == [False, True]

    def test_fmturi_signature(self):
        code = _code(FMTURI.strip())
        mandatory = [p.name for p in code.params if p.default is None]
        keyword = [p.name for p in code.params if p.default is not None]
        assert mandatory == ["host", "path"]
        assert keyword == ["scheme", "frag", "query"]

    def test_syntax_error_offset(self):
        with pytest.raises(ScriptSyntaxError) as e:
            parse_py("x = (\n", "t", 4)
        assert e.value.line >= 5

    def test_default_after_mandatory(self):
        with pytest.raises(ScriptSyntaxError):
            parse_py("def f(a=1, b):\n  pass", "t", 0)

    def test_tabs_rejected(self):
        with pytest.raises(ScriptSyntaxError):
            parse_py("if 1:\n\tx = 1\n", "t", 0)


class TestEval:
    def test_list_comprehension(self):
        assert py("print([x for x in range(3)])") == "[0, 1, 2]\n"

    def test_comprehension_with_filter(self):
        assert py("print([x * x for x in range(6) if x % 2 == 0])") == "[0, 4, 16]\n"

    def test_fmturi_keyword(self):
        out = py(FMTURI + 'print(fmturi("google.com", "/", frag="q=duo"))')
        assert out == "http://google.com/#q=duo\n"

    def test_py_swap_with_refs(self):
        src = """
@php_decor(refs=(0, 1))
def py_swap(a, b):
    tmp = a.deref()
    a.store(b.deref())
    b.store(tmp)
x, y = PHPRef(10), PHPRef(20)
py_swap(x, y)
print(x.deref(), y.deref())
"""
        assert py(src) == "20 10\n"

    def test_refs_marked_arg_must_be_phpref(self):
        src = "@php_decor(refs=(0,))\ndef f(a):\n    return a\nf(3)\n"
        status, _, err = run(src, "t.py", Lang.PY)
        assert status == 1
        assert "PHPRef" in err

    @pytest.mark.parametrize("call,msg", [
        ("f(x=1)", "unexpected keyword"),
        ("f()", "missing"),
        ("f(1, a=2)", "multiple values"),
    ])
    def test_binding_errors(self, call, msg):
        status, _, err = run(f"def f(a):\n    return a\n{call}\n", "t.py", Lang.PY)
        assert status == 1
        assert msg in err

    def test_classes(self):
        src = """
class P:
    def __init__(self, x):
        self.x = x
    def double(self):
        return self.x * 2
print(P(21).double())
"""
        assert py(src) == "42\n"

    def test_try_except_by_name(self):
        src = """
try:
    1 // 0
except ZeroDivisionError:
    print("zde")
try:
    raise ValueError("v")
except Exception as e:
    print("base", e)
"""
        assert py(src) == "zde\nbase v\n"

    def test_floor_and_true_division(self):
        assert py("print(7 // 2, -7 // 2, 7 / 2)") == "3 -4 3.5\n"

    def test_print_joins_with_spaces(self):
        assert py('print("a", 1, None, True)') == "a 1 None True\n"

    def test_closures_read_but_do_not_share_writes(self):
        src = """
def outer():
    x = 1
    def inner():
        return x + 1
    return inner()
print(outer())
"""
        assert py(src) == "2\n"


class TestProperties:
    @given(st.integers(-50, 50), st.integers(-50, 50))
    @settings(max_examples=50, deadline=None)
    def test_keyword_order_independent(self, a, b):
        src = f"def f(a, b):\n    return a * 3 - b\nprint(f(a={a}, b={b}), f(b={b}, a={a}))"
        out = py(src).split()
        assert out[0] == out[1] == str(a * 3 - b)

    @given(st.integers(0, 40))
    @settings(max_examples=30, deadline=None)
    def test_range_yields_n_values(self, n):
        assert py(f"print(len(range({n})), sum(range({n})))") == f"{n} {n * (n - 1) // 2}\n"

    @given(st.integers(-100, 100), st.integers(-100, 100))
    @settings(max_examples=30, deadline=None)
    def test_php_decor_is_inert_for_python_callers(self, a, b):
        body = "def swap(p, q):\n    t = p.deref()\n    p.store(q.deref())\n    q.store(t)\n"
        tail = f"x, y = PHPRef({a}), PHPRef({b})\nswap(x, y)\nprint(x.deref(), y.deref())\n"
        plain = py(body + tail)
        decorated = py("@php_decor(refs=(0, 1))\n" + body + tail)
        assert plain == decorated == f"{b} {a}\n"

    @given(st.text(alphabet="abc./", min_size=1, max_size=6),
           st.text(alphabet="/xyz", max_size=4),
           st.sampled_from(["", "q=1", "a"]), st.sampled_from(["", "top"]))
    @settings(max_examples=40, deadline=None)
    def test_fmturi_matches_reference(self, host, path, query, frag):
        out = py(FMTURI + f"print(fmturi({host!r}, {path!r}, query={query!r}, frag={frag!r}))")
        assert out == fmturi_reference(host, path, query=query, frag=frag) + "\n"
