from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, php, run
from duolang import boxexport
from duolang.context import Context
from duolang.exc import (AdaptedPhpException, AdaptedPyException, ScriptError, TraceEntry,
                         adapt_exception, exc_class_name, php_exc, py_exc, render_trace)
from duolang.values import Lang

# Hand-computed trace for tests/fixtures/traceback.php: h (line 2, a Python box
# opened on line 1) <- g (PHP line 5) <- k (Python box opened on line 7,
# raw line 2) <- top (line 12) <- main (line 14).
TRACEBACK_ORACLE = [
    TraceEntry(0, "traceback.php", 2, "h", Lang.PY),
    TraceEntry(1, "traceback.php", 5, "g", Lang.PHP),
    TraceEntry(2, "traceback.php", 9, "k", Lang.PY),
    TraceEntry(3, "traceback.php", 12, "top", Lang.PHP),
    TraceEntry(4, "traceback.php", 14, "{main}", Lang.PHP),
]


def uncaught_trace(src, file="t.php", lang=None):
    ctx = Context()
    try:
        ctx.exec_source(src, file, lang)
    except ScriptError as e:
        return e
    raise AssertionError("program did not raise")


class TestAdaptException:
    def test_python_to_php_and_back(self):
        zde = py_exc("ZeroDivisionError", "division by zero")
        adapted = adapt_exception(zde, Lang.PHP)
        assert isinstance(adapted, AdaptedPyException)
        assert exc_class_name(adapted) == "PyException"
        assert adapt_exception(adapted, Lang.PY) is zde

    def test_php_to_python_and_back(self):
        e = php_exc("Exception", "boom")
        adapted = adapt_exception(e, Lang.PY)
        assert isinstance(adapted, AdaptedPhpException)
        assert exc_class_name(adapted) == "PHPException"
        assert adapt_exception(adapted, Lang.PHP) is e

    def test_never_nests(self):
        zde = py_exc("ZeroDivisionError", "x")
        once = adapt_exception(zde, Lang.PHP)
        assert adapt_exception(once, Lang.PHP) is once
        assert type(adapt_exception(adapt_exception(once, Lang.PY), Lang.PHP)) \
            is AdaptedPyException

    def test_message_carries_original_class(self):
        out = php("<%py\ndef f():\n    return 1 / 0\n%>\n"
                  "try { f(); } catch (PyException $e) { echo $e->getMessage(); }")
        assert out == "ZeroDivisionError: division by zero"

    def test_python_catches_php_exception(self):
        out = php("function t() { throw new Exception('bad'); }\n"
                  "<%py\ndef f():\n    try:\n        t()\n    except PHPException as e:\n"
                  "        return str(e)\n%>\necho f();")
        assert out == "Exception: bad"

    def test_round_trip_restores_python_class(self):
        out = (FIXTURES / "exceptions.out").read_text()
        assert "Python caught ZeroDivisionError again" in out


class TestTrace:
    def test_three_deep_chain_matches_oracle(self):
        e = uncaught_trace((FIXTURES / "traceback.php").read_text(), "traceback.php")
        assert e.trace == TRACEBACK_ORACLE

    def test_same_trace_after_export(self):
        src = (FIXTURES / "traceback.php").read_text()
        exported = boxexport.export_source(src, "traceback.php")
        assert not boxexport.has_boxes(exported)
        assert uncaught_trace(exported, "traceback.php", Lang.PHP).trace == TRACEBACK_ORACLE

    def test_zero_offset_keeps_raw_lines(self):
        e = uncaught_trace('$f = compile_py_func("def f():\\n  x = 1\\n  return x / 0\\n");\n$f();')
        assert (e.trace[0].line, e.trace[0].function) == (3, "f")

    def test_rendered_format(self):
        status, _, err = run((FIXTURES / "traceback.php").read_text(), "traceback.php")
        assert status == 1
        assert err == (FIXTURES / "traceback.err").read_text()
        assert err.splitlines()[1] == "#0 traceback.php:2 in h [py]"
        assert render_trace(TRACEBACK_ORACLE) == "".join(
            line + "\n" for line in err.splitlines()[1:])

    def test_indices_are_consecutive(self):
        e = uncaught_trace((FIXTURES / "traceback.php").read_text(), "traceback.php")
        assert [t.index for t in e.trace] == list(range(len(e.trace)))

    @given(st.integers(1, 12), st.integers(1, 5))
    @settings(max_examples=40, deadline=None)
    def test_box_offset_property(self, o, k):
        # a Python box opened on line o, raising at its raw line k, reports o + k
        body = ["def boom():"] + ["    x = 1"] * (k - 2) + ["    return 1 / 0"]
        if k == 1:
            body = ["def boom(): return 1 / 0"]
        src = "\n".join(["// pad"] * (o - 1) + ["<%py"] + body + ["%>", "boom();"]) + "\n"
        e = uncaught_trace(src)
        assert e.trace[0].line == o + k
        assert e.trace[0].function == "boom"
