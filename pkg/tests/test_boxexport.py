import dataclasses
import textwrap

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, composed_fixtures, run
from duolang import boxexport
from duolang.boxexport import (EXPRESSION, FUNCTION, METHOD, STATEMENT, export_source,
                               parse_boxes, quote)
from duolang.context import Context
from duolang.exc import ScriptSyntaxError
from duolang.miniphp import ast as PA
from duolang.miniphp.parser import parse_php
from duolang.minipy import ast as YA
from duolang.minipy.parser import parse_py
from duolang.values import Lang


def kinds(src, host=Lang.PHP):
    return [(b.lang, b.kind, b.line) for b in parse_boxes(src, "t", host).walk()][1:]


class TestParse:
    def test_function_box(self):
        assert kinds("<%py\ndef f():\n    return 1\n%>\n") == [(Lang.PY, FUNCTION, 1)]

    def test_method_box(self):
        src = "class C {\n<%py\ndef m(self):\n    return 1\n%>\n}\n"
        tree = parse_boxes(src, "t")
        (box,) = tree.children()
        assert (box.kind, box.owner, box.line) == (METHOD, "C", 2)

    def test_statement_and_expression_boxes(self):
        src = "<%py\nprint(1)\nprint(2)\n%>\n$x = <%py= 1 + 1 %>;\n"
        assert kinds(src) == [(Lang.PY, STATEMENT, 1), (Lang.PY, EXPRESSION, 5)]

    def test_php_function_box_in_python(self):
        src = "<%php\nfunction f() { return 1; }\n%>\n"
        assert kinds(src, Lang.PY) == [(Lang.PHP, FUNCTION, 1)]

    def test_nesting(self):
        src = (FIXTURES / "nested.php").read_text()
        assert [(lang, kind) for lang, kind, _ in kinds(src)] == [
            (Lang.PY, FUNCTION), (Lang.PHP, EXPRESSION), (Lang.PY, EXPRESSION),
            (Lang.PY, EXPRESSION)]

    @pytest.mark.parametrize("src,line", [
        ("echo 1;\n%>\n", 2),
        ("<%py\ndef f():\n    pass\n", 1),
        ("<%py\nx = 1 %>\n", 2),
        ("$a = <%py= 1\n+ 2 %>;", 1),
        ("<%py\n<%py\n%>\n%>\n", 2),
        ("<%py def f(): pass\n%>\n", 1),
        ("class C {\n<%py\nx = 1\n%>\n}\n", 2),
    ])
    def test_errors_carry_lines(self, src, line):
        with pytest.raises(ScriptSyntaxError) as e:
            parse_boxes(src, "t")
        assert e.value.line == line

    def test_markers_inside_php_strings_are_still_markers(self):
        assert boxexport.has_boxes('echo "<%py= 1 %>";')


class TestExport:
    def test_passthrough_without_boxes(self):
        src = "<?php\n$a = 1;\necho $a . \"%\";\n"
        assert export_source(src, "t") == src

    def test_function_box_shape(self):
        out = export_source("<%py\ndef f():\n    return 1\n%>\n", "t.php")
        assert out == ('compile_py_func_global("def f():\\n    return 1\\n", "t.php", 1);'
                       "\n\n\n\n")

    def test_expression_box_uses_lambda(self):
        out = export_source("$l = <%py= [x for x in range(n)] %>;", "t.php")
        assert out == ('$l = call_py_func(compile_py_func("f = lambda: [x for x in range(n)]", '
                       '"t.php", 0), array(), array());')

    def test_method_box_wraps_class(self):
        src = (FIXTURES / "rng.php").read_text()
        out = export_source(src, "rng.php")
        assert "{ class RNG {" in out
        assert '} compile_py_meth("RNG", "def gen(self, amount):\\n' in out
        assert out.count("\n") == src.count("\n")

    def test_subclasses_of_delayed_classes_are_wrapped(self):
        out = export_source((FIXTURES / "delayed.php").read_text(), "delayed.php")
        assert "{ class Shape {" in out and "{ class Square extends Shape {" in out

    def test_php_in_python_shapes(self):
        src = "<%php\nfunction f() { return 1; }\n%>\nx = <%php= 2 %>\n"
        out = export_source(src, "t.py", Lang.PY)
        assert out.startswith('f = compile_php_func("function f() { return 1; }\\n", "t.py", 1)')
        assert 'x = compile_php_func("function f() { return 2; }", "t.py", 3)()' in out

    def test_line_count_preserved(self):
        for path in composed_fixtures():
            src = path.read_text()
            host = Lang.PY if path.suffix == ".py" else Lang.PHP
            assert export_source(src, path.name, host).count("\n") == src.count("\n")


class TestQuote:
    @given(st.text(alphabet='ab"\\$\n\t {}\'', max_size=20))
    @settings(max_examples=100, deadline=None)
    def test_php_literal_round_trip(self, s):
        ctx = Context()
        ctx.exec_php(f"$x = {quote(s, Lang.PHP)};")
        assert ctx.php_globals.variables["x"] == s

    @given(st.text(alphabet='ab"\\$\n {}\'', max_size=20))
    @settings(max_examples=100, deadline=None)
    def test_python_literal_round_trip(self, s):
        ctx = Context()
        ctx.exec_py(f"x = {quote(s, Lang.PY)}")
        assert ctx.py_globals["x"] == s


# -- recovering the box structure from exported source ----------------------------

_COMPILE = {"compile_py_func", "compile_py_func_global", "compile_py_meth", "compile_php_func"}


def _children(node):
    if dataclasses.is_dataclass(node):
        for f in dataclasses.fields(node):
            yield from _flatten(getattr(node, f.name))


def _flatten(v):
    if dataclasses.is_dataclass(v):
        yield v
    elif isinstance(v, (list, tuple)):
        for item in v:
            yield from _flatten(item)


def _walk(node, parent=None, seen=None):
    # a node can hang off more than one field, so visit each once
    seen = set() if seen is None else seen
    if id(node) in seen:
        return
    seen.add(id(node))
    yield node, parent
    for child in _children(node):
        yield from _walk(child, node, seen)


def _call_name(node):
    if isinstance(node, PA.Call):
        return node.name
    if isinstance(node, YA.Call) and isinstance(node.func, YA.Name):
        return node.func.id
    return None


def recover(src, host):
    """Pre-order (lang, kind, line) of the boxes encoded in exported source."""
    tree = parse_php(src, "t", 0) if host is Lang.PHP else parse_py(textwrap.dedent(src), "t", 0)
    found = []
    for node, parent in _walk(tree):
        name = _call_name(node)
        if name not in _COMPILE:
            continue
        args = node.args
        text_arg, line_arg = (args[1], args[3]) if name == "compile_py_meth" else (args[0],
                                                                                   args[2])
        text, line = text_arg.value, line_arg.value
        lang = Lang.PHP if name == "compile_php_func" else Lang.PY
        if name == "compile_py_meth":
            kind = METHOD
        elif name == "compile_py_func_global":
            kind = FUNCTION
        elif text.startswith("f = lambda: "):
            kind, text, line = EXPRESSION, text[len("f = lambda: "):], line + 1
        elif text.startswith(("def __box__", "function __box__")):
            kind, line = STATEMENT, line + 1
        elif lang is Lang.PHP and isinstance(parent, YA.Call) and parent.func is node:
            kind, line = EXPRESSION, line + 1
        else:
            kind = FUNCTION
        found.append((lang, kind, line))
        found.extend(recover(text, lang))
    return found


@pytest.mark.parametrize("path", composed_fixtures(), ids=lambda p: p.name)
def test_exported_source_encodes_the_same_box_tree(path):
    host = Lang.PY if path.suffix == ".py" else Lang.PHP
    src = path.read_text()
    exported = export_source(src, path.name, host)
    assert sorted(recover(exported, host), key=str) == sorted(kinds(src, host), key=str)


@pytest.mark.parametrize("path", composed_fixtures(), ids=lambda p: p.name)
def test_export_equivalence(path):
    host = Lang.PY if path.suffix == ".py" else Lang.PHP
    src = path.read_text()
    boxed = run(src, path.name, host)
    exported = run(export_source(src, path.name, host), path.name, host)
    assert boxed == exported
    assert boxed[1] == path.with_suffix(".out").read_text()
