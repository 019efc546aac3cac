import pytest

from conftest import php, py, run
from duolang import embed
from duolang.bridge import PhpCallableInPy, PyCallableInPhp
from duolang.exc import ScriptError
from duolang.values import Lang

DEF = "def f(x):\n    return x * 2\n"


class TestCompilePyFunc:
    def test_returns_callable_adapter(self, ctx):
        fn = embed.compile_py_func(ctx, DEF)
        assert fn.code.name == "f"
        assert php('$f = compile_py_func("def f(x):\\n  return x * 2\\n");\necho $f(21);') == "42"

    def test_cache_shares_code_but_not_values(self, ctx):
        a = embed.compile_py_func(ctx, DEF, "x.php", 3)
        b = embed.compile_py_func(ctx, DEF, "x.php", 3)
        assert a is not b
        assert a.code is b.code
        assert ctx.cache.hits == 1 and ctx.cache.misses == 1

    def test_location_is_part_of_the_key(self, ctx):
        a = embed.compile_py_func(ctx, DEF, "x.php", 3)
        b = embed.compile_py_func(ctx, DEF, "x.php", 9)
        assert a.code is not b.code

    def test_two_defs_rejected(self):
        status, _, err = run('compile_py_func("def a():\\n  pass\\ndef b():\\n  pass\\n");')
        assert status == 1
        assert "exactly one function" in err

    def test_syntax_error_reports_adjusted_line(self):
        status, _, err = run('compile_py_func("def a(:\\n  pass\\n", "box.php", 10);')
        assert status == 1
        assert "box.php on line 11" in err

    def test_lambda_form(self):
        assert php('echo call_py_func(compile_py_func("f = lambda: 6 * 7"), array(), array());') \
            == "42"

    def test_captures_calling_php_frame(self):
        src = """
function make() {
  $secret = "s3";
  return compile_py_func("def peek():\\n  return secret\\n");
}
$peek = make();
echo $peek();
"""
        assert php(src) == "s3"


class TestCompilePyFuncGlobal:
    def test_plain_call(self):
        assert php('compile_py_func_global("def twice(x):\\n  return x * 2\\n");\n'
                   'echo twice(4);') == "8"

    def test_registered_in_namespace(self, ctx):
        embed.compile_py_func_global(ctx, DEF)
        assert isinstance(ctx.php_globals.lookup_function("f"), PyCallableInPhp)

    def test_duplicate(self, ctx):
        embed.compile_py_func_global(ctx, DEF)
        with pytest.raises(ScriptError):
            embed.compile_py_func_global(ctx, DEF)


class TestCompilePyMeth:
    METH = 'compile_py_meth("C", "def hello(self):\\n  return \\"hi\\"\\n");'

    def test_method_on_delayed_class(self):
        assert php("{\nclass C {}\n" + self.METH + "\n}\n$c = new C();\necho $c->hello();") == "hi"

    def test_class_outside_block(self):
        status, _, err = run("class C {}\n" + self.METH)
        assert status == 1
        assert "{ ... } block" in err

    def test_sealed_after_block(self):
        status, _, err = run("{\nclass C {}\n}\n" + self.METH)
        assert status == 1
        assert "sealed" in err

    def test_unknown_class(self):
        status, _, err = run(self.METH)
        assert status == 1
        assert "not found" in err

    def test_private_method_from_outside(self):
        src = ('{\nclass C {}\ncompile_py_meth("C", "@php_decor(access=\\"private\\")\\n'
               'def p(self):\\n  return 1\\n");\n}\n$c = new C();\n$c->p();')
        status, _, err = run(src)
        assert status == 1
        assert "private" in err


class TestCompilePhpFunc:
    def test_inc(self, ctx):
        inc = embed.compile_php_func(ctx, "function inc($x) { return $x + 1; }")
        assert isinstance(inc, PhpCallableInPy)
        assert py('inc = compile_php_func("function inc($x) { return $x + 1; }")\n'
                  'print(inc(1))') == "2\n"

    def test_by_ref_matches_all_php_program(self):
        swap = "function sw(&$a, &$b) { $t = $a; $a = $b; $b = $t; }"
        composed = py(f'sw = compile_php_func("{swap}")\n'
                      "x, y = PHPRef(1), PHPRef(2)\nsw(x, y)\nprint(x.deref(), y.deref())")
        # oracle: the same swap written entirely in PHP
        oracle = php(swap + '\n$x = 1; $y = 2; sw($x, $y); echo "$x $y\\n";')
        assert composed == oracle == "2 1\n"

    def test_sees_calling_python_frame(self):
        src = 'def outer():\n    n = 5\n    f = compile_php_func("function f() { return $n * 2; }")\n' \
              '    return f()\nprint(outer())'
        assert py(src) == "10\n"

    def test_syntax_error(self):
        status, _, err = run('compile_php_func("function f( {", "box.py", 4)', "t.py", Lang.PY)
        assert status == 1
        assert "box.py on line 5" in err

    def test_must_be_one_function(self):
        status, _, err = run('compile_php_func("echo 1;")', "t.py", Lang.PY)
        assert status == 1
