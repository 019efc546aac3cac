import pytest
from hypothesis import given, settings, strategies as st

from conftest import php, run
from duolang.exc import ScriptSyntaxError
from duolang.miniphp import ast as A
from duolang.miniphp.parser import parse_php
from duolang.values import Lang


class TestParse:
    def test_assignment(self):
        prog = parse_php("$i=1;", "t", 0)
        assert len(prog.body) == 1

    def test_reference_binding(self):
        prog = parse_php("$j=&$i;", "t", 0)
        assert type(prog.body[0]).__name__ == "ExprStmt"
        assert "Ref" in type(prog.body[0].expr).__name__

    def test_syntax_error_line_is_offset(self):
        with pytest.raises(ScriptSyntaxError) as e:
            parse_php("$a[", "t", 7)
        assert e.value.line == 8
        assert e.value.file == "t"

    def test_tags_are_optional(self):
        assert php("<?php echo 1; ?>") == php("echo 1;") == "1"

    def test_nodes_carry_offset_lines(self):
        prog = parse_php("\n\n$x = 1;", "t", 10)
        assert prog.body[0].line == 13


class TestEval:
    def test_array_walk_prints_in_order(self):
        src = "$a = array(3, 4, 5);\nforeach ($a as $v) {\n  echo $v . \" \";\n}\n"
        assert php(src) == "3 4 5 "

    def test_php_swap(self):
        src = """
function php_swap(&$x, &$y) {
  $tmp = $y;
  $y = $x;
  $x = $tmp;
}
$a = 10; $b = 20;
php_swap($a, $b);
echo "$a $b\\n";
"""
        assert php(src) == "20 10\n"

    def test_strict_identity(self):
        assert php('echo 1 === 1.0 ? "y" : "n";') == "n"

    def test_loose_equality_same_type(self):
        assert php('echo 1 == 1 ? "y" : "n"; echo 1 == 2 ? "y" : "n";') == "yn"

    def test_by_value_array_unchanged(self):
        src = "function f($a) { $a[] = 9; return count($a); }\n$x = array(1);\n" \
              "echo f($x), count($x);"
        assert php(src) == "21"

    def test_default_param(self):
        assert php("function g($x=5){return $x;} echo g();") == "5"

    def test_reference_assignment_shares(self):
        assert php("$i = 1; $j =& $i; $j = 5; echo $i;") == "5"

    def test_foreach_key_value(self):
        assert php('foreach (array("a" => 1, "b" => 2) as $k => $v) { echo "$k=$v,"; }') \
            == "a=1,b=2,"

    def test_global(self):
        assert php("$x = 1; function f() { global $x; $x = 7; } f(); echo $x;") == "7"

    def test_define(self):
        assert php('define("N", 4); echo N * 2;') == "8"

    def test_heredoc_interpolates(self):
        assert php('$n = "w";\n$s = <<<EOD\nhello $n\nEOD;\necho $s;') == "hello w"

    def test_print_r_format(self):
        out = php('print_r(array(1, array("k" => 2)));')
        assert out == ("Array\n(\n    [0] => 1\n    [1] => Array\n        (\n"
                       "            [k] => 2\n        )\n\n)\n")

    def test_class_and_methods(self):
        src = """
class C {
  public $v;
  function __construct($v) { $this->v = $v; }
  function get() { return $this->v; }
  static function make() { return new C(4); }
}
$c = C::make();
echo $c->get(), $c->v;
"""
        assert php(src) == "44"

    def test_private_method_outside_fails_inside_works(self):
        src = """
class C {
  private function p() { return "p"; }
  function q() { return $this->p(); }
}
$c = new C();
echo $c->q();
$c->p();
"""
        status, out, err = run(src)
        assert out == "p"
        assert status == 1
        assert "private method" in err

    def test_delayed_block_registers_class_at_run_time(self):
        src = "echo class_exists(\"D\") ? 1 : 0;\n{ class D {} }\necho class_exists(\"D\") ? 1 : 0;"
        assert php(src) == "01"

    def test_undefined_function(self):
        status, _, err = run("nope();")
        assert status == 1
        assert "Call to undefined function nope()" in err

    def test_by_ref_requires_variable(self):
        status, _, err = run("function f(&$x) {} f(1);")
        assert status == 1

    def test_string_arithmetic_rejected(self):
        status, _, _ = run('echo "3" + 4;')
        assert status == 1

    def test_concat_stringifies_numbers(self):
        assert php('echo "a" . 1 . 2.5;') == "a12.5"

    def test_modulo_and_division(self):
        assert php("echo 7 % 3, ' ', 7 / 2;") == "1 3.5"

    def test_integer_overflow_promotes_to_float(self):
        assert php("echo is_float(9223372036854775807 + 1) ? 'f' : 'i';") == "f"


class TestProperties:
    @given(st.lists(st.integers(-1000, 1000), max_size=12))
    @settings(max_examples=60, deadline=None)
    def test_foreach_visits_in_insertion_order(self, xs):
        src = "$a = array(" + ", ".join(map(str, xs)) + ");\n" \
              "foreach ($a as $v) { echo $v, ','; }"
        assert php(src) == "".join(f"{x}," for x in xs)

    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_by_ref_promotion(self, a, b):
        src = f"""
function swap(&$x, &$y) {{ $t = $x; $x = $y; $y = $t; }}
$a = {a}; $b = {b};
$r =& $a;
swap($a, $b);
echo $a, ' ', $b, ' ', $r;
"""
        assert php(src) == f"{b} {a} {b}"
