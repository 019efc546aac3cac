"""The bridge's conversion laws as hypothesis properties.

Shared by the unit tests and the acceptance suite; ``CASES`` counts how
many generated cases actually ran.
"""
from collections import Counter

from hypothesis import given, settings, strategies as st

from duolang.bridge import PhpArrayAsPyDict, as_list, to_php, to_py
from duolang.context import Context
from duolang.exc import ScriptError, exc_class_name
from duolang.values import PhpArray, PhpRef, cow_write, identical

CASES = Counter()

_ctx = Context()
_ctx.exec_php("class K { public $a = 1; } function fn1($x) { return $x; }\n"
              "$o1 = new K(); $o2 = new K();")
_g = _ctx.php_globals
PHP_HEAP = [_g.variables["o1"], _g.variables["o2"], _g.lookup_function("fn1"),
            _g.lookup_class("K")]

scalars = st.one_of(st.none(), st.booleans(), st.integers(-2**63, 2**63 - 1),
                    st.floats(allow_nan=False), st.text(max_size=6))
non_array_php = st.one_of(scalars, st.sampled_from(PHP_HEAP))
keys = st.one_of(st.integers(-3, 12), st.text(alphabet="abc", min_size=1, max_size=2))
php_arrays = st.one_of(
    st.lists(scalars, max_size=6).map(PhpArray.from_list),
    st.dictionaries(keys, scalars, max_size=6).map(
        lambda d: PhpArray({(int(k) if isinstance(k, int) else k): v for k, v in d.items()})),
)
py_lists = st.lists(st.one_of(scalars, st.lists(st.integers(), max_size=2)), max_size=6)

EXAMPLES = 300


@settings(max_examples=EXAMPLES, deadline=None)
@given(non_array_php)
def law_non_array_round_trip(v):
    CASES["round_trip"] += 1
    assert identical(to_php(to_py(v)), v)


@settings(max_examples=EXAMPLES, deadline=None)
@given(php_arrays)
def law_array_is_dict_adapter(a):
    CASES["dict_adapter"] += 1
    adapted = to_py(a)
    assert type(adapted) is PhpArrayAsPyDict
    assert type(to_py(PhpRef(a))) is PhpArrayAsPyDict


@settings(max_examples=EXAMPLES, deadline=None)
@given(st.lists(scalars, max_size=6), st.text(alphabet="xyz", min_size=1, max_size=3),
       st.sampled_from(["len", "get", "set", "append", "iter"]))
def law_list_view_not_list_like(items, key, op):
    CASES["not_list_like"] += 1
    ref = PhpRef(PhpArray.from_list(items))
    view = as_list(to_py(ref))
    assert view.py_len() == len(items)
    ref.value = cow_write(ref.value, key, 1, True)
    actions = {
        "len": view.py_len,
        "get": lambda: view.py_getitem(0),
        "set": lambda: view.py_setitem(0, 5),
        "append": lambda: view.py_append(5),
        "iter": lambda: list(view.py_iter()),
    }
    try:
        actions[op]()
    except ScriptError as e:
        assert exc_class_name(e.value) == "NotListLike"
    else:
        raise AssertionError("list view accepted a non list-like array")


@settings(max_examples=EXAMPLES, deadline=None)
@given(py_lists)
def law_python_list_round_trip(lst):
    CASES["list_round_trip"] += 1
    special = to_py(to_php(lst))
    assert type(special).__name__ == "PyListAsSpecialPyDict"
    assert as_list(special) is lst


LAWS = (law_non_array_round_trip, law_array_is_dict_adapter, law_list_view_not_list_like,
        law_python_list_round_trip)
