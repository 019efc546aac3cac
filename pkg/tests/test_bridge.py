import pytest
from hypothesis import given, settings, strategies as st

import laws
from conftest import php, run
from duolang.bridge import (PhpArrayAsPyDict, PhpArrayAsPyList, PhpGenericInPy,
                            PyDictAsPhpArray, PyListAsPhpArray, as_list, promote_attr_to_ref,
                            to_php, to_py)
from duolang.exc import ScriptError, exc_class_name
from duolang.values import PhpArray, PhpRef


@pytest.mark.parametrize("law", laws.LAWS, ids=lambda f: f.__name__)
def test_conversion_law(law):
    law()


class TestToPy:
    def test_primitive(self):
        assert to_py(7) == 7

    def test_array_becomes_dict_adapter_sharing_a_ref(self):
        d = to_py(PhpArray.from_list([3, 4, 5]))
        assert isinstance(d, PhpArrayAsPyDict)
        assert isinstance(d.target, PhpRef)

    def test_object_becomes_generic(self):
        o = laws.PHP_HEAP[0]
        assert isinstance(to_py(o), PhpGenericInPy)
        assert to_php(to_py(o)) is o


class TestToPhp:
    def test_list(self):
        assert isinstance(to_php([1]), PyListAsPhpArray)

    def test_dict(self):
        assert isinstance(to_php({"a": 1}), PyDictAsPhpArray)

    def test_bool_key_rejected(self):
        with pytest.raises(ScriptError):
            to_php({True: 1})

    def test_print_r_of_python_list(self):
        out = php("$l = <%py= [0, 1, 2, 3, 4] %>;\nprint_r($l);")
        assert out == "Array\n(\n" + "".join(f"    [{i}] => {i}\n" for i in range(5)) + ")\n"


class TestAsList:
    def test_list_view_len(self):
        view = as_list(to_py(PhpArray.from_list([3, 4, 5])))
        assert isinstance(view, PhpArrayAsPyList)
        assert view.py_len() == 3
        assert view.py_getitem(1) == 4

    def test_no_as_list_on_list_view(self):
        view = as_list(to_py(PhpArray.from_list([1])))
        with pytest.raises(ScriptError):
            as_list(view)

    def test_native_dict_has_no_as_list(self):
        with pytest.raises(ScriptError) as e:
            as_list({})
        assert exc_class_name(e.value.value) == "AttributeError"

    def test_special_dict_returns_original(self):
        lst = [1, 2]
        assert as_list(to_py(to_php(lst))) is lst

    def test_append_through_view_visible_to_php_holder(self):
        ref = PhpRef(PhpArray.from_list([1, 2]))
        view = as_list(to_py(ref))
        view.py_append(3)
        # oracle: inspect the PhpRef directly
        assert list(ref.value.entries.values()) == [1, 2, 3]

    def test_index_error(self):
        view = as_list(to_py(PhpArray.from_list([1])))
        with pytest.raises(ScriptError) as e:
            view.py_getitem(5)
        assert exc_class_name(e.value.value) == "IndexError"

    def test_bob_key_from_php(self):
        src = """
$a = array(1, 2, 3);
function add_bob() { global $a; $a["bob"] = 4; }
<%py
def check():
    view = a.as_list()
    first = view[0]
    add_bob()
    try:
        return view[0]
    except NotListLike as e:
        return "NotListLike after reading " + str(first)
%>
echo check();
"""
        assert php(src) == "NotListLike after reading 1"


class TestPromoteAttr:
    def _obj(self, attrs):
        o = laws.PHP_HEAP[0]
        o.attrs.update(attrs)
        return o

    def test_array_promoted(self):
        o = self._obj({"elms": PhpArray.from_list([1])})
        ref = promote_attr_to_ref(o, "elms")
        assert o.attrs["elms"] is ref

    def test_idempotent(self):
        o = self._obj({"elms": PhpArray.from_list([1])})
        assert promote_attr_to_ref(o, "elms") is promote_attr_to_ref(o, "elms")

    def test_int_not_promoted(self):
        o = self._obj({"n": 3})
        assert promote_attr_to_ref(o, "n") is None
        assert o.attrs["n"] == 3

    def test_missing_attribute(self):
        with pytest.raises(ScriptError):
            promote_attr_to_ref(self._obj({}), "nothing_here")

    def test_python_append_visible_to_parent_object(self):
        src = """
class Bag { public $elms; function __construct() { $this->elms = array(1); } }
$b = new Bag();
<%py
b.elms.as_list().append(2)
%>
echo count($b->elms);
"""
        assert php(src) == "2"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), max_size=6))
def test_dict_adapter_iterates_keys_in_insertion_order(xs):
    a = PhpArray()
    for i, x in enumerate(xs):
        a.set_inplace(f"k{i}", x)
    d = to_py(a)
    assert list(d.py_iter()) == [f"k{i}" for i in range(len(xs))]


def test_python_dict_foreach_and_append():
    src = """
$d = <%py= {"a": 1, 5: 2} %>;
foreach ($d as $k => $v) { echo "$k=$v "; }
$d[] = 3;
echo count($d), " ";
foreach ($d as $k => $v) { echo $k, ","; }
"""
    assert php(src) == "a=1 5=2 3 a,5,6,"
