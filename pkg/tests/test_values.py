import pytest
from hypothesis import given, strategies as st

from duolang.bridge import to_php, to_py
from duolang.values import (Lang, PhpArray, PhpObject, PhpRef, cow_write, deref, identical,
                            normalize_key, truthy)

keys = st.one_of(st.integers(-5, 20), st.text(alphabet="abc", min_size=1, max_size=3))
scalars = st.one_of(st.none(), st.booleans(), st.integers(-2**63, 2**63 - 1),
                    st.floats(allow_nan=False), st.text(max_size=5))


def arrays(max_size=8):
    return st.lists(st.tuples(keys, scalars), max_size=max_size).map(_build)


def _build(pairs):
    a = PhpArray()
    for k, v in pairs:
        a.set_inplace(normalize_key(k), v)
    return a


class TestCowWrite:
    def test_copy_leaves_original(self):
        a = PhpArray.from_list([3, 4, 5])
        b = cow_write(a, 3, 6, False)
        assert list(b.entries.values()) == [3, 4, 5, 6]
        assert list(a.entries.values()) == [3, 4, 5]
        assert b is not a

    def test_unique_in_place(self):
        a = PhpArray()
        b = cow_write(a, 0, 1, True)
        assert b is a
        assert a.entries == {0: 1}

    def test_shared_storage_is_copied_even_when_allowed(self):
        a = PhpArray.from_list([1])
        a.unique = False
        assert cow_write(a, 1, 2, True) is not a

    # hand-built table of what PHP's `$a[] = v` picks after a key sequence
    @pytest.mark.parametrize("inserted,next_key", [
        ([], 0), ([0, 1, 5], 6), ([3], 4), (["x"], 0), ([-3], 0),
        ([0, 1, 2], 3), ([7, 2], 8), (["1"], 2), (["01"], 0),
    ])
    def test_append_key(self, inserted, next_key):
        a = PhpArray()
        for k in inserted:
            a = cow_write(a, k, True, True)
        a = cow_write(a, None, "new", True)
        assert list(a.entries)[-1] == next_key

    @given(arrays(), keys, scalars)
    def test_copy_isolation(self, a, k, v):
        before = dict(a.entries)
        other = a
        cow_write(a, k, v, False)
        assert other.entries == before

    @given(st.integers(0, 10))
    def test_listlike_preserved_by_append_position(self, n):
        a = PhpArray.from_list(range(n))
        b = cow_write(a, len(a), "x", False)
        assert b.is_listlike()

    @given(arrays(), st.text(alphabet="xyz", min_size=1, max_size=3))
    def test_string_key_breaks_listlike(self, a, k):
        assert not cow_write(a, k, 1, False).is_listlike()

    @given(arrays())
    def test_listlike_definition(self, a):
        assert a.is_listlike() == (list(a.entries) == list(range(len(a))))


class TestIdentical:
    def test_ints(self):
        assert identical(3, 3)

    def test_int_float(self):
        assert not identical(3, 3.0)

    def test_bool_int(self):
        assert not identical(True, 1)

    def test_adapters_of_same_object(self):
        o = PhpObject.__new__(PhpObject)
        assert identical(to_py(o), to_py(o))

    def test_adapter_vs_native(self):
        lst = []
        assert not identical(to_php(lst), lst)

    @given(scalars)
    def test_reflexive(self, v):
        assert identical(v, v)

    @given(scalars, scalars)
    def test_symmetric(self, a, b):
        assert identical(a, b) == identical(b, a)

    @given(scalars)
    def test_ref_cell_identity(self, v):
        assert identical(deref(PhpRef(v)), v)


class TestTruthy:
    # documented PHP and Python truthiness tables
    PHP_FALSY = [None, False, 0, 0.0, "", "0"]
    PY_FALSY = [None, False, 0, 0.0, "", [], {}]

    @pytest.mark.parametrize("v", PHP_FALSY)
    def test_php_falsy(self, v):
        assert not truthy(v, Lang.PHP)

    def test_php_empty_array(self):
        assert not truthy(PhpArray(), Lang.PHP)

    @pytest.mark.parametrize("v", ["0.0", " ", "a", 1, -1, 0.1])
    def test_php_truthy(self, v):
        assert truthy(v, Lang.PHP)

    @pytest.mark.parametrize("v", PY_FALSY)
    def test_py_falsy(self, v):
        assert not truthy(v, Lang.PY)

    def test_string_zero_differs(self):
        assert truthy("0", Lang.PY)
        assert not truthy("0", Lang.PHP)

    def test_adapter_delegates(self):
        assert not truthy(to_php([]), Lang.PHP)
        assert truthy(to_php([0]), Lang.PHP)
        assert not truthy(to_py(PhpArray()), Lang.PY)


def test_ref_never_holds_ref():
    with pytest.raises(AssertionError):
        PhpRef(PhpRef(1))
