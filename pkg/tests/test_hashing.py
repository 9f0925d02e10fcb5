import pytest

from midicoth.core.hashing import FNV_OFFSET_BASIS, OpenAddressTable, fnv1a, suffix_hashes


def test_fnv1a_reference_values():
    assert fnv1a(b"") == 0xCBF29CE484222325 == FNV_OFFSET_BASIS
    assert fnv1a(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a(b"th") != fnv1a(b"ht")


def test_fnv1a_continues_from_previous_hash():
    assert fnv1a(b"bc", fnv1a(b"a")) == fnv1a(b"abc")
    assert fnv1a(bytearray(b"abc")) == fnv1a(b"abc")


def test_suffix_hashes():
    hs = suffix_hashes(b"abc", (0, 1, 3, 4))
    assert hs == [FNV_OFFSET_BASIS, fnv1a(b"c"), fnv1a(b"abc"), None]


def test_table_put_get_overwrite():
    t = OpenAddressTable(8)
    t.put(42, "x")
    assert t.get(42) == "x" and 42 in t
    t.put(42, "y")
    assert t.get(42) == "y" and len(t) == 1
    assert t.get(7) is None and 7 not in t


def test_table_colliding_keys():
    t = OpenAddressTable(4)
    for k in (1, 5, 9):          # same home slot under mask 3
        t.put(k, k * 10)
    assert [t.get(k) for k in (1, 5, 9)] == [10, 50, 90]


def test_table_grows_below_load_factor():
    t = OpenAddressTable(4)
    for k in range(1000):
        t.put(k * 7919, k)
        assert len(t) <= 0.6 * t.capacity
    assert t.capacity & (t.capacity - 1) == 0
    assert all(t.get(k * 7919) == k for k in range(1000))
    assert len(list(t.items())) == 1000


def test_get_or_insert_calls_factory_once():
    calls = []
    t = OpenAddressTable(16)

    def make():
        calls.append(1)
        return []

    a = t.get_or_insert(3, make)
    a.append("v")
    b = t.get_or_insert(3, make)
    assert b == ["v"] and len(calls) == 1


@pytest.mark.parametrize("cap", [0, 1, 3, 100])
def test_table_rejects_bad_capacity(cap):
    with pytest.raises(ValueError):
        OpenAddressTable(cap)
