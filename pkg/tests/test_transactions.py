import pytest
from hypothesis import given, settings, strategies as st

from ruleminer.errors import EmptyTransaction, UnknownItem
from ruleminer.transactions import ItemDictionary, build_db, intern_item, support_count

from conftest import ids


def test_intern_first_is_zero():
    d = ItemDictionary()
    assert intern_item(d, "success", "Successful") == 0


def test_intern_idempotent():
    d = ItemDictionary()
    assert intern_item(d, "success", "Successful") == intern_item(d, "success", "Successful")
    assert len(d) == 1


def test_intern_dense():
    d = ItemDictionary()
    got = {intern_item(d, "f", x) for x in ("a", "b", "c")}
    assert got == {0, 1, 2}


def test_intern_rejects_empty_text():
    with pytest.raises(ValueError):
        ItemDictionary().intern("", "x")


def test_dictionary_bijective():
    d = ItemDictionary([("a", "1"), ("b", "1"), ("a", "2")])
    for i in range(len(d)):
        assert d.id_of(*d.item(i)) == i
    # same label in two fields stays two items
    assert d.ids_with_label("1") == [0, 1]
    assert d.ids_with_label("b=1") == [1]


def test_build_db_counts():
    db = build_db([["A", "B"], ["A"], ["B"]])
    assert db.n == 3
    assert db.column(db.dictionary.id_of("item", "A")).bit_count() == 2
    assert db.column(db.dictionary.id_of("item", "B")).bit_count() == 2


def test_build_db_empty():
    db = build_db([])
    assert db.n == 0
    assert db.columns == ()


def test_build_db_dedups():
    db = build_db([["A", "A", "B"]])
    assert db.transactions == ((0, 1),)


def test_build_db_rejects_empty_row():
    with pytest.raises(EmptyTransaction) as e:
        build_db([["A"], []])
    assert e.value.row == 1


def test_support_count_examples():
    db = build_db([["A", "B"], ["A"], ["B"]])
    assert support_count(db, ids(db, "A", "B")) == 1
    assert support_count(db, ids(db, "A")) == 2
    assert support_count(db, ()) == 3


def test_support_count_unknown_item():
    db = build_db([["A"]])
    with pytest.raises(UnknownItem):
        support_count(db, (5,))


def test_field_label_pairs():
    db = build_db([[("success", "Successful"), ("suicide", "Not Suicide")]])
    assert db.rows() == [[("success", "Successful"), ("suicide", "Not Suicide")]]


rows_strategy = st.lists(
    st.lists(st.integers(0, 14), min_size=1, max_size=15),
    max_size=200,
)


def _naive(rows, itemset):
    return sum(1 for r in rows if set(itemset) <= set(r))


@settings(max_examples=150, deadline=None)
@given(rows=rows_strategy, data=st.data())
def test_bitset_count_matches_row_scan(rows, data):
    db = build_db([[str(x) for x in r] for r in rows])
    if db.item_count == 0:
        return
    itemset = data.draw(st.sets(st.integers(0, db.item_count - 1), max_size=4))
    itemset = tuple(sorted(itemset))
    labelled = [db.dictionary.label(i) for i in itemset]
    assert support_count(db, itemset) == _naive([[str(x) for x in r] for r in rows], labelled)


@settings(max_examples=150, deadline=None)
@given(rows=rows_strategy, data=st.data())
def test_support_anti_monotone(rows, data):
    db = build_db([[str(x) for x in r] for r in rows])
    if db.item_count == 0:
        return
    y = data.draw(st.sets(st.integers(0, db.item_count - 1), max_size=5))
    x = data.draw(st.sets(st.sampled_from(sorted(y)), max_size=len(y))) if y else set()
    assert support_count(db, tuple(sorted(y))) <= support_count(db, tuple(sorted(x)))


@settings(max_examples=100, deadline=None)
@given(rows=rows_strategy)
def test_read_back(rows):
    raw = [[str(x) for x in r] for r in rows]
    db = build_db(raw)
    back = [[lab for _, lab in row] for row in db.rows()]
    for original, got in zip(raw, back):
        assert sorted(set(original)) == sorted(got)
        # stored in id order, no duplicates
        assert len(got) == len(set(got))
    assert len(back) == len(raw)
    for i, col in enumerate(db.columns):
        assert col.bit_count() == sum(1 for t in db.transactions if i in t)
        assert col < (1 << db.n)
