import random

import pytest

from dyntopo import CircularList, DenseMatrix, SparseGraph, VertexRangeError
from dyntopo.graph_store import ArcCell


class TestSparseGraph:
    def test_single_arc(self):
        g = SparseGraph(2)
        assert g.insert_arc(0, 1) is not None
        assert [g.arc_head[a] for a in g.out_arcs(0)] == [1]
        assert g.m == 1

    def test_duplicate_rejected(self):
        g = SparseGraph(2)
        assert g.insert_arc(0, 1) is not None
        assert g.insert_arc(0, 1) is None
        assert g.m == 1

    def test_out_list_enumerates_inserted_set(self):
        g = SparseGraph(3)
        g.insert_arc(0, 1)
        g.insert_arc(0, 2)
        heads = [g.arc_head[a] for a in g.out_arcs(0)]
        assert sorted(heads) == [1, 2]
        assert len(heads) == 2

    def test_prepend_order(self):
        g = SparseGraph(3)
        g.insert_arc(0, 1)
        g.insert_arc(0, 2)
        assert g.arc_head[g.first_out[0]] == 2  # most recent first

    def test_range_error(self):
        g = SparseGraph(2)
        with pytest.raises(VertexRangeError):
            g.insert_arc(0, 2)
        with pytest.raises(VertexRangeError):
            g.insert_arc(-1, 0)

    def test_add_vertex(self):
        g = SparseGraph(1)
        v = g.add_vertex()
        assert v == 1
        assert g.insert_arc(0, 1) is not None

    def test_lists_partition_arc_set(self):
        # every arc appears exactly once in the out lists and once in the in lists
        rng = random.Random(5)
        g = SparseGraph(30)
        expected = set()
        for _ in range(300):
            t, h = rng.randrange(30), rng.randrange(30)
            if g.insert_arc(t, h) is not None:
                expected.add((t, h))
        outs = [(g.arc_tail[a], g.arc_head[a]) for v in range(30) for a in g.out_arcs(v)]
        ins = [(g.arc_tail[a], g.arc_head[a]) for v in range(30) for a in g.in_arcs(v)]
        assert sorted(outs) == sorted(expected)
        assert sorted(ins) == sorted(expected)
        assert set(g.arcs()) == expected

    def test_membership_matches_inserts_bulk(self):
        rng = random.Random(11)
        n = 200
        g = SparseGraph(n)
        inserted = set()
        for _ in range(10**5):
            t, h = rng.randrange(n), rng.randrange(n)
            if rng.random() < 0.7:
                got = g.insert_arc(t, h)
                assert (got is None) == ((t, h) in inserted)
                inserted.add((t, h))
            else:
                assert g.has_arc(t, h) == ((t, h) in inserted)


class TestDenseMatrix:
    @pytest.mark.parametrize("hashed", [False, True])
    def test_insert_and_probe(self, hashed):
        m = DenseMatrix(2, hashed=hashed)
        assert m.insert(0, 1)
        assert m.has(0, 1)
        assert not m.has(1, 0)

    @pytest.mark.parametrize("hashed", [False, True])
    def test_duplicate(self, hashed):
        m = DenseMatrix(2, hashed=hashed)
        assert m.insert(0, 1)
        assert not m.insert(0, 1)

    @pytest.mark.parametrize("hashed", [False, True])
    def test_popcount_equals_distinct_inserts(self, hashed):
        rng = random.Random(3)
        m = DenseMatrix(40, hashed=hashed)
        distinct = set()
        for _ in range(500):
            v, w = rng.randrange(40), rng.randrange(40)
            m.insert(v, w)
            distinct.add((v, w))
        assert m.arc_count() == len(distinct)

    def test_range_error(self):
        m = DenseMatrix(3)
        with pytest.raises(VertexRangeError):
            m.insert(3, 0)


def cells(arcs):
    return [ArcCell(a) for a in arcs]


class TestCircularList:
    def test_empty_concat_singleton(self):
        x, y = CircularList(), CircularList()
        (c,) = cells("a")
        y.push_front(c)
        x.concat(y)
        assert x.arcs() == ["a"]
        assert not y

    def test_concat_is_union(self):
        x, y = CircularList(), CircularList()
        a, b, c = cells("abc")
        x.push_front(a)
        y.push_front(c)
        y.push_front(b)
        x.concat(y)
        assert sorted(x.arcs()) == ["a", "b", "c"]

    def test_self_concat_rejected(self):
        x = CircularList()
        with pytest.raises(ValueError):
            x.concat(x)

    def test_delete_known_cell(self):
        x = CircularList()
        a, b, c = cells("abc")
        for cell in (c, b, a):
            x.push_front(cell)
        x.delete(b)
        assert x.arcs() == ["a", "c"]
        x.delete(a)  # head deletion
        assert x.arcs() == ["c"]
        x.delete(c)
        assert x.arcs() == []

    def test_random_merges_equal_multiset_union(self):
        rng = random.Random(17)
        for _ in range(10**3):
            k = rng.randint(2, 6)
            pools = []
            expected = []
            label = 0
            for _ in range(k):
                lst = CircularList()
                for _ in range(rng.randint(0, 5)):
                    lst.push_front(ArcCell(label))
                    expected.append(label)
                    label += 1
                pools.append(lst)
            target = pools[0]
            for other in pools[1:]:
                target.concat(other)
            assert sorted(target.arcs()) == sorted(expected)
