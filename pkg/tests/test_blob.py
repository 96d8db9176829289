from __future__ import annotations

import itertools

import pytest
from conftest import code_and_n, trees
from hypothesis import given, settings

from treecodex import (
    Ascent,
    MalformedToken,
    NonAscent,
    RootedTree,
    blob_decode,
    blob_decode_surgery,
    blob_decode_weighted,
    blob_encode,
    blob_encode_surgery,
    blob_encode_weighted,
    code_stats,
    edge_stats,
    enumerate_codes,
    enumerate_trees,
    format_weighted,
    parse_weighted,
    project,
)

WEIGHTED = (NonAscent(0), Ascent(1, 3), NonAscent(2), NonAscent(0), Ascent(4, 5))


class TestCodec:
    def test_examples(self):
        assert blob_encode(RootedTree((3, 1, 0))) == (3, 1)
        assert blob_encode(RootedTree((3, 3, 0, 0))) == (3, 3, 0)
        assert blob_encode(RootedTree((6, 4, 2, 0, 4, 2, 4))) == (6, 4, 2, 4, 2, 4)
        assert blob_decode((3, 1)).succ == (3, 1, 0)
        assert blob_decode((), 1).succ == (0,)

    def test_n3_bijective(self):
        assert len({blob_decode(c, 3) for c in enumerate_codes(3)}) == 16

    @pytest.mark.parametrize("n", range(1, 6))
    def test_surgery_agrees_exhaustively(self, n):
        for t in enumerate_trees(n):
            assert blob_encode_surgery(t) == blob_encode(t)
            assert blob_decode(blob_encode(t), n) == t
        for c in enumerate_codes(n):
            assert blob_decode_surgery(c, n) == blob_decode(c, n)

    @settings(max_examples=200, deadline=None)
    @given(code_and_n(max_n=400))
    def test_random_agreement(self, cn):
        c, n = cn
        t = blob_decode(c, n)
        assert blob_decode_surgery(c, n) == t
        assert blob_encode(t) == c
        assert blob_encode_surgery(t) == c


class TestWeighted:
    def test_example(self):
        t = RootedTree((3, 0, 2, 5, 0))
        assert blob_encode_weighted(t) == WEIGHTED
        assert format_weighted(WEIGHTED) == "b0,a1_3,b2,b0,a4_5"
        assert blob_decode_weighted(WEIGHTED) == t
        assert parse_weighted("b0,a1_3,b2,b0,a4_5") == WEIGHTED

    def test_trivial(self):
        assert blob_encode_weighted(RootedTree((0,))) == (NonAscent(0),)
        assert blob_decode_weighted((NonAscent(0),)).succ == (0,)

    @pytest.mark.parametrize(
        "bad",
        [
            (),
            (NonAscent(1),),
            (NonAscent(0), NonAscent(2)),
            (NonAscent(0), Ascent(1, 1)),
            (NonAscent(0), Ascent(2, 3), NonAscent(0)),
            (NonAscent(0), Ascent(1, 4), NonAscent(0)),
        ],
    )
    def test_shape_errors(self, bad):
        with pytest.raises(MalformedToken):
            blob_decode_weighted(bad)

    def test_parse_errors(self):
        with pytest.raises(MalformedToken):
            parse_weighted("b0,x1")

    def test_exhaustive_weighted_space_n4(self):
        n = 4
        slots = [[NonAscent(0)]]
        for pos in range(2, n + 1):
            slots.append([Ascent(pos - 1, j) for j in range(pos, n + 1)] + [NonAscent(j) for j in range(pos)])
        seen = set()
        for tokens in itertools.product(*slots):
            t = blob_decode_weighted(tokens)
            assert blob_encode_weighted(t) == tokens
            seen.add(t)
        assert len(seen) == (n + 1) ** (n - 1)

    def test_stats_example(self):
        table = code_stats(WEIGHTED)
        assert table.in_descent[0] == 2
        assert table.out_ascent[1] == 1
        assert table.in_descent[2] == 1
        assert table.in_ascent[3] == 1
        assert table.out_ascent[4] == 1
        assert table.in_ascent[5] == 1
        assert table == edge_stats(RootedTree((3, 0, 2, 5, 0)))

    def test_stats_trivial(self):
        table = code_stats((NonAscent(0),))
        assert table.row(0) == (0, 1, 0, 0)
        assert table.row(1) == (0, 0, 0, 1)

    def test_path_tree_stats(self):
        t = RootedTree((2, 3, 0))
        assert code_stats(blob_encode_weighted(t)) == edge_stats(t)

    @settings(max_examples=300, deadline=None)
    @given(trees(max_n=50))
    def test_stats_match_edges(self, t):
        tokens = blob_encode_weighted(t)
        assert code_stats(tokens) == edge_stats(t)
        assert project(tokens) == blob_encode(t)
        ascents = {(tok.i, tok.j) for tok in tokens if isinstance(tok, Ascent)}
        assert ascents == {(v, t[v]) for v in range(1, t.n + 1) if t[v] > v}
