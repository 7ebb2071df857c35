import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poset_endo import (
    NotGraded,
    canonical_form,
    compute_grading,
    connected_components,
    from_cover_list,
    gen_antichain,
    gen_chain,
    gen_diamond_tower,
    gen_random_tower,
    induced_subposet,
    is_isomorphic_rank_preserving,
    rank_selected,
    require_grading,
    width,
    window,
)
from poset_endo.errors import (
    CycleDetected,
    DuplicateCover,
    EmptySelection,
    IndexOutOfRange,
    RankOutOfRange,
    RedundantCover,
)

from conftest import DIAMOND_COVERS, rederive_covers


class TestFromCoverList:
    def test_diamond(self, diamond):
        assert diamond.n == 4
        assert diamond.up_covers == ((1, 2), (3,), (3,), ())
        assert diamond.down_covers == ((), (0,), (0,), (1, 2))

    def test_redundant_cover_rejected(self):
        with pytest.raises(RedundantCover):
            from_cover_list(3, [(0, 1), (1, 2), (0, 2)])

    def test_cycle_rejected(self):
        with pytest.raises(CycleDetected):
            from_cover_list(2, [(0, 1), (1, 0)])

    def test_self_loop_rejected(self):
        with pytest.raises(CycleDetected):
            from_cover_list(1, [(0, 0)])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateCover):
            from_cover_list(2, [(0, 1), (0, 1)])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_cover_list(2, [(0, 2)])

    def test_covers_sorted(self):
        p = from_cover_list(4, [(0, 3), (0, 1), (1, 2)])
        assert p.up_covers[0] == (1, 3)


class TestGrading:
    def test_diamond(self, diamond):
        g = require_grading(diamond)
        assert g.ranks == (0, 1, 1, 2)
        assert g.whitney == (1, 2, 1)
        assert g.whidth == 2
        assert g.top_rank == 2

    def test_not_graded_witness(self):
        p = from_cover_list(4, [(0, 1), (1, 2), (3, 2)])
        g = compute_grading(p)
        assert isinstance(g, NotGraded)
        assert len(g.chain_long) != len(g.chain_short)
        for chain in (g.chain_long, g.chain_short):
            assert not p.down_covers[chain[0]]
            assert not p.up_covers[chain[-1]]
            for a, b in zip(chain, chain[1:]):
                assert b in p.up_covers[a]
        assert set(g.chain_long) == {0, 1, 2}
        assert set(g.chain_short) == {3, 2}

    @pytest.mark.parametrize("length", [1, 3, 5, 8])
    def test_chain_rank(self, length):
        g = require_grading(gen_chain(length))
        assert g.top_rank == length - 1
        assert g.whitney == (1,) * length

    def test_two_unequal_chains_not_graded(self):
        p = from_cover_list(5, [(0, 1), (1, 2), (3, 4)])
        assert isinstance(compute_grading(p), NotGraded)


class TestWidth:
    def test_diamond(self, diamond):
        assert width(diamond) == 2

    def test_chain(self):
        assert width(gen_chain(5)) == 1

    def test_antichain(self):
        assert width(gen_antichain(4)) == 4

    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_whidth_at_most_width(self, seed):
        p = gen_random_tower(seed, num_levels=3, max_level_size=4, density=0.5)
        g = require_grading(p)
        assert g.whidth <= width(p)


class TestRankSelected:
    def test_drop_middle_rank_keeps_comparability(self, diamond):
        g = require_grading(diamond)
        q = rank_selected(diamond, g, {0, 2})
        assert q.n == 2
        assert q.covers() == ((0, 1),)

    def test_single_rank_is_antichain(self, diamond):
        g = require_grading(diamond)
        q = rank_selected(diamond, g, {1})
        assert q.n == 2
        assert q.covers() == ()

    def test_every_other_rank_of_chain(self):
        p = gen_chain(5)
        q = rank_selected(p, require_grading(p), {0, 2, 4})
        assert q.covers() == ((0, 1), (1, 2))

    def test_empty_selection(self, diamond):
        with pytest.raises(EmptySelection):
            rank_selected(diamond, require_grading(diamond), set())

    def test_rank_out_of_range(self, diamond):
        with pytest.raises(RankOutOfRange):
            rank_selected(diamond, require_grading(diamond), {5})


class TestWindow:
    def test_bottom_window_of_diamond(self, diamond):
        g = require_grading(diamond)
        w = window(diamond, g, 0, 1)
        assert w.elements == (0, 1, 2)
        assert w.induced.covers() == ((0, 1), (0, 2))

    def test_full_window_is_whole_poset(self, diamond):
        g = require_grading(diamond)
        w = window(diamond, g, 0, 2)
        assert w.elements == (0, 1, 2, 3)
        assert w.induced.covers() == diamond.covers()

    def test_out_of_range(self, diamond):
        with pytest.raises(RankOutOfRange):
            window(diamond, require_grading(diamond), 1, 2)

    @given(seed=st.integers(0, 10**6), lo=st.integers(0, 2))
    @settings(max_examples=30, deadline=None)
    def test_consecutive_window_matches_order_restriction(self, seed, lo):
        p = gen_random_tower(seed, num_levels=5, max_level_size=3, density=0.5)
        g = require_grading(p)
        span = min(2, g.top_rank - lo)
        w = window(p, g, lo, span)
        assert w.induced.covers() == induced_subposet(p, w.elements).covers()


class TestConnectedComponents:
    def test_diamond_is_connected(self, diamond):
        assert connected_components(diamond) == ((0, 1, 2, 3),)

    def test_disjoint_diamonds(self):
        covers = list(DIAMOND_COVERS) + [(a + 4, b + 4) for a, b in DIAMOND_COVERS]
        p = from_cover_list(8, covers)
        assert connected_components(p) == ((0, 1, 2, 3), (4, 5, 6, 7))

    def test_antichain(self):
        assert connected_components(gen_antichain(3)) == ((0,), (1,), (2,))


class TestCanonicalForm:
    def test_tower_blocks_share_keys(self):
        p = gen_diamond_tower(4)
        g = require_grading(p)
        keys = {window(p, g, lo, 2).canonical_key for lo in (0, 2, 4, 6)}
        assert len(keys) == 1
        a = window(p, g, 0, 2)
        b = window(p, g, 4, 2)
        iso = is_isomorphic_rank_preserving(a, b)
        assert iso is not None
        assert iso.rank_shift == 4

    def test_orientation_matters(self, diamond):
        g = require_grading(diamond)
        lower = window(diamond, g, 0, 1)
        upper = window(diamond, g, 1, 1)
        assert lower.canonical_key != upper.canonical_key
        assert is_isomorphic_rank_preserving(lower, upper) is None

    @given(seed=st.integers(0, 10**6), shuffle=st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_invariant_under_level_relabeling(self, seed, shuffle):
        import random

        p = gen_random_tower(seed, num_levels=4, max_level_size=4, density=0.6)
        g = require_grading(p)
        rng = random.Random(shuffle)
        perm = []
        for level in g.levels():
            scrambled = list(level)
            rng.shuffle(scrambled)
            perm.extend(scrambled)
        relabel = {old: new for new, old in enumerate(perm)}
        covers = sorted((relabel[a], relabel[b]) for a, b in p.covers())
        q = from_cover_list(p.n, covers)
        gq = require_grading(q)
        assert (
            window(p, g, 0, g.top_rank).canonical_key
            == window(q, gq, 0, gq.top_rank).canonical_key
        )

    @given(
        seed_a=st.integers(0, 500),
        seed_b=st.integers(0, 500),
    )
    @settings(max_examples=40, deadline=None)
    def test_key_equality_matches_isomorphism_search(self, seed_a, seed_b):
        pa = gen_random_tower(seed_a, num_levels=3, max_level_size=3, density=0.5)
        pb = gen_random_tower(seed_b, num_levels=3, max_level_size=3, density=0.5)
        ga, gb = require_grading(pa), require_grading(pb)
        wa = window(pa, ga, 0, ga.top_rank)
        wb = window(pb, gb, 0, gb.top_rank)
        same_key = wa.canonical_key == wb.canonical_key
        assert same_key == (is_isomorphic_rank_preserving(wa, wb) is not None)

    def test_identity_isomap(self, diamond):
        g = require_grading(diamond)
        w = window(diamond, g, 0, 2)
        iso = is_isomorphic_rank_preserving(w, w)
        assert iso is not None
        assert iso.rank_shift == 0
        assert all(a == b for a, b in iso.forward) or iso.as_dict()

    def test_canonical_form_returns_key(self, diamond):
        g = require_grading(diamond)
        w = window(diamond, g, 0, 2)
        assert canonical_form(w) == w.canonical_key


class TestPosetInvariants:
    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_covers_equal_rederived_transitive_reduction(self, seed):
        p = gen_random_tower(seed, num_levels=4, max_level_size=3, density=0.5)
        assert sorted(p.covers()) == rederive_covers(p)

    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_cover_lists_are_transposes(self, seed):
        p = gen_random_tower(seed, num_levels=4, max_level_size=4, density=0.4)
        for u in range(p.n):
            for v in p.up_covers[u]:
                assert u in p.down_covers[v]
        for v in range(p.n):
            for u in p.down_covers[v]:
                assert v in p.up_covers[u]

    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_grading_invariants(self, seed):
        p = gen_random_tower(seed, num_levels=5, max_level_size=4, density=0.5)
        g = require_grading(p)
        assert sum(g.whitney) == p.n
        assert g.whidth == max(g.whitney)
        for u in range(p.n):
            for v in p.up_covers[u]:
                assert g.ranks[v] == g.ranks[u] + 1
