"""Information-set counting, enumeration, and sampling tests.

Oracle strategy: on small late-game sets, counts and enumerations are
checked against brute-force assignment of the unknown cards followed by
replay-based `consistent()` filtering.
"""

import itertools
from math import comb

import numpy as np
import pytest

from skatpimc.cards import DECK_MASK, popcount
from skatpimc.dealenum import (
    InfoSet,
    consistent,
    count_deals,
    enumerate_deals,
    sample_uniform_subset,
)
from skatpimc.selfplay import random_game, scripted_setup, random_deal
from skatpimc.state import LOC_SKAT, Deal, Observation


def fresh_observation(viewer=1, soloist=0, rng=None):
    rng = rng or np.random.default_rng(7)
    setup = scripted_setup(random_deal(rng))
    # force roles for the closed-form count checks
    from skatpimc.state import GameState

    state = GameState(setup.deal, setup.decl, setup.soloist)
    return (
        Observation.from_game(state, viewer, bids=setup.bids,
                              original_skat=setup.original_skat
                              if viewer == setup.soloist else None),
        setup,
        state,
    )


def brute_force_deals(obs):
    """All consistent deals by raw assignment + replay filtering.

    Only usable when few cards are unknown.
    """
    from skatpimc.dealenum import build_constraints

    cons = build_constraints(obs)
    n = len(cons.unknown)
    assert n <= 9, "brute force only for endgames"
    out = []
    for locs in itertools.product(range(4), repeat=n):
        caps = list(cons.caps)
        ok = True
        for loc in locs:
            caps[loc] -= 1
            if caps[loc] < 0:
                ok = False
                break
        if not ok or any(caps):
            continue
        hands = list(cons.base_hands)
        skat = cons.base_skat
        for card, loc in zip(cons.unknown, locs):
            if loc == LOC_SKAT:
                skat |= 1 << card
            else:
                hands[loc] |= 1 << card
        deal = Deal(hands=(hands[0], hands[1], hands[2]), skat=skat)
        if consistent(deal, obs):
            out.append(deal)
    return out


def endgame_observation(seed, tricks=8, defender_view=True):
    rng = np.random.default_rng(seed)
    setup, state = random_game(rng, stop_after_tricks=tricks)
    viewer = (setup.soloist + 1) % 3 if defender_view else setup.soloist
    orig = setup.original_skat if viewer == setup.soloist else None
    return (
        Observation.from_game(state, viewer, bids=setup.bids, original_skat=orig),
        state,
    )


class TestClosedFormCounts:
    def test_defender_at_trick_one(self):
        obs, setup, _ = fresh_observation(viewer=1, soloist=0)
        if setup.soloist == 1:
            pytest.skip("need a defender viewer")
        assert count_deals(obs) == comb(22, 10) * comb(12, 10) == 42_678_636

    def test_soloist_at_trick_one(self):
        obs, setup, state = fresh_observation()
        solo_obs = Observation.from_game(
            state, setup.soloist, bids=setup.bids, original_skat=setup.original_skat
        )
        assert count_deals(solo_obs) == comb(20, 10) == 184_756

    def test_counting_is_fast(self):
        import time

        obs, *_ = fresh_observation(viewer=1, soloist=0)
        t0 = time.perf_counter()
        count_deals(obs)
        assert time.perf_counter() - t0 < 1.0


class TestConsistency:
    def test_true_deal_is_consistent(self):
        for seed in range(5):
            obs, state = endgame_observation(seed, tricks=6)
            assert consistent(state.deal, obs)

    def test_wrong_own_hand_rejected(self):
        obs, state = endgame_observation(0, tricks=6)
        other = (obs.viewer + 1) % 3
        hands = list(state.deal.hands)
        hands[obs.viewer], hands[other] = hands[other], hands[obs.viewer]
        swapped = Deal(hands=tuple(hands), skat=state.deal.skat)
        assert not consistent(swapped, obs)

    def test_brute_force_agreement(self):
        checked = 0
        for seed in range(30):
            obs, state = endgame_observation(seed, tricks=8)
            brute = {tuple(d.location_vector())
                     for d in brute_force_deals(obs)}
            dp = {tuple(d.location_vector()) for d in enumerate_deals(obs)}
            assert dp == brute
            assert count_deals(obs) == len(brute)
            assert tuple(state.deal.location_vector()) in dp
            checked += 1
        assert checked == 30


class TestEnumeration:
    def test_lexicographic_order(self):
        obs, _ = endgame_observation(3, tricks=7)
        from skatpimc.dealenum import build_constraints

        cons = build_constraints(obs)
        vecs = [
            tuple(d.location_of(c) for c in cons.unknown)
            for d in enumerate_deals(obs)
        ]
        assert vecs == sorted(vecs)
        assert len(set(vecs)) == len(vecs)

    def test_partition_invariant(self):
        obs, _ = endgame_observation(4, tricks=7)
        for deal in enumerate_deals(obs):
            union = deal.hands[0] | deal.hands[1] | deal.hands[2] | deal.skat
            assert union == DECK_MASK
            assert popcount(deal.skat) == 2

    def test_unrank_matches_enumeration(self):
        obs, _ = endgame_observation(5, tricks=7)
        iset = InfoSet(obs)
        listed = list(iset.enumerate())
        for i in (0, len(listed) // 2, len(listed) - 1):
            assert iset.unrank(i) == listed[i]
        many = iset.unrank_many(np.arange(len(listed)))
        for row, deal in zip(many, listed):
            assert iset._deal_from_locs(row) == deal

    def test_monotone_under_plays(self):
        rng = np.random.default_rng(11)
        setup, _ = random_game(rng, stop_after_tricks=0)
        from skatpimc.selfplay import play_out, random_policy
        from skatpimc.state import GameState

        state = GameState(setup.deal, setup.decl, setup.soloist)
        viewer = (setup.soloist + 1) % 3
        policy = random_policy(rng)
        prev = None
        for _ in range(12):
            obs = Observation.from_game(state, viewer, bids=setup.bids)
            n = count_deals(obs)
            if prev is not None:
                assert n <= prev
            prev = n
            seat = state.to_move
            mover_obs = Observation.from_game(
                state, seat, bids=setup.bids,
                original_skat=setup.original_skat if seat == setup.soloist else None,
            )
            state.play(policy(mover_obs))


class TestSampling:
    def test_full_set_when_k_large(self):
        obs, _ = endgame_observation(6, tricks=8)
        all_deals = list(enumerate_deals(obs))
        sample = sample_uniform_subset(obs, len(all_deals) + 50, seed=1)
        assert {tuple(d.location_vector()) for d in sample} == {
            tuple(d.location_vector()) for d in all_deals
        }

    def test_large_set_sampling_consistent(self):
        obs, *_ = fresh_observation(viewer=1, soloist=0)
        a = sample_uniform_subset(obs, 500, seed=1)
        b = sample_uniform_subset(obs, 500, seed=2)
        assert len(a) == len(b) == 500
        assert len({tuple(d.location_vector()) for d in a}) == 500
        assert {tuple(d.location_vector()) for d in a} != {
            tuple(d.location_vector()) for d in b
        }
        for deal in a[:25]:
            assert consistent(deal, obs)

    def test_small_set_frequencies(self):
        # repeated k=1 draws hit each deal ~uniformly (3-sigma binomial)
        obs, _ = endgame_observation(8, tricks=8)
        n = count_deals(obs)
        draws = 3000
        counts = {}
        for s in range(draws):
            (deal,) = sample_uniform_subset(obs, 1, seed=s)
            key = tuple(deal.location_vector())
            counts[key] = counts.get(key, 0) + 1
        p = 1.0 / n
        sigma = (draws * p * (1 - p)) ** 0.5
        assert len(counts) == n
        for c in counts.values():
            assert abs(c - draws * p) <= 3.5 * sigma
