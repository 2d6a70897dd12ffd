"""Information sets: consistency, counting, enumeration, and sampling.

The viewer-unknown cards of an :class:`Observation` must be assigned to
the remaining hand/skat slots subject to hand capacities and the void
suits proven by the move history.  A small dynamic program over remaining
capacities gives exact counts, lexicographic unranking, uniform sampling
without replacement, and weighted sums -- all without materializing the
(up to 42.6 million) deals.

Canonical enumeration order: lexicographic by the location vector of the
unknown cards (ascending card index, locations ordered hand0 < hand1 <
hand2 < skat).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .cards import popcount
from .rules import NUM_SEATS, GameKind, effective_suit
from .state import LOC_SKAT, NUM_LOCATIONS, Deal, GameState, IllegalMoveError, Observation

HAND_SIZE = 10
SKAT_SIZE = 2


def consistent(deal: Deal, obs: Observation) -> bool:
    """Replay-based consistency: does `deal` explain everything `obs` saw?"""
    if deal.hands[obs.viewer] != obs.own_initial_hand:
        return False
    if obs.known_skat is not None and deal.skat != obs.known_skat:
        return False
    state = GameState(deal, obs.decl, obs.soloist)
    try:
        for _, card in obs.moves():
            state.play(card)
    except IllegalMoveError:
        return False
    return True


@dataclass
class _Constraints:
    """Unknown-card assignment problem derived from one observation."""

    unknown: list[int]  # ascending card indices
    allowed: list[int]  # per unknown card: bitmask over the 4 locations
    caps: tuple[int, int, int, int]  # open slots per location
    base_hands: tuple[int, int, int]  # known initial-hand cards
    base_skat: int


def build_constraints(obs: Observation) -> _Constraints:
    base_hands = [0, 0, 0]
    base_hands[obs.viewer] = obs.own_initial_hand
    for seat in range(NUM_SEATS):
        if seat != obs.viewer:
            base_hands[seat] = obs.played_by(seat)
    base_skat = obs.known_skat if obs.known_skat is not None else 0

    known = base_hands[0] | base_hands[1] | base_hands[2] | base_skat
    unknown = [c for c in range(32) if not known >> c & 1]

    caps = [0, 0, 0, 0]
    for seat in range(NUM_SEATS):
        if seat != obs.viewer:
            caps[seat] = HAND_SIZE - popcount(base_hands[seat])
    caps[LOC_SKAT] = 0 if obs.known_skat is not None else SKAT_SIZE

    allowed = []
    for card in unknown:
        mask = 0
        suit = effective_suit(card, obs.decl)
        for seat in range(NUM_SEATS):
            if seat == obs.viewer or caps[seat] == 0:
                continue
            if suit in obs.void_constraints[seat]:
                continue
            mask |= 1 << seat
        if caps[LOC_SKAT] > 0:
            mask |= 1 << LOC_SKAT
        allowed.append(mask)

    if sum(caps) != len(unknown):
        raise ValueError("observation is internally inconsistent")
    return _Constraints(
        unknown=unknown,
        allowed=allowed,
        caps=tuple(caps),
        base_hands=tuple(base_hands),
        base_skat=base_skat,
    )


class InfoSet:
    """Counting / enumeration / sampling engine for one observation."""

    def __init__(self, obs: Observation):
        self.obs = obs
        self.cons = build_constraints(obs)
        self._count_tables: list[np.ndarray] | None = None
        self._dims = tuple(c + 1 for c in self.cons.caps)

    # -- counting ---------------------------------------------------------

    def _tables(self) -> list[np.ndarray]:
        """count[pos][r0,r1,r2,r3] = completions of unknown[pos:] given
        remaining capacities r."""
        if self._count_tables is not None:
            return self._count_tables
        n = len(self.cons.unknown)
        dims = self._dims
        tables = [None] * (n + 1)
        last = np.zeros(dims, dtype=np.int64)
        last[0, 0, 0, 0] = 1
        tables[n] = last
        for pos in range(n - 1, -1, -1):
            cur = np.zeros(dims, dtype=np.int64)
            nxt = tables[pos + 1]
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if not mask >> loc & 1:
                    continue
                src = [slice(None)] * 4
                dst = [slice(None)] * 4
                dst[loc] = slice(1, None)
                src[loc] = slice(0, dims[loc] - 1)
                cur[tuple(dst)] += nxt[tuple(src)]
            tables[pos] = cur
        self._count_tables = tables
        return tables

    def count(self) -> int:
        if not self.cons.unknown:
            return 1
        return int(self._tables()[0][self.cons.caps])

    # -- enumeration ------------------------------------------------------

    def enumerate(self) -> Iterator[Deal]:
        """Yield every consistent deal in canonical lexicographic order."""
        tables = self._tables()
        n = len(self.cons.unknown)
        locs = [0] * n

        def rec(pos: int, caps: list[int]) -> Iterator[Deal]:
            if pos == n:
                yield self._deal_from_locs(locs)
                return
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if not mask >> loc & 1 or caps[loc] == 0:
                    continue
                caps[loc] -= 1
                if tables[pos + 1][tuple(caps)] > 0:
                    locs[pos] = loc
                    yield from rec(pos + 1, caps)
                caps[loc] += 1

        yield from rec(0, list(self.cons.caps))

    def _deal_from_locs(self, locs) -> Deal:
        hands = list(self.cons.base_hands)
        skat = self.cons.base_skat
        for card, loc in zip(self.cons.unknown, locs):
            if loc == LOC_SKAT:
                skat |= 1 << card
            else:
                hands[loc] |= 1 << card
        return Deal(hands=(hands[0], hands[1], hands[2]), skat=skat)

    # -- unranking --------------------------------------------------------

    def unrank(self, index: int) -> Deal:
        """Deal at `index` of the canonical enumeration order."""
        if not 0 <= index < self.count():
            raise IndexError("deal index out of range")
        tables = self._tables()
        caps = list(self.cons.caps)
        locs = []
        for pos in range(len(self.cons.unknown)):
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if not mask >> loc & 1 or caps[loc] == 0:
                    continue
                caps[loc] -= 1
                c = int(tables[pos + 1][tuple(caps)])
                if index < c:
                    locs.append(loc)
                    break
                index -= c
                caps[loc] += 1
            else:
                raise AssertionError("unrank walked off the DP")
        return self._deal_from_locs(locs)

    def unrank_many(self, indices: np.ndarray) -> np.ndarray:
        """Vectorized unranking: (k, n_unknown) location codes."""
        tables = self._tables()
        n = len(self.cons.unknown)
        k = len(indices)
        rem = indices.astype(np.int64).copy()
        caps = np.tile(np.array(self.cons.caps, dtype=np.int64), (k, 1))
        out = np.zeros((k, n), dtype=np.int8)
        flat = [t.reshape(-1) for t in tables]
        strides = np.array(
            [
                self._dims[1] * self._dims[2] * self._dims[3],
                self._dims[2] * self._dims[3],
                self._dims[3],
                1,
            ],
            dtype=np.int64,
        )
        undecided_template = np.ones(k, dtype=bool)
        for pos in range(n):
            undecided = undecided_template.copy()
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if not mask >> loc & 1:
                    continue
                cand = undecided & (caps[:, loc] > 0)
                if not cand.any():
                    continue
                idx = (caps[cand] @ strides) - strides[loc]
                c = flat[pos + 1][idx]
                take = np.zeros(k, dtype=bool)
                take[cand] = rem[cand] < c
                skip = cand & ~take
                out[take, pos] = loc
                caps[take, loc] -= 1
                undecided &= ~take
                if skip.any():
                    idx2 = (caps[skip] @ strides) - strides[loc]
                    rem[skip] -= flat[pos + 1][idx2]
            if undecided.any():
                raise AssertionError("unrank walked off the DP")
        return out

    def deals_from_locs(self, locs: np.ndarray) -> list[Deal]:
        return [self._deal_from_locs(row) for row in locs]

    # -- uniform sampling -------------------------------------------------

    def sample_uniform(self, k: int, seed: int) -> list[Deal]:
        """min(k, count) distinct deals drawn uniformly without replacement."""
        if k < 1:
            raise ValueError("k must be >= 1")
        total = self.count()
        if k >= total:
            return list(self.enumerate())
        rng = np.random.default_rng(seed)
        indices = _distinct_uniform_indices(rng, total, k)
        return self.deals_from_locs(self.unrank_many(indices))

    # -- weighted sums ----------------------------------------------------

    def _weight_rows(self, L: np.ndarray) -> tuple[np.ndarray, float]:
        """Per-unknown-card weight rows, scaled so each row's max allowed
        entry is 1 (the scale cancels under normalization).  Returns the
        (n, 4) scaled rows and the product of the scales' validity flag."""
        n = len(self.cons.unknown)
        rows = np.zeros((n, NUM_LOCATIONS), dtype=np.float64)
        for pos, card in enumerate(self.cons.unknown):
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if mask >> loc & 1:
                    rows[pos, loc] = L[card, loc]
        scale = rows.max(axis=1)
        ok = bool((scale > 0).all())
        safe = np.where(scale > 0, scale, 1.0)
        return rows / safe[:, None], ok

    def weighted_sum(self, L: np.ndarray) -> tuple[np.ndarray, bool]:
        """DP partition function over the information set with row-scaled
        weights; returns (Z table slice value packed as 0-d array, ok)."""
        rows, ok = self._weight_rows(L)
        n = len(self.cons.unknown)
        dims = self._dims
        last = np.zeros(dims, dtype=np.float64)
        last[0, 0, 0, 0] = 1.0
        cur = last
        for pos in range(n - 1, -1, -1):
            nxt = cur
            cur = np.zeros(dims, dtype=np.float64)
            mask = self.cons.allowed[pos]
            for loc in range(NUM_LOCATIONS):
                if not mask >> loc & 1:
                    continue
                w = rows[pos, loc]
                if w == 0.0:
                    continue
                src = [slice(None)] * 4
                dst = [slice(None)] * 4
                dst[loc] = slice(1, None)
                src[loc] = slice(0, dims[loc] - 1)
                cur[tuple(dst)] += w * nxt[tuple(src)]
        return np.float64(cur[self.cons.caps]), ok

    def posterior_prob(self, L: np.ndarray, deal: Deal) -> float:
        """p(deal | obs) under the per-card location model, computed
        directly over the whole information set (known-card factors
        cancel)."""
        z, _ = self.weighted_sum(L)
        if z == 0.0:
            return 1.0 / self.count()  # degenerate model: uniform fallback
        rows, _ = self._weight_rows(L)
        num = 1.0
        for pos, card in enumerate(self.cons.unknown):
            num *= rows[pos, deal.location_of(card)]
        return float(num / z)

    def true_state_ratio(self, L: np.ndarray, deal: Deal) -> float:
        """p(deal|obs) * count, arranged so a uniform model gives exactly
        1.0 in floating point."""
        z, _ = self.weighted_sum(L)
        n = self.count()
        if z == 0.0:
            return 1.0
        rows, _ = self._weight_rows(L)
        num = 1.0
        for pos, card in enumerate(self.cons.unknown):
            num *= rows[pos, deal.location_of(card)]
        return float(num * n / z)

    def posterior_all(self, L: np.ndarray, chunk: int = 1 << 20, jobs: int = 1):
        """Normalized probability of every deal, canonical order.

        Computes the per-deal weight of the entire information set in
        vectorized chunks and normalizes; feasible up to the full 42.6M
        trick-1 root set.  Returns a float32 array of length count().
        """
        total = self.count()
        logw = np.empty(total, dtype=np.float32)
        rows, _ = self._weight_rows(L)
        with np.errstate(divide="ignore"):
            logrows = np.log(rows.astype(np.float32))
        if jobs > 1:
            _fill_log_weights_parallel(self, logrows, logw, chunk, jobs)
        else:
            for start in range(0, total, chunk):
                stop = min(start + chunk, total)
                logw[start:stop] = self._chunk_log_weights(logrows, start, stop)
        m = logw.max()
        if not np.isfinite(m):
            return np.full(total, 1.0 / total, dtype=np.float32)
        w = np.exp(logw - m)
        w /= w.sum(dtype=np.float64)
        return w

    def _chunk_log_weights(self, logrows: np.ndarray, start: int, stop: int):
        idx = np.arange(start, stop, dtype=np.int64)
        locs = self.unrank_many(idx)
        out = np.zeros(stop - start, dtype=np.float32)
        for pos in range(locs.shape[1]):
            out += logrows[pos, locs[:, pos]]
        return out


def _distinct_uniform_indices(rng, total: int, k: int) -> np.ndarray:
    """k distinct uniform indices from range(total), k < total."""
    if k * 3 >= total:
        return rng.permutation(total)[:k]
    picked = np.empty(0, dtype=np.int64)
    while len(picked) < k:
        draw = rng.integers(0, total, size=int((k - len(picked)) * 1.3) + 8)
        cat = np.concatenate([picked, draw])
        _, first = np.unique(cat, return_index=True)
        picked = cat[np.sort(first)]  # keep first-occurrence order
    return picked[:k]


def _fill_log_weights_parallel(infoset, logrows, out, chunk, jobs):
    from concurrent.futures import ProcessPoolExecutor

    total = len(out)
    spans = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {
            pool.submit(_chunk_worker, infoset.obs, logrows, s, e): (s, e)
            for s, e in spans
        }
        for fut, (s, e) in futures.items():
            out[s:e] = fut.result()


def _chunk_worker(obs, logrows, start, stop):
    return InfoSet(obs)._chunk_log_weights(logrows, start, stop)


# -- spec-level convenience wrappers --------------------------------------


def count_deals(obs: Observation) -> int:
    return InfoSet(obs).count()


def enumerate_deals(obs: Observation) -> Iterator[Deal]:
    return InfoSet(obs).enumerate()


def sample_uniform_subset(obs: Observation, k: int, seed: int) -> list[Deal]:
    return InfoSet(obs).sample_uniform(k, seed)
