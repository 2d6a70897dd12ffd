"""Numba kernels for exact double-dummy search.

State is passed as scalars (three hand masks, current trick cards, trick
leader) to keep the recursion allocation-free.  The search value is the
number of *future* soloist card points from the cards still in hands or
on the table (modes 0..4), or a 0/1 flag for "soloist takes no further
trick" (mode 5, null).  Points already captured and the skat are added by
the caller.

Exact values are obtained by zero-window probing (MTD-style) around a
guess; the wide-window `_search` is kept for the oracle test modes.  The
transposition table stores lower/upper bound pairs at trick boundaries
only, keyed by the three hand masks and the leader; soloist and mode are
fixed per table.  Keeping both bounds (instead of a single flagged value)
lets successive zero-window probes tighten entries instead of clobbering
them.  A history table (cutoff counter per card) drives move ordering.
"""

from __future__ import annotations

import numpy as np
from numba import get_num_threads, njit, prange

from ._ddtables import (
    CARD_POS,
    CLASS_MASK,
    CLS_ORDER,
    EFF,
    MOVE_ORDER,
    PTS,
    STR,
    TRUMP_CLASS,
)

TT_BITS_DEFAULT = 22

HI_INIT = np.int16(127)

NEXT_SEAT = np.array([1, 2, 0, 1, 2], dtype=np.int64)

# static position of each card in MOVE_ORDER, per mode
ORDER_POS = np.zeros((6, 32), dtype=np.int64)
for _m in range(6):
    for _i in range(32):
        ORDER_POS[_m, MOVE_ORDER[_m, _i]] = _i


@njit(cache=True, inline="always")
def _hand_of(h0, h1, h2, seat):
    if seat == 0:
        return h0
    if seat == 1:
        return h1
    return h2


@njit(cache=True, inline="always")
def _trick_winner_idx(mode, t0, t1, t2):
    led = EFF[mode, t0]
    best = 0
    bc, bcls = t0, led
    if EFF[mode, t1] == bcls:
        if STR[mode, t1] > STR[mode, bc]:
            best, bc = 1, t1
    elif EFF[mode, t1] == TRUMP_CLASS:
        best, bc, bcls = 1, t1, TRUMP_CLASS
    if EFF[mode, t2] == bcls:
        if STR[mode, t2] > STR[mode, bc]:
            best, bc = 2, t2
    elif EFF[mode, t2] == TRUMP_CLASS:
        best = 2
    return best


@njit(cache=True, inline="always")
def _hash(key_a, key_b, mask):
    mix = (key_a * np.uint64(0x9E3779B97F4A7C15)) ^ (
        key_b * np.uint64(0xC2B2AE3D27D4EB4F)
    )
    mix ^= mix >> np.uint64(29)
    mix *= np.uint64(0xBF58476D1CE4E5B9)
    mix ^= mix >> np.uint64(32)
    return mix & mask


@njit(cache=True, inline="always")
def _claim_all(mode, hand, others):
    """True if the player on lead wins every remaining trick outright:
    each card is a master of its class and, when opponents still hold
    trump, the hand is all master trumps (modes 0..4 only)."""
    trump = CLASS_MASK[mode, TRUMP_CLASS]
    ot = others & trump
    if ot != 0:
        if hand & ~trump != 0:
            return False
        lo = 1000
        hi = -1
        for c in range(32):
            if (hand >> c) & 1:
                if STR[mode, c] < lo:
                    lo = STR[mode, c]
            elif (ot >> c) & 1:
                if STR[mode, c] > hi:
                    hi = STR[mode, c]
        return lo > hi
    # no opposing trump: every card must top its own class
    for c in range(32):
        if (hand >> c) & 1:
            oc = others & CLASS_MASK[mode, EFF[mode, c]]
            for d in range(32):
                if (oc >> d) & 1 and STR[mode, d] > STR[mode, c]:
                    return False
    return True


@njit
def _search(
    h0, h1, h2,
    soloist, leader, t0, t1, ntrick,
    mode, rem, depth,
    alpha, beta,
    use_ab, use_equiv, use_tt,
    tka, tkb, tlo, thi, tmv, hist,
):
    if h0 == 0 and h1 == 0 and h2 == 0:
        return 1 if mode == 5 else 0

    maxval = 1 if mode == 5 else rem
    if use_ab:
        if alpha < 0:
            alpha = 0
        if beta > maxval:
            beta = maxval
        if alpha >= beta:
            return alpha
    else:
        alpha = 0
        beta = maxval

    to_move = NEXT_SEAT[leader + ntrick - 1] if ntrick > 0 else leader
    tt_mask = np.uint64(len(tka) - 1)
    tt_move = -1
    tt_slot = np.int64(-1)
    key_a = np.uint64(0)
    key_b = np.uint64(0)
    tt_here = use_tt and ntrick == 0
    if tt_here:
        key_a = np.uint64(h0) | (np.uint64(h1) << np.uint64(32))
        key_b = np.uint64(h2) | (np.uint64(leader) << np.uint64(32))
        base = _hash(key_a, key_b, tt_mask)
        for i in range(8):
            slot = (base + np.uint64(i)) & tt_mask
            ka = tka[slot]
            if ka == np.uint64(0):
                if tt_slot < 0:
                    tt_slot = np.int64(slot)
                break
            if ka == key_a and tkb[slot] == key_b:
                lo = tlo[slot]
                hi = thi[slot]
                if lo == hi:
                    return lo
                if use_ab:
                    if lo > alpha:
                        alpha = lo
                    if hi < beta:
                        beta = hi
                    if alpha >= beta:
                        return lo if lo >= beta else hi
                tt_move = tmv[slot]
                tt_slot = np.int64(slot)
                break
            if tt_slot < 0:
                tt_slot = np.int64(slot)

    hand = _hand_of(h0, h1, h2, to_move)

    if use_ab and ntrick == 0 and mode != 5:
        others = (h0 | h1 | h2) & ~hand
        if others != 0 and _claim_all(mode, hand, others):
            claimed = rem if to_move == soloist else 0
            if tt_here and tt_slot >= 0:
                tka[tt_slot] = key_a
                tkb[tt_slot] = key_b
                tlo[tt_slot] = np.int16(claimed)
                thi[tt_slot] = np.int16(claimed)
                tmv[tt_slot] = -1
            return claimed

    if ntrick == 0:
        legal = hand
    else:
        follow = hand & CLASS_MASK[mode, EFF[mode, t0]]
        legal = follow if follow != 0 else hand

    avail = h0 | h1 | h2
    if ntrick >= 1:
        avail |= 1 << t0
    if ntrick >= 2:
        avail |= 1 << t1

    # collect candidate moves (equivalence-reduced), tt move first;
    # the buffer lives in the per-depth region of the scratch array
    cb = 96 + depth * 11
    ncand = 0
    for oi in range(32):
        c = MOVE_ORDER[mode, oi]
        if (legal >> c) & 1 == 0:
            continue
        if use_equiv and c != tt_move:
            # skip if the next weaker live card of this class sits in the
            # same hand with the same points (points never matter in null)
            cls_c = EFF[mode, c]
            pos = CARD_POS[mode, c]
            skip = False
            for q in range(pos + 1, 12):
                d = CLS_ORDER[mode, cls_c, q]
                if d < 0:
                    break
                if (avail >> d) & 1:
                    if (hand >> d) & 1 and (mode == 5 or PTS[d] == PTS[c]):
                        skip = True
                    break
            if skip:
                continue
        hist[cb + ncand] = c
        ncand += 1

    soloist_turn = to_move == soloist
    best = -1000 if soloist_turn else 1000
    best_move = -1
    orig_alpha = alpha
    orig_beta = beta

    for rank in range(ncand):
        # selection order: tt move, then history score, then static order
        bi = rank
        bscore = np.int64(-1 << 60)
        for j in range(rank, ncand):
            c = hist[cb + j]
            if c == tt_move:
                score = np.int64(1 << 60)
            else:
                score = hist[to_move * 32 + c] * 64 - ORDER_POS[mode, c]
            if score > bscore:
                bscore = score
                bi = j
        c = hist[cb + bi]
        hist[cb + bi] = hist[cb + rank]
        hist[cb + rank] = c

        n0, n1, n2 = h0, h1, h2
        if to_move == 0:
            n0 &= ~(1 << c)
        elif to_move == 1:
            n1 &= ~(1 << c)
        else:
            n2 &= ~(1 << c)

        if ntrick == 2:
            widx = _trick_winner_idx(mode, t0, t1, c)
            winner = NEXT_SEAT[leader + widx - 1] if widx > 0 else leader
            tpts = PTS[t0] + PTS[t1] + PTS[c]
            if mode == 5:
                if winner == soloist:
                    value = 0
                else:
                    value = _search(
                        n0, n1, n2, soloist, winner, -1, -1, 0, mode, 0,
                        depth - 1, alpha, beta, use_ab, use_equiv, use_tt,
                        tka, tkb, tlo, thi, tmv, hist,
                    )
            else:
                gain = tpts if winner == soloist else 0
                value = gain + _search(
                    n0, n1, n2, soloist, winner, -1, -1, 0, mode, rem - tpts,
                    depth - 1, alpha - gain, beta - gain,
                    use_ab, use_equiv, use_tt,
                    tka, tkb, tlo, thi, tmv, hist,
                )
        elif ntrick == 1:
            value = _search(
                n0, n1, n2, soloist, leader, t0, c, 2, mode, rem,
                depth - 1, alpha, beta, use_ab, use_equiv, use_tt,
                tka, tkb, tlo, thi, tmv, hist,
            )
        else:
            value = _search(
                n0, n1, n2, soloist, leader, c, -1, 1, mode, rem,
                depth - 1, alpha, beta, use_ab, use_equiv, use_tt,
                tka, tkb, tlo, thi, tmv, hist,
            )

        if soloist_turn:
            if value > best:
                best = value
                best_move = c
            if use_ab:
                if best > alpha:
                    alpha = best
                if alpha >= beta:
                    hist[to_move * 32 + c] += depth * depth
                    break
        else:
            if value < best:
                best = value
                best_move = c
            if use_ab:
                if best < beta:
                    beta = best
                if alpha >= beta:
                    hist[to_move * 32 + c] += depth * depth
                    break

    if tt_here and tt_slot >= 0:
        same = tka[tt_slot] == key_a and tkb[tt_slot] == key_b
        lo = tlo[tt_slot] if same else np.int16(0)
        hi = thi[tt_slot] if same else HI_INIT
        b16 = np.int16(best)
        if not use_ab:
            lo = b16
            hi = b16
        elif best >= orig_beta:  # fail high: lower bound
            if b16 > lo:
                lo = b16
        elif best <= orig_alpha:  # fail low: upper bound
            if b16 < hi:
                hi = b16
        else:
            lo = b16
            hi = b16
        tka[tt_slot] = key_a
        tkb[tt_slot] = key_b
        tlo[tt_slot] = lo
        thi[tt_slot] = hi
        tmv[tt_slot] = best_move

    return best


@njit
def _playout_guess(h0, h1, h2, soloist, leader, t0, t1, ntrick, mode):
    """Static-order playout; seeds the zero-window probing with a value
    in the right neighbourhood (modes 0..4 only)."""
    pts = 0
    while h0 | h1 | h2 != 0:
        to_move = (leader + ntrick) % 3
        hand = _hand_of(h0, h1, h2, to_move)
        if ntrick == 0:
            legal = hand
        else:
            follow = hand & CLASS_MASK[mode, EFF[mode, t0]]
            legal = follow if follow != 0 else hand
        c = -1
        for oi in range(32):
            m = MOVE_ORDER[mode, oi]
            if (legal >> m) & 1:
                c = m
                break
        if to_move == 0:
            h0 &= ~(1 << c)
        elif to_move == 1:
            h1 &= ~(1 << c)
        else:
            h2 &= ~(1 << c)
        if ntrick == 0:
            t0 = c
            ntrick = 1
        elif ntrick == 1:
            t1 = c
            ntrick = 2
        else:
            widx = _trick_winner_idx(mode, t0, t1, c)
            leader = (leader + widx) % 3
            if leader == soloist:
                pts += PTS[t0] + PTS[t1] + PTS[c]
            ntrick = 0
    return pts


@njit
def _count_depth(h0, h1, h2):
    n = 0
    m = h0 | h1 | h2
    while m:
        m &= m - 1
        n += 1
    return n


@njit
def _exact_value(
    h0, h1, h2, soloist, leader, t0, t1, ntrick, mode, rem, guess,
    use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
):
    """Exact minimax value via zero-window probes converging on the guess."""
    depth = _count_depth(h0, h1, h2) + ntrick
    if mode == 5:
        r = _search(
            h0, h1, h2, soloist, leader, t0, t1, ntrick, mode, 0, depth,
            0, 1, True, use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
        )
        return 1 if r >= 1 else 0
    lower = 0
    upper = rem
    g = guess
    if g < lower:
        g = lower
    if g > upper:
        g = upper
    probes = 0
    while lower < upper:
        if probes >= 6:
            # MTD stepping has stalled: bisect the remaining interval for
            # a bounded total probe count
            g = (lower + upper + 1) // 2
        beta = g if g > lower else lower + 1
        if beta > upper:
            beta = upper
        r = _search(
            h0, h1, h2, soloist, leader, t0, t1, ntrick, mode, rem, depth,
            beta - 1, beta, True, use_equiv, use_tt,
            tka, tkb, tlo, thi, tmv, hist,
        )
        probes += 1
        # MTD(f): the fail-soft value is the next probe target, so repeated
        # probes walk toward the true value instead of bisecting past it
        if r >= beta:
            lower = r
        else:
            upper = r
        g = r
    return lower


@njit
def _exact_value_after_move(
    h0, h1, h2, soloist, leader, t0, t1, ntrick, mode, rem, move, guess,
    use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
):
    to_move = (leader + ntrick) % 3
    n0, n1, n2 = h0, h1, h2
    if to_move == 0:
        n0 &= ~(1 << move)
    elif to_move == 1:
        n1 &= ~(1 << move)
    else:
        n2 &= ~(1 << move)
    if ntrick == 2:
        widx = _trick_winner_idx(mode, t0, t1, move)
        winner = (leader + widx) % 3
        tpts = PTS[t0] + PTS[t1] + PTS[move]
        if mode == 5:
            if winner == soloist:
                return 0
            return _exact_value(
                n0, n1, n2, soloist, winner, -1, -1, 0, mode, 0, 0,
                use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
            )
        gain = tpts if winner == soloist else 0
        return gain + _exact_value(
            n0, n1, n2, soloist, winner, -1, -1, 0, mode, rem - tpts,
            guess - gain, use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
        )
    if ntrick == 1:
        return _exact_value(
            n0, n1, n2, soloist, leader, t0, move, 2, mode, rem, guess,
            use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
        )
    return _exact_value(
        n0, n1, n2, soloist, leader, move, -1, 1, mode, rem, guess,
        use_equiv, use_tt, tka, tkb, tlo, thi, tmv, hist,
    )


@njit
def _minimax_plain(h0, h1, h2, soloist, leader, t0, t1, ntrick, mode):
    """Reference search: no pruning, no tables, no reductions."""
    if h0 == 0 and h1 == 0 and h2 == 0:
        return 1 if mode == 5 else 0
    to_move = (leader + ntrick) % 3
    hand = _hand_of(h0, h1, h2, to_move)
    if ntrick == 0:
        legal = hand
    else:
        follow = hand & CLASS_MASK[mode, EFF[mode, t0]]
        legal = follow if follow != 0 else hand

    soloist_turn = to_move == soloist
    best = -1000 if soloist_turn else 1000
    for c in range(32):
        if (legal >> c) & 1 == 0:
            continue
        n0, n1, n2 = h0, h1, h2
        if to_move == 0:
            n0 &= ~(1 << c)
        elif to_move == 1:
            n1 &= ~(1 << c)
        else:
            n2 &= ~(1 << c)
        if ntrick == 2:
            widx = _trick_winner_idx(mode, t0, t1, c)
            winner = NEXT_SEAT[leader + widx - 1] if widx > 0 else leader
            tpts = PTS[t0] + PTS[t1] + PTS[c]
            if mode == 5:
                if winner == soloist:
                    value = 0
                else:
                    value = _minimax_plain(n0, n1, n2, soloist, winner, -1, -1, 0, mode)
            else:
                gain = tpts if winner == soloist else 0
                value = gain + _minimax_plain(
                    n0, n1, n2, soloist, winner, -1, -1, 0, mode
                )
        elif ntrick == 1:
            value = _minimax_plain(n0, n1, n2, soloist, leader, t0, c, 2, mode)
        else:
            value = _minimax_plain(n0, n1, n2, soloist, leader, c, -1, 1, mode)
        if soloist_turn:
            if value > best:
                best = value
        else:
            if value < best:
                best = value
    return best


def _new_tt(bits=TT_BITS_DEFAULT):
    size = 1 << bits
    return (
        np.zeros(size, dtype=np.uint64),
        np.zeros(size, dtype=np.uint64),
        np.zeros(size, dtype=np.int16),  # lower bounds
        np.full(size, HI_INIT, dtype=np.int16),  # upper bounds
        np.full(size, -1, dtype=np.int16),  # best moves
        np.zeros(464, dtype=np.int64),  # per-seat history + move buffers
    )


@njit
def _rem_points(h0, h1, h2, t0, t1, ntrick):
    rem = 0
    for c in range(32):
        if ((h0 | h1 | h2) >> c) & 1:
            rem += PTS[c]
    if ntrick >= 1:
        rem += PTS[t0]
    if ntrick >= 2:
        rem += PTS[t1]
    return rem


@njit(parallel=True)
def batch_move_values(hands, soloist, leader, t0, t1, ntrick, mode, moves,
                      tka2, tkb2, tlo2, thi2, tmv2, hist2):
    """(n_deals, n_moves) exact values, parallel across worker slices.

    Entries depend only on (remaining hands, leader) for a fixed mode and
    soloist, so each worker keeps one persistent TT across its deals:
    shared endgame positions between sampled deals hit the same entries.
    The per-worker tables are caller-allocated (first axis = worker) so
    they can also persist across calls within one (mode, soloist) context.
    """
    n = hands.shape[0]
    m = moves.shape[0]
    out = np.zeros((n, m), dtype=np.int64)
    nw = tka2.shape[0]
    for t in prange(nw):
        tka = tka2[t]
        tkb = tkb2[t]
        tlo = tlo2[t]
        thi = thi2[t]
        tmv = tmv2[t]
        hist = hist2[t]
        for i in range(t, n, nw):
            h0, h1, h2 = hands[i, 0], hands[i, 1], hands[i, 2]
            rem = _rem_points(h0, h1, h2, t0, t1, ntrick)
            guess = _playout_guess(h0, h1, h2, soloist, leader, t0, t1, ntrick, mode)
            for j in range(m):
                v = _exact_value_after_move(
                    h0, h1, h2, soloist, leader, t0, t1, ntrick, mode, rem,
                    moves[j], guess, True, True, tka, tkb, tlo, thi, tmv, hist,
                )
                out[i, j] = v
                guess = v
    return out
