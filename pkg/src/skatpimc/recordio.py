"""Line-oriented text game records.

One record is a header plus an ordered move list and an optional outcome
line (prefix records carry no outcome):

    deal 01230123...          32 chars: location of each card index
                              (0-2 = hand of that seat, 3 = skat)
    soloist 1
    decl suit-C               suit-D/H/S/C, grand, or null
    bids 18 0 48              per-seat max bid, 0 = passed
    skat0 7D JH               the pre-discard skat the soloist picked up
    move 0 AH                 seat, card -- in play order
    ...
    outcome won=1 points=82 solo_tricks=7 def_tricks=3

Parsing validates the 10/10/10/2 partition and replays every move
through the rules; the outcome line must match the replay.  Files hold
multiple records separated by blank lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .cards import card_name, format_cards, parse_card, parse_cards, popcount
from .rules import GameDecl, GameKind, GameOutcome
from .selfplay import Setup
from .state import Deal, GameState, IllegalMoveError

SUIT_CHARS = "DHSC"


class RecordError(ValueError):
    """Malformed or illegal game record; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class GameRecord:
    """One game (or prefix): pre-cardplay header plus the move list."""

    deal: Deal
    soloist: int
    decl: GameDecl
    bids: tuple[int, int, int]
    original_skat: int
    moves: tuple[tuple[int, int], ...]  # (seat, card) in play order
    outcome: GameOutcome | None = None
    final_points: int | None = None  # soloist card points incl. skat
    solo_tricks: int | None = None
    def_tricks: int | None = None

    def setup(self) -> Setup:
        return Setup(
            deal=self.deal,
            decl=self.decl,
            soloist=self.soloist,
            bids=self.bids,
            original_skat=self.original_skat,
        )

    def replay(self, n_moves: int | None = None) -> GameState:
        state = GameState(self.deal, self.decl, self.soloist)
        moves = self.moves if n_moves is None else self.moves[:n_moves]
        for _, card in moves:
            state.play(card)
        return state


def _parse_decl(token: str, line: int) -> GameDecl:
    if token == "grand":
        return GameDecl(GameKind.GRAND)
    if token == "null":
        return GameDecl(GameKind.NULL)
    if token.startswith("suit-") and len(token) == 6 and token[5] in SUIT_CHARS:
        return GameDecl(GameKind.SUIT, SUIT_CHARS.index(token[5]))
    raise RecordError(f"bad declaration {token!r}", line)


def serialize_record(record: GameRecord) -> str:
    lines = [
        "deal " + "".join(str(loc) for loc in record.deal.location_vector()),
        f"soloist {record.soloist}",
        f"decl {record.decl}",
        "bids " + " ".join(str(b) for b in record.bids),
        "skat0 " + format_cards(record.original_skat),
    ]
    for seat, card in record.moves:
        lines.append(f"move {seat} {card_name(card)}")
    if record.outcome is not None:
        lines.append(
            f"outcome won={int(record.outcome.won)} "
            f"points={record.final_points} "
            f"solo_tricks={record.solo_tricks} "
            f"def_tricks={record.def_tricks}"
        )
    return "\n".join(lines) + "\n"


def parse_record(text: str, first_line: int = 1) -> GameRecord:
    fields: dict[str, tuple[str, int]] = {}
    moves: list[tuple[int, int, int]] = []  # (seat, card, line)
    outcome_raw: tuple[str, int] | None = None
    for offset, raw in enumerate(text.strip().splitlines()):
        line_no = first_line + offset
        parts = raw.split(None, 1)
        if not parts:
            continue
        key, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if key == "move":
            try:
                seat_s, card_s = rest.split()
                moves.append((int(seat_s), parse_card(card_s), line_no))
            except (ValueError, KeyError):
                raise RecordError(f"bad move {rest!r}", line_no) from None
        elif key == "outcome":
            outcome_raw = (rest, line_no)
        elif key in ("deal", "soloist", "decl", "bids", "skat0"):
            fields[key] = (rest, line_no)
        else:
            raise RecordError(f"unknown field {key!r}", line_no)

    for required in ("deal", "soloist", "decl", "bids", "skat0"):
        if required not in fields:
            raise RecordError(f"missing {required!r} field", first_line)

    deal_s, deal_line = fields["deal"]
    if len(deal_s) != 32 or any(ch not in "0123" for ch in deal_s):
        raise RecordError("deal must be 32 location digits 0-3", deal_line)
    try:
        deal = Deal.from_locations([int(ch) for ch in deal_s])
    except ValueError as e:
        raise RecordError(str(e), deal_line) from None
    if any(popcount(h) != 10 for h in deal.hands) or popcount(deal.skat) != 2:
        raise RecordError("deal must place 10 cards per hand and 2 in the skat",
                          deal_line)

    soloist_s, sol_line = fields["soloist"]
    if soloist_s not in ("0", "1", "2"):
        raise RecordError(f"bad soloist seat {soloist_s!r}", sol_line)
    soloist = int(soloist_s)

    decl = _parse_decl(*fields["decl"])

    bids_s, bids_line = fields["bids"]
    try:
        bids = tuple(int(b) for b in bids_s.split())
    except ValueError:
        bids = ()
    if len(bids) != 3 or any(b < 0 for b in bids):
        raise RecordError(f"bad bids {bids_s!r}", bids_line)

    skat_s, skat_line = fields["skat0"]
    try:
        original_skat = parse_cards(skat_s)
    except (ValueError, KeyError):
        raise RecordError(f"bad skat cards {skat_s!r}", skat_line) from None
    if popcount(original_skat) != 2:
        raise RecordError("skat0 must name exactly two cards", skat_line)

    # replay validation
    state = GameState(deal, decl, soloist)
    for idx, (seat, card, line_no) in enumerate(moves):
        if seat != state.to_move:
            raise RecordError(
                f"move {idx}: seat {seat} played out of turn "
                f"(seat {state.to_move} is to move)", line_no)
        try:
            state.play(card)
        except IllegalMoveError as e:
            raise RecordError(f"move {idx}: {e}", line_no) from None

    outcome = final_points = solo_tricks = def_tricks = None
    if outcome_raw is not None:
        rest, line_no = outcome_raw
        try:
            kv = dict(item.split("=") for item in rest.split())
            won = bool(int(kv["won"]))
            final_points = int(kv["points"])
            solo_tricks = int(kv["solo_tricks"])
            def_tricks = int(kv["def_tricks"])
        except (ValueError, KeyError):
            raise RecordError(f"bad outcome line {rest!r}", line_no) from None
        if not state.is_over:
            raise RecordError("outcome present but the game is unfinished",
                              line_no)
        replayed = state.outcome()
        if (
            won != replayed.won
            or final_points != state.final_soloist_points()
            or solo_tricks != state.soloist_tricks
            or def_tricks != state.defender_tricks
        ):
            raise RecordError(
                f"outcome does not match replay "
                f"(replay: won={int(replayed.won)} "
                f"points={state.final_soloist_points()} "
                f"solo_tricks={state.soloist_tricks} "
                f"def_tricks={state.defender_tricks})", line_no)
        outcome = replayed

    return GameRecord(
        deal=deal,
        soloist=soloist,
        decl=decl,
        bids=tuple(bids),
        original_skat=original_skat,
        moves=tuple((s, c) for s, c, _ in moves),
        outcome=outcome,
        final_points=final_points,
        solo_tricks=solo_tricks,
        def_tricks=def_tricks,
    )


def record_from_game(setup: Setup, state: GameState) -> GameRecord:
    """Snapshot a (possibly unfinished) played game as a record."""
    finished = state.is_over
    return GameRecord(
        deal=setup.deal,
        soloist=setup.soloist,
        decl=setup.decl,
        bids=setup.bids,
        original_skat=setup.original_skat,
        moves=tuple(state.moves()),
        outcome=state.outcome() if finished else None,
        final_points=state.final_soloist_points() if finished else None,
        solo_tricks=state.soloist_tricks if finished else None,
        def_tricks=state.defender_tricks if finished else None,
    )


def parse_records(text: str) -> list[GameRecord]:
    """All records in a blank-line separated stream."""
    out = []
    block: list[str] = []
    start = 1
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            if not block:
                start = i
            block.append(line)
        elif block:
            out.append(parse_record("\n".join(block), first_line=start))
            block = []
    if block:
        out.append(parse_record("\n".join(block), first_line=start))
    return out


def serialize_records(records: list[GameRecord]) -> str:
    return "\n".join(serialize_record(r) for r in records)


def read_records(path: str | Path) -> list[GameRecord]:
    return parse_records(Path(path).read_text())


def write_records(records: list[GameRecord], path: str | Path) -> None:
    Path(path).write_text(serialize_records(records))
