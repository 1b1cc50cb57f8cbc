"""Game data model, JSON game files and the elementary payoff algebra.

States and actions are 0-indexed in Python; the JSON file format is
1-indexed (``"s1"``, ``"1,2"``) so files read like the usual ``s_1, s_2``
notation.  Every number is a :class:`fractions.Fraction`.
"""

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ControllerError, GameSyntaxError, GameValidationError


class Controller(enum.Enum):
    PLAYER_ONE = "PlayerOne"
    PLAYER_TWO = "PlayerTwo"
    BOTH = "Both"
    NONE = "None"


def parse_rational(value):
    """Turn ``"3/4"``, ``"-2"``, ``"0.5"`` or an int into a Fraction.

    Floats are refused: they would smuggle rounding into exact data.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"not an exact rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_matrix(data):
    """Parse a JSON-style nested list of rationals into a tuple-of-tuples matrix."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a non-empty list of rows")
    width = len(data[0])
    if width == 0 or any(len(r) != width for r in data):
        raise ValueError("matrix rows must be non-empty and of equal length")
    return tuple(tuple(parse_rational(x) for x in row) for row in data)


def _detect(transition):
    p1_free = p2_free = True
    for rows in transition:
        first_row = rows[0]
        for i, row in enumerate(rows):
            if row != first_row:
                p1_free = False  # destination depends on player 1's row
            if any(q != row[0] for q in row):
                p2_free = False
    if p1_free and p2_free:
        return Controller.BOTH
    if p1_free:
        return Controller.PLAYER_TWO
    if p2_free:
        return Controller.PLAYER_ONE
    return Controller.NONE


@dataclass(frozen=True)
class StochasticGame:
    """A finite two-person zero-sum stochastic game.

    ``payoff[s][i][j]`` is the stage reward to player 1 (the maximizer) and
    ``transition[s][i][j]`` the distribution of the next state.  The
    ``controller`` field is derived from the transitions; a game whose
    transitions ignore both players counts as player-2 controlled.
    """

    payoff: tuple
    transition: tuple
    controller: Controller = field(init=False, compare=False)

    def __post_init__(self):
        payoff = tuple(tuple(tuple(Fraction(x) for x in row) for row in R) for R in self.payoff)
        transition = tuple(
            tuple(tuple(tuple(Fraction(p) for p in vec) for vec in row) for row in T)
            for T in self.transition
        )
        object.__setattr__(self, "payoff", payoff)
        object.__setattr__(self, "transition", transition)
        _validate(payoff, transition)
        kind = _detect(transition)
        if kind is Controller.BOTH:
            kind = Controller.PLAYER_TWO
        object.__setattr__(self, "controller", kind)

    @property
    def n_states(self):
        return len(self.payoff)

    @property
    def actions_p1(self):
        return tuple(len(R) for R in self.payoff)

    @property
    def actions_p2(self):
        return tuple(len(R[0]) for R in self.payoff)

    @property
    def player_two_controlled(self):
        return self.controller is Controller.PLAYER_TWO

    def q(self, s, j):
        """Next-state distribution after player 2 plays ``j`` in ``s`` (player-2 control)."""
        return self.transition[s][0][j]

    @classmethod
    def single_controller(cls, payoff, q):
        """Build a player-2 controlled game from ``q[s][j]`` next-state vectors."""
        transition = [[list(q[s]) for _ in R] for s, R in enumerate(payoff)]
        return cls(payoff, transition)


def _validate(payoff, transition):
    K = len(payoff)
    if K == 0:
        raise GameValidationError("a game needs at least one state")
    if len(transition) != K:
        raise GameValidationError(f"transitions given for {len(transition)} states, expected {K}")
    for s, R in enumerate(payoff):
        name = f"s{s + 1}"
        if not R or not R[0]:
            raise GameValidationError(f"{name}: payoff matrix is empty")
        m2 = len(R[0])
        if any(len(row) != m2 for row in R):
            raise GameValidationError(f"{name}: payoff matrix is ragged")
        T = transition[s]
        if len(T) != len(R) or any(len(row) != m2 for row in T):
            raise GameValidationError(f"{name}: transition table shape does not match payoff shape")
        for i, row in enumerate(T):
            for j, vec in enumerate(row):
                where = f"{name}, action pair ({i + 1},{j + 1})"
                if len(vec) != K:
                    raise GameValidationError(f"{where}: transition vector has length {len(vec)}, expected {K}")
                if any(p < 0 for p in vec):
                    raise GameValidationError(f"{where}: negative transition probability")
                total = sum(vec, Fraction(0))
                if total != 1:
                    raise GameValidationError(f"{where}: transition row sums to {format_rational(total)}, not 1")


def detect_controller(game):
    """Which player (if any) alone determines the transition law.

    Unlike ``game.controller`` this distinguishes ``Controller.BOTH``, the
    degenerate case where the next state depends on the current state only.
    """
    return _detect(game.transition)


def require_player_two(game):
    if not game.player_two_controlled:
        raise ControllerError(
            f"operation needs a player-2 controlled game, got controller={game.controller.value}")


# --- strategies -----------------------------------------------------------

def _action_counts(game, player):
    if player == 1:
        return game.actions_p1
    if player == 2:
        return game.actions_p2
    raise ValueError("player must be 1 or 2")


def make_strategy(game, probs, player):
    """Validate and freeze a stationary strategy for ``player`` (1 or 2)."""
    counts = _action_counts(game, player)
    if len(probs) != len(counts):
        raise ValueError(f"strategy has {len(probs)} states, game has {len(counts)}")
    out = []
    for s, (vec, m) in enumerate(zip(probs, counts)):
        vec = tuple(parse_rational(p) for p in vec)
        if len(vec) != m:
            raise ValueError(f"s{s + 1}: strategy has {len(vec)} actions, expected {m}")
        if any(p < 0 for p in vec) or sum(vec) != 1:
            raise ValueError(f"s{s + 1}: not a probability vector")
        out.append(vec)
    return tuple(out)


def pure_strategy(game, player, actions):
    counts = _action_counts(game, player)
    return tuple(tuple(Fraction(int(k == a)) for k in range(m)) for a, m in zip(actions, counts))


def uniform_strategy(game, player):
    return tuple((Fraction(1, m),) * m for m in _action_counts(game, player))


def is_completely_mixed_strategy(strategy):
    return all(p > 0 for vec in strategy for p in vec)


# --- payoff algebra -------------------------------------------------------

def transition_matrix(game, g):
    """``Q(g)``: the K x K chain induced by player 2's stationary strategy."""
    require_player_two(game)
    K = game.n_states
    Q = []
    for s in range(K):
        row = [Fraction(0)] * K
        for j, w in enumerate(g[s]):
            if w:
                for t, p in enumerate(game.q(s, j)):
                    row[t] += w * p
        Q.append(row)
    return Q


def stage_reward(R, x, y):
    return sum((x[i] * R[i][j] * y[j] for i in range(len(x)) if x[i]
                for j in range(len(y)) if y[j]), Fraction(0))


def reward_vector(game, f, g):
    """``r(f, g)``: per-state expected stage reward ``f(s)^T R(s) g(s)``."""
    if len(f) != game.n_states or len(g) != game.n_states:
        raise ValueError("strategy length does not match the number of states")
    out = []
    for s, R in enumerate(game.payoff):
        if len(f[s]) != len(R) or len(g[s]) != len(R[0]):
            raise ValueError(f"s{s + 1}: strategy dimension does not match payoff matrix")
        out.append(stage_reward(R, f[s], g[s]))
    return tuple(out)


# --- game surgery ---------------------------------------------------------

def delete_action(game, player, state, action):
    """Copy of ``game`` with one pure action removed in one state."""
    payoff = [list(map(list, R)) for R in game.payoff]
    transition = [list(map(list, T)) for T in game.transition]
    if player == 1:
        if len(payoff[state]) < 2:
            raise ValueError("cannot delete a player's only action")
        del payoff[state][action]
        del transition[state][action]
    else:
        if len(payoff[state][0]) < 2:
            raise ValueError("cannot delete a player's only action")
        for row in payoff[state]:
            del row[action]
        for row in transition[state]:
            del row[action]
    return StochasticGame(payoff, transition)


def insert_zero(strategy, state, action):
    """Inverse of :func:`delete_action` for a strategy of the reduced game."""
    out = list(strategy)
    vec = list(out[state])
    vec.insert(action, Fraction(0))
    out[state] = tuple(vec)
    return tuple(out)


def swap_roles(game):
    """The same game seen from the other side: players swap, payoffs negate.

    Turns a player-1 controlled game into a player-2 controlled one; values
    of the swapped game are the negatives of the original's.
    """
    payoff = [[[-R[i][j] for i in range(len(R))] for j in range(len(R[0]))] for R in game.payoff]
    transition = [[[T[i][j] for i in range(len(T))] for j in range(len(T[0]))] for T in game.transition]
    return StochasticGame(payoff, transition)


# --- JSON game files ------------------------------------------------------

def parse_game(text):
    """Parse a game file (bytes or str) into a validated :class:`StochasticGame`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameSyntaxError(f"game file is not UTF-8: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    return game_from_dict(data)


def game_from_dict(data):
    if not isinstance(data, dict):
        raise GameValidationError("game file must hold a JSON object")
    for key in ("states", "actions_p1", "actions_p2", "payoff", "transitions"):
        if key not in data:
            raise GameValidationError(f"missing key {key!r}")
    K = data["states"]
    if not isinstance(K, int) or isinstance(K, bool) or K < 1:
        raise GameValidationError("'states' must be a positive integer")
    m1, m2 = data["actions_p1"], data["actions_p2"]
    for name, counts in (("actions_p1", m1), ("actions_p2", m2)):
        if (not isinstance(counts, list) or len(counts) != K
                or not all(isinstance(m, int) and not isinstance(m, bool) and m >= 1 for m in counts)):
            raise GameValidationError(f"'{name}' must list {K} positive integers")
    payoff_in, trans_in = data["payoff"], data["transitions"]
    if not isinstance(payoff_in, dict) or not isinstance(trans_in, dict):
        raise GameValidationError("'payoff' and 'transitions' must be objects keyed by state")
    names = [f"s{s + 1}" for s in range(K)]
    for label, obj in (("payoff", payoff_in), ("transitions", trans_in)):
        extra = set(obj) - set(names)
        if extra:
            raise GameValidationError(f"'{label}' has unknown states {sorted(extra)}")

    payoff, transition = [], []
    for s, name in enumerate(names):
        if name not in payoff_in:
            raise GameValidationError(f"payoff for {name} missing")
        try:
            R = parse_matrix(payoff_in[name])
        except ValueError as exc:
            raise GameValidationError(f"payoff for {name}: {exc}") from exc
        if len(R) != m1[s] or len(R[0]) != m2[s]:
            raise GameValidationError(
                f"payoff for {name} is {len(R)}x{len(R[0])}, expected {m1[s]}x{m2[s]}")
        payoff.append(R)

        table = trans_in.get(name)
        if not isinstance(table, dict):
            raise GameValidationError(f"transitions for {name} missing")
        expected = {f"{i + 1},{j + 1}" for i in range(m1[s]) for j in range(m2[s])}
        keys = {k.replace(" ", "") for k in table}
        if keys != expected:
            missing = sorted(expected - keys)
            unknown = sorted(keys - expected)
            raise GameValidationError(
                f"transitions for {name}: missing action pairs {missing}, unknown {unknown}")
        table = {k.replace(" ", ""): v for k, v in table.items()}
        rows = []
        for i in range(m1[s]):
            row = []
            for j in range(m2[s]):
                vec = table[f"{i + 1},{j + 1}"]
                if not isinstance(vec, list):
                    raise GameValidationError(f"transitions for {name}, ({i + 1},{j + 1}) must be a list")
                try:
                    row.append(tuple(parse_rational(p) for p in vec))
                except ValueError as exc:
                    raise GameValidationError(f"transitions for {name}, ({i + 1},{j + 1}): {exc}") from exc
            rows.append(row)
        transition.append(rows)
    return StochasticGame(payoff, transition)


def game_to_dict(game):
    names = [f"s{s + 1}" for s in range(game.n_states)]
    return {
        "states": game.n_states,
        "actions_p1": list(game.actions_p1),
        "actions_p2": list(game.actions_p2),
        "payoff": {name: [[format_rational(x) for x in row] for row in R]
                   for name, R in zip(names, game.payoff)},
        "transitions": {
            name: {f"{i + 1},{j + 1}": [format_rational(p) for p in vec]
                   for i, row in enumerate(T) for j, vec in enumerate(row)}
            for name, T in zip(names, game.transition)
        },
    }


def serialize_game(game):
    """Canonical JSON text for ``game``; ``parse_game`` inverts it.

    One payoff matrix and one transition table per line keeps the files
    diffable and readable for hand-sized games.
    """
    d = game_to_dict(game)

    def block(obj):
        items = [f'    {json.dumps(k)}: {json.dumps(v)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n  }"

    return (
        "{\n"
        f'  "states": {d["states"]},\n'
        f'  "actions_p1": {json.dumps(d["actions_p1"])},\n'
        f'  "actions_p2": {json.dumps(d["actions_p2"])},\n'
        f'  "payoff": {block(d["payoff"])},\n'
        f'  "transitions": {block(d["transitions"])}\n'
        "}\n"
    )


def load_game(path):
    with open(path, "rb") as fh:
        return parse_game(fh.read())
