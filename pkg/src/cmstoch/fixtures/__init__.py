"""Reference games shipped with the package.

``example9``   two states, s2 absorbing; every discounted game is completely
               mixed but the undiscounted game is not.
``example14``  two states with symmetric stage games; completely mixed in
               every sense.
``example15``  three states, s2 and s3 absorbing; nonzero discounted value at
               s1 although the undiscounted value there is zero.
``lemma2``     a symmetric matrix ``A`` and column shift ``b`` for which ``A``
               is completely mixed but ``A + b`` is not.
"""

import json
from importlib import resources

from ..model import parse_game, parse_matrix, parse_rational

GAME_FIXTURES = ("example9", "example14", "example15")
ALL_FIXTURES = ("lemma2",) + GAME_FIXTURES


def fixture_text(name):
    if name not in ALL_FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(ALL_FIXTURES)}")
    return resources.files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name):
    """A :class:`StochasticGame` for game fixtures, ``(A, b)`` for ``lemma2``."""
    text = fixture_text(name)
    if name == "lemma2":
        data = json.loads(text)
        return parse_matrix(data["A"]), tuple(parse_rational(x) for x in data["b"])
    return parse_game(text)
