"""Strategy alphabet for the two-stage commitment game.

A strategy is an ``XYZ`` triple: ``X`` is the pre-game commitment disposition
(``A`` accept, ``N`` not accept), ``Y`` the in-game action played when a
commitment has formed and ``Z`` the action played otherwise.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass


class Action(enum.IntEnum):
    COOPERATE = 0
    DEFECT = 1
    EXIT = 2

    @property
    def letter(self) -> str:
        return _ACTION_LETTERS[self]


class Disposition(enum.IntEnum):
    ACCEPT = 0
    NOT_ACCEPT = 1

    @property
    def letter(self) -> str:
        return "A" if self is Disposition.ACCEPT else "N"


class Variant(enum.Enum):
    OPD = "opd"
    PD = "pd"


_ACTION_LETTERS = {Action.COOPERATE: "C", Action.DEFECT: "D", Action.EXIT: "L"}
_LETTER_ACTIONS = {v: k for k, v in _ACTION_LETTERS.items()}
_LETTER_DISPOSITIONS = {"A": Disposition.ACCEPT, "N": Disposition.NOT_ACCEPT}


class StrategyParseError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Strategy:
    disposition: Disposition
    when_committed: Action
    when_uncommitted: Action

    @property
    def label(self) -> str:
        return self.disposition.letter + self.when_committed.letter + self.when_uncommitted.letter

    @property
    def accepts(self) -> bool:
        return self.disposition is Disposition.ACCEPT

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"Strategy({self.label})"


def enumerate_strategies(variant: Variant = Variant.OPD) -> list[Strategy]:
    """Strategies of ``variant`` in canonical order.

    The order (ACC, ACD, ACL, ADC, ..., NLL) is the row order of the payoff
    tables and is used for all matrix indexing and CSV columns.
    """
    actions = list(Action) if variant is Variant.OPD else [Action.COOPERATE, Action.DEFECT]
    return [
        Strategy(x, y, z)
        for x, y, z in itertools.product(list(Disposition), actions, actions)
    ]


def commitment_formed(a: Strategy, b: Strategy) -> bool:
    return a.accepts and b.accepts


def realized_action(focal: Strategy, opponent: Strategy) -> Action:
    """In-game action ``focal`` plays against ``opponent``."""
    if commitment_formed(focal, opponent):
        return focal.when_committed
    return focal.when_uncommitted


def parse_strategy(label: str) -> Strategy:
    if not isinstance(label, str) or len(label) != 3:
        raise StrategyParseError(f"invalid strategy label {label!r}: expected three letters XYZ")
    x, y, z = label
    if x not in _LETTER_DISPOSITIONS:
        raise StrategyParseError(f"invalid strategy label {label!r}: first letter must be A or N")
    if y not in _LETTER_ACTIONS or z not in _LETTER_ACTIONS:
        raise StrategyParseError(
            f"invalid strategy label {label!r}: action letters must be one of C, D, L"
        )
    return Strategy(_LETTER_DISPOSITIONS[x], _LETTER_ACTIONS[y], _LETTER_ACTIONS[z])


def format_strategy(strategy: Strategy) -> str:
    return strategy.label


def strategy_index(label: str | Strategy, variant: Variant = Variant.OPD) -> int:
    strategy = parse_strategy(label) if isinstance(label, str) else label
    strategies = enumerate_strategies(variant)
    try:
        return strategies.index(strategy)
    except ValueError:
        raise StrategyParseError(
            f"strategy {strategy.label} is not part of the {variant.value.upper()} strategy set"
        ) from None


OPD_LABELS = tuple(s.label for s in enumerate_strategies(Variant.OPD))
PD_LABELS = tuple(s.label for s in enumerate_strategies(Variant.PD))
