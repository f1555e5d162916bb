"""Deterministic learner-versus-adversary games over exact integer languages.

The package has three layers: an exact algebra of eventually periodic
integer sets (``algebra``, ``setspec``), language collections and labeled
samples (``families``), and the game layer (``learners``, ``adversaries``,
``arena``, ``scenario``) that turns limit-behaviour claims into finite,
trace-checkable experiments.
"""

from .algebra import (
    Cardinality,
    PeriodicSet,
    all_integers,
    even_nonnegatives,
    naturals,
    negative_integers,
    odd_positives,
    q_set,
    universe_elem,
    universe_index,
    y_set,
)
from .arena import GameKind, ScenarioSpec, Trace, Verdict, run_game, score_step
from .families import (
    LabeledExample,
    LanguageCollection,
    RevealedSet,
    consistent_indices,
    diagonal_trap_collections,
    identification_trap_collections,
    is_consistent_harm,
    is_consistent_true,
)
from .learners import LearnerOutput
from .setspec import format_set, parse

__all__ = [
    "Cardinality",
    "GameKind",
    "LabeledExample",
    "LanguageCollection",
    "LearnerOutput",
    "PeriodicSet",
    "RevealedSet",
    "ScenarioSpec",
    "Trace",
    "Verdict",
    "all_integers",
    "consistent_indices",
    "diagonal_trap_collections",
    "even_nonnegatives",
    "format_set",
    "identification_trap_collections",
    "is_consistent_harm",
    "is_consistent_true",
    "naturals",
    "negative_integers",
    "odd_positives",
    "parse",
    "q_set",
    "run_game",
    "score_step",
    "universe_elem",
    "universe_index",
    "y_set",
]
