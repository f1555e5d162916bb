"""Labeled-stream producers: fair enumerators and adaptive adversaries.

The game protocol is: the adversary emits one labeled example, the learner
observes the grown sample and answers, then the adversary observes that
answer before choosing its next emission.  Every adversary exposes the
(true, harm) pair it is currently committed to, so a finite trace can be
scored even when the committed pair keeps moving.

All emissions are truthfully labeled against the committed pair in force at
the moment of emission; the arena asserts this every step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Protocol

from .algebra import (
    PeriodicSet,
    all_integers,
    even_nonnegatives,
    negative_integers,
    q_set,
    y_set,
)
from .families import LabeledExample, LanguageCollection, diagonal_trap_witness
from .learners import LearnerOutput


class AdversaryError(ValueError):
    """Raised for invalid adversary configuration."""


@dataclass(frozen=True)
class Emission:
    example: LabeledExample
    injected: bool = False


class Adversary(Protocol):
    def emit(self, t: int) -> Emission: ...

    def observe(self, output: LearnerOutput) -> None: ...

    def current_pair(self) -> tuple[PeriodicSet, PeriodicSet]: ...

    @property
    def phase(self) -> int: ...


class PositiveStream:
    """Enumerates one fixed language with label 1; ignores the learner."""

    def __init__(self, lang: PeriodicSet):
        if not lang.cardinality().is_infinite:
            raise AdversaryError("positive stream needs an infinite language")
        self.lang = lang
        self._iter = lang.iter_universe_order()
        self.phase = 1

    def emit(self, t: int) -> Emission:
        return Emission(LabeledExample(next(self._iter), 1))

    def observe(self, output: LearnerOutput) -> None:
        pass

    def current_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        return self.lang, PeriodicSet.empty()


class FairInterleaver:
    """Alternates the canonical enumerations of a fixed (true, harm) pair.

    Odd steps emit the next true element labeled 1, even steps the next harm
    element labeled 0, so every element of both languages appears by a step
    linear in its universe rank.
    """

    def __init__(self, true_lang: PeriodicSet, harm_lang: PeriodicSet):
        if not true_lang.cardinality().is_infinite:
            raise AdversaryError("fair interleaver needs an infinite true language")
        if not harm_lang.cardinality().is_infinite:
            raise AdversaryError("fair interleaver needs an infinite harm language")
        self.true_lang = true_lang
        self.harm_lang = harm_lang
        self._true_iter = true_lang.iter_universe_order()
        self._harm_iter = harm_lang.iter_universe_order()
        self.phase = 1

    def emit(self, t: int) -> Emission:
        if t % 2 == 1:
            return Emission(LabeledExample(next(self._true_iter), 1))
        return Emission(LabeledExample(next(self._harm_iter), 0))

    def observe(self, output: LearnerOutput) -> None:
        pass

    def current_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        return self.true_lang, self.harm_lang


class PhasedInjectionAdversary:
    """Adaptive stream that punishes every correct safe-language guess.

    Runs over the identification-trap collections.  The master sequence
    interleaves an enumeration of I (label 1) with an enumeration of E
    (label 0); those 0-labeled evens are consistent with every harm
    candidate.  Whenever the learner guesses the safe language of the
    currently committed pair, the adversary queues the injection (-l, 0),
    which invalidates the harm hypothesis the learner just settled on, and
    moves to the next phase.  Injections alternate with master progress so
    enumeration fairness survives even a learner that triggers every step.

    Mid-phase l the committed pair is (I, Y(-(l-1))); if the learner never
    advances again, that pair stands for the rest of the game.
    """

    def __init__(self, coll_true: LanguageCollection):
        self.coll_true = coll_true
        self.phase = 1
        self._master = _interleave(
            all_integers().iter_universe_order(),
            even_nonnegatives().iter_universe_order(),
        )
        self._pending: deque[int] = deque()
        self._last_was_injection = False
        self._harm_cache: dict[int, PeriodicSet] = {}
        self._true = all_integers()
        self.injections: list[tuple[int, int]] = []  # (step, depth)
        self._step = 0

    def emit(self, t: int) -> Emission:
        self._step = t
        if self._pending and not self._last_was_injection:
            depth = self._pending.popleft()
            self._last_was_injection = True
            self.injections.append((t, depth))
            return Emission(LabeledExample(-depth, 0), injected=True)
        self._last_was_injection = False
        element, label = next(self._master)
        return Emission(LabeledExample(element, label))

    def observe(self, output: LearnerOutput) -> None:
        if not output.is_index:
            return
        guessed = self.coll_true.at(output.value)
        if guessed == q_set(self.phase):
            self._pending.append(self.phase)
            self.phase += 1

    def current_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        depth = self.phase - 1
        harm = self._harm_cache.get(depth)
        if harm is None:
            harm = y_set(depth)
            self._harm_cache[depth] = harm
        return self._true, harm

    def limit_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        """The pair the construction converges to over infinitely many phases."""
        return self._true, negative_integers() | even_nonnegatives()


def _interleave(
    true_iter: Iterator[int], harm_iter: Iterator[int]
) -> Iterator[tuple[int, int]]:
    while True:
        yield next(true_iter), 1
        yield next(harm_iter), 0


@dataclass(frozen=True)
class BoundaryRecord:
    """Snapshot taken at a diagonal phase change."""

    step: int
    new_phase: int
    skipped_true: int
    skipped_harm: int
    cursor_true: int
    cursor_harm: int


class DiagonalAdversary:
    """Diagonalizing stream over the vanishing-difference collections.

    Each phase pretends the committed pair is a proper refinement of the top
    pair (chosen so it contains everything revealed so far and still has an
    infinite difference).  Odd steps advance a filtered enumeration of the
    refinement's true side, even steps of its harm side; elements of the top
    enumerations that the filter skips are queued.  When the learner emits
    an element inside the refinement's difference, the adversary flushes the
    skipped queues, then catches the true-side master enumeration up to the
    element that contradicts the refinement, and opens the next phase.

    During flush and catch-up the committed pair is the top pair (whose
    difference is empty); during mimicry it is the refinement pair.
    """

    def __init__(self, coll_true: LanguageCollection, coll_harm: LanguageCollection):
        self.coll_true = coll_true
        self.coll_harm = coll_harm
        self._top_true = coll_true.at(1)
        self._top_harm = coll_harm.at(1)
        if not (self._top_true - self._top_harm).cardinality().is_empty:
            raise AdversaryError("top pair of the trap collections must have empty difference")
        self._master_true = self._top_true.iter_universe_order()
        self._master_harm = self._top_harm.iter_universe_order()
        self._cursor_true = 0  # master elements drawn so far
        self._cursor_harm = 0
        self._skipped_true: deque[int] = deque()
        self._skipped_harm: deque[int] = deque()
        self._emitted_true: set[int] = set()
        self._max_value = 0
        self._mode = "mimic"  # "mimic" | "flush" | "catchup"
        self.phase = 1
        self._step = 0
        self.boundaries: list[BoundaryRecord] = []
        self.detection_steps: list[int] = []
        self._choose_refinement()

    # -- phase bookkeeping ------------------------------------------------

    def _choose_refinement(self) -> None:
        i_true, i_harm, hole = diagonal_trap_witness(self._max_value)
        self._ref_true = self.coll_true.at(i_true)
        self._ref_harm = self.coll_harm.at(i_harm)
        self._hole = hole

    def _advance_phase(self) -> None:
        self.phase += 1
        self.boundaries.append(
            BoundaryRecord(
                step=self._step,
                new_phase=self.phase,
                skipped_true=len(self._skipped_true),
                skipped_harm=len(self._skipped_harm),
                cursor_true=self._cursor_true,
                cursor_harm=self._cursor_harm,
            )
        )
        self._choose_refinement()
        self._mode = "mimic"

    # -- emission ---------------------------------------------------------

    def _next_master_true(self) -> int:
        self._cursor_true += 1
        return next(self._master_true)

    def _next_master_harm(self) -> int:
        self._cursor_harm += 1
        return next(self._master_harm)

    def emit(self, t: int) -> Emission:
        self._step = t
        if self._mode == "flush" and not self._skipped_true and not self._skipped_harm:
            # Everything skipped has been replayed; catch the true-side master
            # up to the contradicting element unless it already went out.
            if self._hole in self._emitted_true:
                self._advance_phase()
            else:
                self._mode = "catchup"
        value: int
        if t % 2 == 1:
            value = self._emit_true()
            example = LabeledExample(value, 1)
        else:
            value = self._emit_harm()
            example = LabeledExample(value, 0)
        self._max_value = max(self._max_value, value)
        return Emission(example)

    def _emit_true(self) -> int:
        if self._mode == "flush" and self._skipped_true:
            value = self._skipped_true.popleft()
        elif self._mode == "mimic":
            value = self._next_master_true()
            while value not in self._ref_true:
                self._skipped_true.append(value)
                value = self._next_master_true()
        else:  # flush with an empty true queue, or catchup: raw master
            value = self._next_master_true()
            if self._mode == "catchup" and value == self._hole:
                self._emitted_true.add(value)
                self._max_value = max(self._max_value, value)
                self._advance_phase()
        self._emitted_true.add(value)
        return value

    def _emit_harm(self) -> int:
        if self._mode == "flush" and self._skipped_harm:
            return self._skipped_harm.popleft()
        if self._mode == "mimic":
            value = self._next_master_harm()
            while value not in self._ref_harm:
                self._skipped_harm.append(value)
                value = self._next_master_harm()
            return value
        return self._next_master_harm()

    # -- observation ------------------------------------------------------

    def observe(self, output: LearnerOutput) -> None:
        if self._mode != "mimic" or not output.is_generate:
            return
        word = output.value
        if word in self._ref_true and word not in self._ref_harm:
            # The learner produced a safe word for the pretended pair; stop
            # pretending and prepare the next refinement.
            self.detection_steps.append(self._step)
            self._mode = "flush"

    def current_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        if self._mode == "mimic":
            return self._ref_true, self._ref_harm
        return self._top_true, self._top_harm

    def limit_pair(self) -> tuple[PeriodicSet, PeriodicSet]:
        return self._top_true, self._top_harm
