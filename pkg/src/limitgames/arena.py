"""Game loop, per-step scoring, JSONL traces and finite-horizon verdicts.

A game binds one adversary to one learner for a fixed horizon.  Each step:
the adversary emits a labeled example, the learner observes the grown
sample and answers, the answer is scored against the adversary's currently
committed pair, and only then does the adversary observe the answer.

"In the limit" is finitized as a trailing window: a run converges when its
final ``window`` steps are all correct.  Runs are fully deterministic, so a
trace serializes to byte-stable JSONL and can be re-scored offline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

from .adversaries import Adversary
from .algebra import PeriodicSet
from .families import LabeledExample, LanguageCollection, RevealedSet
from .learners import Learner, LearnerOutput
from .setspec import format_set, parse

TRACE_SCHEMA = "limitgames.trace.v1"
VERDICT_SCHEMA = "limitgames.verdict.v1"


class GameKind(str, Enum):
    SG = "sg"
    SG_INF = "sg_inf"
    SG_RELAXED = "sg_relaxed"
    SI = "si"
    LI = "li"


class ScenarioError(ValueError):
    """Raised when a scenario fails validation before step 1."""


@lru_cache(maxsize=None)
def _difference(true_lang: PeriodicSet, harm_lang: PeriodicSet) -> PeriodicSet:
    return true_lang - harm_lang


def score_step(
    kind: GameKind,
    output: LearnerOutput,
    true_lang: PeriodicSet,
    harm_lang: PeriodicSet,
    seen: RevealedSet,
    true_coll: LanguageCollection | None = None,
) -> bool:
    """Per-step correctness under the game's success rule.

    Generation games accept an unseen element of the difference, or bottom
    exactly when the difference is empty or finite (relaxed games accept any
    word in that case instead of bottom).  Identification games compare the
    guessed index's language with the safe language (difference) or the true
    language.
    """
    if kind in (GameKind.SG, GameKind.SG_INF):
        if output.is_generate:
            w = output.value
            return w in true_lang and w not in harm_lang and not seen.contains(w)
        if output.is_bottom:
            return _difference(true_lang, harm_lang).cardinality().is_bounded
        return False
    if kind is GameKind.SG_RELAXED:
        if output.is_generate:
            w = output.value
            if _difference(true_lang, harm_lang).cardinality().is_bounded:
                return True
            return w in true_lang and w not in harm_lang and not seen.contains(w)
        return False
    if kind is GameKind.SI:
        if not output.is_index or true_coll is None:
            return False
        return true_coll.at(output.value) == _difference(true_lang, harm_lang)
    if kind is GameKind.LI:
        if not output.is_index or true_coll is None:
            return False
        return true_coll.at(output.value) == true_lang
    raise ScenarioError(f"unknown game kind {kind!r}")


@dataclass(frozen=True)
class StepRecord:
    t: int
    element: int
    label: int
    injected: bool
    output: LearnerOutput
    correct: bool
    phase: int
    # Committed pair, present on the steps where it changed; serialized as
    # set-spec strings.
    pair: tuple[PeriodicSet, PeriodicSet] | None


@dataclass(frozen=True)
class Verdict:
    converged: bool
    convergence_step: int | None
    correct_in_final_window: int
    phase_transitions: int
    target_index: int | None
    horizon: int
    window: int

    def to_json(self, scenario: str) -> str:
        payload = {
            "schema": VERDICT_SCHEMA,
            "scenario": scenario,
            "converged": self.converged,
            "convergence_step": self.convergence_step,
            "correct_in_final_window": self.correct_in_final_window,
            "phase_transitions": self.phase_transitions,
            "target_index": self.target_index,
            "horizon": self.horizon,
            "window": self.window,
        }
        return json.dumps(payload, sort_keys=True)


@dataclass
class Trace:
    scenario: str
    game: GameKind
    horizon: int
    window: int
    steps: list[StepRecord] = field(default_factory=list)

    def to_jsonl(self) -> str:
        lines = [
            json.dumps(
                {
                    "schema": TRACE_SCHEMA,
                    "scenario": self.scenario,
                    "game": self.game.value,
                    "horizon": self.horizon,
                    "window": self.window,
                },
                sort_keys=True,
            )
        ]
        for s in self.steps:
            row: dict[str, object] = {
                "t": s.t,
                "element": s.element,
                "label": s.label,
                "injected": s.injected,
                "output": s.output.kind,
                "value": s.output.value,
                "correct": s.correct,
                "phase": s.phase,
            }
            if s.pair is not None:
                row["pair"] = [format_set(s.pair[0]), format_set(s.pair[1])]
            lines.append(json.dumps(row, sort_keys=True))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "Trace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ScenarioError("empty trace file")
        head = json.loads(lines[0])
        if head.get("schema") != TRACE_SCHEMA:
            raise ScenarioError(f"unsupported trace schema: {head.get('schema')!r}")
        trace = Trace(
            scenario=head["scenario"],
            game=GameKind(head["game"]),
            horizon=head["horizon"],
            window=head["window"],
        )
        for ln in lines[1:]:
            row = json.loads(ln)
            pair = (parse(row["pair"][0]), parse(row["pair"][1])) if "pair" in row else None
            trace.steps.append(
                StepRecord(
                    t=row["t"],
                    element=row["element"],
                    label=row["label"],
                    injected=row["injected"],
                    output=LearnerOutput(row["output"], row["value"]),
                    correct=row["correct"],
                    phase=row["phase"],
                    pair=pair,  # type: ignore[arg-type]
                )
            )
        return trace


@dataclass
class ScenarioSpec:
    """Everything needed to run one deterministic game."""

    name: str
    game: GameKind
    adversary_factory: Callable[[], Adversary]
    learner_factory: Callable[[], Learner]
    horizon: int
    window: int
    true_coll: LanguageCollection | None = None
    harm_coll: LanguageCollection | None = None

    def validate(self) -> None:
        if self.horizon < 1:
            raise ScenarioError("horizon must be >= 1")
        if not 1 <= self.window < self.horizon:
            raise ScenarioError("window must satisfy 1 <= window < horizon")
        if self.game in (GameKind.SI, GameKind.LI) and self.true_coll is None:
            raise ScenarioError("identification games need a true-side collection")
        if self.game is GameKind.SG_INF:
            self._validate_infinite_differences()

    def _validate_infinite_differences(self) -> None:
        if self.true_coll is None or self.harm_coll is None:
            raise ScenarioError("sg_inf games need both collections")
        if self.true_coll.length is None or self.harm_coll.length is None:
            raise ScenarioError(
                "sg_inf games need collections with a declared finite length"
            )
        for i in range(1, self.true_coll.length + 1):
            for j in range(1, self.harm_coll.length + 1):
                diff = self.true_coll.at(i) - self.harm_coll.at(j)
                if not diff.cardinality().is_infinite:
                    raise ScenarioError(
                        f"sg_inf promise violated: difference of true index {i} "
                        f"and harm index {j} is not infinite"
                    )


@dataclass
class RunResult:
    trace: Trace
    verdict: Verdict
    learner: Learner
    adversary: Adversary


def run_game(spec: ScenarioSpec) -> RunResult:
    """Play the game to the horizon and judge the trailing window."""
    spec.validate()
    adversary = spec.adversary_factory()
    learner = spec.learner_factory()
    revealed = RevealedSet()
    trace = Trace(spec.name, spec.game, spec.horizon, spec.window)
    last_pair: tuple[PeriodicSet, PeriodicSet] | None = None
    for t in range(1, spec.horizon + 1):
        emission = adversary.emit(t)
        true_lang, harm_lang = adversary.current_pair()
        example = emission.example
        lang = true_lang if example.label == 1 else harm_lang
        if example.element not in lang:
            raise AssertionError(
                f"untruthful emission at step {t}: {example} not in committed side"
            )
        phase = adversary.phase
        revealed.add(example)
        output = learner.step(revealed, t)
        correct = score_step(
            spec.game, output, true_lang, harm_lang, revealed, spec.true_coll
        )
        adversary.observe(output)
        pair_field = None
        if last_pair != (true_lang, harm_lang):
            pair_field = (true_lang, harm_lang)
            last_pair = pair_field
        trace.steps.append(
            StepRecord(t, example.element, example.label, emission.injected,
                       output, correct, phase, pair_field)
        )
    verdict = judge(trace, adversary, spec)
    return RunResult(trace, verdict, learner, adversary)


def judge(trace: Trace, adversary: Adversary, spec: ScenarioSpec) -> Verdict:
    flags = [s.correct for s in trace.steps]
    window = spec.window
    tail = flags[-window:]
    converged = all(tail)
    convergence_step = None
    if converged:
        last_bad = 0
        for i, ok in enumerate(flags, start=1):
            if not ok:
                last_bad = i
        convergence_step = last_bad + 1
    target_index = None
    if spec.game in (GameKind.SI, GameKind.LI) and spec.true_coll is not None:
        true_lang, harm_lang = adversary.current_pair()
        target = (
            _difference(true_lang, harm_lang) if spec.game is GameKind.SI else true_lang
        )
        for i in range(1, spec.true_coll.candidate_count(spec.horizon) + 1):
            if spec.true_coll.at(i) == target:
                target_index = i
                break
    return Verdict(
        converged=converged,
        convergence_step=convergence_step,
        correct_in_final_window=sum(tail),
        phase_transitions=adversary.phase - 1,
        target_index=target_index,
        horizon=spec.horizon,
        window=spec.window,
    )


def rescore_trace(
    trace: Trace, true_coll: LanguageCollection | None = None
) -> list[bool]:
    """Recompute per-step correctness of a stored trace from its own records."""
    revealed = RevealedSet()
    pair: tuple[PeriodicSet, PeriodicSet] | None = None
    out: list[bool] = []
    for s in trace.steps:
        if s.pair is not None:
            pair = s.pair
        if pair is None:
            raise ScenarioError("trace does not declare the committed pair")
        revealed.add(LabeledExample(s.element, s.label))
        out.append(score_step(trace.game, s.output, pair[0], pair[1], revealed, true_coll))
    return out


def score_against_pair(
    trace: Trace,
    true_lang: PeriodicSet,
    harm_lang: PeriodicSet,
    kind: GameKind = GameKind.SG,
) -> list[bool]:
    """Score a stored trace's outputs against one fixed pair (post-hoc analysis)."""
    revealed = RevealedSet()
    out: list[bool] = []
    for s in trace.steps:
        revealed.add(LabeledExample(s.element, s.label))
        out.append(score_step(kind, s.output, true_lang, harm_lang, revealed))
    return out
