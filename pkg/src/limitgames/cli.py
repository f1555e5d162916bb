"""Command line front end.

Subcommands:

* ``run PATH``: execute a scenario file (or battery) and write trace/verdict
  files; ``--expect converged|failed`` turns the verdict into the exit code.
* ``demo NAME``: run a built-in experiment and print a short report.
* ``check-algebra``: run the randomized algebra property suite.
* ``replay SCENARIO TRACE``: re-score a stored trace and compare verdicts.

Runs are deterministic: the same scenario file always produces byte
identical trace files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adversaries import DiagonalAdversary, FairInterleaver, PhasedInjectionAdversary, PositiveStream
from .algebra import all_integers, even_nonnegatives, odd_positives, q_set, y_set
from .arena import (
    GameKind,
    RunResult,
    ScenarioError,
    ScenarioSpec,
    Trace,
    rescore_trace,
    run_game,
    score_against_pair,
)
from .families import (
    LanguageCollection,
    diagonal_trap_collections,
    identification_trap_collections,
)
from .fuzz import run_suite
from .learners import (
    ConservativePairGenerator,
    CriticalGenerator,
    EagerIdentifier,
    NaiveIdentifier,
    ProbeIdentifier,
    StubbornIdentifier,
)
from .scenario import Battery, load_file
from .setspec import parse


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="limitgames",
        description="Deterministic learner-versus-adversary games over exact integer languages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario or battery file")
    p_run.add_argument("path", type=Path)
    p_run.add_argument("--out", type=Path, default=Path("runs"), help="output directory")
    p_run.add_argument("--expect", choices=("converged", "failed"))
    p_run.add_argument("--horizon-override", type=int)
    p_run.add_argument("--window-override", type=int)

    p_demo = sub.add_parser("demo", help="run a built-in experiment")
    p_demo.add_argument("name", choices=sorted(DEMOS))
    p_demo.add_argument("--out", type=Path, help="also write trace/verdict files here")

    p_chk = sub.add_parser("check-algebra", help="randomized algebra property suite")
    p_chk.add_argument("--seed", type=int, default=1)
    p_chk.add_argument("--count", type=int, default=1000)

    p_rep = sub.add_parser("replay", help="re-score a stored trace against its scenario")
    p_rep.add_argument("scenario", type=Path)
    p_rep.add_argument("trace", type=Path)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "demo":
            return _cmd_demo(args)
        if args.command == "check-algebra":
            return _cmd_check_algebra(args)
        if args.command == "replay":
            return _cmd_replay(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


# ----------------------------------------------------------------------
# run
# ----------------------------------------------------------------------


def _write_result(result: RunResult, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    name = result.trace.scenario
    (out_dir / f"{name}.trace.jsonl").write_text(result.trace.to_jsonl())
    (out_dir / f"{name}.verdict.json").write_text(
        result.verdict.to_json(name) + "\n"
    )


def _cmd_run(args) -> int:
    loaded = load_file(args.path)
    if isinstance(loaded, Battery):
        rows = []
        for path in loaded.paths:
            spec = load_file(path)
            if isinstance(spec, Battery):
                raise ScenarioError(f"{path}: nested batteries are not supported")
            spec = _apply_overrides(spec, args)
            result = run_game(spec)
            _write_result(result, args.out)
            rows.append((spec.name, result.verdict))
        _print_battery_table(rows)
        if args.expect:
            ok = all(v.converged for _, v in rows)
            return _expectation_exit(ok, args.expect)
        return 0
    spec = _apply_overrides(loaded, args)
    result = run_game(spec)
    _write_result(result, args.out)
    v = result.verdict
    print(
        f"{spec.name}: converged={v.converged} convergence_step={v.convergence_step} "
        f"correct_in_final_window={v.correct_in_final_window}/{v.window} "
        f"phase_transitions={v.phase_transitions}"
    )
    if args.expect:
        return _expectation_exit(v.converged, args.expect)
    return 0


def _apply_overrides(spec: ScenarioSpec, args) -> ScenarioSpec:
    if getattr(args, "horizon_override", None):
        spec.horizon = args.horizon_override
    if getattr(args, "window_override", None):
        spec.window = args.window_override
    spec.validate()
    return spec


def _expectation_exit(converged: bool, expect: str) -> int:
    if expect == "converged":
        return 0 if converged else 3
    return 0 if not converged else 3


def _print_battery_table(rows) -> None:
    print(f"{'scenario':<28} {'converged':<10} {'conv.step':<10} {'window':<10} {'phases':<7}")
    for name, v in rows:
        step = v.convergence_step if v.convergence_step is not None else "-"
        print(
            f"{name:<28} {str(v.converged):<10} {str(step):<10} "
            f"{f'{v.correct_in_final_window}/{v.window}':<10} {v.phase_transitions:<7}"
        )


# ----------------------------------------------------------------------
# demos
# ----------------------------------------------------------------------


def _demo_sg_inf(out: Path | None) -> int:
    """Infinite-difference promise: the conservative pair learner converges."""
    true_coll = LanguageCollection.explicit(
        "sg-inf-true", [all_integers(), odd_positives(), q_set(1)]
    )
    harm_coll = LanguageCollection.explicit("sg-inf-harm", [even_nonnegatives(), y_set(0)])
    spec = ScenarioSpec(
        name="sg-inf",
        game=GameKind.SG_INF,
        adversary_factory=lambda: FairInterleaver(odd_positives(), even_nonnegatives()),
        learner_factory=lambda: ConservativePairGenerator(true_coll, harm_coll),
        horizon=300,
        window=50,
        true_coll=true_coll,
        harm_coll=harm_coll,
    )
    result = run_game(spec)
    _maybe_write(result, out)
    v = result.verdict
    print(f"sg-inf: converged={v.converged} at step {v.convergence_step} of {spec.horizon}")
    print(f"sg-inf: final window correct {v.correct_in_final_window}/{v.window}")
    return 0 if v.converged else 1


def _demo_safe_id_impossible(out: Path | None) -> int:
    """Adaptive injections defeat safe-language identification."""
    true_coll, harm_coll = identification_trap_collections()
    eager = ScenarioSpec(
        name="safe-id-impossible-eager",
        game=GameKind.SI,
        adversary_factory=lambda: PhasedInjectionAdversary(true_coll),
        learner_factory=lambda: EagerIdentifier(true_coll),
        horizon=2000,
        window=50,
        true_coll=true_coll,
        harm_coll=harm_coll,
    )
    eager_result = run_game(eager)
    _maybe_write(eager_result, out)
    stubborn = ScenarioSpec(
        name="safe-id-impossible-stubborn",
        game=GameKind.SI,
        adversary_factory=lambda: PhasedInjectionAdversary(true_coll),
        learner_factory=lambda: StubbornIdentifier(),
        horizon=2000,
        window=50,
        true_coll=true_coll,
        harm_coll=harm_coll,
    )
    stubborn_result = run_game(stubborn)
    _maybe_write(stubborn_result, out)
    phases = eager_result.verdict.phase_transitions
    stubborn_correct = sum(s.correct for s in stubborn_result.trace.steps)
    print(f"safe-id-impossible: eager learner forced through {phases} phase transitions")
    print(
        "safe-id-impossible: stubborn learner correct steps "
        f"{stubborn_correct}/{stubborn.horizon} (committed harm language stays Y(0))"
    )
    return 0 if phases >= 5 and stubborn_correct == 0 else 1


def _demo_oracle_not_enough(out: Path | None) -> int:
    """Exact emptiness answers still cannot rescue a prefix-critical generator."""
    true_coll, harm_coll = diagonal_trap_collections()
    spec = ScenarioSpec(
        name="oracle-not-enough",
        game=GameKind.SG,
        adversary_factory=lambda: DiagonalAdversary(true_coll, harm_coll),
        learner_factory=lambda: CriticalGenerator(true_coll),
        horizon=2000,
        window=50,
        true_coll=true_coll,
        harm_coll=harm_coll,
    )
    result = run_game(spec)
    _maybe_write(result, out)
    adversary = result.adversary
    assert isinstance(adversary, DiagonalAdversary)
    phases = result.verdict.phase_transitions
    clean = all(b.skipped_true == 0 and b.skipped_harm == 0 for b in adversary.boundaries)
    top_scores = score_against_pair(result.trace, *adversary.limit_pair())
    detection_ok = all(
        result.trace.steps[t - 1].output.is_generate and not top_scores[t - 1]
        for t in adversary.detection_steps
    )
    print(f"oracle-not-enough: {phases} phase transitions in {spec.horizon} steps")
    print(f"oracle-not-enough: skipped queues empty at every boundary: {clean}")
    print(
        "oracle-not-enough: every detection-step output is unsafe against the "
        f"limit pair: {detection_ok}"
    )
    return 0 if phases >= 3 and clean and detection_ok else 1


def _demo_reduction(out: Path | None) -> int:
    """Ordering consistent candidates with generation probes identifies; naive fails."""
    coll = LanguageCollection.explicit("reduction", [all_integers(), odd_positives()])
    probe = ScenarioSpec(
        name="reduction-probe",
        game=GameKind.LI,
        adversary_factory=lambda: PositiveStream(odd_positives()),
        learner_factory=lambda: ProbeIdentifier(coll),
        horizon=300,
        window=50,
        true_coll=coll,
    )
    naive = ScenarioSpec(
        name="reduction-naive",
        game=GameKind.LI,
        adversary_factory=lambda: PositiveStream(odd_positives()),
        learner_factory=lambda: NaiveIdentifier(coll),
        horizon=300,
        window=50,
        true_coll=coll,
    )
    probe_result = run_game(probe)
    naive_result = run_game(naive)
    _maybe_write(probe_result, out)
    _maybe_write(naive_result, out)
    pv, nv = probe_result.verdict, naive_result.verdict
    print(
        f"reduction: probe-ordered identifier converged={pv.converged} "
        f"to index {probe_result.trace.steps[-1].output.value} "
        f"(target {pv.target_index})"
    )
    print(
        f"reduction: naive identifier final-window correct "
        f"{nv.correct_in_final_window}/{nv.window}"
    )
    ok = pv.converged and probe_result.trace.steps[-1].output.value == pv.target_index
    return 0 if ok and nv.correct_in_final_window == 0 else 1


def _demo_conservative_fails(out: Path | None) -> int:
    """Smallest-true/largest-harm guessing can zero out a difference that is infinite."""
    true_coll = LanguageCollection.explicit("cons-true", [all_integers()])
    harm_coll = LanguageCollection.explicit("cons-harm", [y_set(0), all_integers()])
    spec = ScenarioSpec(
        name="conservative-fails",
        game=GameKind.SG,
        adversary_factory=lambda: FairInterleaver(all_integers(), y_set(0)),
        learner_factory=lambda: ConservativePairGenerator(true_coll, harm_coll),
        horizon=200,
        window=50,
        true_coll=true_coll,
        harm_coll=harm_coll,
    )
    result = run_game(spec)
    _maybe_write(result, out)
    learner = result.learner
    assert isinstance(learner, ConservativePairGenerator)
    true_diff = (all_integers() - y_set(0)).cardinality()
    stuck = [
        rec
        for rec in learner.choice_log
        if rec.diff is not None and rec.diff.is_bounded
    ]
    print(
        f"conservative-fails: true difference is {true_diff.kind}; "
        f"chosen-pair difference empty or finite on {len(stuck)} steps"
    )
    if stuck:
        first = stuck[0]
        print(
            f"conservative-fails: first stuck step t={first.t} chose true index "
            f"{first.true_index} against harm index {first.harm_index} "
            f"({first.diff.kind} difference), output bottom"
        )
    return 0 if stuck and true_diff.is_infinite else 1


DEMOS = {
    "sg-inf": _demo_sg_inf,
    "safe-id-impossible": _demo_safe_id_impossible,
    "oracle-not-enough": _demo_oracle_not_enough,
    "reduction": _demo_reduction,
    "conservative-fails": _demo_conservative_fails,
}


def _maybe_write(result: RunResult, out: Path | None) -> None:
    if out is not None:
        _write_result(result, out)


def _cmd_demo(args) -> int:
    return DEMOS[args.name](args.out)


# ----------------------------------------------------------------------
# check-algebra and replay
# ----------------------------------------------------------------------


def _cmd_check_algebra(args) -> int:
    report = run_suite(args.seed, args.count)
    print(report.describe())
    return 0 if report.ok else 1


def _cmd_replay(args) -> int:
    loaded = load_file(args.scenario)
    if isinstance(loaded, Battery):
        raise ScenarioError("replay needs a single scenario, not a battery")
    trace = Trace.from_jsonl(args.trace.read_text())
    recomputed = rescore_trace(trace, loaded.true_coll)
    stored = [s.correct for s in trace.steps]
    if recomputed != stored:
        first = next(i for i, (a, b) in enumerate(zip(stored, recomputed)) if a != b)
        print(f"replay: MISMATCH at step {first + 1}: stored={stored[first]} recomputed={recomputed[first]}")
        return 1
    print(f"replay: {len(stored)} steps re-scored, all correctness flags match")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
