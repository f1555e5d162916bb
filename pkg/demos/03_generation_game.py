"""
A full generation game, step by step
====================================

The arena wires an adversary to a learner: each step the adversary reveals
one labeled example, the learner answers with an unseen-word guess (or
bottom, or an index), and the answer is scored against the pair the
adversary is committed to.  "In the limit" claims become a finite trailing
window: the run converges when its last `window` steps are all correct.
"""

from limitgames import GameKind, LanguageCollection, ScenarioSpec, run_game
from limitgames.adversaries import FairInterleaver
from limitgames.algebra import all_integers, even_nonnegatives, odd_positives, q_set, y_set
from limitgames.learners import ConservativePairGenerator

I, O, E = all_integers(), odd_positives(), even_nonnegatives()

# Every cross pair of these collections has an infinite difference, which
# is the promise that makes safe generation tractable; the arena verifies
# it exactly before step 1.
true_coll = LanguageCollection.explicit("demo-true", [I, O, q_set(1)])
harm_coll = LanguageCollection.explicit("demo-harm", [E, y_set(0)])

spec = ScenarioSpec(
    name="generation-walkthrough",
    game=GameKind.SG_INF,
    adversary_factory=lambda: FairInterleaver(O, E),
    learner_factory=lambda: ConservativePairGenerator(true_coll, harm_coll),
    horizon=120,
    window=30,
    true_coll=true_coll,
    harm_coll=harm_coll,
)

result = run_game(spec)

print("first six steps of the trace:")
for step in result.trace.steps[:6]:
    print(
        f"  t={step.t}: adversary reveals ({step.element}, {step.label}), "
        f"learner answers {step.output.kind}({step.output.value}), "
        f"correct={step.correct}"
    )

v = result.verdict
print("converged:", v.converged, "at step", v.convergence_step)
print(f"final window: {v.correct_in_final_window}/{v.window} correct")

# Traces serialize to JSONL and re-serialize byte-identically, so runs can
# be archived, diffed and re-scored offline.
text = result.trace.to_jsonl()
print("trace lines:", len(text.splitlines()), "(header + one per step)")
print("first line:", text.splitlines()[0])
