"""
Collections, labeled samples and consistency
============================================

A game hides one true language and one harmful language and reveals labeled
examples from each.  Candidate languages live in ordered collections; a
candidate stays consistent while it contains every example revealed on its
side of the labeling.
"""

from limitgames import (
    LabeledExample,
    LanguageCollection,
    RevealedSet,
    all_integers,
    consistent_indices,
    even_nonnegatives,
    odd_positives,
    q_set,
)

I, O, E = all_integers(), odd_positives(), even_nonnegatives()

coll = LanguageCollection.explicit("tour", [I, O, E, q_set(1)])

# Feed a labeled sample: 1-labeled strings come from the true language,
# 0-labeled strings from the harmful one.
revealed = RevealedSet()
for element, label in [(1, 1), (0, 0), (3, 1), (2, 0)]:
    revealed.add(LabeledExample(element, label))

print("revealed true-side sample:", sorted(revealed.pos))
print("revealed harm-side sample:", sorted(revealed.neg))

# True-side consistency ignores 0-labels: an element can carry both labels
# over time when the hidden languages overlap, so harm examples must never
# disqualify true-side candidates.
print("true-side consistent indices:", consistent_indices(coll, revealed, 4, "true"))
print("harm-side consistent indices:", consistent_indices(coll, revealed, 4, "harm"))

# Collections may declare finite telltale sets.  A declaration is accepted
# only if no proper subset inside the collection also contains the telltale,
# which is checked exactly at construction time.
telltaled = LanguageCollection.explicit(
    "telltaled",
    [I, E],
    telltales={1: frozenset({1}), 2: frozenset({0})},
)
print("telltale for index 2:", sorted(telltaled.telltale(2)))

# An invalid declaration is rejected: {1} as a telltale for I also fits O,
# and O is a proper subset of I.
try:
    LanguageCollection.explicit("bad", [I, O], telltales={1: frozenset({1})})
except Exception as exc:
    print("rejected invalid telltale:", exc)
