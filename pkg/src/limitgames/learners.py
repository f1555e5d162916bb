"""Learner algorithms for the generation and identification games.

Two families of learners live here:

* plain functions (``critical_generate``, ``conservative_pair_generate``,
  ``identify_with_probes``, ...) that recompute everything from the revealed
  sample each step, written in the most direct form; and
* stateful classes (``CriticalGenerator``, ``ConservativePairGenerator``)
  that maintain consistency flags and rank-prefix bitmasks incrementally so
  the 2000-step adversarial scenarios stay fast.  The classes produce the
  same outputs as the functions; a test pins that equivalence.

Generation learners pick candidates by finite-prefix evidence: a candidate
is *critical* at cutoff m when its m-prefix is contained in the m-prefix of
every earlier consistent candidate (the "smallest" consistent guess), and
*dually critical* when its m-prefix contains all earlier consistent
prefixes (the "largest" guess, used for harm hypotheses).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

from .algebra import Cardinality, PeriodicSet, universe_elem, universe_index
from .families import (
    LabeledExample,
    LanguageCollection,
    MissingTelltaleError,
    RevealedSet,
    is_consistent_harm,
    is_consistent_true,
)


@dataclass(frozen=True)
class LearnerOutput:
    """One learner move: an unseen-word guess, bottom, or a collection index."""

    kind: str  # "generate" | "bottom" | "index"
    value: int | None = None

    @staticmethod
    def generate(word: int) -> "LearnerOutput":
        return LearnerOutput("generate", word)

    @staticmethod
    def bottom() -> "LearnerOutput":
        return LearnerOutput("bottom")

    @staticmethod
    def index(i: int) -> "LearnerOutput":
        return LearnerOutput("index", i)

    @property
    def is_generate(self) -> bool:
        return self.kind == "generate"

    @property
    def is_bottom(self) -> bool:
        return self.kind == "bottom"

    @property
    def is_index(self) -> bool:
        return self.kind == "index"


class Learner(Protocol):
    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput: ...


# A pluggable safe-generation subroutine: explicit hypothesis pair plus a
# revealed sample in, one move out.
SgSubroutine = Callable[[PeriodicSet, PeriodicSet, RevealedSet], LearnerOutput]


# ----------------------------------------------------------------------
# Reference generator (exact oracle backed)
# ----------------------------------------------------------------------


def reference_safe_generate(
    true_hyp: PeriodicSet,
    harm_hyp: PeriodicSet,
    revealed: RevealedSet,
    *,
    strict: bool = True,
) -> LearnerOutput:
    """Safe generation for an explicit hypothesis pair.

    Infinite difference: emit its first unseen element.  Otherwise emit
    bottom (strict mode) or an arbitrary fixed word (relaxed mode).
    """
    diff = true_hyp - harm_hyp
    if diff.cardinality().is_infinite:
        word = diff.first_not_in(revealed.contains)
        assert word is not None
        return LearnerOutput.generate(word)
    return LearnerOutput.bottom() if strict else LearnerOutput.generate(universe_elem(1))


def relaxed_reference_sg(
    true_hyp: PeriodicSet, harm_hyp: PeriodicSet, revealed: RevealedSet
) -> LearnerOutput:
    return reference_safe_generate(true_hyp, harm_hyp, revealed, strict=False)


class ReferenceGenerator:
    """Game-facing wrapper around reference_safe_generate with fixed hypotheses."""

    def __init__(self, true_hyp: PeriodicSet, harm_hyp: PeriodicSet, *, strict: bool = True):
        self.true_hyp = true_hyp
        self.harm_hyp = harm_hyp
        self.strict = strict

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return reference_safe_generate(
            self.true_hyp, self.harm_hyp, revealed, strict=self.strict
        )


# ----------------------------------------------------------------------
# Criticality on finite prefixes, functional forms
# ----------------------------------------------------------------------


def is_critical(
    coll: LanguageCollection, revealed: RevealedSet, n: int, t: int, m: int
) -> bool:
    """Is candidate n critical at cutoff m among the first t candidates?

    Requires true-side consistency plus prefix containment in every earlier
    consistent candidate.
    """
    if n > t:
        return False
    lang = coll.at(n)
    if not is_consistent_true(lang, revealed):
        return False
    pm = set(lang.prefix(m))
    for j in range(1, n):
        other = coll.at(j)
        if is_consistent_true(other, revealed) and not pm <= set(other.prefix(m)):
            return False
    return True


def _escalation_bound(m0: int, t: int, spans: list[int]) -> int:
    span = max(spans, default=1)
    return m0 + (t + 4) * (span + 4) + 1024


def critical_generate(
    coll: LanguageCollection, revealed: RevealedSet, t: int
) -> LearnerOutput:
    """Generate from the highest-indexed critical candidate.

    The cutoff starts large enough to cover every string seen so far and
    grows until the chosen candidate offers an unseen element within range.
    Falls back to the first universe element when nothing is consistent.
    """
    limit = coll.candidate_count(t)
    consistent = [
        i for i in range(1, limit + 1) if is_consistent_true(coll.at(i), revealed)
    ]
    if not consistent:
        return LearnerOutput.generate(universe_elem(1))
    seen = revealed.pos | revealed.neg
    m = max((universe_index(x) for x in seen), default=1)
    bound = _escalation_bound(m, t, [coll.at(i).span() for i in consistent])
    while m <= bound:
        best = None
        inter: set[int] | None = None
        for i in consistent:
            pm = set(coll.at(i).prefix(m))
            if inter is None or pm <= inter:
                best = i
            inter = pm if inter is None else inter & pm
        assert best is not None
        lang = coll.at(best)
        for rank in range(1, m + 1):
            x = universe_elem(rank)
            if x in lang and x not in seen:
                return LearnerOutput.generate(x)
        m += 1
    raise RuntimeError("prefix cutoff escalation exceeded its bound")


def conservative_pair_generate(
    coll_true: LanguageCollection,
    coll_harm: LanguageCollection,
    revealed: RevealedSet,
    t: int,
    *,
    strict: bool = True,
) -> LearnerOutput:
    """Smallest consistent true candidate versus largest consistent harm one.

    Under the all-pairs-infinite-difference promise the escalation always
    finds an unseen element of the chosen difference.  Without the promise
    the chosen difference can be empty; the search then exhausts its bound
    and the learner gives up with bottom (or an arbitrary word when relaxed).
    """
    limit_k = coll_true.candidate_count(t)
    limit_h = coll_harm.candidate_count(t)
    cons_k = [
        i for i in range(1, limit_k + 1) if is_consistent_true(coll_true.at(i), revealed)
    ]
    cons_h = [
        i for i in range(1, limit_h + 1) if is_consistent_harm(coll_harm.at(i), revealed)
    ]
    if not cons_k:
        return LearnerOutput.generate(universe_elem(1))
    seen = revealed.pos | revealed.neg
    spans = [coll_true.at(i).span() for i in cons_k] + [
        coll_harm.at(i).span() for i in cons_h
    ]
    m = max((universe_index(x) for x in seen), default=1)
    bound = _escalation_bound(m, t, spans)
    kc = hc = None
    while m <= bound:
        kc = _primal_best_sets(coll_true, cons_k, m)
        hc = _dual_best_sets(coll_harm, cons_h, m)
        k_lang = coll_true.at(kc)
        h_lang = coll_harm.at(hc) if hc is not None else None
        for rank in range(1, m + 1):
            x = universe_elem(rank)
            if x in k_lang and (h_lang is None or x not in h_lang) and x not in seen:
                return LearnerOutput.generate(x)
        m += 1
    assert kc is not None
    diff = coll_true.at(kc) - (
        coll_harm.at(hc) if hc is not None else PeriodicSet.empty()
    )
    if diff.cardinality().is_infinite:
        raise RuntimeError("escalation bound hit while the difference is infinite")
    return LearnerOutput.bottom() if strict else LearnerOutput.generate(universe_elem(1))


def _primal_best_sets(coll: LanguageCollection, cons: list[int], m: int) -> int | None:
    best = None
    inter: set[int] | None = None
    for i in cons:
        pm = set(coll.at(i).prefix(m))
        if inter is None or pm <= inter:
            best = i
        inter = pm if inter is None else inter & pm
    return best


def _dual_best_sets(coll: LanguageCollection, cons: list[int], m: int) -> int | None:
    best = None
    union: set[int] = set()
    for i in cons:
        pm = set(coll.at(i).prefix(m))
        if union <= pm:
            best = i
        union |= pm
    return best


# ----------------------------------------------------------------------
# Subset probing and ordered insertion
# ----------------------------------------------------------------------


def _probe_one(
    k_lang: PeriodicSet, h_lang: PeriodicSet, t: int, sg: SgSubroutine
) -> int:
    # Feed the subroutine a fresh labeled enumeration (t words per side,
    # true word then harm word) and check its output with the membership
    # oracles: did it produce an element of k_lang \ h_lang?
    probe = RevealedSet()
    k_iter = k_lang.iter_universe_order()
    h_iter = h_lang.iter_universe_order()
    for _ in range(t):
        kx = next(k_iter, None)
        if kx is not None:
            probe.add(LabeledExample(kx, 1))
        hx = next(h_iter, None)
        if hx is not None:
            probe.add(LabeledExample(hx, 0))
    out = sg(k_lang, h_lang, probe)
    ok = out.is_generate and out.value in k_lang and out.value not in h_lang
    return 1 if ok else 0


def subset_probe(
    left: PeriodicSet,
    right: PeriodicSet,
    revealed: RevealedSet,
    sg: SgSubroutine | None = None,
) -> tuple[int, int]:
    """Classify the pair by two generation attempts.

    Bit one: could the subroutine produce an element of left minus right?
    Bit two: of right minus left?  The four patterns separate proper subset
    (01 / 10), equality (00) and incomparability or disjointness (11).
    """
    sub = sg or relaxed_reference_sg
    t = revealed.step
    return (_probe_one(left, right, t, sub), _probe_one(right, left, t, sub))


def order_consistent(
    entries: list[tuple[int, PeriodicSet]],
    revealed: RevealedSet,
    sg: SgSubroutine | None = None,
) -> list[tuple[int, PeriodicSet]]:
    """Insertion-order the consistent list so subsets precede supersets.

    Entries are (collection index, language).  Each language is appended in
    ascending index order and bubbles left until the probe reports that its
    left neighbour cannot generate outside it, which means the neighbour is
    contained in it (or equal) and must stay left.
    """
    sub = sg or relaxed_reference_sg
    t = revealed.step
    out: list[tuple[int, PeriodicSet]] = []
    for entry in sorted(entries, key=lambda e: e[0]):
        out.append(entry)
        j = len(out) - 1
        while j >= 1:
            left = out[j - 1]
            if not _probe_one(left[1], out[j][1], t, sub):
                break
            out[j - 1], out[j] = out[j], out[j - 1]
            j -= 1
    return out


def identify_with_probes(
    coll: LanguageCollection,
    revealed: RevealedSet,
    t: int,
    sg: SgSubroutine | None = None,
) -> LearnerOutput:
    """Guess the index of the left-most consistent language after ordering.

    With a correct generation subroutine the ordered list keeps strict
    subsets left of their supersets and equal languages in index order, so
    in the limit the head is the smallest index of the enumerated language.
    """
    limit = coll.candidate_count(t)
    entries = [
        (i, coll.at(i))
        for i in range(1, limit + 1)
        if is_consistent_true(coll.at(i), revealed)
    ]
    if not entries:
        return LearnerOutput.index(1)
    ordered = order_consistent(entries, revealed, sg)
    return LearnerOutput.index(ordered[0][0])


def naive_identify(
    coll: LanguageCollection, revealed: RevealedSet, t: int
) -> LearnerOutput:
    """Baseline: the first consistent index, which supersets keep forever."""
    limit = coll.candidate_count(t)
    for i in range(1, limit + 1):
        if is_consistent_true(coll.at(i), revealed):
            return LearnerOutput.index(i)
    return LearnerOutput.index(1)


# ----------------------------------------------------------------------
# Telltale-identification generator
# ----------------------------------------------------------------------


def telltale_safe_generate(
    coll_true: LanguageCollection,
    coll_harm: LanguageCollection,
    revealed: RevealedSet,
    t: int,
    *,
    strict: bool = True,
) -> LearnerOutput:
    """Identify both sides by covered telltales, then consult the difference.

    Identification picks the first consistent index whose telltale is fully
    revealed on its side.  Once both sides are identified the exact
    difference decides between generation and bottom.  While either side is
    unidentified the learner emits a conservative word, never bottom.
    """
    k_hat = _identify_by_telltale(coll_true, revealed, t, "true")
    h_hat = _identify_by_telltale(coll_harm, revealed, t, "harm")
    if k_hat is not None and h_hat is not None:
        diff = coll_true.at(k_hat) - coll_harm.at(h_hat)
        if diff.cardinality().is_infinite:
            word = diff.first_not_in(revealed.contains)
            assert word is not None
            return LearnerOutput.generate(word)
        return (
            LearnerOutput.bottom() if strict else LearnerOutput.generate(universe_elem(1))
        )
    # Conservative fallback while identification is incomplete.
    limit_k = coll_true.candidate_count(t)
    cons_k = [
        i for i in range(1, limit_k + 1) if is_consistent_true(coll_true.at(i), revealed)
    ]
    if not cons_k:
        return LearnerOutput.generate(universe_elem(1))
    limit_h = coll_harm.candidate_count(t)
    cons_h = [
        i for i in range(1, limit_h + 1) if is_consistent_harm(coll_harm.at(i), revealed)
    ]
    seen = revealed.pos | revealed.neg
    m = max((universe_index(x) for x in seen), default=1)
    kc = _primal_best_sets(coll_true, cons_k, m)
    hc = _dual_best_sets(coll_harm, cons_h, m)
    assert kc is not None
    k_lang = coll_true.at(kc)
    diff = k_lang - (coll_harm.at(hc) if hc is not None else PeriodicSet.empty())
    word = diff.first_not_in(seen)
    if word is None:
        word = k_lang.first_not_in(seen)
        assert word is not None
    return LearnerOutput.generate(word)


def _identify_by_telltale(
    coll: LanguageCollection, revealed: RevealedSet, t: int, side: str
) -> int | None:
    sample = revealed.pos if side == "true" else revealed.neg
    check = is_consistent_true if side == "true" else is_consistent_harm
    limit = coll.candidate_count(t)
    for i in range(1, limit + 1):
        try:
            tell = coll.telltale(i)
        except MissingTelltaleError:
            continue
        if tell <= sample and check(coll.at(i), revealed):
            return i
    return None


# ----------------------------------------------------------------------
# Incremental machinery shared by the stateful generators
# ----------------------------------------------------------------------


class _MaskedLang:
    """A language plus its lazily grown rank-prefix bitmask."""

    __slots__ = ("lang", "bits", "upto")

    def __init__(self, lang: PeriodicSet):
        self.lang = lang
        self.bits = 0
        self.upto = 0

    def mask(self, m: int) -> int:
        if self.upto < m:
            self.bits |= self.lang.rank_mask_block(self.upto + 1, m - self.upto) << self.upto
            self.upto = m
            return self.bits
        if self.upto == m:
            return self.bits
        return self.bits & ((1 << m) - 1)


class _SideTracker:
    """Alive (consistent) candidates of one collection side, with masks."""

    def __init__(self, coll: LanguageCollection):
        self.coll = coll
        self.alive: list[int] = []
        self.masked: dict[int, _MaskedLang] = {}
        self.admitted = 0
        self.max_span = 1

    def kill(self, new_values: list[int]) -> None:
        if not new_values:
            return
        self.alive = [
            i
            for i in self.alive
            if all(v in self.masked[i].lang for v in new_values)
        ]

    def admit(self, upto: int, sample: set[int]) -> None:
        while self.admitted < upto:
            self.admitted += 1
            lang = self.coll.at(self.admitted)
            self.max_span = max(self.max_span, lang.span())
            if all(v in lang for v in sample):
                self.alive.append(self.admitted)
                self.masked[self.admitted] = _MaskedLang(lang)

    def mask(self, i: int, m: int) -> int:
        return self.masked[i].mask(m)

    def primal_best(self, m: int) -> int | None:
        # Hot path: the mask access is inlined and the clamp mask hoisted,
        # since this pass runs per cutoff value over every alive candidate.
        best = None
        inter: int | None = None
        ones = (1 << m) - 1
        masked = self.masked
        for i in self.alive:
            ml = masked[i]
            upto = ml.upto
            if upto < m:
                ml.bits |= ml.lang.rank_mask_block(upto + 1, m - upto) << upto
                ml.upto = m
                mk = ml.bits
            elif upto == m:
                mk = ml.bits
            else:
                mk = ml.bits & ones
            if inter is None:
                best = i
                inter = mk
            else:
                if mk & ~inter == 0:
                    best = i
                inter &= mk
        return best

    def dual_best(self, m: int) -> int | None:
        best = None
        union = 0
        ones = (1 << m) - 1
        masked = self.masked
        for i in self.alive:
            ml = masked[i]
            upto = ml.upto
            if upto < m:
                ml.bits |= ml.lang.rank_mask_block(upto + 1, m - upto) << upto
                ml.upto = m
                mk = ml.bits
            elif upto == m:
                mk = ml.bits
            else:
                mk = ml.bits & ones
            if union & ~mk == 0:
                best = i
            union |= mk
        return best

    def drop_point(self, i: int, m: int) -> int | None:
        """Smallest cutoff at which candidate i stops being critical.

        A candidate fails criticality at the rank of the first member it has
        that some earlier alive candidate lacks; masks are read at cutoff m,
        which must already be past that witness for the answer to be exact.
        """
        ones = (1 << m) - 1
        ml = self.masked[i]
        mk = ml.mask(m)
        best: int | None = None
        for j in self.alive:
            if j >= i:
                break
            diff = (self.masked[j].mask(m) ^ ones) & mk
            if diff:
                w = (diff & -diff).bit_length()
                if best is None or w < best:
                    best = w
        return best

    def drop_point_dual(self, i: int, m: int) -> int | None:
        """Dual variant: first rank some earlier candidate covers but i lacks."""
        ones = (1 << m) - 1
        missing = self.masked[i].mask(m) ^ ones
        acc = 0
        for j in self.alive:
            if j >= i:
                break
            acc |= self.masked[j].mask(m)
        diff = acc & missing
        if diff:
            return (diff & -diff).bit_length()
        return None

    def next_rank_in(self, i: int, above: int, bound: int, excluded: int) -> int | None:
        """Smallest member rank of candidate i above ``above``, skipping ranks
        set in ``excluded``; None when nothing shows up within the bound."""
        ml = self.masked[i]
        low_clear = ~((1 << above) - 1)
        cur = above
        while cur < bound:
            nxt = min(cur + 512, bound)
            bits = ml.mask(nxt) & ~excluded & low_clear
            if bits:
                return (bits & -bits).bit_length()
            cur = nxt
        return None


@dataclass(frozen=True)
class ChoiceRecord:
    """Per-step log entry of a pair generator's chosen hypotheses."""

    t: int
    true_index: int | None
    harm_index: int | None
    diff: Cardinality | None
    output_kind: str


class CriticalGenerator:
    """Stateful generation learner over one collection (true side only).

    Keeps consistency flags and prefix bitmasks incrementally; outputs match
    :func:`critical_generate` step for step.  Strings carrying either label
    count as seen and are never emitted.
    """

    def __init__(self, coll: LanguageCollection):
        self.coll = coll
        self._tracker = _SideTracker(coll)
        self._consumed = 0
        self._seen_mask = 0
        self._max_rank = 1

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        new_pos: list[int] = []
        for ex in revealed.events[self._consumed :]:
            rank = universe_index(ex.element)
            self._seen_mask |= 1 << (rank - 1)
            if rank > self._max_rank:
                self._max_rank = rank
            if ex.label == 1:
                new_pos.append(ex.element)
        self._consumed = len(revealed.events)
        self._tracker.kill(new_pos)
        self._tracker.admit(self.coll.candidate_count(t), revealed.pos)
        if not self._tracker.alive:
            return LearnerOutput.generate(universe_elem(1))
        m = self._max_rank
        bound = _escalation_bound(m, t, [self._tracker.max_span])
        while m <= bound:
            kc = self._tracker.primal_best(m)
            assert kc is not None
            avail = self._tracker.mask(kc, m) & ~self._seen_mask
            if avail:
                rank = (avail & -avail).bit_length()
                return LearnerOutput.generate(universe_elem(rank))
            nxt = self._tracker.next_rank_in(kc, m, bound, self._seen_mask)
            if nxt is None:
                if self._tracker.primal_best(bound) == kc:
                    break
                m += 1
                continue
            if self._tracker.primal_best(nxt) == kc:
                # Nothing changes before the element's rank, so the walk
                # from m to nxt is silent; take the element there.
                m = nxt
                continue
            # The candidate stops being critical before its next element
            # shows up; jump straight to the cutoff where it drops.
            drop = self._tracker.drop_point(kc, nxt)
            m = drop if drop is not None and drop > m else m + 1
        raise RuntimeError("prefix cutoff escalation exceeded its bound")


class ConservativePairGenerator:
    """Stateful smallest-true/largest-harm generator over two collections.

    Without the infinite-difference promise the chosen pair can have an
    empty or finite difference; the learner then gives up with bottom for
    the step and records the event in ``choice_log``, which is what the
    conservative-failure demo inspects.
    """

    def __init__(
        self,
        coll_true: LanguageCollection,
        coll_harm: LanguageCollection,
        *,
        strict: bool = True,
    ):
        self.coll_true = coll_true
        self.coll_harm = coll_harm
        self.strict = strict
        self._true = _SideTracker(coll_true)
        self._harm = _SideTracker(coll_harm)
        self._consumed = 0
        self._seen_mask = 0
        self._max_rank = 1
        self._diff_cache: dict[tuple[int, int | None], Cardinality] = {}
        self.choice_log: list[ChoiceRecord] = []

    def _diff_cardinality(self, kc: int, hc: int | None) -> Cardinality:
        key = (kc, hc)
        card = self._diff_cache.get(key)
        if card is None:
            harm = self.coll_harm.at(hc) if hc is not None else PeriodicSet.empty()
            card = (self.coll_true.at(kc) - harm).cardinality()
            self._diff_cache[key] = card
        return card

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        new_pos: list[int] = []
        new_neg: list[int] = []
        for ex in revealed.events[self._consumed :]:
            rank = universe_index(ex.element)
            self._seen_mask |= 1 << (rank - 1)
            if rank > self._max_rank:
                self._max_rank = rank
            (new_pos if ex.label == 1 else new_neg).append(ex.element)
        self._consumed = len(revealed.events)
        self._true.kill(new_pos)
        self._harm.kill(new_neg)
        self._true.admit(self.coll_true.candidate_count(t), revealed.pos)
        self._harm.admit(self.coll_harm.candidate_count(t), revealed.neg)
        if not self._true.alive:
            self.choice_log.append(ChoiceRecord(t, None, None, None, "generate"))
            return LearnerOutput.generate(universe_elem(1))
        m = self._max_rank
        span = max(self._true.max_span, self._harm.max_span)
        bound = _escalation_bound(m, t, [span])
        while m <= bound:
            kc = self._true.primal_best(m)
            hc = self._harm.dual_best(m)
            assert kc is not None
            h_mask = self._harm.mask(hc, m) if hc is not None else 0
            avail = self._true.mask(kc, m) & ~h_mask & ~self._seen_mask
            if avail:
                rank = (avail & -avail).bit_length()
                self.choice_log.append(ChoiceRecord(t, kc, hc, None, "generate"))
                return LearnerOutput.generate(universe_elem(rank))
            nxt = self._next_pair_rank(kc, hc, m, bound)
            if nxt is None:
                if (
                    self._true.primal_best(bound) == kc
                    and self._harm.dual_best(bound) == hc
                ):
                    break
                m += 1
                continue
            if self._true.primal_best(nxt) == kc and self._harm.dual_best(nxt) == hc:
                m = nxt
                continue
            # Jump to whichever hypothesis drops first before the element.
            drops = [
                d
                for d in (
                    self._true.drop_point(kc, nxt),
                    self._harm.drop_point_dual(hc, nxt) if hc is not None else None,
                )
                if d is not None
            ]
            drop = min(drops) if drops else None
            m = drop if drop is not None and drop > m else m + 1
        kc = self._true.primal_best(bound)
        hc = self._harm.dual_best(bound)
        assert kc is not None
        card = self._diff_cardinality(kc, hc)
        if card.is_infinite:
            raise RuntimeError("escalation bound hit while the difference is infinite")
        self.choice_log.append(ChoiceRecord(t, kc, hc, card, "give_up"))
        return (
            LearnerOutput.bottom() if self.strict else LearnerOutput.generate(universe_elem(1))
        )

    def _next_pair_rank(self, kc: int, hc: int | None, above: int, bound: int) -> int | None:
        low_clear = ~((1 << above) - 1)
        cur = above
        while cur < bound:
            nxt = min(cur + 512, bound)
            k_mask = self._true.mask(kc, nxt)
            h_mask = self._harm.mask(hc, nxt) if hc is not None else 0
            bits = k_mask & ~h_mask & ~self._seen_mask & low_clear
            if bits:
                return (bits & -bits).bit_length()
            cur = nxt
        return None


# ----------------------------------------------------------------------
# Small game-facing learners
# ----------------------------------------------------------------------


class ProbeIdentifier:
    """Identification via ordered consistent lists and generation probes."""

    def __init__(self, coll: LanguageCollection, sg: SgSubroutine | None = None):
        self.coll = coll
        self.sg = sg or relaxed_reference_sg

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return identify_with_probes(self.coll, revealed, t, self.sg)


class NaiveIdentifier:
    def __init__(self, coll: LanguageCollection):
        self.coll = coll

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return naive_identify(self.coll, revealed, t)


class TelltaleGenerator:
    def __init__(
        self,
        coll_true: LanguageCollection,
        coll_harm: LanguageCollection,
        *,
        strict: bool = True,
    ):
        self.coll_true = coll_true
        self.coll_harm = coll_harm
        self.strict = strict

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return telltale_safe_generate(
            self.coll_true, self.coll_harm, revealed, t, strict=self.strict
        )


class EagerIdentifier:
    """Safe-language identifier that chases the deepest 0-labeled negative.

    Hypothesizes the tightest harm candidate consistent with the negatives
    seen so far and guesses the index of the corresponding safe language,
    which is exactly the behaviour the phased adversary punishes forever.
    """

    def __init__(self, coll_true: LanguageCollection):
        self.coll_true = coll_true
        self._consumed = 0
        self._depth = 0

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        for ex in revealed.events[self._consumed :]:
            if ex.label == 0 and ex.element < 0:
                self._depth = max(self._depth, -ex.element)
        self._consumed = len(revealed.events)
        # Q(-(depth+1)) sits at index depth + 3 of the trap collection.
        return LearnerOutput.index(self._depth + 3)


class StubbornIdentifier:
    """Always guesses index 1, never a safe-language candidate."""

    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return LearnerOutput.index(1)


class AlwaysBottom:
    def step(self, revealed: RevealedSet, t: int) -> LearnerOutput:
        return LearnerOutput.bottom()
