"""Exact algebra of eventually periodic integer sets.

Every language in this package is a subset of the integers that, outside a
finite explicit window, coincides with fixed residue classes on each
unbounded tail.  The representation is canonical, so structural equality
decides set equality, and every query (membership, Boolean combination,
cardinality class, subset) is answered exactly with bounded arithmetic.

The universe is enumerated in zigzag order 0, 1, -1, 2, -2, ...;
``universe_elem`` and ``universe_index`` convert between 1-based ranks and
integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable, Iterator


def universe_elem(rank: int) -> int:
    """Return the integer at 1-based position ``rank`` of the zigzag order."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if rank == 1:
        return 0
    half, odd = divmod(rank, 2)
    return half if odd == 0 else -half


def universe_index(value: int) -> int:
    """Return the 1-based zigzag rank of ``value``; inverse of universe_elem."""
    if value == 0:
        return 1
    return 2 * value if value > 0 else 2 * (-value) + 1


@dataclass(frozen=True)
class Cardinality:
    """Exact cardinality class of a set: empty, finite with a count, or infinite."""

    kind: str  # "empty" | "finite" | "infinite"
    count: int | None = None

    @staticmethod
    def empty() -> "Cardinality":
        return Cardinality("empty")

    @staticmethod
    def infinite() -> "Cardinality":
        return Cardinality("infinite")

    @staticmethod
    def of_count(n: int) -> "Cardinality":
        if n < 0:
            raise ValueError("negative count")
        return Cardinality("empty") if n == 0 else Cardinality("finite", n)

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_bounded(self) -> bool:
        """True for empty or finite, the cases where no safe stream exists."""
        return self.kind != "infinite"


@dataclass(frozen=True)
class PeriodicSet:
    """An eventually periodic subset of the integers, in canonical form.

    Membership below ``lo`` follows ``neg_residues`` modulo ``neg_period``,
    membership above ``hi`` follows ``pos_residues`` modulo ``pos_period``,
    and inside ``[lo, hi]`` it is listed explicitly in ``window``.

    Instances must be canonical: build them with :meth:`build`, the factory
    helpers below, or Boolean operators, never with the raw constructor.
    Canonical form is unique, so ``==`` decides set equality and instances
    are hashable and safe to share.
    """

    neg_period: int
    neg_residues: frozenset[int]
    lo: int
    hi: int
    window: frozenset[int]
    pos_period: int
    pos_residues: frozenset[int]

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @staticmethod
    def build(
        neg_period: int,
        neg_residues: Iterable[int],
        lo: int,
        hi: int,
        window: Iterable[int],
        pos_period: int,
        pos_residues: Iterable[int],
    ) -> "PeriodicSet":
        """Canonicalize an arbitrary description into a PeriodicSet."""
        nr = frozenset(neg_residues)
        pr = frozenset(pos_residues)
        win = frozenset(window)
        if neg_period < 1 or pos_period < 1:
            raise ValueError("periods must be positive")
        if lo > hi:
            raise ValueError(f"window bounds out of order: [{lo}, {hi}]")
        if any(not 0 <= r < neg_period for r in nr):
            raise ValueError("negative-tail residue out of range")
        if any(not 0 <= r < pos_period for r in pr):
            raise ValueError("positive-tail residue out of range")
        if any(not lo <= x <= hi for x in win):
            raise ValueError("window member outside [lo, hi]")
        return _canonicalize(neg_period, nr, lo, hi, win, pos_period, pr)

    @staticmethod
    def empty() -> "PeriodicSet":
        return PeriodicSet.build(1, (), 0, 0, (), 1, ())

    @staticmethod
    def finite(values: Iterable[int]) -> "PeriodicSet":
        vals = frozenset(values)
        if not vals:
            return PeriodicSet.empty()
        return PeriodicSet.build(1, (), min(vals), max(vals), vals, 1, ())

    @staticmethod
    def ray(start: int, step: int) -> "PeriodicSet":
        """The arithmetic ray start, start+step, start+2*step, ... (step != 0)."""
        if step == 0:
            raise ValueError("ray step must be nonzero")
        if step > 0:
            return PeriodicSet.build(1, (), start, start, {start}, step, {start % step})
        d = -step
        return PeriodicSet.build(d, {start % d}, start, start, {start}, 1, ())

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < self.lo:
            return x % self.neg_period in self.neg_residues
        if x > self.hi:
            return x % self.pos_period in self.pos_residues
        return x in self.window

    def cardinality(self) -> Cardinality:
        if self.neg_residues or self.pos_residues:
            return Cardinality.infinite()
        return Cardinality.of_count(len(self.window))

    def issubset(self, other: "PeriodicSet") -> bool:
        return (self - other).cardinality().is_empty

    def __le__(self, other: "PeriodicSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "PeriodicSet") -> bool:
        return self != other and self.issubset(other)

    def prefix(self, m: int) -> tuple[int, ...]:
        """Members among the first ``m`` universe elements, in universe order."""
        if m < 0:
            raise ValueError("prefix length must be >= 0")
        return tuple(
            x for x in (universe_elem(i) for i in range(1, m + 1)) if x in self
        )

    def iter_universe_order(self) -> Iterator[int]:
        """Yield every member exactly once, in zigzag universe order.

        Terminates for finite sets, runs forever for infinite ones.
        """
        card = self.cardinality()
        if card.is_empty:
            return
        remaining = card.count
        rank = 1
        while True:
            x = universe_elem(rank)
            if x in self:
                yield x
                if remaining is not None:
                    remaining -= 1
                    if remaining == 0:
                        return
            rank += 1

    def first_not_in(self, seen: Callable[[int], bool] | set[int]) -> int | None:
        """First member (universe order) outside ``seen``; None if exhausted."""
        if isinstance(seen, set):
            check = seen.__contains__
        else:
            check = seen
        for x in self.iter_universe_order():
            if not check(x):
                return x
        return None

    def membership_range(self, lo: int, hi: int) -> list[bool]:
        """Membership table for every integer in [lo, hi], inclusive."""
        if lo > hi:
            return []
        np_, nr = self.neg_period, self.neg_residues
        pp, pr = self.pos_period, self.pos_residues
        win = self.window
        left_end = min(hi, self.lo - 1)
        mid_end = min(hi, self.hi)
        out = [x % np_ in nr for x in range(lo, left_end + 1)]
        out += [x in win for x in range(max(lo, self.lo), mid_end + 1)]
        out += [x % pp in pr for x in range(max(lo, self.hi + 1), hi + 1)]
        return out

    def rank_mask_block(self, start_rank: int, count: int) -> int:
        """Bitmask of membership over universe ranks [start_rank, start_rank+count).

        Bit ``i`` is set when universe_elem(start_rank + i) is a member.
        """
        lo, hi, win = self.lo, self.hi, self.window
        np_, nr = self.neg_period, self.neg_residues
        pp, pr = self.pos_period, self.pos_residues
        bits = 0
        r = start_rank
        for i in range(count):
            if r == 1:
                x = 0
            elif r % 2 == 0:
                x = r // 2
            else:
                x = -(r // 2)
            if x < lo:
                ok = x % np_ in nr
            elif x > hi:
                ok = x % pp in pr
            else:
                ok = x in win
            if ok:
                bits |= 1 << i
            r += 1
        return bits

    def span(self) -> int:
        """Crude size measure used for escalation bounds: window plus periods."""
        return (self.hi - self.lo + 1) + self.neg_period + self.pos_period

    # ------------------------------------------------------------------
    # Boolean algebra
    # ------------------------------------------------------------------

    def __or__(self, other: "PeriodicSet") -> "PeriodicSet":
        return _combine(self, other, lambda p, q: p or q)

    def __and__(self, other: "PeriodicSet") -> "PeriodicSet":
        return _combine(self, other, lambda p, q: p and q)

    def __sub__(self, other: "PeriodicSet") -> "PeriodicSet":
        return _combine(self, other, lambda p, q: p and not q)

    def complement(self) -> "PeriodicSet":
        """Complement within the full set of integers."""
        nr = frozenset(r for r in range(self.neg_period) if r not in self.neg_residues)
        pr = frozenset(r for r in range(self.pos_period) if r not in self.pos_residues)
        win = frozenset(
            x for x in range(self.lo, self.hi + 1) if x not in self.window
        )
        return _canonicalize(self.neg_period, nr, self.lo, self.hi, win, self.pos_period, pr)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"PeriodicSet(neg={self.neg_period}:{sorted(self.neg_residues)}, "
            f"[{self.lo},{self.hi}]={sorted(self.window)}, "
            f"pos={self.pos_period}:{sorted(self.pos_residues)})"
        )


# ----------------------------------------------------------------------
# Canonicalization
# ----------------------------------------------------------------------


def _minimal_rule(period: int, residues: frozenset[int]) -> tuple[int, frozenset[int]]:
    # Smallest divisor of the period under which the residue set is shift
    # invariant; the reduced rule decides the same predicate.
    for cand in range(1, period + 1):
        if period % cand:
            continue
        if all(((r + cand) % period in residues) == (r in residues) for r in range(period)):
            return cand, frozenset(r for r in range(cand) if r in residues)
    return period, residues


def _canonicalize(
    neg_period: int,
    neg_residues: frozenset[int],
    lo: int,
    hi: int,
    window: frozenset[int],
    pos_period: int,
    pos_residues: frozenset[int],
) -> PeriodicSet:
    """Reduce both tail rules to minimal period and the window to the unique
    tightest placement, so equal sets get identical field tuples."""
    np_, nr = _minimal_rule(neg_period, neg_residues)
    pp, pr = _minimal_rule(pos_period, pos_residues)

    def mem(x: int) -> bool:
        if x < lo:
            return x % np_ in nr
        if x > hi:
            return x % pp in pr
        return x in window

    def neg_rule(x: int) -> bool:
        return x % np_ in nr

    def pos_rule(x: int) -> bool:
        return x % pp in pr

    period = lcm(np_, pp)
    rules_differ = any(neg_rule(r) != pos_rule(r) for r in range(period))

    # a: least point violating the negative-tail rule (None if there is none).
    a: int | None = None
    for x in range(lo, hi + 1):
        if mem(x) != neg_rule(x):
            a = x
            break
    if a is None and rules_differ:
        for x in range(hi + 1, hi + 1 + period):
            if pos_rule(x) != neg_rule(x):
                a = x
                break

    # b: greatest point violating the positive-tail rule.
    b: int | None = None
    for x in range(hi, lo - 1, -1):
        if mem(x) != pos_rule(x):
            b = x
            break
    if b is None and rules_differ:
        for x in range(lo - 1, lo - 1 - period, -1):
            if neg_rule(x) != pos_rule(x):
                b = x
                break

    if a is not None and b is not None and a <= b:
        new_lo, new_hi = a, b
    else:
        # Degenerate case: any single-cell window inside [b, a] works, so
        # anchor it at the point of [b, a] closest to zero.
        c = min(a, 0) if a is not None else 0
        if b is not None:
            c = max(b, c)
        new_lo = new_hi = c

    new_window = frozenset(x for x in range(new_lo, new_hi + 1) if mem(x))
    return PeriodicSet(np_, nr, new_lo, new_hi, new_window, pp, pr)


def _combine(
    a: PeriodicSet, b: PeriodicSet, op: Callable[[bool, bool], bool]
) -> PeriodicSet:
    # Pointwise combination: lcm of tail periods, window widened past both
    # operands by a full period on each side, then re-canonicalized.
    np_ = lcm(a.neg_period, b.neg_period)
    pp = lcm(a.pos_period, b.pos_period)
    nr = frozenset(
        r
        for r in range(np_)
        if op(r % a.neg_period in a.neg_residues, r % b.neg_period in b.neg_residues)
    )
    pr = frozenset(
        r
        for r in range(pp)
        if op(r % a.pos_period in a.pos_residues, r % b.pos_period in b.pos_residues)
    )
    lo = min(a.lo, b.lo) - np_
    hi = max(a.hi, b.hi) + pp
    win = frozenset(x for x in range(lo, hi + 1) if op(x in a, x in b))
    return _canonicalize(np_, nr, lo, hi, win, pp, pr)


# ----------------------------------------------------------------------
# Named languages used throughout the proof-construction scenarios
# ----------------------------------------------------------------------


def all_integers() -> PeriodicSet:
    """I: every integer."""
    return PeriodicSet.build(1, {0}, 0, 0, {0}, 1, {0})


def odd_positives() -> PeriodicSet:
    """O: 1, 3, 5, ..."""
    return PeriodicSet.ray(1, 2)


def even_nonnegatives() -> PeriodicSet:
    """E: 0, 2, 4, ..."""
    return PeriodicSet.ray(0, 2)


def negative_integers() -> PeriodicSet:
    """N: -1, -2, -3, ..."""
    return PeriodicSet.ray(-1, -1)


def naturals() -> PeriodicSet:
    """0, 1, 2, ..."""
    return PeriodicSet.ray(0, 1)


def y_set(a: int) -> PeriodicSet:
    """Grammar atom Y(-a): the block {-a, ..., 0} together with E (a >= 0)."""
    if a < 0:
        raise ValueError("Y parameter must be >= 0")
    return PeriodicSet.finite(range(-a, 1)) | even_nonnegatives()


def q_set(b: int) -> PeriodicSet:
    """Grammar atom Q(-b): every integer <= -b together with O (b >= 1)."""
    if b < 1:
        raise ValueError("Q parameter must be >= 1")
    return PeriodicSet.ray(-b, -1) | odd_positives()
