"""Product-set expansion: word balls, triple products, growth reports.

The working objects are ElementSets, deduplicated collections of group
elements over one ambient SL_n(F_p).  A_r is computed left-to-right as
S * A_{r-1} with S = A u A^{-1} u {1}; the triple product A*A*A is
(A*A)*A with deduplication after every stage and no symmetrization.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional

from .errors import BudgetExceeded, Indeterminate
from .matrices import Mat, SpecialLinear

DEFAULT_MAX_ELEMENTS = 20_000_000


@dataclass(frozen=True)
class Budget:
    """Caps on stored elements and wall-clock seconds for expansions."""

    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_seconds: Optional[float] = None

    def start_clock(self) -> Optional[float]:
        if self.max_seconds is None:
            return None
        return time.monotonic() + self.max_seconds


DEFAULT_BUDGET = Budget()


class ElementSet:
    """Deduplicated set of elements of one SL_n(F_p).

    Members are flat canonical tuples, which makes tuple identity and
    canonical-byte identity the same thing; encoding only happens at
    serialization boundaries.
    """

    __slots__ = ("space", "members")

    def __init__(self, space: SpecialLinear, members: frozenset):
        self.space = space
        self.members = members

    @classmethod
    def from_matrices(cls, space: SpecialLinear, mats: Iterable[Mat]) -> "ElementSet":
        """Validating constructor: every member must lie in SL_n(F_p)."""
        checked = frozenset(space.check_member(tuple(g)) for g in mats)
        return cls(space, checked)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in self.members

    def __eq__(self, other):
        return (
            isinstance(other, ElementSet)
            and other.space == self.space
            and other.members == self.members
        )

    def __repr__(self):
        return f"ElementSet({self.space!r}, {len(self.members)} elements)"

    def union(self, other: "ElementSet") -> "ElementSet":
        _require_same_space(self, other)
        return ElementSet(self.space, self.members | other.members)

    def sorted_members(self) -> list[Mat]:
        """Members in canonical (byte-lexicographic) order."""
        return sorted(self.members)

    def dump_lines(self) -> list[str]:
        """Element dump: header then one hex-encoded element per line."""
        space = self.space
        lines = [f"n={space.n} p={space.p} count={len(self.members)}"]
        lines.extend(space.encode(g).hex() for g in self.sorted_members())
        return lines


def _require_same_space(a: ElementSet, b: ElementSet):
    if a.space != b.space:
        raise ValueError(f"ambient mismatch: {a.space!r} vs {b.space!r}")


def symmetrized(A: ElementSet) -> ElementSet:
    """A u A^{-1} u {identity}."""
    space = A.space
    members = set(A.members)
    members.update(space.inv(g) for g in A.members)
    members.add(space.identity())
    return ElementSet(space, frozenset(members))


def _expand_frontier(space, seed_members, frontier, workers):
    """All products s*x for s in the seed, x in the frontier.

    The frontier is partitioned into slices and the partial results are
    merged by set union, so the outcome is independent of slicing.
    """
    mul = space.mul
    seed = seed_members

    def produce(chunk):
        out = set()
        for x in chunk:
            for s in seed:
                out.add(mul(s, x))
        return out

    if workers <= 1 or len(frontier) < 2 * workers:
        return produce(frontier)
    chunk_size = (len(frontier) + workers - 1) // workers
    chunks = [
        frontier[i : i + chunk_size] for i in range(0, len(frontier), chunk_size)
    ]
    merged: set = set()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for partial in pool.map(produce, chunks):
            merged |= partial
    return merged


def _check_budget(count, budget: Budget, deadline, what: str):
    if count > budget.max_elements:
        raise BudgetExceeded(
            f"{what} exceeded {budget.max_elements} stored elements",
            partial_count=count,
        )
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded(
            f"{what} exceeded {budget.max_seconds} seconds", partial_count=count
        )


def _ball_profile(A: ElementSet, radius: int, budget: Budget, workers: int,
                  snapshots_at=()):
    """Expand to the given radius, recording |A_r| per radius and
    optional set snapshots.  Returns (final set, sizes, snapshots)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    space = A.space
    deadline = budget.start_clock()
    seed = sorted(symmetrized(A).members)
    ball = set(seed)
    _check_budget(len(ball), budget, deadline, "word ball")
    frontier = list(seed)
    sizes = {1: len(ball)}
    snapshots = {}
    if 1 in snapshots_at:
        snapshots[1] = frozenset(ball)
    for r in range(2, radius + 1):
        if frontier:
            produced = _expand_frontier(space, seed, frontier, workers)
            produced -= ball
            ball |= produced
            frontier = list(produced)
            _check_budget(len(ball), budget, deadline, "word ball")
        sizes[r] = len(ball)
        if r in snapshots_at:
            snapshots[r] = frozenset(ball)
    return ball, sizes, snapshots


def word_ball(A: ElementSet, radius: int, budget: Budget = DEFAULT_BUDGET,
              workers: int = 1) -> ElementSet:
    """A_radius: all products of exactly `radius` factors drawn from
    A u A^{-1} u {1} (monotone in the radius since 1 is a factor)."""
    ball, _, _ = _ball_profile(A, radius, budget, workers)
    return ElementSet(A.space, frozenset(ball))


def triple_product(A: ElementSet, budget: Budget = DEFAULT_BUDGET,
                   workers: int = 1) -> ElementSet:
    """(A*A)*A with deduplication after each stage, no symmetrization."""
    space = A.space
    mul = space.mul
    deadline = budget.start_clock()
    members = A.sorted_members()
    aa: set = set()
    for a in members:
        for b in members:
            aa.add(mul(a, b))
        _check_budget(len(aa), budget, deadline, "double product")
    aaa: set = set()
    for ab in aa:
        for c in members:
            aaa.add(mul(ab, c))
        _check_budget(len(aaa), budget, deadline, "triple product")
    return ElementSet(space, frozenset(aaa))


def standard_generators(space: SpecialLinear) -> ElementSet:
    """The elementary transvection E_12(1) and the signed n-cycle."""
    n, p = space.n, space.p
    trans = [list(row) for row in space.to_rows(space.identity())]
    trans[0][1] = 1
    cyc = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        cyc[i][i + 1] = 1
    cyc[n - 1][0] = (-1) ** (n - 1) % p
    return ElementSet.from_matrices(
        space, [space.from_rows(trans), space.from_rows(cyc)]
    )


def generated_closure(space: SpecialLinear, A: Optional[ElementSet] = None,
                      budget: Budget = DEFAULT_BUDGET) -> frozenset:
    """Closure of A u A^{-1} under multiplication (the generated
    subgroup), by breadth-first search from the identity."""
    if A is None:
        A = standard_generators(space)
    order = space.order()
    if order > budget.max_elements:
        raise Indeterminate(
            f"group order {order} exceeds the closure budget "
            f"{budget.max_elements}"
        )
    deadline = budget.start_clock()
    mul = space.mul
    gens = set(A.members)
    gens.update(space.inv(g) for g in A.members)
    gens = sorted(gens)
    visited = {space.identity()}
    frontier = [space.identity()]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in visited:
                    visited.add(y)
                    next_frontier.append(y)
        if len(visited) == order:
            return frozenset(visited)
        _check_budget(len(visited), budget, deadline, "subgroup closure")
        frontier = next_frontier
    return frozenset(visited)


def full_group(space: SpecialLinear, budget: Budget = DEFAULT_BUDGET) -> ElementSet:
    """All of SL_n(F_p) as an ElementSet (desk-scale orders only)."""
    closure = generated_closure(space, budget=budget)
    if len(closure) != space.order():
        raise RuntimeError("standard generators failed to generate; bug")
    return ElementSet(space, closure)


def generates(A: ElementSet, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Does A generate the whole group?  Indeterminate when |G| exceeds
    the closure budget."""
    space = A.space
    closure = generated_closure(space, A, budget)
    return len(closure) == space.order()


@dataclass
class GrowthReport:
    """One growth experiment, CSV- and JSON-serializable.

    epsilon_hat is log|AAA|/log|A| - 1; the measured exponents
    log|A_k|/log|A| - 1 ride along per requested radius so tripling and
    ball growth can be compared directly.
    """

    n: int
    p: int
    size_a: int
    size_aaa: int
    epsilon_hat: float
    group_order: int
    saturated: bool
    degenerate: bool
    generation_checked: bool
    generation_ok: Optional[bool]
    ball_sizes: dict = dc_field(default_factory=dict)
    ball_exponents: dict = dc_field(default_factory=dict)

    @property
    def sizes(self) -> dict:
        out = {"A": self.size_a, "AAA": self.size_aaa}
        for k, v in sorted(self.ball_sizes.items()):
            out[f"A_{k}"] = v
        return out

    @staticmethod
    def csv_header(ks) -> list[str]:
        return ["n", "p", "size_A", "size_AAA", "epsilon_hat", "saturated"] + [
            f"size_A_{k}" for k in sorted(ks)
        ]

    def csv_row(self, ks) -> list[str]:
        row = [
            str(self.n),
            str(self.p),
            str(self.size_a),
            str(self.size_aaa),
            repr(self.epsilon_hat),
            "true" if self.saturated else "false",
        ]
        row.extend(str(self.ball_sizes[k]) for k in sorted(ks))
        return row

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "p": self.p,
            "size_A": self.size_a,
            "size_AAA": self.size_aaa,
            "epsilon_hat": self.epsilon_hat,
            "group_order": self.group_order,
            "saturated": self.saturated,
            "degenerate": self.degenerate,
            "generation_checked": self.generation_checked,
            "generation_ok": self.generation_ok,
        }
        for k in sorted(self.ball_sizes):
            out[f"size_A_{k}"] = self.ball_sizes[k]
            out[f"exponent_A_{k}"] = self.ball_exponents[k]
        return out


def growth_scan(A: ElementSet, ks=(), budget: Budget = DEFAULT_BUDGET,
                workers: int = 1, check_generation: bool = True) -> GrowthReport:
    """Measure |A|, |A*A*A|, epsilon_hat, and ball sizes for each k.

    Generation is checked when the group order fits the budget,
    otherwise skipped and flagged; epsilon_hat degenerates to 0 with a
    flag when |A| <= 1.
    """
    space = A.space
    ks = sorted(set(ks))
    if any(k < 1 for k in ks):
        raise ValueError("ball radii must be >= 1")
    order = space.order()
    generation_checked = False
    generation_ok: Optional[bool] = None
    if check_generation and order <= budget.max_elements:
        generation_ok = generates(A, budget)
        generation_checked = True
    size_a = len(A)
    aaa = triple_product(A, budget, workers)
    size_aaa = len(aaa)
    degenerate = size_a <= 1
    if degenerate:
        epsilon_hat = 0.0
    else:
        epsilon_hat = math.log(size_aaa) / math.log(size_a) - 1.0
    ball_sizes: dict = {}
    ball_exponents: dict = {}
    if ks:
        _, sizes, _ = _ball_profile(A, max(ks), budget, workers)
        for k in ks:
            ball_sizes[k] = sizes[k]
            if degenerate:
                ball_exponents[k] = 0.0
            else:
                ball_exponents[k] = math.log(sizes[k]) / math.log(size_a) - 1.0
    return GrowthReport(
        n=space.n,
        p=space.p,
        size_a=size_a,
        size_aaa=size_aaa,
        epsilon_hat=epsilon_hat,
        group_order=order,
        saturated=size_aaa == order,
        degenerate=degenerate,
        generation_checked=generation_checked,
        generation_ok=generation_ok,
        ball_sizes=ball_sizes,
        ball_exponents=ball_exponents,
    )
