"""Breadth-first self-reducibility-tree deciders with per-level pruning.

Both deciders walk the tree one level at a time, splitting every surviving
node on its least variable and mapping each child through the reduction.
The tally decider discards children with non-tally images and keeps one node
per duplicate image; equal images mean the nodes stand or fall together, so
a level's satisfiability is preserved and the frontier stays narrow.  The
sparse decider has only duplicate pruning, but the moment a level holds more
distinct labels than the sparse set can contain (1 + q(r(m))) some surviving
node must map outside the set and hence be satisfiable: early_accept mode
declares satisfiability on the spot, capped_continue keeps exactly that many
nodes and descends anyway.

Within a level, children are generated True branch before False branch with
parents in level order, and dedup keeps the first occurrence, so traces are
deterministic.  Constant nodes ride along unchanged until every node is
constant; the verdict is whether any surviving leaf evaluates to True.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EncodingInvariantBroken, InvalidBound
from .formula import (
    Const,
    Formula,
    evaluate,
    serialize,
    serialized_length,
    simplify,
    substitute,
    variables,
)
from .oracles import (
    SparseCoReductionOracle,
    TallyReductionOracle,
    is_tally_string,
)

NON_TALLY = "non_tally"
DUPLICATE_IMAGE = "duplicate_image"

OUTCOME_SAT = "sat"
OUTCOME_UNSAT = "unsat"
OUTCOME_EARLY_SAT = "early_sat"

SPARSE_MODES = ("early_accept", "capped_continue")


@dataclass(frozen=True)
class PruneEvent:
    kind: str
    discarded: str
    surviving_image: str | None = None


@dataclass
class TreeLevel:
    """Post-prune frontier at one depth: (formula, image) pairs."""

    depth: int
    nodes: list[tuple[Formula, str]]
    prune_events: list[PruneEvent]

    @property
    def images(self) -> list[str]:
        return [image for _, image in self.nodes]


@dataclass
class LevelStats:
    widths: list[tuple[int, int]]  # (pre_prune, post_prune) per level
    oracle_calls: int
    outcome: str
    levels: list[TreeLevel]
    threshold: int | None = None  # sparse: q(r(m))
    crossed_at: int | None = None  # sparse: first level reaching 1 + threshold
    capped_levels: list[int] = field(default_factory=list)
    empty_frontier: bool = False

    @property
    def max_width(self) -> int:
        return max((pre for pre, _ in self.widths), default=0)


def _constant_stats(value: bool) -> LevelStats:
    return LevelStats(
        widths=[],
        oracle_calls=0,
        outcome=OUTCOME_SAT if value else OUTCOME_UNSAT,
        levels=[],
    )


def _split_frontier(
    frontier: list[tuple[Formula, str]],
    oracle_map,
    root_length: int,
) -> list[tuple[Formula, str]]:
    """One level of splitting; constants pass through without a new call."""
    children: list[tuple[Formula, str]] = []
    for node, image in frontier:
        if isinstance(node, Const):
            children.append((node, image))
            continue
        split_var = min(variables(node))
        for value in (True, False):
            child = substitute(node, split_var, value)
            if serialized_length(child) > root_length:
                raise EncodingInvariantBroken(
                    f"child {serialize(child)!r} exceeds the input length {root_length}"
                )
            children.append((child, oracle_map(child)))
    return children


def decide_via_tally(
    formula: Formula, oracle: TallyReductionOracle
) -> tuple[bool, LevelStats]:
    """Decide satisfiability given a reduction of SAT to a tally set."""
    root = simplify(formula)
    if isinstance(root, Const):
        return root.value, _constant_stats(root.value)

    calls = 0

    def mapped(node: Formula) -> str:
        nonlocal calls
        calls += 1
        return oracle.map(node)

    root_length = serialized_length(formula)
    root_image = mapped(root)
    levels: list[TreeLevel] = []
    widths: list[tuple[int, int]] = []
    if not is_tally_string(root_image):
        levels.append(TreeLevel(0, [], [PruneEvent(NON_TALLY, serialize(root))]))
        widths.append((1, 0))
        return False, LevelStats(widths, calls, OUTCOME_UNSAT, levels)

    frontier = [(root, root_image)]
    levels.append(TreeLevel(0, list(frontier), []))
    widths.append((1, 1))
    depth = 0
    while any(not isinstance(node, Const) for node, _ in frontier):
        depth += 1
        children = _split_frontier(frontier, mapped, root_length)
        kept: list[tuple[Formula, str]] = []
        seen: set[str] = set()
        events: list[PruneEvent] = []
        for child, image in children:
            if not is_tally_string(image):
                events.append(PruneEvent(NON_TALLY, serialize(child)))
            elif image in seen:
                events.append(PruneEvent(DUPLICATE_IMAGE, serialize(child), image))
            else:
                seen.add(image)
                kept.append((child, image))
        widths.append((len(children), len(kept)))
        levels.append(TreeLevel(depth, list(kept), events))
        frontier = kept
        if not frontier:
            return False, LevelStats(widths, calls, OUTCOME_UNSAT, levels)

    verdict = any(evaluate(node, {}) for node, _ in frontier)
    outcome = OUTCOME_SAT if verdict else OUTCOME_UNSAT
    return verdict, LevelStats(widths, calls, outcome, levels)


def decide_via_sparse(
    formula: Formula,
    oracle: SparseCoReductionOracle,
    mode: str = "early_accept",
) -> tuple[bool, LevelStats]:
    """Decide satisfiability given a co-reduction into a sparse set."""
    if mode not in SPARSE_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {SPARSE_MODES}")
    for bound in (oracle.q, oracle.r):
        if any(c < 0 for c in bound.coefficients):
            raise InvalidBound(f"negative coefficient in {bound.coefficients}")

    root = simplify(formula)
    if isinstance(root, Const):
        return root.value, _constant_stats(root.value)

    calls = 0

    def mapped(node: Formula) -> str:
        nonlocal calls
        calls += 1
        return oracle.map(node)

    root_length = serialized_length(formula)
    label_budget = oracle.q(oracle.r(root_length))  # distinct labels S can absorb
    levels: list[TreeLevel] = []
    widths: list[tuple[int, int]] = []
    capped_levels: list[int] = []
    crossed_at: int | None = None

    def stats(outcome: str, empty: bool = False) -> LevelStats:
        return LevelStats(
            widths,
            calls,
            outcome,
            levels,
            threshold=label_budget,
            crossed_at=crossed_at,
            capped_levels=capped_levels,
            empty_frontier=empty,
        )

    frontier = [(root, mapped(root))]
    depth = 0
    widths.append((1, 1))
    levels.append(TreeLevel(0, list(frontier), []))
    while True:
        if len(frontier) >= label_budget + 1:
            if crossed_at is None:
                crossed_at = depth
            if mode == "early_accept":
                return True, stats(OUTCOME_EARLY_SAT)
            frontier = frontier[: label_budget + 1]
            levels[-1].nodes = list(frontier)
            capped_levels.append(depth)
        if not frontier:
            return False, stats(OUTCOME_UNSAT, empty=True)
        if all(isinstance(node, Const) for node, _ in frontier):
            break
        depth += 1
        children = _split_frontier(frontier, mapped, root_length)
        kept: list[tuple[Formula, str]] = []
        seen: set[str] = set()
        events: list[PruneEvent] = []
        for child, image in children:
            if image in seen:
                events.append(PruneEvent(DUPLICATE_IMAGE, serialize(child), image))
            else:
                seen.add(image)
                kept.append((child, image))
        widths.append((len(children), len(kept)))
        levels.append(TreeLevel(depth, list(kept), events))
        frontier = kept

    verdict = any(evaluate(node, {}) for node, _ in frontier)
    outcome = OUTCOME_SAT if verdict else OUTCOME_UNSAT
    return verdict, stats(outcome)
