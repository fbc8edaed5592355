"""Simulated oracles for the four decider capabilities.

Each constructor returns an oracle whose input/output behavior satisfies the
declared contract (checked against brute force by the test suite), built over
exhaustive counting at desk scale.  Oracles are deterministic: the same input
always produces the same output, which the deciders' duplicate-image pruning
relies on.  The only mutable state is the per-instance call counter and the
style-internal image/count memos, so instances should be confined to one
thread (results never depend on interleaving, the counter is not atomic).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidBound, TooLarge
from .formula import (
    And,
    Const,
    Formula,
    Not,
    Or,
    Var,
    brute_force_count,
    brute_force_sat,
    serialize,
    simplify,
    substitute,
    variables,
)

NON_TALLY_TOKEN = "1"

TALLY_STYLES = ("canonical", "collision_rich", "spread")
SPARSE_STYLES = ("singleton", "scatter")
ENUMERATOR_STYLES = ("exact_plus_offset", "woeginger")
SELECTOR_STYLES = ("honest", "adversarial")


def is_tally_string(text: str) -> bool:
    """True for strings over the single letter 0 (the empty string counts)."""
    return all(ch == "0" for ch in text)


@dataclass(frozen=True, init=False)
class PolynomialBound:
    """Polynomial with nonnegative coefficients, nondecreasing on naturals."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients) -> None:
        coeffs = tuple(int(c) for c in coefficients)
        if any(c < 0 for c in coeffs):
            raise InvalidBound(f"negative coefficient in {coeffs}")
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, n: int) -> int:
        value = 0
        for coefficient in reversed(self.coefficients):
            value = value * n + coefficient
        return value


class SelectorOracle:
    """Always returns one of its two arguments; returns a satisfiable one
    whenever either argument is satisfiable."""

    def __init__(self, choose_fn: Callable[[Formula, Formula], Formula]) -> None:
        self._choose = choose_fn
        self.call_counter = 0

    def choose(self, a: Formula, b: Formula) -> Formula:
        self.call_counter += 1
        return self._choose(a, b)


class TallyReductionOracle:
    """Many-one reduction into a tally set: F is satisfiable iff the image is
    a member of the oracle's internal tally set."""

    def __init__(self, map_fn: Callable[[Formula], str]) -> None:
        self._map = map_fn
        self.call_counter = 0

    def map(self, formula: Formula) -> str:
        self.call_counter += 1
        return self._map(formula)


class SparseCoReductionOracle:
    """Many-one reduction of unsatisfiability into a sparse set, carrying the
    declared census bound q and image-length bound r."""

    def __init__(
        self,
        map_fn: Callable[[Formula], str],
        q: PolynomialBound,
        r: PolynomialBound,
    ) -> None:
        self._map = map_fn
        self.q = q
        self.r = r
        self.call_counter = 0

    def map(self, formula: Formula) -> str:
        self.call_counter += 1
        return self._map(formula)


class TwoEnumeratorOracle:
    """Outputs one or two candidate model counts; the true count is always in
    the list."""

    def __init__(self, enumerate_fn: Callable[[Formula], list[int]]) -> None:
        self._enumerate = enumerate_fn
        self.call_counter = 0

    def enumerate(self, formula: Formula) -> list[int]:
        self.call_counter += 1
        return self._enumerate(formula)


def _digest_int(*parts: object) -> int:
    payload = "\x1f".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def _memoized_sat() -> Callable[[Formula], bool]:
    cache: dict[str, bool] = {}

    def sat(formula: Formula) -> bool:
        key = serialize(formula)
        if key not in cache:
            cache[key] = brute_force_sat(formula)
        return cache[key]

    return sat


def honest_selector() -> SelectorOracle:
    """Selector that prefers its first argument, satisfiable ones first."""
    sat = _memoized_sat()

    def choose(a: Formula, b: Formula) -> Formula:
        if serialize(a) == serialize(b):
            return a
        if sat(a):
            return a
        if sat(b):
            return b
        return a

    return SelectorOracle(choose)


def adversarial_selector(seed: int) -> SelectorOracle:
    """Contract-respecting but unhelpful: whenever the contract allows either
    argument, the pick is pseudo-random from the seed."""
    sat = _memoized_sat()

    def choose(a: Formula, b: Formula) -> Formula:
        key_a, key_b = serialize(a), serialize(b)
        if key_a == key_b:
            return a
        sat_a, sat_b = sat(a), sat(b)
        if sat_a != sat_b:
            return a if sat_a else b
        return a if _digest_int(seed, key_a, key_b) % 2 == 0 else b

    return SelectorOracle(choose)


def simulated_tally_reduction(style: str) -> TallyReductionOracle:
    """Tally-set reduction in one of three styles.

    canonical: T = {00}; every satisfiable formula maps to "00", every
    unsatisfiable one to "0" (maximal collisions).  collision_rich: T = {0};
    unsatisfiable formulas map to the non-tally token.  spread: T = the
    even-length zero strings; images are bucketed by encoded length mod 8.
    """
    sat = _memoized_sat()
    if style == "canonical":
        map_fn = lambda f: "00" if sat(f) else "0"
    elif style == "collision_rich":
        map_fn = lambda f: "0" if sat(f) else NON_TALLY_TOKEN
    elif style == "spread":

        def map_fn(f: Formula) -> str:
            bucket = len(serialize(f)) % 8
            return "0" * (2 * bucket if sat(f) else 2 * bucket + 1)

    else:
        raise ValueError(f"unknown tally style {style!r}; expected one of {TALLY_STYLES}")
    return TallyReductionOracle(map_fn)


def simulated_sparse_coreduction(style: str, seed: int = 0) -> SparseCoReductionOracle:
    """Sparse-set co-reduction in one of two styles.

    singleton: S = {"1"}; unsatisfiable formulas map to "1", satisfiable ones
    to pairwise-distinct "0"-prefixed strings numbered by first arrival.
    scatter: S = the all-ones strings of length 1..16; unsatisfiable formulas
    land in a seed-chosen member, satisfiable ones get arrival-numbered
    distinct images outside S, so frontiers of diverse satisfiable nodes are
    never collapsed by deduplication.
    """
    sat = _memoized_sat()
    # Arrival numbering keeps images functional within an oracle's lifetime;
    # lengths stay under r as long as fewer than 2^16 satisfiable formulas
    # are seen, far beyond desk scale.
    images: dict[str, str] = {}

    def fresh_image(key: str) -> str:
        if key not in images:
            images[key] = "0" + format(len(images), "b")
        return images[key]

    if style == "singleton":
        q = PolynomialBound((1, 1))
        r = PolynomialBound((16, 1))

        def map_fn(f: Formula) -> str:
            key = serialize(f)
            return fresh_image(key) if sat(f) else "1"

    elif style == "scatter":
        q = PolynomialBound((2, 2))
        r = PolynomialBound((32, 1))

        def map_fn(f: Formula) -> str:
            key = serialize(f)
            if sat(f):
                return fresh_image(key)
            return "1" * (1 + _digest_int(seed, key) % 16)

    else:
        raise ValueError(f"unknown sparse style {style!r}; expected one of {SPARSE_STYLES}")
    return SparseCoReductionOracle(map_fn, q, r)


def honest_two_enumerator(style: str, seed: int = 0) -> TwoEnumeratorOracle:
    """Two-enumerator whose output list always contains the true count.

    exact_plus_offset pairs the true count c with c+d for a seeded
    pseudo-random d in {-1, +1, c+1}, clamped at zero and sorted.  woeginger
    answers [0, 1] whenever c is 0 or 1, and falls back to exact_plus_offset
    otherwise.
    """
    if style not in ENUMERATOR_STYLES:
        raise ValueError(
            f"unknown enumerator style {style!r}; expected one of {ENUMERATOR_STYLES}"
        )
    counts: dict[str, int] = {}

    def true_count(f: Formula) -> int:
        key = serialize(f)
        if key not in counts:
            counts[key] = exact_model_count(f)
        return counts[key]

    def with_offset(f: Formula, c: int) -> list[int]:
        roll = _digest_int(seed, serialize(f), "offset") % 3
        delta = (-1, 1, c + 1)[roll]
        return sorted({c, max(0, c + delta)})

    def enumerate_fn(f: Formula) -> list[int]:
        c = true_count(f)
        if style == "woeginger" and c in (0, 1):
            return [0, 1]
        return with_offset(f, c)

    return TwoEnumeratorOracle(enumerate_fn)


# The enumerator is exercised on combined formulas whose variable count is
# roughly triple the input's, so it cannot lean on the naive brute force.
# This counter is exact and structure-aware: conjunctions split into
# variable-disjoint components, everything else Shannon-splits on the most
# frequent variable, and small residues fall through to the truth table.
_BIT_PARALLEL_LIMIT = 18
_DEFAULT_COUNT_BUDGET = 50_000


def exact_model_count(formula: Formula, budget: int = _DEFAULT_COUNT_BUDGET) -> int:
    """Exact model count over vars(formula); raises TooLarge if the formula
    resists decomposition within the work budget."""
    remaining = [budget]
    memo: dict[str, int] = {}
    simplified = simplify(formula)
    lift = len(variables(formula)) - len(variables(simplified))
    return _component_count(simplified, memo, remaining) << lift


def _component_count(formula: Formula, memo: dict[str, int], remaining: list[int]) -> int:
    if isinstance(formula, Const):
        return 1 if formula.value else 0
    remaining[0] -= 1
    if remaining[0] < 0:
        raise TooLarge("formula resists decomposition within the counting budget")
    key = serialize(formula)
    if key in memo:
        return memo[key]
    occurring = variables(formula)
    k = len(occurring)
    if k <= _BIT_PARALLEL_LIMIT:
        result = brute_force_count(formula, limit=_BIT_PARALLEL_LIMIT)
        memo[key] = result
        return result

    if isinstance(formula, And):
        groups = _disjoint_groups(formula.children)
        if len(groups) > 1:
            result = 1
            for group in groups:
                part = group[0] if len(group) == 1 else And(*group)
                result *= _component_count(part, memo, remaining)
                if result == 0:
                    break
            memo[key] = result
            return result

    split_var = _most_frequent_variable(formula)
    slots = k - 1
    result = 0
    for value in (True, False):
        child = substitute(formula, split_var, value)
        child_count = _component_count(child, memo, remaining)
        result += child_count << (slots - len(variables(child)))
    memo[key] = result
    return result


def _disjoint_groups(children: tuple[Formula, ...]) -> list[list[Formula]]:
    groups: list[tuple[set[int], list[Formula]]] = []
    for child in children:
        child_vars = set(variables(child))
        merged_vars, merged_children = child_vars, [child]
        kept = []
        for group_vars, group_children in groups:
            if group_vars & child_vars:
                merged_vars |= group_vars
                merged_children = group_children + merged_children
            else:
                kept.append((group_vars, group_children))
        kept.append((merged_vars, merged_children))
        groups = kept
    return [children_ for _, children_ in groups]


def _most_frequent_variable(formula: Formula) -> int:
    counts: dict[int, int] = {}

    def walk(node: Formula) -> None:
        match node:
            case Const():
                return
            case Var(index):
                counts[index] = counts.get(index, 0) + 1
            case Not(child):
                walk(child)
            case And(children) | Or(children):
                for child in children:
                    walk(child)

    walk(formula)
    # Ties break toward the highest index: fresh variables sit above renamed
    # operand ranges, and splitting them decomposes combined formulas.
    return max(counts, key=lambda index: (counts[index], index))
