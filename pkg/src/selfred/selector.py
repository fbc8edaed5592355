"""SAT decision from a selector oracle by walking one root-to-leaf path.

The walk assigns every variable of the input in ascending index order.  At
each step the current formula is split on the variable (a degenerate
(current, current) split when the variable no longer occurs, which happens
once simplification has collapsed a branch) and the selector picks the child
to follow.  For a contract-valid selector the surviving formula is
satisfiable iff the input is, so the final constant is the verdict, and a
True verdict's branch choices form a satisfying assignment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedInput, OracleContractViolation
from .formula import (
    And,
    Const,
    Formula,
    Not,
    Or,
    Var,
    serialize,
    simplify,
    substitute,
    variables,
)
from .oracles import SelectorOracle


@dataclass(frozen=True)
class PathStep:
    split_var: int
    chosen_branch: bool
    chosen_formula: str


@dataclass(frozen=True)
class PathTrace:
    steps: tuple[PathStep, ...]
    final_value: bool
    oracle_calls: int

    def assignment(self) -> dict[int, bool]:
        """The branch choices, as an assignment of every walked variable."""
        return {step.split_var: step.chosen_branch for step in self.steps}


def decide_via_selector(
    formula: Formula, selector: SelectorOracle
) -> tuple[bool, PathTrace]:
    """Decide satisfiability with exactly one selector call per variable."""
    if not isinstance(formula, (Const, Var, Not, And, Or)):
        raise MalformedInput(f"not a formula: {formula!r}")
    current = simplify(formula)
    if isinstance(current, Const):
        return current.value, PathTrace(steps=(), final_value=current.value, oracle_calls=0)

    steps: list[PathStep] = []
    calls_before = selector.call_counter
    for split_var in sorted(variables(current)):  # fixed walk order over the input's variables
        if split_var in variables(current):
            true_child = substitute(current, split_var, True)
            false_child = substitute(current, split_var, False)
        else:
            true_child = false_child = current
        chosen = selector.choose(true_child, false_child)
        chosen_text = serialize(chosen)
        if chosen_text == serialize(true_child):
            branch = True
            current = true_child
        elif chosen_text == serialize(false_child):
            branch = False
            current = false_child
        else:
            raise OracleContractViolation(
                "selector returned a formula that is neither of its arguments"
            )
        steps.append(PathStep(split_var, branch, chosen_text))

    assert isinstance(current, Const)
    verdict = current.value
    trace = PathTrace(
        steps=tuple(steps),
        final_value=verdict,
        oracle_calls=selector.call_counter - calls_before,
    )
    return verdict, trace
