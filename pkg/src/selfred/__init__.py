"""SAT deciders and an exact model counter built on self-reducibility tree
pruning, driven by pluggable (simulated) oracles, with brute-force
verification at desk scale."""

from .counting import (
    CombineRecipe,
    Combine3Recipe,
    DecodedCounts,
    GuessTriple,
    Linkage,
    NaiveFailureReport,
    NaiveFailureWitness,
    combine,
    combine3,
    count_via_enumerator,
    decode,
    decode3,
    demonstrate_naive_failure,
    link_disagreeing_triples,
)
from .errors import (
    ConstantOperand,
    EncodingInvariantBroken,
    FormulaSyntaxError,
    IncompleteAssignment,
    InvalidBound,
    InvalidParams,
    MalformedInput,
    NoVariables,
    OracleContractViolation,
    SelfReducibilityError,
    TooLarge,
    UnknownVariable,
)
from .formula import (
    And,
    Assignment,
    Const,
    Formula,
    Not,
    Or,
    Var,
    all_assignments,
    brute_force_count,
    brute_force_limit,
    brute_force_sat,
    evaluate,
    parse,
    parse_dimacs,
    rename_variables,
    self_reduce,
    serialize,
    serialized_length,
    simplify,
    substitute,
    variables,
)
from .generate import generate_corpus, generate_random
from .oracles import (
    PolynomialBound,
    SelectorOracle,
    SparseCoReductionOracle,
    TallyReductionOracle,
    TwoEnumeratorOracle,
    adversarial_selector,
    exact_model_count,
    honest_selector,
    honest_two_enumerator,
    is_tally_string,
    simulated_sparse_coreduction,
    simulated_tally_reduction,
)
from .pruning import (
    LevelStats,
    PruneEvent,
    TreeLevel,
    decide_via_sparse,
    decide_via_tally,
)
from .selector import PathStep, PathTrace, decide_via_selector

__version__ = "0.1.0"

__all__ = [
    "And",
    "Assignment",
    "CombineRecipe",
    "Combine3Recipe",
    "Const",
    "ConstantOperand",
    "DecodedCounts",
    "EncodingInvariantBroken",
    "Formula",
    "FormulaSyntaxError",
    "GuessTriple",
    "IncompleteAssignment",
    "InvalidBound",
    "InvalidParams",
    "LevelStats",
    "Linkage",
    "MalformedInput",
    "NaiveFailureReport",
    "NaiveFailureWitness",
    "NoVariables",
    "Not",
    "Or",
    "OracleContractViolation",
    "PathStep",
    "PathTrace",
    "PolynomialBound",
    "PruneEvent",
    "SelectorOracle",
    "SelfReducibilityError",
    "SparseCoReductionOracle",
    "TallyReductionOracle",
    "TooLarge",
    "TreeLevel",
    "TwoEnumeratorOracle",
    "UnknownVariable",
    "Var",
    "adversarial_selector",
    "all_assignments",
    "brute_force_count",
    "brute_force_limit",
    "brute_force_sat",
    "combine",
    "combine3",
    "count_via_enumerator",
    "decide_via_selector",
    "decide_via_sparse",
    "decide_via_tally",
    "decode",
    "decode3",
    "demonstrate_naive_failure",
    "evaluate",
    "exact_model_count",
    "generate_corpus",
    "generate_random",
    "honest_selector",
    "honest_two_enumerator",
    "is_tally_string",
    "link_disagreeing_triples",
    "parse",
    "parse_dimacs",
    "rename_variables",
    "self_reduce",
    "serialize",
    "serialized_length",
    "simplify",
    "simulated_sparse_coreduction",
    "simulated_tally_reduction",
    "substitute",
    "variables",
]
