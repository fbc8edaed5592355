import pytest

from selfred.formula import And, Not, Or, Var, serialize
from selfred.generate import generate_corpus


def exhaustive_formulas(max_nodes: int = 7, var_indices=(1, 2, 3)):
    """Every canonical formula buildable as a binary parse tree of at most
    max_nodes nodes over the given variable leaves, deduplicated."""
    by_size = {1: [Var(i) for i in var_indices]}
    for size in range(2, max_nodes + 1):
        bucket = []
        seen = set()

        def add(formula):
            key = serialize(formula)
            if key not in seen:
                seen.add(key)
                bucket.append(formula)

        for child in by_size[size - 1]:
            add(Not(child))
        for left_size in range(1, size - 1):
            for left in by_size[left_size]:
                for right in by_size[size - 1 - left_size]:
                    add(And(left, right))
                    add(Or(left, right))
        by_size[size] = bucket

    seen_all = set()
    result = []
    for size in range(1, max_nodes + 1):
        for formula in by_size[size]:
            key = serialize(formula)
            if key not in seen_all:
                seen_all.add(key)
                result.append(formula)
    return result


@pytest.fixture(scope="session")
def exhaustive_corpus():
    return exhaustive_formulas(7, (1, 2, 3))


@pytest.fixture(scope="session")
def random_corpus():
    return generate_corpus(500, 10, seed=0)


@pytest.fixture(scope="session")
def full_corpus(exhaustive_corpus, random_corpus):
    return exhaustive_corpus + random_corpus
