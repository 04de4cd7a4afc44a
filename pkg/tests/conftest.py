from __future__ import annotations

import pytest

from frolicher.complexes import double_complex_from_model
from frolicher.model import builtin


@pytest.fixture(scope="session")
def torus1():
    return builtin("torus2q", 1)


@pytest.fixture(scope="session")
def torus2():
    return builtin("torus2q", 2)


@pytest.fixture(scope="session")
def heisenberg():
    return builtin("heisenberg_symplectic")


@pytest.fixture(scope="session")
def nonlemma():
    return builtin("complex_nonlemma")


@pytest.fixture(scope="session")
def lemma_model():
    return builtin("complex_lemma")


@pytest.fixture(scope="session")
def nonlemma_dc(nonlemma):
    return double_complex_from_model(nonlemma)


@pytest.fixture(scope="session")
def lemma_dc(lemma_model):
    return double_complex_from_model(lemma_model)
