from __future__ import annotations

import random
from fractions import Fraction

import pytest

from frolicher.complexes import (
    CochainComplex,
    DoubleComplex,
    double_complex_from_model,
    doub_construction,
    random_double_complex,
)
from frolicher.errors import GcdViolation, Unbounded
from frolicher.linalg import Matrix
from frolicher.symplectic import de_rham_complex
from frolicher.verdicts import (
    convergence_check,
    froelicher_bigraded,
    froelicher_symplectic,
    lemma_check,
    zgraded_equality_and_degeneration,
    zgraded_lemma,
)


def M(rows):
    return Matrix([[Fraction(x) for x in r] for r in rows])


# a single δ1 arrow (0,0) -> (1,0)
ARROW = DoubleComplex({(0, 0): 1, (1, 0): 1}, {(0, 0): M([[1]])}, {})

# x in degree 1 with d^Λx, dx and dd^Λx, plus a lone class in degree 2
SQUARE = CochainComplex(
    {0: 1, 1: 2, 2: 2},
    d={0: M([[0], [1]]), 1: M([[1, 0], [0, 0]])},
    d_lambda={1: M([[1, 0]]), 2: M([[0, 0], [-1, 0]])},
)


class TestBigradedLemma:
    def test_torus(self, torus2):
        v = lemma_check(double_complex_from_model(torus2))
        assert v.holds and all(v.six_conditions)

    def test_nonlemma(self, nonlemma_dc):
        v = lemma_check(nonlemma_dc)
        assert not v.holds and not any(v.six_conditions)

    def test_lemma_model_is_consistent(self, lemma_dc):
        v = lemma_check(lemma_dc)
        assert v.consistent
        # θ1∧θ3 = ∂θ4 is ∂-exact and ∂̄-closed but not ∂∂̄-exact
        assert not v.holds

    def test_arrow(self):
        v = lemma_check(ARROW)
        assert v.consistent and not v.holds

    def test_periodic_rejected(self, heisenberg):
        dc = doub_construction(de_rham_complex(heisenberg), 1, -1)
        with pytest.raises(Unbounded):
            lemma_check(dc)
        with pytest.raises(Unbounded):
            froelicher_bigraded(dc)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_ground_truth(self, seed):
        dc, truth = random_double_complex(random.Random(1000 + seed))
        v = lemma_check(dc)
        assert v.consistent and v.holds == truth


class TestBigradedInequality:
    def test_nonlemma_row(self, nonlemma_dc):
        rep = froelicher_bigraded(nonlemma_dc)
        row = rep.per_degree[1]
        assert (row["lhs"], row["rhs"], row["strict"]) == (10, 8, True)
        assert rep.inequality_holds and rep.lemma_equivalent

    def test_lemma_model_rows(self, lemma_dc):
        rep = froelicher_bigraded(lemma_dc)
        assert [(r["lhs"], r["rhs"]) for r in rep.per_degree.values()] == [(2, 2), (6, 6), (10, 8), (6, 6), (2, 2)]

    def test_arrow_separates_the_two_comparisons(self):
        rep = froelicher_bigraded(ARROW)
        # against H_δ1 + H_δ2 every degree is an equality, yet the lemma fails
        assert all(r["m1_equal"] for r in rep.per_degree.values())
        assert not rep.overall_equality and rep.lemma is False
        assert rep.lemma_equivalent


class TestZGraded:
    def test_square_satisfies_lemma(self):
        assert SQUARE.check() == []
        z = zgraded_lemma(SQUARE)
        assert z.holds and z.consistent

    def test_square_equality_and_degeneration(self):
        res = zgraded_equality_and_degeneration(SQUARE, (1, -1))
        assert res.equality and res.degenerates and res.lemma
        assert res.equivalence_confirmed

    def test_torus(self, torus1):
        res = zgraded_equality_and_degeneration(de_rham_complex(torus1), (1, -1))
        assert res.equality and res.degenerates and res.lemma and res.equivalence_confirmed

    def test_heisenberg(self, heisenberg):
        cx = de_rham_complex(heisenberg)
        z = zgraded_lemma(cx)
        assert not z.holds and z.consistent
        res = zgraded_equality_and_degeneration(cx, (1, -1))
        assert not res.equality and res.degenerates and not res.lemma
        assert res.equivalence_confirmed

    def test_gcd(self):
        with pytest.raises(GcdViolation):
            zgraded_equality_and_degeneration(CochainComplex({0: 1}, {}, {}, 2, -2), (2, -2))


class TestSymplecticInequality:
    def test_heisenberg(self, heisenberg):
        rep = froelicher_symplectic(de_rham_complex(heisenberg), 2)
        row = rep.per_degree[2]
        assert (row["lhs"], row["rhs"], row["strict"]) == (10, 8, True)
        assert rep.inequality_holds and not rep.overall_equality and rep.lemma_equivalent

    def test_torus(self, torus2):
        rep = froelicher_symplectic(de_rham_complex(torus2), 2)
        assert rep.overall_equality and rep.lemma


class TestConvergence:
    def test_bounded(self, nonlemma_dc):
        assert convergence_check(nonlemma_dc, "first") and convergence_check(nonlemma_dc, "second")
        assert convergence_check(ARROW, "first")

    def test_periodic_window(self, heisenberg):
        dc = doub_construction(de_rham_complex(heisenberg), 1, -1)
        assert convergence_check(dc, "first") and convergence_check(dc, "second")
