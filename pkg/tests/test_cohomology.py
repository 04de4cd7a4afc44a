from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from _oracle import HEISENBERG, HEISENBERG_OMEGA, LEMMA, NONLEMMA, bigraded_dims, symplectic_dims
from frolicher.cohomology import (
    adjoint_matrix,
    bc_aeppli_duality_check,
    cohomology_dims,
    conjugate_star,
    decomposition_check,
    laplacian,
    symplectic_cohomology_dims,
)
from frolicher.complexes import double_complex_from_model
from frolicher.errors import NotOrientable
from frolicher.linalg import intersect, inner, kernel_basis
from frolicher.model import builtin, monomial_basis, operator_matrix, parse_model
from frolicher.scalars import make
from frolicher.symplectic import de_rham_complex

COMPLEX = ["complex_nonlemma", "complex_lemma"]


def de(spec, p, q):
    return operator_matrix(spec, "del", (p, q))


def db(spec, p, q):
    return operator_matrix(spec, "delbar", (p, q))


def norm2(v):
    return inner(v, v)


def cells(spec):
    n = len(spec.holo)
    return [(p, q) for p in range(n + 1) for q in range(n + 1)]


class TestBigraded:
    def test_nonlemma_values(self, nonlemma_dc):
        assert cohomology_dims(nonlemma_dc, "total").dims[1] == 4
        bc = cohomology_dims(nonlemma_dc, "bott_chern").dims
        ae = cohomology_dims(nonlemma_dc, "aeppli").dims
        assert bc[(1, 0)] == bc[(0, 1)] == 2
        assert ae[(1, 0)] == ae[(0, 1)] == 3

    def test_torus_all_ones(self, torus2):
        dc = double_complex_from_model(torus2)
        for theory in ("delta1", "delta2", "bott_chern", "aeppli"):
            dims = cohomology_dims(dc, theory).dims
            assert dims == {c: dc.dim(*c) for c in dc.cells}

    @pytest.mark.parametrize("name,alg", [("complex_nonlemma", NONLEMMA), ("complex_lemma", LEMMA)])
    def test_matches_brute_force_oracle(self, name, alg):
        dc = double_complex_from_model(builtin(name))
        want = bigraded_dims(alg)
        assert cohomology_dims(dc, "total").dims == want["total"]
        assert cohomology_dims(dc, "bott_chern").dims == want["bott_chern"]
        assert cohomology_dims(dc, "aeppli").dims == want["aeppli"]

    def test_representatives_span_a_complement(self, nonlemma_dc):
        rep = cohomology_dims(nonlemma_dc, "bott_chern")
        for c, v in rep.dims.items():
            assert rep.representatives[c].dim == v


class TestSymplecticTheories:
    def test_torus_de_rham(self, torus1):
        assert symplectic_cohomology_dims(de_rham_complex(torus1), "de_rham").dims == {0: 1, 1: 2, 2: 1}

    def test_heisenberg_matches_oracle(self, heisenberg):
        cx = de_rham_complex(heisenberg)
        want = symplectic_dims(HEISENBERG, HEISENBERG_OMEGA)
        for theory in ("de_rham", "d_lambda", "d_plus_dlambda", "ddlambda"):
            assert symplectic_cohomology_dims(cx, theory).dims == want[theory], theory

    @pytest.mark.parametrize("name", ["heisenberg_symplectic", "complex_lemma"])
    def test_reversed_gradation(self, name):
        spec = builtin(name)
        cx = de_rham_complex(spec)
        dr = symplectic_cohomology_dims(cx, "de_rham").dims
        dl = symplectic_cohomology_dims(cx, "d_lambda").dims
        n = 2 * spec.half_codim
        assert all(dl[j] == dr[n - j] for j in range(n + 1))


class TestAdjoints:
    def test_torus_adjoints_vanish(self, torus2):
        for c in cells(torus2):
            assert adjoint_matrix(torus2, "del", c).is_zero()
            assert adjoint_matrix(torus2, "delbar", c).is_zero()

    def test_adjoint_of_del_is_conjugate_transpose(self, nonlemma):
        m = adjoint_matrix(nonlemma, "del", (2, 0))
        assert m == de(nonlemma, 1, 0).T
        assert m.shape == (3, 3)

    @pytest.mark.parametrize("name", COMPLEX)
    def test_adjoint_pairing(self, name):
        spec = builtin(name)
        rng = random.Random(3)
        for (p, q) in cells(spec):
            a = de(spec, p, q)
            astar = adjoint_matrix(spec, "del", (p + 1, q))
            if not a.rows or not a.cols:
                continue
            u = [make(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(a.cols)]
            v = [make(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(a.rows)]
            assert inner(a.apply(u), v) == inner(u, astar.apply(v))

    @pytest.mark.parametrize("name", COMPLEX)
    def test_adjoint_via_conjugate_star(self, name):
        # ∂* = (−1)^{p+q} bar*^{-1} ∂ bar* on (p, q)
        from frolicher.linalg import inverse

        spec = builtin(name)
        n = len(spec.holo)
        for (p, q) in cells(spec):
            if p == 0:
                continue
            s_in = conjugate_star(spec, p, q)
            s_out = conjugate_star(spec, p - 1, q)
            m = (inverse(s_out) @ de(spec, n - p, n - q) @ s_in).conjugate().scale((-1) ** (p + q))
            assert m == adjoint_matrix(spec, "del", (p, q))


class TestLaplacians:
    def test_torus_laplacians_vanish(self, torus2):
        for which in ("bc", "aeppli"):
            assert all(m.is_zero() for m in laplacian(torus2, which).matrices.values())

    @pytest.mark.parametrize("name", COMPLEX)
    @pytest.mark.parametrize("which", ["bc", "aeppli"])
    def test_self_adjoint(self, name, which):
        for m in laplacian(builtin(name), which).matrices.values():
            assert m == m.H

    @pytest.mark.parametrize("name", COMPLEX)
    def test_bc_quadratic_form(self, name):
        spec = builtin(name)
        lap = laplacian(spec, "bc").matrices
        rng = random.Random(11)
        for (p, q) in cells(spec):
            v = [make(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(len(monomial_basis(spec, p, q)))]
            ddb = de(spec, p, q + 1) @ db(spec, p, q)
            ddb_in = de(spec, p - 1, q) @ db(spec, p - 1, q - 1)
            dbs_d = db(spec, p + 1, q - 1).H @ de(spec, p, q)
            dbs_d_in = db(spec, p, q).H @ de(spec, p - 1, q + 1)
            terms = [ddb.apply(v), ddb_in.H.apply(v), dbs_d.apply(v), dbs_d_in.H.apply(v)]
            terms += [de(spec, p, q).apply(v), db(spec, p, q).apply(v)]
            assert inner(lap[(p, q)].apply(v), v) == sum((norm2(t) for t in terms), Fraction(0))

    @pytest.mark.parametrize("name", COMPLEX)
    def test_bc_harmonic_forms(self, name):
        spec = builtin(name)
        lap = laplacian(spec, "bc").matrices
        for (p, q) in cells(spec):
            ddb_in = de(spec, p - 1, q) @ db(spec, p - 1, q - 1)
            want = intersect(intersect(kernel_basis(de(spec, p, q)), kernel_basis(db(spec, p, q))), kernel_basis(ddb_in.H))
            assert kernel_basis(lap[(p, q)]) == want

    @pytest.mark.parametrize("name", COMPLEX)
    @pytest.mark.parametrize("which,theory", [("bc", "bott_chern"), ("aeppli", "aeppli")])
    def test_kernel_matches_cohomology(self, name, which, theory):
        spec = builtin(name)
        dims = cohomology_dims(double_complex_from_model(spec), theory).dims
        lap = laplacian(spec, which).matrices
        assert {c: kernel_basis(m).dim for c, m in lap.items()} == dims


class TestDecomposition:
    def test_torus(self, torus1):
        res = decomposition_check(torus1, "bc")
        assert res.ok
        assert all(v == (1, 0, 0) for v in res.summand_dims.values())

    def test_nonlemma_middle_cell(self, nonlemma):
        res = decomposition_check(nonlemma, "bc")
        assert res.ok
        assert sum(res.summand_dims[(1, 1)]) == res.cell_dims[(1, 1)] == 9

    def test_lemma_model(self, lemma_model):
        for which in ("bc", "aeppli"):
            res = decomposition_check(lemma_model, which)
            assert res.ok
        assert decomposition_check(lemma_model, "bc").summand_dims[(1, 0)][1] == 0


class TestDuality:
    def test_torus(self, torus1):
        res = bc_aeppli_duality_check(torus1)
        assert res.ok
        assert set(res.bc.values()) == {1}

    @pytest.mark.parametrize("name", COMPLEX)
    def test_builtins(self, name):
        res = bc_aeppli_duality_check(builtin(name))
        assert res.dims_match and res.harmonic_match

    def test_nonlemma_pair(self, nonlemma):
        res = bc_aeppli_duality_check(nonlemma)
        assert res.bc[(1, 0)] == res.aeppli[(2, 3)] == 2

    def test_not_orientable(self, nonlemma):
        # break the top class by making t3 and t6 cycles of a non-unimodular algebra
        doc = nonlemma.to_document()
        doc["d"]["t2"] = [{"coeff": "1", "wedge": ["t1", "t2"]}]
        doc["d"]["t5"] = [{"coeff": "1", "wedge": ["t4", "t5"]}]
        doc["d"].pop("t3")
        doc["d"].pop("t6")
        spec = parse_model(json.dumps(doc))
        with pytest.raises(NotOrientable):
            bc_aeppli_duality_check(spec)
