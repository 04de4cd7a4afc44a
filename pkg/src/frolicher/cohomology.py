"""Cohomology dimension tables and the Hermitian (harmonic) machinery.

Bigraded theories of a double complex (δ1, δ2):

    total      Ker D / Im D                        (per total degree)
    delta1     Ker δ1 / Im δ1
    delta2     Ker δ2 / Im δ2
    bott_chern (Ker δ1 ∩ Ker δ2) / Im δ1δ2
    aeppli     Ker δ1δ2 / (Im δ1 + Im δ2)

Z-graded theories of a complex with d (order +1) and d^Λ (order -1):
de_rham, d_lambda, d_plus_dlambda = (Ker d ∩ Ker d^Λ)/Im dd^Λ and
ddlambda = Ker dd^Λ / (Im d + Im d^Λ).

Representatives are the orthogonal complement of the denominator inside the
numerator for the standard Hermitian product; for model complexes, whose
monomial basis is orthonormal, these are exactly the harmonic forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import CochainComplex, DoubleComplex, double_complex_from_model
from .errors import NotComplexModel, NotOrientable
from .linalg import Matrix, Subspace, image, inner, intersect, kernel_basis, quotient_dim
from .model import ModelSpec, _sort_sign, monomial_basis, operator_matrix, require_valid
from .scalars import conj

__all__ = [
    "CohomologyReport",
    "LaplacianSpec",
    "BigradedSpaces",
    "cohomology_dims",
    "symplectic_cohomology_dims",
    "adjoint_matrix",
    "laplacian",
    "decomposition_check",
    "bc_aeppli_duality_check",
    "conjugate_star",
]

BIGRADED_THEORIES = ("total", "delta1", "delta2", "bott_chern", "aeppli")
SYMPLECTIC_THEORIES = ("de_rham", "d_lambda", "d_plus_dlambda", "ddlambda")


@dataclass
class CohomologyReport:
    theory: str
    dims: dict
    representatives: dict = field(default_factory=dict, repr=False)

    def by_total_degree(self) -> dict:
        if self.theory in BIGRADED_THEORIES[1:]:
            out: dict = {}
            for (p, q), v in self.dims.items():
                out[p + q] = out.get(p + q, 0) + v
            return dict(sorted(out.items()))
        return dict(self.dims)


def _quotient(num: Subspace, den: Subspace) -> tuple[int, Subspace]:
    dim = quotient_dim(num, den)
    return dim, intersect(num, den.orthogonal_complement())


class BigradedSpaces:
    """Kernels and images of δ1, δ2, δ1δ2 at each cell (memoised)."""

    def __init__(self, dc: DoubleComplex):
        self.dc = dc
        self._memo = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def dd(self, p, q) -> Matrix:
        """δ1δ2 from (p, q) to (p+1, q+1)."""
        return self._get(("dd", p, q), lambda: self.dc.d1(p, q + 1) @ self.dc.d2(p, q))

    def ker1(self, p, q):
        return self._get(("k1", p, q), lambda: kernel_basis(self.dc.d1(p, q)))

    def ker2(self, p, q):
        return self._get(("k2", p, q), lambda: kernel_basis(self.dc.d2(p, q)))

    def ker12(self, p, q):
        return self._get(("k12", p, q), lambda: kernel_basis(self.dd(p, q)))

    def im1(self, p, q):
        return self._get(("i1", p, q), lambda: image(self.dc.d1(p - 1, q)))

    def im2(self, p, q):
        return self._get(("i2", p, q), lambda: image(self.dc.d2(p, q - 1)))

    def im12(self, p, q):
        return self._get(("i12", p, q), lambda: image(self.dd(p - 1, q - 1)))

    def numerator_denominator(self, theory: str, p: int, q: int) -> tuple[Subspace, Subspace]:
        if theory == "delta1":
            return self.ker1(p, q), self.im1(p, q)
        if theory == "delta2":
            return self.ker2(p, q), self.im2(p, q)
        if theory == "bott_chern":
            return intersect(self.ker1(p, q), self.ker2(p, q)), self.im12(p, q)
        if theory == "aeppli":
            return self.ker12(p, q), self.im1(p, q) + self.im2(p, q)
        raise ValueError(f"unknown bigraded theory {theory!r}")


def _spaces(dc: DoubleComplex) -> BigradedSpaces:
    if "spaces" not in dc._cache:
        dc._cache["spaces"] = BigradedSpaces(dc)
    return dc._cache["spaces"]


def cochain_dims(cx: CochainComplex, which: str = "d") -> CohomologyReport:
    """Cohomology of a single differential of a cochain complex."""
    dims, reps = {}, {}
    for j in sorted(cx.degrees):
        if which == "d":
            num = kernel_basis(cx.dmat(j))
            den = image(cx.dmat(j - cx.d_order))
        else:
            num = kernel_basis(cx.lmat(j))
            den = image(cx.lmat(j - cx.lambda_order))
        dims[j], reps[j] = _quotient(num, den)
    return CohomologyReport("total" if which == "d" else "d_lambda", dims, reps)


def cohomology_dims(dc: DoubleComplex, theory: str) -> CohomologyReport:
    """Dimension table of one bigraded theory; ``total`` is keyed by total degree."""
    if theory == "total":
        from .complexes import total_complex

        rep = cochain_dims(total_complex(dc), "d")
        return CohomologyReport("total", rep.dims, rep.representatives)
    if theory not in BIGRADED_THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    sp = _spaces(dc)
    dims, reps = {}, {}
    for (p, q) in dc.window():
        num, den = sp.numerator_denominator(theory, p, q)
        dims[(p, q)], reps[(p, q)] = _quotient(num, den)
    return CohomologyReport(theory, dims, reps)


def symplectic_cohomology_dims(cx: CochainComplex, theory: str) -> CohomologyReport:
    """Dimension table of de Rham, d^Λ, d+d^Λ or dd^Λ cohomology per degree."""
    if theory == "de_rham":
        rep = cochain_dims(cx, "d")
        return CohomologyReport("de_rham", rep.dims, rep.representatives)
    if theory == "d_lambda":
        return cochain_dims(cx, "lambda")
    lo = cx.lambda_order + cx.d_order  # degree shift of d∘d^Λ (0 for orders +1/-1)
    dims, reps = {}, {}
    for j in sorted(cx.degrees):
        if theory == "d_plus_dlambda":
            num = intersect(kernel_basis(cx.dmat(j)), kernel_basis(cx.lmat(j)))
            src = j - lo
            dd = cx.dmat(src + cx.lambda_order) @ cx.lmat(src)
            den = image(dd)
        elif theory == "ddlambda":
            dd = cx.dmat(j + cx.lambda_order) @ cx.lmat(j)
            num = kernel_basis(dd)
            den = image(cx.dmat(j - cx.d_order)) + image(cx.lmat(j - cx.lambda_order))
        else:
            raise ValueError(f"unknown theory {theory!r}")
        dims[j], reps[j] = _quotient(num, den)
    return CohomologyReport(theory, dims, reps)


# ---------------------------------------------------------------- Hermitian part


def adjoint_matrix(spec: ModelSpec, which: str, bidegree) -> Matrix:
    """Adjoint of ∂, ∂̄ or d acting on ``bidegree``.

    The monomial basis is orthonormal, so the adjoint is the conjugate transpose
    of the operator landing in ``bidegree``: ∂* maps (p+1, q) to (p, q) and is
    returned for ``bidegree = (p+1, q)``.
    """
    if which in ("del", "∂"):
        p, q = bidegree
        return operator_matrix(spec, "del", (p - 1, q)).H
    if which in ("delbar", "∂̄"):
        p, q = bidegree
        return operator_matrix(spec, "delbar", (p, q - 1)).H
    if which == "d":
        k = bidegree if isinstance(bidegree, int) else sum(bidegree)
        return operator_matrix(spec, "d", k - 1).H
    raise ValueError(f"unknown operator {which!r}")


@dataclass
class LaplacianSpec:
    which: str
    matrices: dict


class _Ops:
    """∂, ∂̄ and their adjoints between neighbouring cells of a complex model."""

    def __init__(self, spec: ModelSpec):
        if not spec.is_complex:
            raise NotComplexModel(f"{spec.name} is not a complex model")
        require_valid(spec)
        self.spec = spec
        self.n1, self.n2 = len(spec.holo), len(spec.antiholo)

    def dim(self, p, q):
        if 0 <= p <= self.n1 and 0 <= q <= self.n2:
            return len(monomial_basis(self.spec, p, q))
        return 0

    def de(self, p, q):
        """∂ : (p, q) -> (p+1, q)."""
        if self.dim(p, q) == 0 or self.dim(p + 1, q) == 0:
            return Matrix.zeros(self.dim(p + 1, q), self.dim(p, q))
        return operator_matrix(self.spec, "del", (p, q))

    def db(self, p, q):
        """∂̄ : (p, q) -> (p, q+1)."""
        if self.dim(p, q) == 0 or self.dim(p, q + 1) == 0:
            return Matrix.zeros(self.dim(p, q + 1), self.dim(p, q))
        return operator_matrix(self.spec, "delbar", (p, q))

    def dedb(self, p, q):
        """∂∂̄ : (p, q) -> (p+1, q+1)."""
        return self.de(p, q + 1) @ self.db(p, q)

    def dbs_de(self, p, q):
        """∂̄*∂ : (p, q) -> (p+1, q-1)."""
        return self.db(p + 1, q - 1).H @ self.de(p, q)

    def db_des(self, p, q):
        """∂̄∂* : (p, q) -> (p-1, q+1)."""
        return self.db(p - 1, q) @ self.de(p - 1, q).H

    def cells(self):
        return [(p, q) for p in range(self.n1 + 1) for q in range(self.n2 + 1)]


def _delta_bc(o: _Ops, p, q) -> Matrix:
    A = o.dedb(p - 1, q - 1)  # ∂∂̄ into (p,q)
    B = o.dedb(p, q)  # ∂∂̄ out of (p,q)
    C = o.dbs_de(p - 1, q + 1)  # ∂̄*∂ into (p,q)
    E = o.dbs_de(p, q)  # ∂̄*∂ out of (p,q)
    F = o.db(p, q)
    G = o.de(p, q)
    return A @ A.H + B.H @ B + C @ C.H + E.H @ E + F.H @ F + G.H @ G


def _delta_a(o: _Ops, p, q) -> Matrix:
    de_in = o.de(p - 1, q)
    db_in = o.db(p, q - 1)
    B = o.dedb(p, q)
    A = o.dedb(p - 1, q - 1)
    P = o.db_des(p, q)  # out of (p,q)
    R = o.db_des(p + 1, q - 1)  # into (p,q)
    return de_in @ de_in.H + db_in @ db_in.H + B.H @ B + A @ A.H + P.H @ P + R @ R.H


def laplacian(spec: ModelSpec, which: str) -> LaplacianSpec:
    """Bott-Chern or Aeppli Laplacian matrices per bidegree."""
    o = _Ops(spec)
    fn = {"bc": _delta_bc, "aeppli": _delta_a}[which]
    return LaplacianSpec(which, {c: fn(o, *c) for c in o.cells()})


@dataclass
class DecompositionResult:
    which: str
    summand_dims: dict  # cell -> (harmonic, middle, last)
    cell_dims: dict
    per_cell: dict  # cell -> bool

    @property
    def ok(self) -> bool:
        return all(self.per_cell.values())


def _orthogonal(a: Subspace, b: Subspace) -> bool:
    return all(not inner(u, v) for u in a.vectors for v in b.vectors)


def decomposition_check(spec: ModelSpec, which: str) -> DecompositionResult:
    """Verify the three-way orthogonal splitting of every cell.

    bc:     Ker Δ_BC ⊕ Im ∂∂̄ ⊕ (Im ∂* + Im ∂̄*)
    aeppli: Ker Δ_A  ⊕ (Im ∂ + Im ∂̄) ⊕ Im (∂∂̄)*
    """
    o = _Ops(spec)
    lap = laplacian(spec, which)
    sdims, cdims, ok = {}, {}, {}
    for (p, q) in o.cells():
        harm = kernel_basis(lap.matrices[(p, q)])
        if which == "bc":
            mid = image(o.dedb(p - 1, q - 1))
            last = image(o.de(p, q).H) + image(o.db(p, q).H)
        else:
            mid = image(o.de(p - 1, q)) + image(o.db(p, q - 1))
            last = image(o.dedb(p, q).H)
        parts = (harm, mid, last)
        n = o.dim(p, q)
        sdims[(p, q)] = tuple(s.dim for s in parts)
        cdims[(p, q)] = n
        good = sum(s.dim for s in parts) == n
        for a, b in ((0, 1), (0, 2), (1, 2)):
            good = good and intersect(parts[a], parts[b]).dim == 0 and _orthogonal(parts[a], parts[b])
        ok[(p, q)] = good
    return DecompositionResult(which, sdims, cdims, ok)


def conjugate_star(spec: ModelSpec, p: int, q: int) -> Matrix:
    """Conjugate-linear Hodge star on (p, q)-forms, as the matrix applied after
    entrywise conjugation: ``bar*(v) = M @ conj(v)``, landing in (n-p, n-q).

    Defined by α ∧ bar*β = <α, β> vol with vol the wedge of all generators in
    index order and the monomial basis orthonormal.
    """
    n_all = spec.n_generators
    src = monomial_basis(spec, p, q)
    n1, n2 = len(spec.holo), len(spec.antiholo)
    tgt = monomial_basis(spec, n1 - p, n2 - q)
    pos = {m: i for i, m in enumerate(tgt)}
    mat = Matrix.zeros(len(tgt), len(src))
    for j, mono in enumerate(src):
        comp = tuple(i for i in range(n_all) if i not in mono)
        sign, _ = _sort_sign(mono + comp)
        mat.entries[pos[comp]][j] = sign
    return mat


@dataclass
class DualityResult:
    n: int
    bc: dict
    aeppli: dict
    dims_match: bool
    harmonic_match: bool

    @property
    def ok(self) -> bool:
        return self.dims_match and self.harmonic_match


def bc_aeppli_duality_check(spec: ModelSpec) -> DualityResult:
    """dim H_BC^{p,q} = dim H_A^{n-p,n-q}, plus bar*(Ker Δ_BC) = Ker Δ_A."""
    dc = double_complex_from_model(spec)
    top = len(spec.holo) + len(spec.antiholo)
    tot = cohomology_dims(dc, "total").dims
    if tot.get(top, 0) != 1:
        raise NotOrientable(f"top cohomology has dimension {tot.get(top, 0)}, not 1")
    n = len(spec.holo)
    bc = cohomology_dims(dc, "bott_chern")
    ae = cohomology_dims(dc, "aeppli")
    dims_match = all(bc.dims[(p, q)] == ae.dims.get((n - p, n - q), 0) for (p, q) in bc.dims)
    lbc = laplacian(spec, "bc").matrices
    la = laplacian(spec, "aeppli").matrices
    harmonic_match = True
    for (p, q) in bc.dims:
        hb = kernel_basis(lbc[(p, q)])
        ha = kernel_basis(la[(n - p, n - q)])
        star = conjugate_star(spec, p, q)
        mapped = Subspace(ha.ambient_dim, [star.apply([conj(x) for x in v]) for v in hb.vectors])
        if mapped != ha:
            harmonic_match = False
    return DualityResult(n, bc.dims, ae.dims, dims_match, harmonic_match)
