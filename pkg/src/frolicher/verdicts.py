"""δ1δ2-lemma decisions and Frölicher-type inequality reports.

The bigraded lemma is checked in total-degree coordinates: every subspace in
the definition and in the six equivalent conditions lives in Tot^n, with δ1 and
δ2 the block parts of the total differential.  Nothing is short-circuited, so
the seven answers double as a consistency check of the subspace arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import cohomology_dims, symplectic_cohomology_dims
from .complexes import (
    CochainComplex,
    DoubleComplex,
    degeneration_page,
    doub_construction,
    spectral_pages,
)
from .errors import Unbounded
from .linalg import Matrix, Subspace, image, intersect, kernel_basis

__all__ = [
    "LemmaVerdict",
    "InequalityReport",
    "ZGradedLemma",
    "lemma_check",
    "froelicher_bigraded",
    "froelicher_symplectic",
    "zgraded_lemma",
    "zgraded_equality_and_degeneration",
    "convergence_check",
]

CONDITION_NAMES = (
    "definition",
    "(i) Ker δ2 ∩ Im δ1 = Im δ1δ2 and Ker δ1 ∩ Im δ2 = Im δ1δ2",
    "(ii) Ker δ1 ∩ Ker δ2 ∩ (Im δ1 + Im δ2) = Im δ1δ2",
    "(iii) Im δ1 + Im δ2 + Ker D = Ker δ1δ2",
    "(iv) Im δ2 + Ker δ1 = Ker δ1δ2 and Im δ1 + Ker δ2 = Ker δ1δ2",
    "(v) Im δ1 + Im δ2 + (Ker δ1 ∩ Ker δ2) = Ker δ1δ2",
)


@dataclass
class LemmaVerdict:
    by_definition: bool
    six_conditions: tuple
    per_degree: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(c == self.by_definition for c in self.six_conditions)

    @property
    def holds(self) -> bool:
        return self.by_definition


def _conditions(parts_in, parts_here, parts_out, parts_in2) -> tuple[bool, ...]:
    """The seven booleans at one total degree.

    ``parts_in`` are (δ1, δ2) into Tot^n, ``parts_here`` out of Tot^n,
    ``parts_out`` out of Tot^(n+1) and ``parts_in2`` out of Tot^(n-2).
    """
    a1, a2 = parts_in
    h1, h2 = parts_here
    o1, _ = parts_out
    _, b2 = parts_in2
    ker1, ker2 = kernel_basis(h1), kernel_basis(h2)
    kerD = kernel_basis(h1 + h2)
    im1, im2 = image(a1), image(a2)
    imD = image(a1 + a2)
    im12 = image(a1 @ b2)
    ker12 = kernel_basis(o1 @ h2)
    kk = intersect(ker1, ker2)
    defn = intersect(kk, imD) == im12
    c1 = intersect(ker2, im1) == im12 and intersect(ker1, im2) == im12
    c2 = intersect(kk, im1 + im2) == im12
    c3 = im1 + im2 + kerD == ker12
    c4 = im2 + ker1 == ker12 and im1 + ker2 == ker12
    c5 = im1 + im2 + kk == ker12
    return defn, c1, c2, c3, c4, c5


def lemma_check(dc: DoubleComplex) -> LemmaVerdict:
    """Decide the δ1δ2-lemma by definition and by all six equivalent conditions."""
    if not dc.is_bounded:
        raise Unbounded("the lemma test needs a bounded double complex")
    degs = dc.total_degrees()
    flags = [True] * 6
    per = {}
    for n in degs:
        if dc.tot_dim(n) == 0:
            continue
        vals = _conditions(dc.tot_parts(n - 1), dc.tot_parts(n), dc.tot_parts(n + 1), dc.tot_parts(n - 2))
        per[n] = vals
        flags = [f and v for f, v in zip(flags, vals)]
    return LemmaVerdict(flags[0], tuple(flags[1:]), per)


@dataclass
class InequalityReport:
    """Per-degree comparison ``lhs ≥ rhs``.

    ``per_degree[j]`` holds lhs, rhs, equal and strict, plus any secondary
    comparison under keys prefixed by its name.
    """

    kind: str
    per_degree: dict
    overall_equality: bool
    lemma: bool | None = None

    @property
    def lemma_equivalent(self) -> bool | None:
        if self.lemma is None:
            return None
        return self.overall_equality == self.lemma

    @property
    def inequality_holds(self) -> bool:
        return all(row["lhs"] >= row["rhs"] for row in self.per_degree.values())


def _row(lhs: int, rhs: int) -> dict:
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs, "strict": lhs > rhs}


def froelicher_bigraded(dc: DoubleComplex) -> InequalityReport:
    """Σ_{p+q=k} (dim H_BC + dim H_A) against 2·dim H^k_tot, per total degree.

    The comparison against dim H_δ1 + dim H_δ2 in the same degree is carried
    alongside under the ``m1_`` keys; only the comparison with the total
    cohomology characterises the lemma by itself.
    """
    if not dc.is_bounded:
        raise Unbounded("the bigraded inequality needs a bounded double complex")
    bc = cohomology_dims(dc, "bott_chern").by_total_degree()
    ae = cohomology_dims(dc, "aeppli").by_total_degree()
    h1 = cohomology_dims(dc, "delta1").by_total_degree()
    h2 = cohomology_dims(dc, "delta2").by_total_degree()
    tot = cohomology_dims(dc, "total").dims
    per = {}
    for k in dc.total_degrees():
        if dc.tot_dim(k) == 0:
            continue
        lhs = bc.get(k, 0) + ae.get(k, 0)
        row = _row(lhs, 2 * tot.get(k, 0))
        row["bott_chern"], row["aeppli"], row["total"] = bc.get(k, 0), ae.get(k, 0), tot.get(k, 0)
        m1 = _row(lhs, h1.get(k, 0) + h2.get(k, 0))
        row.update({f"m1_{key}": v for key, v in m1.items() if key != "lhs"})
        per[k] = row
    equal = all(r["equal"] for r in per.values())
    return InequalityReport("bigraded", per, equal, lemma_check(dc).holds)


# ---------------------------------------------------------------- Z-graded


@dataclass
class ZGradedLemma:
    graded: bool
    ungraded: bool
    kernel_cross_check: bool
    per_degree: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.graded

    @property
    def consistent(self) -> bool:
        return self.graded == self.ungraded and self.kernel_cross_check


def _ungraded(cx: CochainComplex) -> tuple[Matrix, Matrix, dict, int]:
    degs = cx.degree_list()
    offs, n = {}, 0
    for j in degs:
        offs[j] = n
        n += cx.dim(j)
    D = Matrix.zeros(n, n)
    L = Matrix.zeros(n, n)
    for j in degs:
        for mat, order, tgt in ((cx.dmat(j), cx.d_order, D), (cx.lmat(j), cx.lambda_order, L)):
            t = j + order
            if t not in offs:
                continue
            for r in range(mat.rows):
                for c in range(mat.cols):
                    if mat.entries[r][c]:
                        tgt.entries[offs[t] + r][offs[j] + c] = mat.entries[r][c]
    return D, L, offs, n


def zgraded_lemma(cx: CochainComplex) -> ZGradedLemma:
    """The dd^Λ-lemma for a Z-graded complex with two differentials.

    ``graded``: per degree, Ker d ∩ Ker d^Λ ∩ (Im d + Im d^Λ) = Im dd^Λ.
    ``ungraded``: on the whole space, Ker d ∩ Ker d^Λ ∩ Im(d + d^Λ) = Im dd^Λ.
    ``kernel_cross_check``: the literal Ker(d + d^Λ) meets each degree in
    exactly Ker d ∩ Ker d^Λ.
    """
    lo = cx.d_order + cx.lambda_order
    per = {}
    graded = True
    for j in cx.degree_list():
        kk = intersect(kernel_basis(cx.dmat(j)), kernel_basis(cx.lmat(j)))
        ims = image(cx.dmat(j - cx.d_order)) + image(cx.lmat(j - cx.lambda_order))
        src = j - lo
        dd = cx.dmat(src + cx.lambda_order) @ cx.lmat(src)
        ok = intersect(kk, ims) == image(dd)
        per[j] = ok
        graded = graded and ok
    D, L, offs, n = _ungraded(cx)
    kk = intersect(kernel_basis(D), kernel_basis(L))
    ungraded = intersect(kk, image(D + L)) == image(D @ L)
    kerDL = kernel_basis(D + L)
    cross = True
    for j, off in offs.items():
        coord = Subspace.coordinate(n, range(off, off + cx.dim(j)))
        both = intersect(kernel_basis(cx.dmat(j)), kernel_basis(cx.lmat(j))).embed(n, off)
        cross = cross and intersect(kerDL, coord) == both
    return ZGradedLemma(graded, ungraded, cross, per)


def froelicher_symplectic(cx: CochainComplex, half_codim: int) -> InequalityReport:
    """dim H^j_{d+d^Λ} + dim H^j_{dd^Λ} against dim H^j + dim H^{2q-j}."""
    q = half_codim
    dpl = symplectic_cohomology_dims(cx, "d_plus_dlambda").dims
    ddl = symplectic_cohomology_dims(cx, "ddlambda").dims
    dr = symplectic_cohomology_dims(cx, "de_rham").dims
    per = {}
    for j in range(2 * q + 1):
        row = _row(dpl.get(j, 0) + ddl.get(j, 0), dr.get(j, 0) + dr.get(2 * q - j, 0))
        row.update({"d_plus_dlambda": dpl.get(j, 0), "ddlambda": ddl.get(j, 0), "de_rham": dr.get(j, 0), "de_rham_dual": dr.get(2 * q - j, 0)})
        per[j] = row
    equal = all(r["equal"] for r in per.values())
    return InequalityReport("symplectic", per, equal, zgraded_lemma(cx).holds)


@dataclass
class EqualityDegeneration:
    orders: tuple
    equality: bool
    degeneration_pages: dict
    lemma: bool
    inequality: InequalityReport = None

    @property
    def degenerates(self) -> bool:
        return all(p == 1 for p in self.degeneration_pages.values())

    @property
    def equivalence_confirmed(self) -> bool:
        return (self.equality and self.degenerates) == self.lemma


def zgraded_equality_and_degeneration(cx: CochainComplex, orders: tuple[int, int]) -> EqualityDegeneration:
    """Check (equality ∧ first-page degeneration of Doub) ⇔ lemma for a Z-graded complex.

    The inequality compared here is dim H_{δ1+δ2-closed / δ1δ2} + dim H_{δ1δ2}
    against dim H_δ1 + dim H_δ2 in each degree.
    """
    o1, o2 = orders
    dc = doub_construction(cx, o1, o2)
    dpl = symplectic_cohomology_dims(cx, "d_plus_dlambda").dims
    ddl = symplectic_cohomology_dims(cx, "ddlambda").dims
    h1 = symplectic_cohomology_dims(cx, "de_rham").dims
    h2 = symplectic_cohomology_dims(cx, "d_lambda").dims
    per = {}
    for j in cx.degree_list():
        row = _row(dpl.get(j, 0) + ddl.get(j, 0), h1.get(j, 0) + h2.get(j, 0))
        per[j] = row
    equal = all(r["equal"] for r in per.values())
    lemma = zgraded_lemma(cx).holds
    pages = {f: degeneration_page(dc, f) for f in ("first", "second")}
    report = InequalityReport("zgraded", per, equal, lemma)
    return EqualityDegeneration((o1, o2), equal, pages, lemma, report)


def convergence_check(dc: DoubleComplex, filtration: str) -> bool:
    """Whether the stabilised page sums to the total cohomology degree by degree.

    For a periodic complex both sides are read on the window, with total
    degrees taken modulo the period; the answer is reported, not assumed.
    """
    last = spectral_pages(dc, filtration)[-1]
    tot = cohomology_dims(dc, "total").dims
    period = dc.period
    sums: dict = {}
    for (p, q), v in last.dims.items():
        n = p + q
        if period:
            n = min(tot) + (n - min(tot)) % period
        sums[n] = sums.get(n, 0) + v
    keys = set(sums) | set(tot)
    return all(sums.get(n, 0) == tot.get(n, 0) for n in keys)
